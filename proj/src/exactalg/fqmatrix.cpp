#include "exactalg/fqmatrix.hpp"

#include <algorithm>

namespace mgr {

FqMatrix::FqMatrix(FqField F, int rows, int cols)
    : F_(std::move(F)), rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

FqMatrix FqMatrix::identity(const FqField& F, int n) {
  FqMatrix I(F, n, n);
  for (int i = 0; i < n; ++i) I.at(i, i) = F.one();
  return I;
}

FqMatrix FqMatrix::operator*(const FqMatrix& o) const {
  FqMatrix r(F_, rows_, o.cols_);
  if (F_.degree() == 1 && F_.ell() < (1ULL << 31)) {
    const uint64_t ell = F_.ell();
    std::vector<unsigned __int128> acc(o.cols_);
    for (int i = 0; i < rows_; ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      const FqElem* ri = row(i);
      for (int k = 0; k < cols_; ++k) {
        uint64_t a = ri[k].code;
        if (!a) continue;
        const FqElem* ok = o.row(k);
        for (int j = 0; j < o.cols_; ++j) acc[j] += a * ok[j].code;
      }
      FqElem* out = r.row(i);
      for (int j = 0; j < o.cols_; ++j) out[j] = {static_cast<uint64_t>(acc[j] % ell)};
    }
    return r;
  }
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      FqElem a = at(i, k);
      if (a.code == 0) continue;
      const FqElem* ok = o.row(k);
      FqElem* out = r.row(i);
      for (int j = 0; j < o.cols_; ++j) {
        if (ok[j].code) out[j] = F_.add(out[j], F_.mul(a, ok[j]));
      }
    }
  }
  return r;
}

FqMatrix FqMatrix::operator+(const FqMatrix& o) const {
  FqMatrix r(F_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = F_.add(a_[i], o.a_[i]);
  return r;
}

FqMatrix FqMatrix::operator-(const FqMatrix& o) const {
  FqMatrix r(F_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = F_.sub(a_[i], o.a_[i]);
  return r;
}

bool FqMatrix::operator==(const FqMatrix& o) const {
  return F_ == o.F_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

FqMatrix FqMatrix::scale(FqElem s) const {
  FqMatrix r(F_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = F_.mul(a_[i], s);
  return r;
}

FqMatrix FqMatrix::transpose() const {
  FqMatrix r(F_, cols_, rows_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  }
  return r;
}

bool FqMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](FqElem e) { return e.code == 0; });
}

std::vector<int> FqMatrix::rref() {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols_ && r < rows_; ++c) {
    int p = -1;
    for (int i = r; i < rows_; ++i) {
      if (at(i, c).code) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    if (p != r) std::swap_ranges(row(p), row(p) + cols_, row(r));
    FqElem inv = F_.inv(at(r, c));
    FqElem* pr = row(r);
    for (int j = c; j < cols_; ++j) pr[j] = F_.mul(pr[j], inv);
    for (int i = 0; i < rows_; ++i) {
      if (i == r) continue;
      FqElem f = at(i, c);
      if (!f.code) continue;
      FqElem* ri = row(i);
      for (int j = c; j < cols_; ++j) {
        if (pr[j].code) ri[j] = F_.sub(ri[j], F_.mul(f, pr[j]));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int FqMatrix::rank() const {
  FqMatrix c = *this;
  return static_cast<int>(c.rref().size());
}

FqMatrix FqMatrix::left_kernel() const {
  FqMatrix t = transpose();
  std::vector<int> piv = t.rref();
  std::vector<char> is_piv(rows_, 0);
  for (int p : piv) is_piv[p] = 1;
  std::vector<int> free_cols;
  for (int c = 0; c < rows_; ++c) {
    if (!is_piv[c]) free_cols.push_back(c);
  }
  FqMatrix K(F_, static_cast<int>(free_cols.size()), rows_);
  for (size_t k = 0; k < free_cols.size(); ++k) {
    int f = free_cols[k];
    K.at(static_cast<int>(k), f) = F_.one();
    for (size_t i = 0; i < piv.size(); ++i) K.at(static_cast<int>(k), piv[i]) = F_.neg(t.at(static_cast<int>(i), f));
  }
  K.rref();
  return K;
}

FqMatrix FqMatrix::pow(uint64_t e) const {
  FqMatrix r = identity(F_, rows_);
  FqMatrix b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

FqPoly FqMatrix::charpoly() const {
  int n = rows_;
  FqMatrix H = *this;
  // similarity reduction to upper Hessenberg form
  for (int j = 0; j + 2 < n; ++j) {
    int p = -1;
    for (int i = j + 1; i < n; ++i) {
      if (H.at(i, j).code) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    if (p != j + 1) {
      std::swap_ranges(H.row(p), H.row(p) + n, H.row(j + 1));
      for (int i = 0; i < n; ++i) std::swap(H.at(i, p), H.at(i, j + 1));
    }
    FqElem inv = F_.inv(H.at(j + 1, j));
    for (int k = j + 2; k < n; ++k) {
      FqElem u = F_.mul(H.at(k, j), inv);
      if (!u.code) continue;
      for (int c = 0; c < n; ++c) H.at(k, c) = F_.sub(H.at(k, c), F_.mul(u, H.at(j + 1, c)));
      for (int r = 0; r < n; ++r) H.at(r, j + 1) = F_.add(H.at(r, j + 1), F_.mul(u, H.at(r, k)));
    }
  }
  std::vector<FqPoly> P(n + 1);
  P[0] = FqPoly::constant(F_, F_.one());
  FqPoly X = FqPoly::x(F_);
  for (int m = 1; m <= n; ++m) {
    P[m] = (X - FqPoly::constant(F_, H.at(m - 1, m - 1))) * P[m - 1];
    FqElem t = F_.one();
    for (int i = m - 1; i >= 1; --i) {
      t = F_.mul(t, H.at(i, i - 1));
      FqElem c = F_.mul(t, H.at(i - 1, m - 1));
      if (c.code) P[m] = P[m] - P[i - 1].scale(c);
    }
  }
  return P[n];
}

FqMatrix FqMatrix::eval_poly(const FqPoly& p) const {
  FqMatrix r(F_, rows_, cols_);
  for (size_t i = p.coeffs().size(); i-- > 0;) {
    r = r * *this;
    for (int d = 0; d < rows_; ++d) r.at(d, d) = F_.add(r.at(d, d), p.coeffs()[i]);
  }
  return r;
}

FqMatrix FqMatrix::map_field(const FqField& target, FqElem image_of_gen) const {
  FieldEmbedding emb{F_, target, image_of_gen};
  FqMatrix r(target, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = emb(a_[i]);
  return r;
}

FqMatrix restrict_to(const FqMatrix& W, const std::vector<int>& pivots, const FqMatrix& A) {
  FqMatrix img = W * A;
  int k = W.rows();
  FqMatrix r(A.field(), k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) r.at(i, j) = img.at(i, pivots[j]);
  }
  return r;
}

FqElem FieldEmbedding::operator()(FqElem a) const {
  if (source.degree() == 1) return a;
  auto c = source.coeffs(a);
  FqElem r = target.zero(), pw = target.one();
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i]) r = target.add(r, target.mul(target.from_int(static_cast<int64_t>(c[i])), pw));
    pw = target.mul(pw, image_of_gen);
  }
  return r;
}

std::vector<FieldEmbedding> all_embeddings(const FqField& source, const FqField& target) {
  if (source.ell() != target.ell() || target.degree() % source.degree() != 0) {
    throw DomainError("invalid_argument", "no embedding between these fields");
  }
  std::vector<FqElem> m;
  for (auto c : source.modulus()) m.push_back(target.from_int(static_cast<int64_t>(c)));
  std::vector<FieldEmbedding> out;
  for (auto root : poly_roots(FqPoly(target, m))) out.push_back({source, target, root});
  return out;
}

FieldEmbedding canonical_embedding(const FqField& source, const FqField& target) {
  return all_embeddings(source, target).front();
}

}  // namespace mgr
