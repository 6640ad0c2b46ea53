#include "exactalg/lattice.hpp"

#include <algorithm>

namespace mgr {

IntMatrix int_mul(const IntMatrix& a, const IntMatrix& b) {
  size_t n = a.size(), m = b.empty() ? 0 : b[0].size();
  IntMatrix r(n, std::vector<Int>(m, 0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (size_t j = 0; j < m; ++j) r[i][j] += a[i][k] * b[k][j];
    }
  }
  return r;
}

namespace {

void row_combine(std::vector<Int>& a, std::vector<Int>& b, const Int& x, const Int& y, const Int& u, const Int& v) {
  // (a, b) <- (x a + y b, u a + v b)
  for (size_t j = 0; j < a.size(); ++j) {
    Int na = x * a[j] + y * b[j];
    Int nb = u * a[j] + v * b[j];
    a[j] = std::move(na);
    b[j] = std::move(nb);
  }
}

}  // namespace

IntMatrix hnf_rows(IntMatrix m) {
  if (m.empty()) return m;
  size_t ncols = m[0].size();
  size_t r = 0;
  std::vector<size_t> pivcols;
  for (size_t c = 0; c < ncols && r < m.size(); ++c) {
    for (size_t i = r + 1; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      if (m[r][c] == 0) {
        std::swap(m[r], m[i]);
        continue;
      }
      Int g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), m[r][c].get_mpz_t(), m[i][c].get_mpz_t());
      Int u = -m[i][c] / g, v = m[r][c] / g;
      row_combine(m[r], m[i], s, t, u, v);
    }
    if (m[r][c] == 0) continue;
    if (m[r][c] < 0) {
      for (auto& x : m[r]) x = -x;
    }
    for (size_t i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), m[i][c].get_mpz_t(), m[r][c].get_mpz_t());
      if (q == 0) continue;
      for (size_t j = 0; j < ncols; ++j) m[i][j] -= q * m[r][j];
    }
    pivcols.push_back(c);
    ++r;
  }
  m.resize(r);
  return m;
}

namespace {

// Smith form by elementary operations; column operations are mirrored on
// the rows of `basis` so that relations stay expressed in it.
std::vector<Int> smith_reduce(IntMatrix& a, IntMatrix* basis) {
  std::vector<Int> diag;
  size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  auto col_swap = [&](size_t i, size_t j) {
    for (auto& row : a) std::swap(row[i], row[j]);
    if (basis) std::swap((*basis)[i], (*basis)[j]);
  };
  auto col_addmul = [&](size_t dst, size_t src, const Int& t) {  // col_dst += t col_src
    for (auto& row : a) row[dst] += t * row[src];
    if (basis) {
      for (size_t j = 0; j < (*basis)[src].size(); ++j) (*basis)[src][j] -= t * (*basis)[dst][j];
    }
  };
  for (size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      // smallest nonzero entry in the remaining block
      size_t bi = rows, bj = cols;
      for (size_t i = t; i < rows; ++i) {
        for (size_t j = t; j < cols; ++j) {
          if (a[i][j] != 0 && (bi == rows || abs(a[i][j]) < abs(a[bi][bj]))) {
            bi = i;
            bj = j;
          }
        }
      }
      if (bi == rows) return diag;
      std::swap(a[t], a[bi]);
      if (bj != t) col_swap(t, bj);
      bool clean = true;
      for (size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        for (size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        col_addmul(j, t, -q);
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility condition
      size_t bad = rows;
      for (size_t i = t + 1; i < rows && bad == rows; ++i) {
        for (size_t j = t + 1; j < cols; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            bad = i;
            break;
          }
        }
      }
      if (bad == rows) break;
      for (size_t j = t; j < cols; ++j) a[t][j] += a[bad][j];
    }
    if (a[t][t] < 0) a[t][t] = -a[t][t];
    diag.push_back(a[t][t]);
  }
  return diag;
}

}  // namespace

std::vector<Int> smith_diagonal(IntMatrix m) { return smith_reduce(m, nullptr); }

std::vector<Int> primary_invariants(const std::vector<Int>& orders) {
  std::vector<Int> out;
  for (Int d : orders) {
    d = abs(d);
    if (d <= 1) continue;
    for (Int p = 2; p * p <= d; ++p) {
      if (d % p != 0) continue;
      Int pe = 1;
      while (d % p == 0) {
        d /= p;
        pe *= p;
      }
      out.push_back(pe);
    }
    if (d > 1) out.push_back(d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

LatticeQuotient lattice_quotient(const IntMatrix& generators, const IntMatrix& relations) {
  LatticeQuotient Q;
  IntMatrix B = hnf_rows(generators);
  size_t r = B.size();
  if (r == 0) return Q;
  size_t n = B[0].size();
  std::vector<size_t> piv;
  for (auto& row : B) {
    size_t c = 0;
    while (row[c] == 0) ++c;
    piv.push_back(c);
  }
  IntMatrix C;
  for (const auto& rel : relations) {
    if (rel.size() != n) throw DomainError("invalid_argument", "relation length mismatch");
    std::vector<Int> rest = rel, coords(r, 0);
    for (size_t i = 0; i < r; ++i) {
      if (rest[piv[i]] % B[i][piv[i]] != 0) throw DomainError("invalid_argument", "relation outside generator lattice");
      coords[i] = rest[piv[i]] / B[i][piv[i]];
      for (size_t j = 0; j < n; ++j) rest[j] -= coords[i] * B[i][j];
    }
    if (std::any_of(rest.begin(), rest.end(), [](const Int& x) { return x != 0; })) {
      throw DomainError("invalid_argument", "relation outside generator lattice");
    }
    C.push_back(coords);
  }
  std::vector<Int> diag;
  if (!C.empty()) diag = smith_reduce(C, &B);
  size_t nz = diag.size();
  Q.rank = static_cast<int>(r - nz);
  Q.torsion = primary_invariants(diag);
  for (size_t i = nz; i < r; ++i) Q.free_basis.push_back(B[i]);
  return Q;
}

int valuation(const Rat& x, uint64_t p) {
  if (x == 0) throw DomainError("invalid_argument", "valuation of zero");
  int v = 0;
  Int P(static_cast<unsigned long>(p));
  Int num = x.get_num(), den = x.get_den();
  while (num % P == 0) {
    num /= P;
    ++v;
  }
  while (den % P == 0) {
    den /= P;
    --v;
  }
  return v;
}

namespace {

void normalize_at(std::vector<Rat>& v, uint64_t p) {
  int vmin = 0;
  bool any = false;
  for (auto& x : v) {
    if (x == 0) continue;
    int e = valuation(x, p);
    if (!any || e < vmin) vmin = e;
    any = true;
  }
  if (!any || vmin == 0) return;
  Rat f = 1;
  Int P(static_cast<unsigned long>(p));
  for (int i = 0; i < std::abs(vmin); ++i) f *= P;
  if (vmin > 0) f = 1 / f;
  for (auto& x : v) x *= f;
}

}  // namespace

FqMatrix reduce_rows(const std::vector<std::vector<Rat>>& rows, const FqField& F, int ncols) {
  FqMatrix M(F, static_cast<int>(rows.size()), ncols);
  for (size_t i = 0; i < rows.size(); ++i) {
    for (int j = 0; j < ncols; ++j) {
      if (rows[i][j] != 0) M.at(static_cast<int>(i), j) = F.from_rat(rows[i][j]);
    }
  }
  return M;
}

std::vector<std::vector<Rat>> saturate_at_prime(std::vector<std::vector<Rat>> basis, uint64_t p) {
  if (basis.empty()) return basis;
  FqField F = FqField::make(p, 1);
  int n = static_cast<int>(basis[0].size());
  for (auto& v : basis) normalize_at(v, p);
  Int P(static_cast<unsigned long>(p));
  while (true) {
    FqMatrix M = reduce_rows(basis, F, n);
    FqMatrix K = M.left_kernel();
    if (K.rows() == 0) break;
    int j = 0;
    while (K.at(0, j).code == 0) ++j;
    std::vector<Rat> nv(n, 0);
    for (int i = 0; i < K.cols(); ++i) {
      uint64_t c = K.at(0, i).code;
      if (!c) continue;
      for (int t = 0; t < n; ++t) nv[t] += Rat(Int(static_cast<unsigned long>(c))) * basis[i][t];
    }
    for (auto& x : nv) x /= P;
    normalize_at(nv, p);
    basis[j] = std::move(nv);
  }
  return basis;
}

}  // namespace mgr
