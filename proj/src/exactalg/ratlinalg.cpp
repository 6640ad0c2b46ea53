#include "exactalg/ratlinalg.hpp"

#include <algorithm>

namespace mgr {

void sparse_axpy(SparseVec& y, const Rat& a, const SparseVec& x) {
  if (a == 0 || x.empty()) return;
  SparseVec out;
  out.reserve(y.size() + x.size());
  size_t i = 0, j = 0;
  while (i < y.size() || j < x.size()) {
    if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) {
      out.push_back(std::move(y[i++]));
    } else if (i == y.size() || x[j].first < y[i].first) {
      out.emplace_back(x[j].first, a * x[j].second);
      ++j;
    } else {
      Rat s = y[i].second + a * x[j].second;
      if (s != 0) out.emplace_back(y[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  y = std::move(out);
}

SparseVec sparse_scale(const SparseVec& x, const Rat& a) {
  SparseVec out;
  if (a == 0) return out;
  out.reserve(x.size());
  for (auto& [k, v] : x) out.emplace_back(k, v * a);
  return out;
}

Rat sparse_get(const SparseVec& x, int idx) {
  auto it = std::lower_bound(x.begin(), x.end(), idx, [](const auto& e, int i) { return e.first < i; });
  if (it != x.end() && it->first == idx) return it->second;
  return 0;
}

RatEchelon::RatEchelon(int ncols) : ncols_(ncols), pivot_row_(ncols, -1), work_(ncols) {}

bool RatEchelon::add_row(const SparseVec& v) {
  if (v.empty()) return false;
  reduced_ = false;
  int lo = ncols_;
  for (auto& [k, a] : v) {
    work_[k] = a;
    lo = std::min(lo, k);
  }
  int lead = -1;
  for (int c = lo; c < ncols_; ++c) {
    if (work_[c] == 0) continue;
    int r = pivot_row_[c];
    if (r < 0) {
      if (lead < 0) lead = c;
      continue;
    }
    Rat f = work_[c];
    for (auto& [k, a] : rows_[r]) work_[k] -= f * a;
  }
  if (lead < 0) return false;
  SparseVec row;
  Rat inv = 1 / work_[lead];
  for (int c = lead; c < ncols_; ++c) {
    if (work_[c] != 0) {
      row.emplace_back(c, work_[c] * inv);
      work_[c] = 0;
    }
  }
  pivot_row_[lead] = static_cast<int>(rows_.size());
  rows_.push_back(std::move(row));
  return true;
}

void RatEchelon::finalize() {
  if (reduced_) return;
  std::vector<int> piv = pivots();
  for (size_t idx = piv.size(); idx-- > 0;) {
    int r = pivot_row_[piv[idx]];
    SparseVec& row = rows_[r];
    bool touched = false;
    for (auto& [k, a] : row) {
      if (k != piv[idx] && pivot_row_[k] >= 0) {
        touched = true;
        break;
      }
    }
    if (!touched) continue;
    for (auto& [k, a] : row) work_[k] = a;
    for (size_t later = idx + 1; later < piv.size(); ++later) {
      int c = piv[later];
      if (work_[c] == 0) continue;
      Rat f = work_[c];
      for (auto& [k, a] : rows_[pivot_row_[c]]) work_[k] -= f * a;
    }
    SparseVec out;
    for (int c = piv[idx]; c < ncols_; ++c) {
      if (work_[c] != 0) {
        out.emplace_back(c, work_[c]);
        work_[c] = 0;
      }
    }
    row = std::move(out);
  }
  reduced_ = true;
}

std::vector<int> RatEchelon::pivots() const {
  std::vector<int> p;
  for (int c = 0; c < ncols_; ++c) {
    if (pivot_row_[c] >= 0) p.push_back(c);
  }
  return p;
}

std::vector<int> RatEchelon::free_columns() const {
  std::vector<int> f;
  for (int c = 0; c < ncols_; ++c) {
    if (pivot_row_[c] < 0) f.push_back(c);
  }
  return f;
}

std::vector<SparseVec> RatEchelon::kernel_basis() const {
  const_cast<RatEchelon*>(this)->finalize();
  std::vector<int> free = free_columns();
  std::vector<int> slot(ncols_, -1);
  for (size_t i = 0; i < free.size(); ++i) slot[free[i]] = static_cast<int>(i);
  std::vector<SparseVec> K(free.size());
  for (size_t i = 0; i < free.size(); ++i) K[i].emplace_back(free[i], Rat(1));
  for (int c = 0; c < ncols_; ++c) {
    int r = pivot_row_[c];
    if (r < 0) continue;
    for (auto& [k, a] : rows_[r]) {
      if (k == c) continue;
      K[slot[k]].emplace_back(c, -a);
    }
  }
  for (auto& v : K) std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return K;
}

RatMatrix rat_mul(const RatMatrix& a, const RatMatrix& b) {
  size_t n = a.size(), m = b.empty() ? 0 : b[0].size();
  RatMatrix r(n, std::vector<Rat>(m));
  for (size_t i = 0; i < n; ++i) {
    for (size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (size_t j = 0; j < m; ++j) r[i][j] += a[i][k] * b[k][j];
    }
  }
  return r;
}

int rat_rank(RatMatrix m) {
  RatEchelon E(m.empty() ? 0 : static_cast<int>(m[0].size()));
  for (auto& row : m) {
    SparseVec v;
    for (size_t j = 0; j < row.size(); ++j) {
      if (row[j] != 0) v.emplace_back(static_cast<int>(j), row[j]);
    }
    E.add_row(v);
  }
  return E.rank();
}

}  // namespace mgr
