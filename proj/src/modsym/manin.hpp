#pragma once

#include <array>
#include <vector>

#include "congruence/subgroup.hpp"
#include "exactalg/numtheory.hpp"

namespace mgr {

using Mat2 = std::array<int64_t, 4>;  // a, b, c, d

// Pairs (u, v) mod n with gcd(u, v, n) = 1, up to scaling by +-H.  A symbol
// on (-u, -v) equals (-1)^k times the symbol on (u, v).
class PairClasses {
 public:
  PairClasses(const SubgroupH& H, int weight);

  int64_t level() const { return n_; }
  int count() const { return static_cast<int>(reps_.size()); }
  std::pair<int64_t, int64_t> rep(int c) const { return reps_[c]; }
  // Class of (u, v) and the sign carrying the class representative to it;
  // class -1 when (u, v) is not of order n, sign 0 when the class vanishes.
  std::pair<int, int> lookup(int64_t u, int64_t v) const {
    size_t idx = static_cast<size_t>(mod64(u, n_) * n_ + mod64(v, n_));
    return {cls_[idx], sign_[idx]};
  }

 private:
  int64_t n_;
  std::vector<std::pair<int64_t, int64_t>> reps_;
  std::vector<int> cls_;
  std::vector<int8_t> sign_;
};

// Row i holds the coefficients of (aX + bY)^i (cX + dY)^(w - i) on
// X^j Y^(w - j), w = k - 2.
std::vector<std::vector<Int>> monomial_action(const Mat2& g, int weight);

// Integer matrices [[a, b], [c, d]] with ad - bc = n, a > b >= 0, d > c >= 0.
std::vector<Mat2> heilbronn_merel(int64_t n);

}  // namespace mgr
