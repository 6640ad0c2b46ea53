#include "modsym/manin.hpp"

#include <numeric>

namespace mgr {

PairClasses::PairClasses(const SubgroupH& H, int weight) : n_(H.level()) {
  size_t nn = static_cast<size_t>(n_ * n_);
  cls_.assign(nn, -1);
  sign_.assign(nn, 0);
  std::vector<int64_t> scal;
  for (int64_t h : H.elements()) scal.push_back(h);
  int odd = weight % 2;
  for (int64_t u = 0; u < n_; ++u) {
    for (int64_t v = 0; v < n_; ++v) {
      if (n_ > 1 && std::gcd(std::gcd(u, v), n_) != 1) continue;
      size_t idx = static_cast<size_t>(u * n_ + v);
      if (cls_[idx] >= 0) continue;
      int c = static_cast<int>(reps_.size());
      reps_.emplace_back(u, v);
      bool dead = false;
      for (int s : {1, -1}) {
        for (int64_t h : scal) {
          int64_t m = s * h;
          size_t j = static_cast<size_t>(mod64(m * u, n_) * n_ + mod64(m * v, n_));
          int sg = (s < 0 && odd) ? -1 : 1;
          if (cls_[j] == c && sign_[j] != sg) dead = true;
          cls_[j] = c;
          sign_[j] = static_cast<int8_t>(sg);
        }
      }
      if (dead) {
        for (int s : {1, -1}) {
          for (int64_t h : scal) sign_[static_cast<size_t>(mod64(s * h * u, n_) * n_ + mod64(s * h * v, n_))] = 0;
        }
      }
    }
  }
}

std::vector<std::vector<Int>> monomial_action(const Mat2& g, int weight) {
  int w = weight - 2;
  // powers of the two linear forms as coefficient lists on X^j Y^(deg - j)
  auto powers = [w](int64_t x, int64_t y) {
    std::vector<std::vector<Int>> p(w + 1);
    p[0] = {Int(1)};
    for (int e = 1; e <= w; ++e) {
      p[e].assign(e + 1, 0);
      for (int j = 0; j < e; ++j) {
        p[e][j + 1] += p[e - 1][j] * Int(static_cast<long>(x));
        p[e][j] += p[e - 1][j] * Int(static_cast<long>(y));
      }
    }
    return p;
  };
  auto first = powers(g[0], g[1]);
  auto second = powers(g[2], g[3]);
  std::vector<std::vector<Int>> M(w + 1, std::vector<Int>(w + 1, 0));
  for (int i = 0; i <= w; ++i) {
    const auto& A = first[i];
    const auto& B = second[w - i];
    for (size_t s = 0; s < A.size(); ++s) {
      if (A[s] == 0) continue;
      for (size_t t = 0; t < B.size(); ++t) M[i][s + t] += A[s] * B[t];
    }
  }
  return M;
}

std::vector<Mat2> heilbronn_merel(int64_t n) {
  std::vector<Mat2> out;
  for (int64_t a = 1; a <= n; ++a) {
    for (int64_t d = 1; a + d <= n + 1; ++d) {
      int64_t t = a * d - n;
      if (t < 0) continue;
      if (t == 0) {
        for (int64_t c = 0; c < d; ++c) out.push_back({a, 0, c, d});
        for (int64_t b = 1; b < a; ++b) out.push_back({a, b, 0, d});
        continue;
      }
      // c = t / b < d forces b > t / d
      for (int64_t b = t / d + 1; b < a && b <= t; ++b) {
        if (t % b == 0 && t / b < d) out.push_back({a, b, t / b, d});
      }
    }
  }
  return out;
}

}  // namespace mgr
