#include "modsym/space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mgr {

namespace {

struct SignedUnionFind {
  std::vector<int> parent;
  std::vector<int8_t> sign;  // x = sign * parent
  std::vector<char> zero;    // meaningful at roots

  explicit SignedUnionFind(size_t n) : parent(n), sign(n, 1), zero(n, 0) { std::iota(parent.begin(), parent.end(), 0); }

  std::pair<int, int> find(int x) {
    int s = 1, r = x;
    while (parent[r] != r) {
      s *= sign[r];
      r = parent[r];
    }
    // compress
    int cur = x, cs = s;
    while (parent[cur] != cur) {
      int next = parent[cur];
      int ns = cs * sign[cur];
      parent[cur] = r;
      sign[cur] = static_cast<int8_t>(cs);
      cur = next;
      cs = ns;
    }
    return {r, s};
  }
  // x = s * y
  void relate(int x, int y, int s) {
    auto [rx, sx] = find(x);
    auto [ry, sy] = find(y);
    int t = sx * s * sy;  // rx = t * ry
    if (rx == ry) {
      if (t == -1) zero[rx] = 1;
      return;
    }
    parent[rx] = ry;
    sign[rx] = static_cast<int8_t>(t);
    if (zero[rx]) zero[ry] = 1;
  }
  void kill(int x) { zero[find(x).first] = 1; }
};

Int content(const std::vector<Int>& v) {
  Int g = 0;
  for (const auto& x : v) {
    if (x != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  }
  return g;
}

// Primitive integral multiple of a rational row.
std::vector<Int> primitive_row(const std::vector<Rat>& v) {
  Int den = 1;
  for (const auto& x : v) {
    if (x != 0) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  }
  std::vector<Int> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = Int(v[i] * den);
  Int g = content(out);
  if (g > 1) {
    for (auto& x : out) x /= g;
  }
  return out;
}

// Hermite basis of span(rows) + d Z^n, entries kept reduced mod d.
IntMatrix hnf_mod(const IntMatrix& rows, const Int& d, size_t n) {
  IntMatrix T(n, std::vector<Int>(n, 0));
  for (size_t i = 0; i < n; ++i) T[i][i] = d;
  auto reduce = [&d](std::vector<Int>& v) {
    for (auto& x : v) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
  };
  for (auto v : rows) {
    reduce(v);
    for (size_t c = 0; c < n; ++c) {
      if (v[c] == 0) continue;
      Int g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), T[c][c].get_mpz_t(), v[c].get_mpz_t());
      Int a = T[c][c] / g, b = v[c] / g;
      for (size_t j = c; j < n; ++j) {
        Int top = s * T[c][j] + t * v[j];
        Int bot = a * v[j] - b * T[c][j];
        T[c][j] = std::move(top);
        v[j] = std::move(bot);
      }
      reduce(T[c]);
      reduce(v);
      if (T[c][c] == 0) T[c][c] = d;
    }
  }
  // echelon with positive diagonal dividing d; clear above the diagonal
  for (size_t c = 0; c < n; ++c) {
    for (size_t i = 0; i < c; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), T[i][c].get_mpz_t(), T[c][c].get_mpz_t());
      if (q == 0) continue;
      for (size_t j = c; j < n; ++j) T[i][j] -= q * T[c][j];
    }
  }
  return T;
}

RatMatrix rat_inverse(const IntMatrix& m) {
  size_t n = m.size();
  RatMatrix a(n, std::vector<Rat>(2 * n));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
    a[i][n + i] = 1;
  }
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw DomainError("internal", "singular lattice basis");
    std::swap(a[p], a[c]);
    Rat inv = 1 / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rat f = a[r][c];
      for (size_t j = c; j < 2 * n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  RatMatrix out(n, std::vector<Rat>(n));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) out[i][j] = a[i][n + j];
  }
  return out;
}

}  // namespace

std::shared_ptr<const ModularSymbols> ModularSymbols::build(const SubgroupH& H, int weight, const SpaceOptions& opts) {
  if (weight < 2) throw DomainError("invalid_argument", "weight must be at least 2");
  int64_t n = H.level();
  if (n * n * static_cast<int64_t>(weight - 1) > opts.max_generators * 4) {
    throw DomainError("resource_limit", "modular symbol presentation exceeds the generator cap");
  }
  std::shared_ptr<ModularSymbols> s(new ModularSymbols(H, weight));
  s->opts_ = opts;
  if (s->generator_count() > opts.max_generators) {
    throw DomainError("resource_limit", "modular symbol presentation exceeds the generator cap");
  }
  s->present();
  s->compute_boundary();
  return s;
}

std::string ModularSymbols::group_label() const {
  if (H_.size() == 1) return "G1";
  if (H_.size() == euler_phi(H_.level())) return "G0";
  std::string s = "H";
  auto g = H_.generators();
  for (size_t i = 0; i < g.size(); ++i) s += (i ? "-" : "") + std::to_string(g[i]);
  return s;
}

void ModularSymbols::present() {
  const int w = k_ - 2;
  const int C = classes_.count();
  const int G = C * (w + 1);
  auto gen = [w](int c, int i) { return c * (w + 1) + i; };
  SignedUnionFind uf(static_cast<size_t>(G));

  for (int c = 0; c < C; ++c) {
    auto [u, v] = classes_.rep(c);
    if (classes_.lookup(u, v).second == 0) {
      for (int i = 0; i <= w; ++i) uf.kill(gen(c, i));
      continue;
    }
    auto [c2, s2] = classes_.lookup(v, -u);
    for (int i = 0; i <= w; ++i) {
      if (s2 == 0) {
        uf.kill(gen(c, i));
        continue;
      }
      int sign = ((i % 2) ? 1 : -1) * s2;  // x = -(-1)^i s2 y
      uf.relate(gen(c, i), gen(c2, w - i), sign);
    }
  }

  // columns for the surviving roots
  std::vector<int> root_col(G, -1);
  int ncols = 0;
  for (int g = 0; g < G; ++g) {
    auto [r, s] = uf.find(g);
    (void)s;
    if (r == g && !uf.zero[g]) root_col[g] = ncols++;
  }
  gen_col_.assign(G, {-1, 0});
  for (int g = 0; g < G; ++g) {
    auto [r, s] = uf.find(g);
    if (!uf.zero[r]) gen_col_[g] = {root_col[r], s};
  }

  RatEchelon ech(ncols);
  const Mat2 tau{0, -1, 1, -1}, tau2{-1, 1, -1, 0};
  auto ptau = monomial_action(tau, k_), ptau2 = monomial_action(tau2, k_);
  std::map<int, Rat> acc;
  auto put = [&](int g, const Int& coeff) {
    auto [col, s] = gen_col_[g];
    if (col < 0 || coeff == 0) return;
    acc[col] += Rat(coeff * s);
  };
  for (int c = 0; c < C; ++c) {
    auto [u, v] = classes_.rep(c);
    auto [c1, s1] = classes_.lookup(v, -u - v);
    auto [c2, s2] = classes_.lookup(-u - v, u);
    if (c1 < c || c2 < c) continue;
    for (int i = 0; i <= w; ++i) {
      acc.clear();
      put(gen(c, i), Int(1));
      for (int j = 0; j <= w; ++j) {
        if (s1) put(gen(c1, j), ptau[i][j] * s1);
        if (s2) put(gen(c2, j), ptau2[i][j] * s2);
      }
      SparseVec row;
      for (auto& [k, a] : acc) {
        if (a != 0) row.emplace_back(k, a);
      }
      ech.add_row(row);
    }
  }
  ech.finalize();

  std::vector<int> free = ech.free_columns();
  dim_ = static_cast<int>(free.size());
  std::vector<int> slot(ncols, -1);
  for (int j = 0; j < dim_; ++j) slot[free[j]] = j;
  std::vector<SparseVec> image(ncols);
  for (int j = 0; j < dim_; ++j) image[free[j]].emplace_back(j, Rat(1));
  for (const auto& row : ech.rows()) {
    int p = row.front().first;
    for (auto& [k, a] : row) {
      if (k != p) image[p].emplace_back(slot[k], -a);
    }
  }

  std::vector<int> col_root(ncols);
  for (int g = 0; g < G; ++g) {
    if (root_col[g] >= 0) col_root[root_col[g]] = g;
  }
  for (int j = 0; j < dim_; ++j) {
    int g = col_root[free[j]];
    basis_gens_.emplace_back(g / (w + 1), g % (w + 1));
  }

  bool integral = true;
  for (const auto& v : image) {
    for (auto& [k, a] : v) integral = integral && a.get_den() == 1;
  }
  col_image_.assign(ncols, {});
  if (integral) {
    for (int c = 0; c < ncols; ++c) {
      for (auto& [k, a] : image[c]) col_image_[c].emplace_back(k, a.get_num());
    }
    return;
  }
  // The Manin symbols span a lattice strictly containing the basis symbols.
  Int den = 1;
  for (const auto& v : image) {
    for (auto& [k, a] : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), a.get_den_mpz_t());
  }
  IntMatrix gens;
  for (const auto& v : image) {
    std::vector<Int> r(dim_, 0);
    for (auto& [k, a] : v) r[k] = Int(a * den);
    gens.push_back(std::move(r));
  }
  lattice_num_ = hnf_mod(gens, den, static_cast<size_t>(dim_));
  lattice_den_ = den;
  RatMatrix inv = rat_inverse(lattice_num_);  // (B/den)^-1 = den * inv
  for (int c = 0; c < ncols; ++c) {
    std::vector<Rat> r(dim_, 0);
    for (auto& [k, a] : image[c]) {
      for (int j = 0; j < dim_; ++j) r[j] += a * inv[k][j];
    }
    for (int j = 0; j < dim_; ++j) {
      Rat x = r[j] * den;
      if (x == 0) continue;
      if (x.get_den() != 1) throw DomainError("internal", "Manin symbol outside its lattice");
      col_image_[c].emplace_back(j, x.get_num());
    }
  }
}

void ModularSymbols::add_generator(Accum& acc, int c, int i, const Int& coeff) const {
  auto [col, s] = gen_col_[static_cast<size_t>(c) * (k_ - 1) + i];
  if (col < 0) return;
  for (auto& [j, x] : col_image_[col]) {
    if (s > 0) {
      acc[j] += coeff * x;
    } else {
      acc[j] -= coeff * x;
    }
  }
}

void ModularSymbols::add_image(Accum& acc, int c, int i, const Mat2& g, const std::vector<std::vector<Int>>& poly, const Int& coeff) const {
  auto [u, v] = classes_.rep(c);
  int64_t n = level();
  int64_t u2 = mod64(u * g[0] + v * g[2], n), v2 = mod64(u * g[1] + v * g[3], n);
  auto [c2, s] = classes_.lookup(u2, v2);
  if (c2 < 0 || s == 0) return;
  const auto& row = poly[i];
  for (int j = 0; j < k_ - 1; ++j) {
    if (row[j] == 0) continue;
    add_generator(acc, c2, j, s > 0 ? Int(coeff * row[j]) : Int(-coeff * row[j]));
  }
}

IntMatrix ModularSymbols::to_lattice_rows(std::vector<Accum> rows) const {
  if (lattice_num_.empty()) return rows;
  IntMatrix out(dim_, std::vector<Int>(dim_, 0));
  for (int i = 0; i < dim_; ++i) {
    for (int k = 0; k < dim_; ++k) {
      if (lattice_num_[i][k] == 0) continue;
      for (int j = 0; j < dim_; ++j) out[i][j] += lattice_num_[i][k] * rows[k][j];
    }
    for (int j = 0; j < dim_; ++j) {
      if (!mpz_divisible_p(out[i][j].get_mpz_t(), lattice_den_.get_mpz_t())) {
        throw DomainError("saturation_failure", "operator does not preserve the symbol lattice");
      }
      out[i][j] /= lattice_den_;
    }
  }
  return out;
}

IntMatrixPtr ModularSymbols::cached(const std::string& label, const std::function<IntMatrix()>& make) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = ops_.find(label);
  if (it != ops_.end()) return it->second;
  std::string key = group_label() + "_" + label;
  std::optional<IntMatrix> m;
  if (opts_.store) {
    m = opts_.store->load(level(), k_, key);
    if (m && (static_cast<int>(m->size()) != dim_ || (dim_ > 0 && static_cast<int>((*m)[0].size()) != dim_))) m.reset();
  }
  if (!m) {
    m = make();
    if (opts_.store) opts_.store->store(level(), k_, key, *m);
  }
  auto p = std::make_shared<const IntMatrix>(std::move(*m));
  ops_[label] = p;
  return p;
}

namespace {

using I128 = __int128;

void add_i128(Int& acc, I128 v) {
  bool neg = v < 0;
  unsigned __int128 m = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  mpz_class t(static_cast<unsigned long>(static_cast<uint64_t>(m >> 64)));
  t <<= 64;
  t += static_cast<unsigned long>(static_cast<uint64_t>(m));
  if (neg) {
    acc -= t;
  } else {
    acc += t;
  }
}

// Rows of the action on monomials X^j Y^(w-j), in 128-bit integers.
void monomial_action_i128(const Mat2& g, int w, std::vector<I128>& pa, std::vector<I128>& pb, std::vector<I128>& out) {
  auto powers = [w](int64_t x, int64_t y, std::vector<I128>& p) {
    // p[e * (w + 1) + j]: coefficient of X^j Y^(e - j) in (xX + yY)^e
    std::fill(p.begin(), p.end(), 0);
    p[0] = 1;
    for (int e = 1; e <= w; ++e) {
      for (int j = 0; j < e; ++j) {
        p[e * (w + 1) + j + 1] += p[(e - 1) * (w + 1) + j] * x;
        p[e * (w + 1) + j] += p[(e - 1) * (w + 1) + j] * y;
      }
    }
  };
  powers(g[0], g[1], pa);
  powers(g[2], g[3], pb);
  std::fill(out.begin(), out.end(), 0);
  for (int i = 0; i <= w; ++i) {
    for (int s = 0; s <= i; ++s) {
      I128 a = pa[i * (w + 1) + s];
      if (a == 0) continue;
      for (int t = 0; t <= w - i; ++t) out[i * (w + 1) + s + t] += a * pb[(w - i) * (w + 1) + t];
    }
  }
}

}  // namespace

IntMatrixPtr ModularSymbols::hecke(int64_t n) const {
  if (n < 1) throw DomainError("invalid_argument", "Hecke index must be positive");
  return cached("T" + std::to_string(n), [this, n] {
    auto family = heilbronn_merel(n);
    const int w = k_ - 2;
    // every monomial coefficient is at most (2n)^w
    long double largest = std::pow(2.0L * static_cast<long double>(n), static_cast<long double>(w));
    if (largest >= 0x1p126L) {
      std::vector<Accum> rows(dim_, Accum(dim_, 0));
      Int one(1);
      for (int j = 0; j < dim_; ++j) {
        auto [c, i] = basis_gens_[j];
        for (const auto& h : family) add_image(rows[j], c, i, h, monomial_action(h, k_), one);
      }
      return to_lattice_rows(std::move(rows));
    }
    const size_t ncols = col_image_.size();
    // one matrix adds at most w + 1 terms to a column; beyond that, add each term straight into GMP
    const bool direct = largest * (w + 1) >= 0x1p126L;
    const int64_t flush_every = direct ? 1 : std::max<int64_t>(1, static_cast<int64_t>(0x1p126L / (largest * (w + 1))));
    std::vector<std::vector<I128>> fast(dim_, std::vector<I128>(ncols, 0));
    std::vector<std::vector<Int>> slow(dim_, std::vector<Int>(ncols, 0));
    auto flush = [&] {
      for (int j = 0; j < dim_; ++j)
        for (size_t c = 0; c < ncols; ++c)
          if (fast[j][c] != 0) {
            add_i128(slow[j][c], fast[j][c]);
            fast[j][c] = 0;
          }
    };
    std::vector<I128> pa((w + 1) * (w + 1)), pb((w + 1) * (w + 1)), act((w + 1) * (w + 1));
    const int64_t lev = level();
    int64_t count = 0;
    for (const auto& h : family) {
      if (w > 0) monomial_action_i128(h, w, pa, pb, act);
      for (int j = 0; j < dim_; ++j) {
        auto [c, i] = basis_gens_[j];
        auto [u, v] = classes_.rep(c);
        int64_t u2 = mod64(u * h[0] + v * h[2], lev), v2 = mod64(u * h[1] + v * h[3], lev);
        auto [c2, s] = classes_.lookup(u2, v2);
        if (c2 < 0 || s == 0) continue;
        for (int m = 0; m <= w; ++m) {
          I128 coef = w > 0 ? act[i * (w + 1) + m] : 1;
          if (coef == 0) continue;
          auto [col, s2] = gen_col_[static_cast<size_t>(c2) * (k_ - 1) + m];
          if (col < 0) continue;
          if (direct) {
            add_i128(slow[j][col], (s * s2 > 0) ? coef : -coef);
          } else {
            fast[j][col] += (s * s2 > 0) ? coef : -coef;
          }
        }
      }
      if (++count % flush_every == 0) flush();
    }
    flush();
    std::vector<Accum> rows(dim_, Accum(dim_, 0));
    for (int j = 0; j < dim_; ++j)
      for (size_t c = 0; c < ncols; ++c) {
        if (slow[j][c] == 0) continue;
        for (const auto& [t, x] : col_image_[c]) rows[j][t] += slow[j][c] * x;
      }
    return to_lattice_rows(std::move(rows));
  });
}

IntMatrixPtr ModularSymbols::diamond(int64_t d) const {
  int64_t n = level();
  d = mod64(d, n);
  if (n > 1 && std::gcd(d, n) != 1) throw DomainError("invalid_argument", "diamond operator needs a unit");
  return cached("D" + std::to_string(d), [this, d] {
    std::vector<std::vector<Int>> ident(k_ - 1, std::vector<Int>(k_ - 1, 0));
    for (int i = 0; i < k_ - 1; ++i) ident[i][i] = 1;
    std::vector<Accum> rows(dim_, Accum(dim_, 0));
    Mat2 g{d, 0, 0, d};
    for (int j = 0; j < dim_; ++j) add_image(rows[j], basis_gens_[j].first, basis_gens_[j].second, g, ident, Int(1));
    return to_lattice_rows(std::move(rows));
  });
}

IntMatrixPtr ModularSymbols::star() const {
  return cached("star", [this] {
    Mat2 g{-1, 0, 0, 1};
    auto poly = monomial_action(g, k_);
    std::vector<Accum> rows(dim_, Accum(dim_, 0));
    for (int j = 0; j < dim_; ++j) add_image(rows[j], basis_gens_[j].first, basis_gens_[j].second, g, poly, Int(1));
    return to_lattice_rows(std::move(rows));
  });
}

std::vector<Int> ModularSymbols::symbol(int i, int64_t u, int64_t v) const {
  if (i < 0 || i > k_ - 2) throw DomainError("invalid_argument", "monomial index out of range");
  auto [c, s] = classes_.lookup(u, v);
  if (c < 0) throw DomainError("invalid_argument", "pair is not of order the level");
  Accum acc(dim_, 0);
  if (s != 0) add_generator(acc, c, i, Int(s));
  return acc;
}

void ModularSymbols::compute_boundary() {
  const int64_t n = level();
  std::vector<std::pair<int64_t, int64_t>> hs;  // (h, h^-1)
  for (int64_t h : H_.elements()) hs.emplace_back(h, n == 1 ? 0 : *invmod64(h, n));
  std::map<std::pair<int64_t, int64_t>, int> cusp_index;
  // class key of the cusp a/c and the sign of the symbol relative to it
  auto cusp = [&](int64_t a, int64_t c) -> std::pair<int, int> {
    c = mod64(c, n);
    int64_t g = std::gcd(c, n);
    std::pair<int64_t, int64_t> best{-1, -1};
    bool plus = false, minus = false;
    for (int s : {1, -1}) {
      for (auto [h, hi] : hs) {
        std::pair<int64_t, int64_t> key{mod64(s * h * c, n), mod64(s * hi * a, g)};
        if (best.first < 0 || key < best) {
          best = key;
          plus = minus = false;
        }
        if (key == best) (s > 0 ? plus : minus) = true;
      }
    }
    int sign = 1;
    if (k_ % 2) sign = (plus && minus) ? 0 : (plus ? 1 : -1);
    auto it = cusp_index.find(best);
    int idx;
    if (it == cusp_index.end()) {
      idx = static_cast<int>(cusp_index.size());
      cusp_index[best] = idx;
    } else {
      idx = it->second;
    }
    return {idx, sign};
  };
  std::vector<std::map<int, Rat>> rows(dim_);
  for (int j = 0; j < dim_; ++j) {
    auto [c, i] = basis_gens_[j];
    auto [u, v] = classes_.rep(c);
    if (i == k_ - 2) {
      int64_t g = std::gcd(u, n);
      int64_t a = g == 1 ? 0 : *invmod64(mod64(v, g), g);
      auto [idx, s] = cusp(a, u);
      if (s) rows[j][idx] += s;
    }
    if (i == 0) {
      int64_t g = std::gcd(v, n);
      int64_t b = g == 1 ? 0 : mod64(-*invmod64(mod64(u, g), g), g);
      auto [idx, s] = cusp(b, v);
      if (s) rows[j][idx] -= s;
    }
  }
  int nc = static_cast<int>(cusp_index.size());
  RatMatrix free_rows(dim_, std::vector<Rat>(nc, 0));
  for (int j = 0; j < dim_; ++j) {
    for (auto& [idx, x] : rows[j]) free_rows[j][idx] = x;
  }
  if (lattice_num_.empty()) {
    boundary_ = std::move(free_rows);
    return;
  }
  boundary_.assign(dim_, std::vector<Rat>(nc, 0));
  for (int i = 0; i < dim_; ++i) {
    for (int k = 0; k < dim_; ++k) {
      if (lattice_num_[i][k] == 0) continue;
      Rat f = Rat(lattice_num_[i][k]) / lattice_den_;
      for (int j = 0; j < nc; ++j) boundary_[i][j] += f * free_rows[k][j];
    }
  }
}

namespace {

// Rows of s whose image under every condition matrix vanishes.
Subspace intersect_kernels(const Subspace& s, const std::vector<RatMatrix>& conds) {
  Subspace out = s;
  int m = s.dimension();
  if (m == 0) return out;
  int D = s.ambient->dimension();
  RatEchelon ech(m);
  for (const auto& A : conds) {
    int nc = A.empty() ? 0 : static_cast<int>(A[0].size());
    for (int t = 0; t < nc; ++t) {
      SparseVec col;
      for (int r = 0; r < m; ++r) {
        Rat x = 0;
        for (int j = 0; j < D; ++j) {
          if (s.basis[r][j] != 0 && A[j][t] != 0) x += Rat(s.basis[r][j]) * A[j][t];
        }
        if (x != 0) col.emplace_back(r, x);
      }
      ech.add_row(col);
    }
  }
  out.basis.clear();
  for (const auto& x : ech.kernel_basis()) {
    std::vector<Rat> v(D, 0);
    for (auto& [r, a] : x) {
      for (int j = 0; j < D; ++j) {
        if (s.basis[r][j] != 0) v[j] += a * s.basis[r][j];
      }
    }
    out.basis.push_back(primitive_row(v));
  }
  return out;
}

RatMatrix minus_identity(const IntMatrix& T) {
  RatMatrix A(T.size(), std::vector<Rat>(T.size()));
  for (size_t i = 0; i < T.size(); ++i) {
    for (size_t j = 0; j < T.size(); ++j) A[i][j] = T[i][j];
    A[i][i] -= 1;
  }
  return A;
}

}  // namespace

Subspace whole_space(const SpacePtr& s) {
  Subspace out;
  out.ambient = s;
  int D = s->dimension();
  out.basis.assign(D, std::vector<Int>(D, 0));
  for (int i = 0; i < D; ++i) out.basis[i][i] = 1;
  return out;
}

Subspace cuspidal_subspace(const Subspace& s) {
  if (s.cuspidal) return s;
  Subspace out = intersect_kernels(s, {s.ambient->boundary()});
  out.cuspidal = true;
  return out;
}

Subspace star_plus_subspace(const Subspace& s) {
  if (s.plus) return s;
  Subspace out = intersect_kernels(s, {minus_identity(*s.ambient->star())});
  out.plus = true;
  return out;
}

Subspace h_invariant_subspace(const Subspace& s, const SubgroupH& H) {
  if (H.level() != s.ambient->level()) throw DomainError("invalid_argument", "subgroup level differs from the space level");
  std::vector<RatMatrix> conds;
  for (int64_t h : H.generators()) conds.push_back(minus_identity(*s.ambient->diamond(h)));
  Subspace out = intersect_kernels(s, conds);
  out.invariant_under = H;
  return out;
}

Subspace plus_cuspidal(const SpacePtr& s) {
  Subspace w = whole_space(s);
  Subspace out = intersect_kernels(w, {s->boundary(), minus_identity(*s->star())});
  out.cuspidal = out.plus = true;
  return out;
}

FqMatrix reduce_matrix(const IntMatrix& m, const FqField& F) {
  int r = static_cast<int>(m.size()), c = r ? static_cast<int>(m[0].size()) : 0;
  FqMatrix out(F, r, c);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) {
      if (m[i][j] != 0) out.at(i, j) = F.from_mpz(m[i][j]);
    }
  }
  return out;
}

ReducedSpace::ReducedSpace(const Subspace& s, uint64_t ell) : src_(s), F_(FqField::make(ell, 1)) {
  int D = s.ambient->dimension();
  std::vector<std::vector<Rat>> rows;
  for (const auto& r : s.basis) rows.emplace_back(r.begin(), r.end());
  rows = saturate_at_prime(std::move(rows), ell);
  W_ = reduce_rows(rows, F_, D);
  pivots_ = W_.rref();
  if (static_cast<int>(pivots_.size()) != s.dimension()) throw DomainError("internal", "saturation lost rank");
}

FqMatrix ReducedSpace::restrict(const IntMatrix& T) const {
  if (dimension() == 0) return FqMatrix(F_, 0, 0);
  return restrict_to(W_, pivots_, reduce_matrix(T, F_));
}

}  // namespace mgr
