#include "eigen/eigen.hpp"

#include <algorithm>
#include <numeric>

namespace mgr {

namespace {

struct Item {
  FqField F;
  FqMatrix W;  // rows in reduced echelon form
  std::vector<int> piv;
  std::vector<FqElem> vals;
};

FqMatrix in_field(const FqMatrix& A, const FqField& F) {
  if (A.field() == F) return A;
  return A.map_field(F, F.zero());  // prime-field entries keep their codes
}

FqPoly map_poly(const FqPoly& g, const FieldEmbedding& emb) {
  std::vector<FqElem> c;
  for (auto x : g.coeffs()) c.push_back(emb(x));
  return FqPoly(emb.target, c);
}

Item sub_item(const Item& it, const FqMatrix& K, FqElem value) {
  Item out{it.F, K * it.W, {}, it.vals};
  out.piv = out.W.rref();
  out.vals.push_back(value);
  return out;
}

FqElem pow_signed(const FqField& F, FqElem a, int64_t e, uint64_t ell) {
  int64_t m = static_cast<int64_t>(ell) - 1;
  return F.pow(a, static_cast<uint64_t>(mod64(e, m)));
}

}  // namespace

FqElem Eigensystem::diamond_value(int64_t d) const {
  if (level == 1) return field.one();
  int64_t r = mod64(d, level);
  auto it = diamond.find(r);
  if (it == diamond.end()) throw DomainError("invalid_argument", "no diamond value for " + std::to_string(d) + " mod " + std::to_string(level));
  return it->second;
}

Eigensystem Eigensystem::mapped(const FieldEmbedding& emb) const {
  Eigensystem s = *this;
  s.field = emb.target;
  for (auto& [p, a] : s.ap) a = emb(a);
  for (auto& [d, a] : s.diamond) a = emb(a);
  return s;
}

std::vector<Eigensystem> decompose(const std::vector<HeckeOperator>& ops, const FqField& F, int dim, int64_t level, int weight) {
  std::vector<Eigensystem> out;
  if (dim == 0) return out;
  const uint64_t ell = F.ell();
  std::vector<Item> items;
  {
    Item start{F, FqMatrix::identity(F, dim), {}, {}};
    for (int i = 0; i < dim; ++i) start.piv.push_back(i);
    items.push_back(std::move(start));
  }
  for (const auto& op : ops) {
    if (op.matrix.rows() != dim || op.matrix.cols() != dim) throw DomainError("invalid_argument", "operator size differs from the space");
    std::vector<Item> next;
    for (auto& it : items) {
      FqMatrix Ar = restrict_to(it.W, it.piv, in_field(op.matrix, it.F));
      auto facs = poly_factor_fq(Ar.charpoly());
      if (facs.size() == 1 && facs[0].factor.degree() == 1) {
        it.vals.push_back(it.F.neg(facs[0].factor.coeffs()[0]));
        next.push_back(std::move(it));
        continue;
      }
      for (const auto& pf : facs) {
        FqMatrix K = Ar.eval_poly(pf.factor).pow(static_cast<uint64_t>(pf.multiplicity)).left_kernel();
        if (pf.factor.degree() == 1) {
          next.push_back(sub_item(it, K, it.F.neg(pf.factor.coeffs()[0])));
          continue;
        }
        // extend so that the factor splits; keep the generalized eigenspace of its least root
        FqField F2 = FqField::make(ell, it.F.degree() * pf.factor.degree());
        FieldEmbedding emb = canonical_embedding(it.F, F2);
        Item ext{F2, (K * it.W).map_field(F2, emb.image_of_gen), {}, {}};
        ext.piv = ext.W.rref();
        for (auto v : it.vals) ext.vals.push_back(emb(v));
        auto roots = poly_roots(map_poly(pf.factor, emb));
        FqElem alpha = roots.front();
        FqMatrix A2 = restrict_to(ext.W, ext.piv, in_field(op.matrix, F2));
        FqMatrix shifted = A2 - FqMatrix::identity(F2, A2.rows()).scale(alpha);
        FqMatrix K2 = shifted.pow(static_cast<uint64_t>(pf.multiplicity)).left_kernel();
        next.push_back(sub_item(ext, K2, alpha));
      }
    }
    items = std::move(next);
  }
  int total = 0;
  for (size_t idx = 0; idx < items.size(); ++idx) {
    const auto& it = items[idx];
    Eigensystem s;
    s.level = level;
    s.weight = weight;
    s.field = it.F;
    s.multiplicity = it.W.rows();
    for (size_t t = 0; t < ops.size(); ++t) {
      if (ops[t].kind == HeckeOperator::Kind::Hecke) {
        s.ap[ops[t].index] = it.vals[t];
      } else {
        s.diamond[ops[t].index] = it.vals[t];
      }
    }
    if (level > 1) s.diamond[1] = it.F.one();
    s.provenance = "L" + std::to_string(level) + "_W" + std::to_string(weight) + "#" + std::to_string(idx);
    total += s.multiplicity * it.F.degree();
    out.push_back(std::move(s));
  }
  if (total != dim) throw DomainError("internal", "eigenspace decomposition is incomplete");
  return out;
}

std::vector<HeckeOperator> space_operators(const ReducedSpace& R, const std::vector<int64_t>& primes, bool include_bad) {
  std::vector<HeckeOperator> ops;
  int64_t n = R.source().ambient->level();
  uint64_t ell = R.field().ell();
  for (int64_t p : primes) {
    if (!include_bad && (n % p == 0 || static_cast<uint64_t>(p) == ell)) continue;
    ops.push_back({HeckeOperator::Kind::Hecke, p, R.hecke(p)});
  }
  for (int64_t d = 2; d < n; ++d) {
    if (std::gcd(d, n) == 1) ops.push_back({HeckeOperator::Kind::Diamond, d, R.diamond(d)});
  }
  return ops;
}

std::vector<Eigensystem> decompose_space(const ReducedSpace& R, const std::vector<int64_t>& primes, bool include_bad) {
  const auto& amb = *R.source().ambient;
  return decompose(space_operators(R, primes, include_bad), R.field(), R.dimension(), amb.level(), amb.weight());
}

Eigensystem twist_eigensystem(const Eigensystem& sys, int64_t j) {
  Eigensystem s = sys;
  const FqField& F = s.field;
  for (auto& [p, a] : s.ap) {
    if (static_cast<uint64_t>(p) == s.ell()) continue;
    a = F.mul(a, pow_signed(F, F.from_int(p), j, s.ell()));
  }
  return s;
}

bool determinant_relation(const Eigensystem& f, const Eigensystem& g, int64_t i, const FieldEmbedding& ef, const FieldEmbedding& eg) {
  const FqField& C = ef.target;
  uint64_t ell = C.ell();
  int64_t L = std::lcm(std::lcm(f.level, g.level), static_cast<int64_t>(ell));
  for (int64_t d = 1; d < L; ++d) {
    if (std::gcd(d, L) != 1) continue;
    FqElem x = C.from_int(d % static_cast<int64_t>(ell));
    FqElem lhs = C.mul(ef(f.diamond_value(d)), pow_signed(C, x, f.weight - 1, ell));
    FqElem rhs = C.mul(eg(g.diamond_value(d)), pow_signed(C, x, g.weight - 1 + 2 * i, ell));
    if (lhs != rhs) return false;
  }
  return true;
}

MatchReport match_twist(const Eigensystem& f, const Eigensystem& g, int64_t i, int64_t bound, bool include_bad) {
  if (f.ell() != g.ell()) throw DomainError("no_common_embedding", "systems live in different characteristics");
  const uint64_t ell = f.ell();
  MatchReport rep;
  rep.i = i;
  int r = std::lcm(f.field.degree(), g.field.degree());
  FqField C = FqField::make(ell, r);
  rep.field = C;
  FieldEmbedding eg = canonical_embedding(g.field, C);
  auto efs = all_embeddings(f.field, C);
  if (efs.empty()) throw DomainError("no_common_embedding", "no embedding into a common field");

  for (int64_t p : primes_up_to(bound)) {
    bool bad = f.is_bad_prime(p) || g.is_bad_prime(p);
    if (bad && !include_bad) {
      rep.skipped.push_back(p);
    } else if (f.ap.count(p) && g.ap.count(p)) {
      rep.checked.push_back(p);
    }
  }

  // report the embedding that survives longest when none matches
  long best_reach = -1;
  const FieldEmbedding* chosen = &efs.front();
  for (const auto& ef : efs) {
    size_t t = 0;
    for (; t < rep.checked.size(); ++t) {
      int64_t p = rep.checked[t];
      FqElem lhs = ef(f.ap.at(p));
      FqElem rhs = static_cast<uint64_t>(p) == ell
                       ? (i == 0 ? eg(g.ap.at(p)) : C.zero())
                       : C.mul(pow_signed(C, C.from_int(p % static_cast<int64_t>(ell)), i, ell), eg(g.ap.at(p)));
      if (lhs != rhs) break;
    }
    if (t == rep.checked.size()) {
      rep.verdict = true;
      rep.first_failure.reset();
      chosen = &ef;
      break;
    }
    if (static_cast<long>(t) > best_reach) {
      best_reach = static_cast<long>(t);
      rep.first_failure = rep.checked[t];
      chosen = &ef;
    }
  }
  rep.embedding = chosen->image_of_gen;

  bool same_character = f.level == g.level;
  if (same_character) {
    for (auto& [d, a] : f.diamond) {
      if (!g.diamond.count(d) || (*chosen)(a) != eg(g.diamond.at(d))) {
        same_character = false;
        break;
      }
    }
  }
  if (same_character) {
    rep.weight_congruence = mod64(f.weight - g.weight - 2 * i, static_cast<int64_t>(ell) - 1) == 0;
  } else {
    rep.determinant = determinant_relation(f, g, i, *chosen, eg);
  }
  return rep;
}

}  // namespace mgr
