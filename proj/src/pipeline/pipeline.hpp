#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "congruence/subgroup.hpp"
#include "eigen/eigen.hpp"

namespace mgr {

// Spaces built so far, shared across pipeline stages.
class Workspace {
 public:
  explicit Workspace(SpaceOptions opts = {}) : opts_(std::move(opts)) {}
  SpacePtr space(const SubgroupH& H, int weight);
  const SpaceOptions& options() const { return opts_; }
  // Every space built so far, in key order.
  std::vector<SpacePtr> spaces() const;

 private:
  SpaceOptions opts_;
  std::map<std::tuple<int64_t, std::vector<int64_t>, int>, SpacePtr> spaces_;
};

// [SL2(Z) : Gamma_1(n)]
int64_t index_gamma1(int64_t n);

// floor(index(Gamma_1(level)) (ell^2 - 1 + max(k, k2)) / 12)
int64_t sturm_bound(int64_t level, uint64_t ell, int k, int k2);

struct FormSelector {
  // a_p (U_p when p divides the level) as integers, compared mod ell
  std::vector<std::pair<int64_t, Int>> coefficients;
  // (p, P): integer polynomial P with P(a_p) = 0 in the residue field
  std::vector<std::pair<int64_t, std::string>> relations;
  std::optional<std::string> character;
  std::optional<int> index;
};

// Lines "p a_p"; '#' starts a comment.
std::vector<std::pair<int64_t, Int>> read_form_file(const std::string& path);

struct InputForm {
  int64_t level = 1;
  int weight = 12;
  uint64_t ell = 0;
  std::optional<DirichletCharacter> character;
  FormSelector selector;
  Eigensystem system;
  // a_p known for every prime up to this bound
  int64_t bound = 0;
  int candidates = 0;
  int64_t conductor = 1;
};

InputForm select_input_form(Workspace& ws, int64_t level, int weight, uint64_t ell, const FormSelector& sel, int64_t bound);

// Smallest divisor d of the level with eps-bar trivial on units = 1 mod d.
int64_t residual_conductor(const Eigensystem& s);

struct TwistResult {
  int64_t i = 0;
  int weight = 2;  // k'
  int64_t level = 1;
  Eigensystem g;
  MatchReport match;
  int64_t bound = 0;
  bool truncated = false;
  bool shortcut = false;  // ell >= k - 1
};

// nullopt truncate means the full bound.
TwistResult find_twist(Workspace& ws, const InputForm& f, std::optional<int64_t> truncate);

// Bound on primes the input form must carry for realize.
int64_t realize_coefficient_bound(int64_t level, int weight, uint64_t ell, std::optional<int64_t> truncate);

// {x mod N' : eps-bar(x) (x mod ell)^(k-2-2i) = 1}
SubgroupH h_from_system(const Eigensystem& f, int64_t level_prime, int64_t i);

struct LevelAttempt {
  int64_t level = 1;
  int dimension = 0;
  int systems = 0;
  bool matched = false;
  int64_t bound = 0;
};

struct RealizationReport {
  int64_t i = 0;
  std::optional<TwistResult> twist;
  int64_t twist_level = 1;  // M
  int64_t level_prime = 1;  // N'
  SubgroupH H;
  int64_t index = 1;
  std::optional<int64_t> predicted_index;
  bool gamma0 = false;
  std::optional<bool> gamma0_predicted;
  int64_t d1 = 0;
  int64_t dH = 0;
  int64_t invariant_dimension = 0;
  Eigensystem f2;
  int64_t f2_level = 1;
  MatchReport match;
  bool determinant = false;
  std::map<int64_t, FqPoly> minpolys;
  bool heuristic = false;
  std::vector<LevelAttempt> attempts;
  std::vector<std::string> caveats;
};

RealizationReport realize(Workspace& ws, const InputForm& f, std::optional<int64_t> truncate);

struct AuditEntry {
  SubgroupH subgroup;
  bool contained = false;
  bool matched = false;
};

struct AuditRecord {
  int64_t level_prime = 1;
  SubgroupH H;
  std::vector<AuditEntry> entries;
  bool consistent = true;
};

AuditRecord largest_subgroup_audit(Workspace& ws, const InputForm& f, int64_t i, int64_t bound);

}  // namespace mgr
