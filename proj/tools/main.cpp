#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mgr/mgr.h"

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitSoftware = 70;

struct Session {
  mgr_session* s = nullptr;
  ~Session() { mgr_session_free(s); }
};

struct Form {
  mgr_form* f = nullptr;
  ~Form() { mgr_form_free(f); }
};

struct SpaceArgs {
  int64_t level = 1;
  std::string subgroup = "trivial";
  int weight = 2;
};

struct FormArgs {
  int64_t level = 1;
  int weight = 12;
  uint64_t ell = 0;
  std::vector<std::string> coefficients;  // p=a_p
  std::vector<std::string> relations;     // p=P(x)
  std::string character;
  int index = -1;
  std::string form_file;
  int64_t truncate = 0;
};

void add_space(CLI::App* cmd, SpaceArgs& a, bool weight) {
  cmd->add_option("--level", a.level, "level n")->required();
  cmd->add_option("--subgroup", a.subgroup, "full, trivial, pm1 or generators g1,g2,...")->capture_default_str();
  if (weight) cmd->add_option("--weight", a.weight, "weight k")->capture_default_str();
}

void add_form(CLI::App* cmd, FormArgs& a) {
  cmd->add_option("--level", a.level, "level N")->required();
  cmd->add_option("--weight", a.weight, "weight k")->capture_default_str();
  cmd->add_option("--ell", a.ell, "residue characteristic")->required();
  cmd->add_option("--a", a.coefficients, "coefficient p=a_p (repeatable)");
  cmd->add_option("--relation", a.relations, "p=P: a_p is a root of P mod the chosen prime (repeatable)");
  cmd->add_option("--character", a.character, "nebentypus literal n:g1^e1,...@m");
  cmd->add_option("--index", a.index, "pick the index-th matching eigensystem");
  cmd->add_option("--form-file", a.form_file, "file of lines 'p a_p'");
  cmd->add_option("--truncate-bound", a.truncate, "check primes up to P only (heuristic)");
}

// Splits "p=value"; false on malformed input.
bool split_pair(const std::string& s, int64_t& p, std::string& v) {
  auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0) return false;
  try {
    size_t pos = 0;
    p = std::stoll(s.substr(0, eq), &pos);
    if (pos != eq) return false;
  } catch (const std::exception&) {
    return false;
  }
  v = s.substr(eq + 1);
  return !v.empty();
}

int usage_error(const std::string& msg) {
  std::cerr << "mgr: " << msg << "\n";
  return kExitUsage;
}

// Takes the address so the status call is sequenced before the read.
int emit(mgr_status st, char** out) {
  if (*out) std::fputs(*out, stdout);
  mgr_string_free(*out);
  *out = nullptr;
  switch (st) {
    case MGR_OK: return 0;
    case MGR_DOMAIN_ERROR: return 2;
    case MGR_INVALID_ARGUMENT: return kExitUsage;
    default: return kExitSoftware;
  }
}

int build_form(const FormArgs& a, Form& form) {
  if (mgr_form_new(a.level, a.weight, a.ell, &form.f) != MGR_OK) return kExitSoftware;
  if (!a.form_file.empty()) {
    char* err = nullptr;
    mgr_status st = mgr_form_load_file(form.f, a.form_file.c_str(), &err);
    if (st != MGR_OK) return emit(st, &err);
  }
  for (const auto& c : a.coefficients) {
    int64_t p;
    std::string v;
    if (!split_pair(c, p, v) || mgr_form_set_coefficient(form.f, p, v.c_str()) != MGR_OK) return usage_error("bad coefficient '" + c + "', expected p=a_p");
  }
  for (const auto& r : a.relations) {
    int64_t p;
    std::string v;
    if (!split_pair(r, p, v)) return usage_error("bad relation '" + r + "', expected p=polynomial");
    mgr_form_add_relation(form.f, p, v.c_str());
  }
  if (!a.character.empty()) mgr_form_set_character(form.f, a.character.c_str());
  if (a.index >= 0) mgr_form_set_index(form.f, a.index);
  return 0;
}

void drain_warnings(mgr_session* s) {
  char* w = nullptr;
  if (mgr_session_take_warnings(s, &w) == MGR_OK && w && std::string(w) != "[]") std::cerr << "warnings: " << w << "\n";
  mgr_string_free(w);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Largest congruence subgroups realizing mod-ell twists of eigenforms"};
  app.require_subcommand(1);
  bool no_cache = false;
  app.add_flag("--no-cache", no_cache, "do not read or write the matrix cache");
  app.set_version_flag("--version", mgr_version());

  std::string literal;
  uint64_t char_ell = 0;
  auto* c_char = app.add_subcommand("char", "Dirichlet character data, reduction and Teichmuller lift");
  c_char->add_option("--character", literal, "literal n:g1^e1,...@m or triv:n")->required();
  c_char->add_option("--ell", char_ell, "reduce at a place above ell");

  SpaceArgs sub_args, genus_args, dim_args, hecke_args, eig_args;
  auto* c_sub = app.add_subcommand("subgroup", "subgroup H and the curve invariants of Gamma_H");
  add_space(c_sub, sub_args, false);
  auto* c_genus = app.add_subcommand("genus", "genus of X_H");
  add_space(c_genus, genus_args, false);
  auto* c_dim = app.add_subcommand("msdim", "modular symbol dimensions");
  add_space(c_dim, dim_args, true);

  int64_t hecke_n = 2;
  uint64_t hecke_ell = 0;
  auto* c_hecke = app.add_subcommand("hecke", "matrix of T_n");
  add_space(c_hecke, hecke_args, true);
  c_hecke->add_option("--n", hecke_n, "Hecke index")->required();
  c_hecke->add_option("--ell", hecke_ell, "reduce the plus-cuspidal part mod ell");

  uint64_t eig_ell = 0;
  int64_t eig_bound = 50;
  bool eig_bad = false;
  auto* c_eig = app.add_subcommand("eigensys", "mod-ell eigensystems of the plus-cuspidal space");
  add_space(c_eig, eig_args, true);
  c_eig->add_option("--ell", eig_ell, "residue characteristic")->required();
  c_eig->add_option("--bound", eig_bound, "largest prime p for T_p")->capture_default_str();
  c_eig->add_flag("--include-bad", eig_bad, "also use U_p for p dividing level * ell");

  FormArgs twist_args, realize_args;
  auto* c_twist = app.add_subcommand("twist", "twist exponent i, weight k' and level M");
  add_form(c_twist, twist_args);
  bool audit = false;
  auto* c_real = app.add_subcommand("realize", "largest subgroup Gamma_H and the weight-2 form f_2");
  add_form(c_real, realize_args);
  c_real->add_flag("--audit", audit, "check every intermediate subgroup");

  uint64_t max_ell = 13;
  int64_t tables_truncate = 50;
  bool rigorous = false;
  std::string format = "tsv";
  auto* c_tables = app.add_subcommand("tables", "compute the reference table rows");
  c_tables->add_option("--max-ell", max_ell, "largest ell")->capture_default_str();
  c_tables->add_option("--truncate-bound", tables_truncate, "check primes up to P only")->capture_default_str();
  c_tables->add_flag("--rigorous", rigorous, "use the full bound");
  c_tables->add_option("--format", format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}))->capture_default_str();

  for (auto* sc : app.get_subcommands({})) sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  Session session;
  {
    char* dir = nullptr;
    if (!no_cache && mgr_default_cache_dir(&dir) != MGR_OK) return kExitSoftware;
    mgr_status st = mgr_session_new(no_cache ? nullptr : dir, &session.s);
    mgr_string_free(dir);
    if (st != MGR_OK) return kExitSoftware;
  }
  mgr_session* s = session.s;
  char* out = nullptr;

  if (*c_char) return emit(mgr_character(s, literal.c_str(), char_ell, &out), &out);
  if (*c_sub) return emit(mgr_subgroup(s, sub_args.level, sub_args.subgroup.c_str(), &out), &out);
  if (*c_genus) return emit(mgr_genus(s, genus_args.level, genus_args.subgroup.c_str(), &out), &out);
  if (*c_dim) return emit(mgr_msdim(s, dim_args.level, dim_args.subgroup.c_str(), dim_args.weight, &out), &out);
  if (*c_hecke) return emit(mgr_hecke(s, hecke_args.level, hecke_args.subgroup.c_str(), hecke_args.weight, hecke_n, hecke_ell, &out), &out);
  if (*c_eig) return emit(mgr_eigensystems(s, eig_args.level, eig_args.subgroup.c_str(), eig_args.weight, eig_ell, eig_bound, eig_bad, &out), &out);
  if (*c_twist || *c_real) {
    const FormArgs& a = *c_twist ? twist_args : realize_args;
    Form form;
    if (int rc = build_form(a, form)) return rc;
    mgr_status st = *c_twist ? mgr_twist(s, form.f, a.truncate, &out) : mgr_realize(s, form.f, a.truncate, audit, &out);
    return emit(st, &out);
  }
  if (*c_tables) {
    mgr_status st = mgr_tables(s, max_ell, rigorous ? 0 : tables_truncate, format == "json" ? MGR_FORMAT_JSON : MGR_FORMAT_TSV, &out);
    drain_warnings(s);
    return emit(st, &out);
  }
  return usage_error("no subcommand");
}
