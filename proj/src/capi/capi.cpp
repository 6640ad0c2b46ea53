#include "mgr/mgr.h"

#include <cstring>
#include <functional>
#include <memory>

#include "cache/file_store.hpp"
#include "report/report.hpp"

using namespace mgr;

struct mgr_session {
  std::shared_ptr<FileMatrixStore> store;
  std::unique_ptr<Workspace> ws;
  std::vector<std::string> warnings;
};

struct mgr_form {
  int64_t level = 1;
  int weight = 2;
  uint64_t ell = 0;
  FormSelector selector;
};

namespace {

char* copy_out(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

Json int_json(const Int& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

std::vector<std::string> take_warnings(mgr_session* s) {
  std::vector<std::string> w = std::exchange(s->warnings, {});
  if (s->store)
    for (auto& x : s->store->take_warnings()) w.push_back(std::move(x));
  return w;
}

struct Output {
  std::string text;  // already serialized, used by TSV output
  Json payload;
  std::vector<std::string> extra_warnings;
};

mgr_status run(mgr_session* s, const char* command, Json inputs, const char* payload_key, char** out, const std::function<Output()>& body) {
  if (!out) return MGR_INVALID_ARGUMENT;
  *out = nullptr;
  auto fail = [&](mgr_status st, const std::string& kind, const std::string& msg) {
    *out = copy_out(dump(error_document(command, kind, msg)));
    return st;
  };
  if (!s) return fail(MGR_INVALID_ARGUMENT, "invalid_argument", "null session");
  try {
    Output o = body();
    auto w = take_warnings(s);
    w.insert(w.end(), o.extra_warnings.begin(), o.extra_warnings.end());
    if (!o.text.empty()) {
      s->warnings = std::move(w);  // TSV has no slot for them; the caller drains them
      *out = copy_out(o.text);
    } else {
      *out = copy_out(dump(document(command, std::move(inputs), payload_key, std::move(o.payload), w)));
    }
    return *out ? MGR_OK : MGR_INTERNAL_ERROR;
  } catch (const DomainError& e) {
    take_warnings(s);
    return fail(MGR_DOMAIN_ERROR, e.kind(), e.what());
  } catch (const std::bad_alloc&) {
    return fail(MGR_INTERNAL_ERROR, "out_of_memory", "out of memory");
  } catch (const std::exception& e) {
    return fail(MGR_INTERNAL_ERROR, "internal", e.what());
  }
}

std::string str(const char* p) { return p ? p : ""; }

std::optional<int64_t> truncation(int64_t t) { return t > 0 ? std::optional<int64_t>(t) : std::nullopt; }

Json form_inputs(const mgr_form* f, int64_t truncate) {
  Json j{{"level", f->level}, {"weight", f->weight}, {"ell", f->ell}};
  Json c = Json::array();
  for (const auto& [p, a] : f->selector.coefficients) c.push_back({{"p", p}, {"a", int_json(a)}});
  j["coefficients"] = c;
  Json r = Json::array();
  for (const auto& [p, poly] : f->selector.relations) r.push_back({{"p", p}, {"polynomial", poly}});
  j["relations"] = r;
  if (f->selector.character) j["character"] = *f->selector.character;
  if (f->selector.index) j["index"] = *f->selector.index;
  if (truncate > 0) j["truncate_bound"] = truncate;
  return j;
}

SubgroupH parse_subgroup(int64_t level, const char* spec) {
  if (level < 1) throw DomainError("invalid_argument", "level must be positive");
  return SubgroupH::parse(level, str(spec));
}

}  // namespace

extern "C" {

MGR_API const char* mgr_version(void) { return "1.0.0"; }

MGR_API void mgr_string_free(char* s) { std::free(s); }

MGR_API mgr_status mgr_default_cache_dir(char** out) {
  if (!out) return MGR_INVALID_ARGUMENT;
  *out = copy_out(default_cache_dir().string());
  return *out ? MGR_OK : MGR_INTERNAL_ERROR;
}

MGR_API mgr_status mgr_session_new(const char* cache_dir, mgr_session** out) {
  if (!out) return MGR_INVALID_ARGUMENT;
  try {
    auto s = std::make_unique<mgr_session>();
    SpaceOptions opts;
    if (cache_dir && *cache_dir) {
      s->store = std::make_shared<FileMatrixStore>(cache_dir);
      opts.store = s->store;
    }
    s->ws = std::make_unique<Workspace>(opts);
    *out = s.release();
    return MGR_OK;
  } catch (...) {
    *out = nullptr;
    return MGR_INTERNAL_ERROR;
  }
}

MGR_API void mgr_session_free(mgr_session* s) { delete s; }

MGR_API void mgr_session_cache_stats(const mgr_session* s, int64_t* hits, int64_t* misses) {
  if (hits) *hits = s && s->store ? s->store->hits() : 0;
  if (misses) *misses = s && s->store ? s->store->misses() : 0;
}

MGR_API mgr_status mgr_session_take_warnings(mgr_session* s, char** out) {
  if (!s || !out) return MGR_INVALID_ARGUMENT;
  *out = copy_out(Json(take_warnings(s)).dump());
  return MGR_OK;
}

MGR_API mgr_status mgr_form_new(int64_t level, int weight, uint64_t ell, mgr_form** out) {
  if (!out) return MGR_INVALID_ARGUMENT;
  *out = new (std::nothrow) mgr_form{level, weight, ell, {}};
  return *out ? MGR_OK : MGR_INTERNAL_ERROR;
}

MGR_API void mgr_form_free(mgr_form* f) { delete f; }

MGR_API mgr_status mgr_form_set_coefficient(mgr_form* f, int64_t p, const char* value) {
  if (!f || !value) return MGR_INVALID_ARGUMENT;
  Int v;
  if (v.set_str(value, 10) != 0) return MGR_INVALID_ARGUMENT;
  f->selector.coefficients.emplace_back(p, v);
  return MGR_OK;
}

MGR_API mgr_status mgr_form_add_relation(mgr_form* f, int64_t p, const char* poly) {
  if (!f || !poly) return MGR_INVALID_ARGUMENT;
  f->selector.relations.emplace_back(p, poly);
  return MGR_OK;
}

MGR_API mgr_status mgr_form_set_character(mgr_form* f, const char* literal) {
  if (!f || !literal) return MGR_INVALID_ARGUMENT;
  f->selector.character = literal;
  return MGR_OK;
}

MGR_API mgr_status mgr_form_set_index(mgr_form* f, int index) {
  if (!f || index < 0) return MGR_INVALID_ARGUMENT;
  f->selector.index = index;
  return MGR_OK;
}

MGR_API mgr_status mgr_form_load_file(mgr_form* f, const char* path, char** error) {
  if (error) *error = nullptr;
  if (!f || !path) return MGR_INVALID_ARGUMENT;
  try {
    for (auto& c : read_form_file(path)) f->selector.coefficients.push_back(std::move(c));
    return MGR_OK;
  } catch (const DomainError& e) {
    if (error) *error = copy_out(dump(error_document("form-file", e.kind(), e.what())));
    return MGR_DOMAIN_ERROR;
  }
}

MGR_API mgr_status mgr_character(mgr_session* s, const char* literal, uint64_t ell, char** out) {
  Json in{{"character", str(literal)}};
  if (ell) in["ell"] = ell;
  return run(s, "char", in, "character", out, [&] {
    auto chi = DirichletCharacter::parse(str(literal));
    Json j = character_json(chi);
    if (ell) {
      if (chi.modulus() % static_cast<int64_t>(ell) == 0) throw DomainError("invalid_argument", "ell divides the modulus");
      auto place = PlaceAboveEll::for_modulus(ell, chi.modulus());
      auto red = reduce_mod(chi, place);
      auto lift = teichmuller_lift(red, place);
      j["reduction"] = residual_character_json(red);
      j["teichmuller_lift"] = character_json(lift);
    }
    return Output{"", j, {}};
  });
}

MGR_API mgr_status mgr_subgroup(mgr_session* s, int64_t level, const char* subgroup, char** out) {
  return run(s, "subgroup", {{"level", level}, {"subgroup", str(subgroup)}}, "subgroup", out, [&] {
    auto H = parse_subgroup(level, subgroup);
    Json j = curve_json(H, curve_invariants(coset_table(H)));
    return Output{"", j, {}};
  });
}

MGR_API mgr_status mgr_genus(mgr_session* s, int64_t level, const char* subgroup, char** out) {
  return run(s, "genus", {{"level", level}, {"subgroup", str(subgroup)}}, "genus", out, [&] {
    auto H = parse_subgroup(level, subgroup);
    return Output{"", genus(H), {}};
  });
}

MGR_API mgr_status mgr_msdim(mgr_session* s, int64_t level, const char* subgroup, int weight, char** out) {
  return run(s, "msdim", {{"level", level}, {"subgroup", str(subgroup)}, {"weight", weight}}, "dimensions", out, [&] {
    auto H = parse_subgroup(level, subgroup);
    auto amb = s->ws->space(H, weight);
    Subspace all = whole_space(amb);
    Subspace cusp = cuspidal_subspace(all);
    Subspace plus = star_plus_subspace(cusp);
    Json j{{"ambient", amb->dimension()}, {"cuspidal", cusp.dimension()}, {"plus_cuspidal", plus.dimension()}, {"cusps", amb->cusp_count()},
           {"manin_generators", amb->generator_count()}};
    return Output{"", j, {}};
  });
}

MGR_API mgr_status mgr_hecke(mgr_session* s, int64_t level, const char* subgroup, int weight, int64_t n, uint64_t ell, char** out) {
  Json in{{"level", level}, {"subgroup", str(subgroup)}, {"weight", weight}, {"n", n}};
  if (ell) in["ell"] = ell;
  return run(s, "hecke", in, "operator", out, [&] {
    if (n < 1) throw DomainError("invalid_argument", "Hecke index must be positive");
    auto H = parse_subgroup(level, subgroup);
    auto amb = s->ws->space(H, weight);
    Json j;
    if (!ell) {
      const IntMatrix& T = *amb->hecke(n);
      Json rows = Json::array();
      Int tr = 0;
      for (size_t r = 0; r < T.size(); ++r) {
        Json row = Json::array();
        for (const auto& x : T[r]) row.push_back(int_json(x));
        rows.push_back(row);
        tr += T[r][r];
      }
      j = {{"space", "ambient"}, {"dimension", amb->dimension()}, {"matrix", rows}, {"trace", int_json(tr)}};
    } else {
      ReducedSpace R(plus_cuspidal(amb), ell);
      FqMatrix T = R.hecke(n);
      Json rows = Json::array();
      for (int r = 0; r < T.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < T.cols(); ++c) row.push_back(T.at(r, c).code);
        rows.push_back(row);
      }
      Json facs = Json::array();
      if (T.rows() > 0)
        for (const auto& pf : poly_factor_fq(T.charpoly())) facs.push_back({{"factor", pf.factor.to_string()}, {"multiplicity", pf.multiplicity}});
      j = {{"space", "plus_cuspidal"}, {"dimension", R.dimension()}, {"field", field_json(R.field())}, {"matrix", rows}, {"charpoly_factors", facs}};
    }
    return Output{"", j, {}};
  });
}

MGR_API mgr_status mgr_eigensystems(mgr_session* s, int64_t level, const char* subgroup, int weight, uint64_t ell, int64_t bound, int include_bad,
                                    char** out) {
  Json in{{"level", level}, {"subgroup", str(subgroup)}, {"weight", weight}, {"ell", ell}, {"bound", bound}, {"include_bad", include_bad != 0}};
  return run(s, "eigensys", in, "eigensystems", out, [&] {
    auto H = parse_subgroup(level, subgroup);
    ReducedSpace R(plus_cuspidal(s->ws->space(H, weight)), ell);
    Json arr = Json::array();
    if (R.dimension() > 0)
      for (const auto& sys : decompose_space(R, primes_up_to(bound), include_bad != 0)) arr.push_back(eigensystem_json(sys));
    return Output{"", arr, {}};
  });
}

MGR_API mgr_status mgr_twist(mgr_session* s, const mgr_form* f, int64_t truncate, char** out) {
  if (!f) return run(s, "twist", Json::object(), "twist", out, []() -> Output { throw std::invalid_argument("null form"); });
  return run(s, "twist", form_inputs(f, truncate), "twist", out, [&] {
    auto t = truncation(truncate);
    int64_t bound = realize_coefficient_bound(f->level, f->weight, f->ell, t);
    InputForm form = select_input_form(*s->ws, f->level, f->weight, f->ell, f->selector, bound);
    TwistResult r = find_twist(*s->ws, form, t);
    Json j{{"form", input_form_json(form)}, {"result", twist_json(r)}};
    std::vector<std::string> w;
    if (r.truncated) w.push_back("HEURISTIC: coefficient bound truncated to " + std::to_string(r.bound));
    return Output{"", j, w};
  });
}

MGR_API mgr_status mgr_realize(mgr_session* s, const mgr_form* f, int64_t truncate, int audit, char** out) {
  if (!f) return run(s, "realize", Json::object(), "report", out, []() -> Output { throw std::invalid_argument("null form"); });
  Json in = form_inputs(f, truncate);
  in["audit"] = audit != 0;
  return run(s, "realize", in, "report", out, [&] {
    auto t = truncation(truncate);
    int64_t bound = realize_coefficient_bound(f->level, f->weight, f->ell, t);
    InputForm form = select_input_form(*s->ws, f->level, f->weight, f->ell, f->selector, bound);
    RealizationReport r = realize(*s->ws, form, t);
    Json j = realization_json(r);
    j["form"] = input_form_json(form);
    if (audit) j["audit"] = audit_json(largest_subgroup_audit(*s->ws, form, r.i, form.bound));
    std::vector<std::string> w;
    if (r.heuristic) w.push_back("HEURISTIC: coefficient bound truncated to " + std::to_string(form.bound));
    return Output{"", j, w};
  });
}

MGR_API mgr_status mgr_tables(mgr_session* s, uint64_t max_ell, int64_t truncate, mgr_format format, char** out) {
  Json in{{"max_ell", max_ell}, {"format", format == MGR_FORMAT_TSV ? "tsv" : "json"}};
  if (truncate > 0) in["truncate_bound"] = truncate;
  return run(s, "tables", in, "rows", out, [&] {
    auto rows = reproduce_tables(*s->ws, max_ell, truncation(truncate));
    std::vector<std::string> w;
    for (const auto& t : rows) {
      for (const auto& fl : t.flags) {
        if (fl == "HEURISTIC") continue;
        w.push_back("N=" + std::to_string(t.row.level) + " ell=" + std::to_string(t.row.ell) + ": " + fl + " (printed i=" + std::to_string(t.row.i) +
                    ", computed i=" + std::to_string(t.report.i) + ")");
      }
    }
    if (truncate > 0) w.push_back("HEURISTIC: coefficient bounds truncated to " + std::to_string(truncate));
    if (format == MGR_FORMAT_TSV) return Output{tables_tsv(rows), nullptr, w};
    Json arr = Json::array();
    for (const auto& t : rows) arr.push_back(table_result_json(t));
    return Output{"", arr, w};
  });
}

}  // extern "C"
