#include "report/report.hpp"

#include <sstream>

namespace mgr {

namespace {

Json ints(const std::vector<int64_t>& v) { return Json(v); }

std::string value_string(const FqField& F, FqElem a) {
  if (F.in_prime_field(a)) return std::to_string(F.signed_value(a));
  return "(" + F.to_string(a) + ")";
}

}  // namespace

Json residue_json(const FqField& F, FqElem a) {
  if (F.in_prime_field(a)) return {{"residue", a.code}, {"signed", F.signed_value(a)}};
  return {{"element", F.to_string(a)}};
}

std::string field_name(const FqField& F) {
  std::string s = "F_" + std::to_string(F.ell());
  if (F.degree() > 1) s += "^" + std::to_string(F.degree());
  return s;
}

Json field_json(const FqField& F) {
  Json j{{"characteristic", F.ell()}, {"degree", F.degree()}, {"name", field_name(F)}};
  if (F.degree() > 1) {
    FqField P = FqField::make(F.ell(), 1);
    std::vector<FqElem> c;
    for (auto x : F.modulus()) c.push_back({x});
    j["modulus"] = FqPoly(P, c).to_string("t");
  }
  return j;
}

Json subgroup_json(const SubgroupH& H) {
  return {{"level", H.level()}, {"generators", ints(H.generators())}, {"elements", ints(H.elements())}, {"order", H.size()},
          {"contains_minus_one", H.contains_minus_one()}};
}

Json character_json(const DirichletCharacter& chi) {
  Json j{{"literal", chi.literal()}, {"modulus", chi.modulus()}, {"order", chi.order()}, {"conductor", conductor(chi)}, {"even", chi.is_even()},
         {"kernel", ints(kernel(chi))}, {"generators", ints(chi.group()->generators)}, {"exponents", ints(chi.exponents())}};
  return j;
}

Json residual_character_json(const ResidualCharacter& chi) {
  Json vals = Json::array();
  for (auto v : chi.generator_values()) vals.push_back(residue_json(chi.field(), v));
  return {{"field", field_json(chi.field())}, {"generator_values", vals}, {"kernel", ints(chi.kernel())}, {"trivial", chi.is_trivial()}};
}

Json curve_json(const SubgroupH& H, const CurveInvariants& c) {
  return {{"subgroup", subgroup_json(H)}, {"index", c.index}, {"elliptic_2", c.e2}, {"elliptic_3", c.e3}, {"cusps", c.cusps}, {"genus", c.genus}};
}

Json eigensystem_json(const Eigensystem& s) {
  Json ap = Json::array();
  for (const auto& [p, a] : s.ap) ap.push_back({{"p", p}, {"value", residue_json(s.field, a)}, {"bad", s.is_bad_prime(p)}});
  Json dia = Json::array();
  for (const auto& [d, a] : s.diamond) dia.push_back({{"d", d}, {"value", residue_json(s.field, a)}});
  return {{"level", s.level},   {"weight", s.weight}, {"field", field_json(s.field)}, {"multiplicity", s.multiplicity}, {"ap", ap},
          {"diamond", dia},     {"label", s.provenance}, {"digest", eigensystem_digest(s)}};
}

Json match_json(const MatchReport& m) {
  Json j{{"verdict", m.verdict}, {"i", m.i}, {"checked", ints(m.checked)}, {"skipped", ints(m.skipped)}};
  if (m.field.valid()) j["field"] = field_json(m.field);
  if (m.first_failure) j["first_failure"] = *m.first_failure;
  if (m.embedding) j["embedding"] = residue_json(m.field, *m.embedding);
  if (m.weight_congruence) j["weight_congruence"] = *m.weight_congruence;
  if (m.determinant) j["determinant"] = *m.determinant;
  return j;
}

Json twist_json(const TwistResult& t) {
  return {{"i", t.i}, {"weight", t.weight}, {"level", t.level}, {"g", eigensystem_json(t.g)}, {"match", match_json(t.match)},
          {"bound", t.bound}, {"truncated", t.truncated}, {"shortcut", t.shortcut}};
}

std::vector<std::string> report_flags(const RealizationReport& r) {
  std::vector<std::string> f;
  if (r.heuristic) f.push_back("HEURISTIC");
  if (!r.determinant) f.push_back("DETERMINANT_FAILED");
  if (r.invariant_dimension != r.dH) f.push_back("GENUS_MISMATCH");
  if (r.predicted_index && *r.predicted_index != r.index) f.push_back("INDEX_MISMATCH");
  return f;
}

Json realization_json(const RealizationReport& r) {
  Json j{{"i", r.i},
         {"twist_level", r.twist_level},
         {"level_prime", r.level_prime},
         {"subgroup", subgroup_json(r.H)},
         {"index", r.index},
         {"gamma0", r.gamma0},
         {"d1", r.d1},
         {"dH", r.dH},
         {"invariant_dimension", r.invariant_dimension},
         {"f2", eigensystem_json(r.f2)},
         {"f2_level", r.f2_level},
         {"match", match_json(r.match)},
         {"determinant", r.determinant},
         {"heuristic", r.heuristic},
         {"caveats", r.caveats},
         {"flags", report_flags(r)}};
  if (r.twist) j["twist"] = twist_json(*r.twist);
  if (r.predicted_index) j["predicted_index"] = *r.predicted_index;
  if (r.gamma0_predicted) j["gamma0_predicted"] = *r.gamma0_predicted;
  Json mp = Json::object();
  for (const auto& [p, m] : r.minpolys) mp["a" + std::to_string(p)] = m.to_string();
  j["minpolys"] = mp;
  Json at = Json::array();
  for (const auto& a : r.attempts)
    at.push_back({{"level", a.level}, {"dimension", a.dimension}, {"systems", a.systems}, {"matched", a.matched}, {"bound", a.bound}});
  j["attempts"] = at;
  return j;
}

Json audit_json(const AuditRecord& a) {
  Json e = Json::array();
  for (const auto& x : a.entries) e.push_back({{"subgroup", subgroup_json(x.subgroup)}, {"contained", x.contained}, {"matched", x.matched}});
  return {{"level_prime", a.level_prime}, {"subgroup", subgroup_json(a.H)}, {"entries", e}, {"consistent", a.consistent}};
}

Json input_form_json(const InputForm& f) {
  Json j{{"level", f.level}, {"weight", f.weight}, {"ell", f.ell}, {"system", eigensystem_json(f.system)},
         {"bound", f.bound}, {"candidates", f.candidates}, {"conductor", f.conductor}};
  if (f.character) j["character"] = f.character->literal();
  return j;
}

std::string eigensystem_digest(const Eigensystem& s) {
  std::ostringstream os;
  os << "L" << s.level << ":";
  bool first = true;
  for (int64_t p : {2, 3, 5, 7}) {
    if (!s.ap.count(p)) continue;
    os << (first ? "" : ",") << "a" << p << "=" << value_string(s.field, s.ap.at(p));
    first = false;
  }
  return os.str();
}

Json table_result_json(const TableResult& t) {
  return {{"level", t.row.level},
          {"ell", t.row.ell},
          {"printed", {{"i", t.row.i}, {"d1", t.row.d1}, {"dH", t.row.dH}, {"a2_polynomial", t.row.a2_polynomial}}},
          {"form", input_form_json(t.form)},
          {"report", realization_json(t.report)},
          {"a2_divides", t.a2_divides},
          {"flags", t.flags}};
}

std::string tables_tsv(const std::vector<TableResult>& rows) {
  std::ostringstream os;
  os << "ell\tlambda\ti\tf2\tminpoly_a2\td1\tdH\tN\tf2_level\tflags\n";
  for (const auto& t : rows) {
    const auto& r = t.report;
    std::string mp = r.minpolys.count(2) ? r.minpolys.at(2).to_string() : "-";
    std::string flags;
    for (const auto& f : t.flags) flags += (flags.empty() ? "" : ",") + f;
    os << t.row.ell << '\t' << field_name(t.form.system.field) << '\t' << r.i << '\t' << eigensystem_digest(r.f2) << '\t' << mp << '\t' << r.d1 << '\t'
       << r.dH << '\t' << t.row.level << '\t' << r.f2_level << '\t' << (flags.empty() ? "-" : flags) << '\n';
  }
  return os.str();
}

Json document(const std::string& command, Json inputs, const std::string& payload_key, Json payload, const std::vector<std::string>& warnings) {
  Json d{{"command", command}, {"inputs", std::move(inputs)}, {payload_key, std::move(payload)}};
  if (!warnings.empty()) d["warnings"] = warnings;
  return d;
}

Json error_document(const std::string& command, const std::string& kind, const std::string& message) {
  return {{"command", command}, {"error", {{"kind", kind}, {"message", message}}}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace mgr
