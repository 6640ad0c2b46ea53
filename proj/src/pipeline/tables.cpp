#include "pipeline/tables.hpp"

namespace mgr {

namespace {

FormSelector coefficients(std::vector<std::pair<int64_t, int64_t>> c) {
  FormSelector s;
  for (auto [p, a] : c) s.coefficients.emplace_back(p, Int(static_cast<long>(a)));
  return s;
}

}  // namespace

const std::vector<TableInput>& table_inputs() {
  static const std::vector<TableInput> inputs = [] {
    std::vector<TableInput> v;
    v.push_back({1, coefficients({{2, -24}}), "q - 24q^2 + 252q^3"});
    v.push_back({3, coefficients({{2, 78}, {3, -243}}), "q + 78q^2 - 243q^3"});
    v.push_back({4, coefficients({{2, 0}, {3, -516}}), "q - 516q^3"});
    FormSelector five;
    five.character = "5:2^1@2";
    v.push_back({5, five, "q + a q^2 + ..., a^4 + 4132a^2 + 2496256 = 0"});
    v.push_back({6, coefficients({{2, -32}, {3, -243}}), "q - 32q^2 - 243q^3"});
    return v;
  }();
  return inputs;
}

const TableInput& table_input(int64_t level) {
  for (const auto& t : table_inputs())
    if (t.level == level) return t;
  throw DomainError("invalid_argument", "no table for level " + std::to_string(level));
}

const std::vector<TableRow>& table_rows() {
  static const std::vector<TableRow> rows = {
      {1, 11, 1, 1, 1, "x+2", ""},
      {1, 13, 0, 2, 2, "x^2+3*x+3", ""},
      {3, 5, 1, 1, 1, "x+1", ""},
      {3, 7, 0, 5, 3, "x^2+2*x+4", ""},
      {3, 11, 0, 21, 3, "x-1", ""},
      {3, 13, 0, 33, 17, "x", ""},
      {4, 5, 1, 3, 1, "x", ""},
      {4, 7, 0, 10, 4, "x", ""},
      {4, 11, 0, 36, 4, "x", ""},
      {4, 13, 0, 55, 25, "x", ""},
      // lambda = (7, a^2/60 + 494/15), (11, a^2/60 + 434/15),
      // (13, -a^3/3360 + a^2/30 - 809a/840 + 1048/15), denominators cleared
      {5, 7, 0, 25, 13, "x^4-x^2+1", "x^2+1976"},
      {5, 11, 0, 81, 9, "x^4+7*x^2+4", "x^2+1736"},
      {5, 13, 0, 121, 25, "x^8+5*x^6+24*x^4+5*x^2+1", "x^3-112*x^2+3236*x-234752"},
      {6, 5, 0, 9, 5, "x^2+1", ""},
      {6, 7, 4, 25, 13, "x^2-x+1", ""},
      {6, 11, 0, 81, 9, "x-1", ""},
      {6, 13, 0, 121, 61, "x^4-x^2+1", ""},
  };
  return rows;
}

FormSelector row_selector(const TableRow& row) {
  FormSelector s = table_input(row.level).selector;
  if (!row.lambda_relation.empty()) s.relations.emplace_back(2, row.lambda_relation);
  return s;
}

bool minpoly_divides(const FqField& F, FqElem a, const std::string& int_poly) {
  FqField P = FqField::make(F.ell(), 1);
  std::vector<FqElem> c;
  for (const auto& x : parse_int_poly(int_poly)) c.push_back(P.from_mpz(x));
  FqPoly k(P, c);
  FqPoly m = minpoly_prime_field(F, a);
  return (k % m).is_zero();
}

std::vector<TableResult> reproduce_tables(Workspace& ws, uint64_t max_ell, std::optional<int64_t> truncate) {
  std::vector<TableResult> out;
  for (const auto& row : table_rows()) {
    if (row.ell > max_ell) continue;
    TableResult r;
    r.row = row;
    int64_t bound = realize_coefficient_bound(row.level, kTableWeight, row.ell, truncate);
    r.form = select_input_form(ws, row.level, kTableWeight, row.ell, row_selector(row), bound);
    r.report = realize(ws, r.form, truncate);
    const auto& f2 = r.report.f2;
    r.a2_divides = f2.ap.count(2) && minpoly_divides(f2.field, f2.ap.at(2), row.a2_polynomial);
    if (r.report.heuristic) r.flags.push_back("HEURISTIC");
    if (r.report.i != row.i) r.flags.push_back("I_DIFFERS_FROM_TABLE");
    if (r.report.d1 != row.d1 || r.report.dH != row.dH) r.flags.push_back("DIMENSION_MISMATCH");
    if (!r.a2_divides) r.flags.push_back("A2_FIELD_MISMATCH");
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace mgr
