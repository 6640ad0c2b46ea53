#pragma once

#include <string>
#include <vector>

#include "pipeline/pipeline.hpp"

namespace mgr {

// Weight-12 input forms of the reference tables, one per level.
struct TableInput {
  int64_t level = 1;
  FormSelector selector;
  std::string expansion;  // leading q-expansion as printed
};

// One printed row.
struct TableRow {
  int64_t level = 1;
  uint64_t ell = 0;
  int64_t i = 0;
  int64_t d1 = 0;
  int64_t dH = 0;
  // Integer polynomial with a_2(f_2) as a root (x - c for rational a_2).
  std::string a2_polynomial;
  // Relation on a_2(f) cutting out the printed prime above ell, when the
  // coefficient field of f is not Q.
  std::string lambda_relation;
};

// Selector for a row: the level's input selector plus the row's prime.
FormSelector row_selector(const TableRow& row);

const std::vector<TableInput>& table_inputs();
const TableInput& table_input(int64_t level);
const std::vector<TableRow>& table_rows();

constexpr int kTableWeight = 12;

struct TableResult {
  TableRow row;
  InputForm form;
  RealizationReport report;
  bool a2_divides = false;
  std::vector<std::string> flags;
};

// Realizes every row with ell <= max_ell.
std::vector<TableResult> reproduce_tables(Workspace& ws, uint64_t max_ell, std::optional<int64_t> truncate);

// Does minpoly(a) over the prime field divide the integer polynomial mod ell?
bool minpoly_divides(const FqField& F, FqElem a, const std::string& int_poly);

}  // namespace mgr
