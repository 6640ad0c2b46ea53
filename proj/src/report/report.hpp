#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "pipeline/tables.hpp"

namespace mgr {

using Json = nlohmann::json;  // std::map objects: keys come out sorted

// Prime field elements: {"residue", "signed"}; others: {"element": "<poly in t>"}.
Json residue_json(const FqField& F, FqElem a);
// "F_7" or "F_7^2"
std::string field_name(const FqField& F);
Json field_json(const FqField& F);
Json subgroup_json(const SubgroupH& H);
Json character_json(const DirichletCharacter& chi);
Json residual_character_json(const ResidualCharacter& chi);
Json curve_json(const SubgroupH& H, const CurveInvariants& c);
Json eigensystem_json(const Eigensystem& s);
Json match_json(const MatchReport& m);
Json twist_json(const TwistResult& t);
Json realization_json(const RealizationReport& r);
Json audit_json(const AuditRecord& a);
Json input_form_json(const InputForm& f);
Json table_result_json(const TableResult& t);

// "L11:a2=9,a3=10,a5=1,a7=9", signed values for prime-field entries.
std::string eigensystem_digest(const Eigensystem& s);
std::vector<std::string> report_flags(const RealizationReport& r);

// Fixed column order; one header line then one line per row.
std::string tables_tsv(const std::vector<TableResult>& rows);

// Document envelope: command echo, inputs, payload, warnings (absent when empty).
Json document(const std::string& command, Json inputs, const std::string& payload_key, Json payload, const std::vector<std::string>& warnings);
Json error_document(const std::string& command, const std::string& kind, const std::string& message);

// Sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);

}  // namespace mgr
