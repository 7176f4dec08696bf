#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "qubofold/core.hpp"
#include "qubofold/qubo.hpp"

namespace qubofold {

// JSON schemas. Round-trips are value-exact for anything representable in a
// 64-bit float.
//
//   Histogram       {"edges": [...], "counts": [...]}
//   ResponseMatrix  {"entries": [[row 0], [row 1], ...], "efficiencies": [...]}
//   UnfoldResult    {"method": ..., "estimate": [...], "errors": [...],
//                    "chi2": ..., "diagnostics": {...}}
//   QuboModel       {"matrix": [[...]], "precision": [[...]],
//                    "bit_offsets": [...], "bounds": [...], "offset": ...}
//                   where matrix is the compact symmetric QUBO matrix with
//                   the linear terms on the diagonal.

nlohmann::json histogram_to_json(const Histogram& h);
Histogram histogram_from_json(const nlohmann::json& j, bool integral = false);

nlohmann::json response_to_json(const ResponseMatrix& r);
ResponseMatrix response_from_json(const nlohmann::json& j);

nlohmann::json unfold_result_to_json(const UnfoldResult& r);
UnfoldResult unfold_result_from_json(const nlohmann::json& j);

nlohmann::json qubo_model_to_json(const QuboModel& m);

void write_json_file(const nlohmann::json& j, const std::string& path);
nlohmann::json read_json_file(const std::string& path);

}  // namespace qubofold
