#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "cubeavoid/cube.hpp"
#include "cubeavoid/search.hpp"
#include "cubeavoid/structure.hpp"
#include "cubeavoid/swap_engine.hpp"

namespace cubeavoid::io {

using nlohmann::json;

// Cube files are JSON documents:
//   {"kind":"latin","n":N,"cells":[[[s]]]}            cells[i-1][j-1][k-1]
//   {"kind":"forbidden","n":N,"m":M,"cells":[[[[s]]]]} sorted symbol arrays
// Solver outputs embed the isotopy record under "isotopy" as four 1-based
// permutation image arrays. Canonical form is compact, keys sorted, sorted
// symbol sets, one trailing newline; it is byte-stable across runs.

json latin_to_json(const LatinCube& cube, const Isotopy* iso = nullptr);
LatinCube latin_from_json(const json& j, std::optional<Isotopy>* iso_out = nullptr);

json forbidden_to_json(const ForbiddenCube& forbidden);
ForbiddenCube forbidden_from_json(const json& j, bool validate = true);

std::string canonical_dump(const json& j);
std::string pretty_dump(const json& j);

json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Exact parameter expressions: decimals, fractions and dyadic terms combined
// with + and -, e.g. "0.45", "1/2-38*2^-27", "6*2^-27", "2^-13".
double parse_param_value(std::string_view text);

// Named presets: "paper" (published constants) or "desk" (relaxed).
Params params_preset(const std::string& name);
json params_to_json(const Params& p);
Params params_from_json(const json& j);

json structure_report_to_json(const StructureReport& report);
json catalog_counts_to_json(const CatalogCounts& counts);
json condition_summary_to_json(const ConditionSummary& s);
json solve_failure_to_json(const SolveResult& res);

}  // namespace cubeavoid::io
