#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "momentbody/moment_core.hpp"
#include "momentbody/principal.hpp"

namespace momentbody {

// Vectors serialize as {"mode": "exact"|"float", "entries": [...]} with
// rationals as "p/q" strings and floats as shortest round-trip decimals.
nlohmann::json to_json(const MomentVector& v);
nlohmann::json to_json(const CanonicalVector& v);
nlohmann::json to_json(const DiscreteMeasure& mu);

MomentVector moment_vector_from_json(const nlohmann::json& j);
CanonicalVector canonical_vector_from_json(const nlohmann::json& j);
DiscreteMeasure discrete_measure_from_json(const nlohmann::json& j);

// Comma-separated scalar lists for the CLI. In auto mode a list of integer
// or "p/q" literals is exact and a list with decimal points is float; a mix
// is rejected.
std::vector<std::string> split_list(const std::string& text);
Mode detect_mode(const std::vector<std::string>& literals);
MomentVector parse_moments(const std::string& csv, std::optional<Mode> mode);
CanonicalVector parse_canonical(const std::string& csv, std::optional<Mode> mode);

std::string entries_string(const MomentVector& v);     // "1/2,3/8"
std::string entries_string(const CanonicalVector& v);

}  // namespace momentbody
