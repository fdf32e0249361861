#pragma once

#include <json.hpp>

#include "filn/graph.hpp"

namespace filn {

using ordered_json = nlohmann::ordered_json;

/// Algebra file format:
///   {"n": 3, "dim": 4, "params": ["alpha"],
///    "products": [{"args": [2,3,4], "value": {"1": "alpha", "2": "1"}}]}
/// Indices are 1-based; absent tuples and components are zero.
ordered_json algebra_to_json(const NAry& mu);
NAry algebra_from_json(const ordered_json& j);

/// Catalog reference: {"catalog": "D", "r": 4, "n": 3},
/// {"catalog": "C2", "alpha": "-1/4", "n": 3}, {"catalog": "B", "n": 3}.
/// Accepts either a reference or an inline algebra object.
NAry algebra_or_ref_from_json(const ordered_json& j, std::string* label = nullptr);

/// Witness file format:
///   {"source": <algebra-or-ref>, "param_subst": {"alpha": "t^-2"},
///    "basis": [["t","0",...], ...], "target": <algebra-or-ref>}
ordered_json witness_to_json(const Witness& w);
Witness witness_from_json(const ordered_json& j);

ordered_json profile_to_json(const Profile& p);

ordered_json graph_report_to_json(const DegenerationGraph& g);

} // namespace filn
