#pragma once

#include "sandpile/abelian.hpp"
#include "sandpile/circulant.hpp"
#include "sandpile/graphs.hpp"

#include <nlohmann/json.hpp>

namespace sandpile {

// {"free_rank": int, "invariant_factors": ["2", "12"]}; factors as decimal strings.
void to_json(nlohmann::json& j, const AbelianGroup& g);
void from_json(const nlohmann::json& j, AbelianGroup& g);

// {"family": "db", "n": 4, "d": 3, "adjacency": [[...], ...]}
nlohmann::json digraph_to_json(const GraphSpec& spec, const Digraph& g);

// Group plus per-coset provenance.
void to_json(nlohmann::json& j, const UnitGroupStructure& u);

}  // namespace sandpile
