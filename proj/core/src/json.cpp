#include "sandpile/json.hpp"

namespace sandpile {

void to_json(nlohmann::json& j, const AbelianGroup& g) {
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& f : g.invariant_factors()) factors.push_back(to_decimal(f));
  j = nlohmann::json{{"free_rank", g.free_rank()}, {"invariant_factors", factors}};
}

void from_json(const nlohmann::json& j, AbelianGroup& g) {
  std::vector<BigInt> factors;
  for (const auto& f : j.at("invariant_factors")) factors.emplace_back(f.get<std::string>(), 10);
  g = AbelianGroup::from_invariant_factors(j.at("free_rank").get<std::uint64_t>(), std::move(factors));
}

nlohmann::json digraph_to_json(const GraphSpec& spec, const Digraph& g) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t w = 0; w < g.vertex_count(); ++w) row.push_back(g.edges(v, w));
    rows.push_back(std::move(row));
  }
  return {{"family", to_string(spec.family)}, {"n", spec.n}, {"d", spec.d}, {"adjacency", std::move(rows)}};
}

void to_json(nlohmann::json& j, const UnitGroupStructure& u) {
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& f : u.factors)
    factors.push_back({{"coset", f.coset},
                       {"degree", f.degree},
                       {"teichmuller_order", to_decimal(f.teichmuller_order)},
                       {"one_unit_part", f.one_unit_part}});
  j = nlohmann::json{{"group", u.group}, {"m", u.m}, {"s", u.s}, {"factors", std::move(factors)}};
}

}  // namespace sandpile
