#pragma once

#include <nlohmann/json.hpp>

#include "sizebias/discrete_dist.hpp"
#include "sizebias/grid_density.hpp"
#include "sizebias/inf_div.hpp"

namespace sizebias {

using Json = nlohmann::json;

/// {"atoms": [[x, p], ...]} plus "truncation_tail" when nonzero.
Json to_json(const DiscreteDist& d);
/// {"grid": {"h": h, "values": [...], "atom0": a}}
Json to_json(const GridDensity& g);
/// {"a": a, "alpha0": a0, "jumps": [[y, rate], ...]}
Json to_json(const LevyRepr& levy);

/// Accepts {"atoms": ...} or {"pmf": [p0, p1, ...]}; masses are renormalized
/// when they sum to one within 1e-9. Throws ParseError on malformed input.
DiscreteDist discrete_from_json(const Json& j);
GridDensity grid_from_json(const Json& j);
LevyRepr levy_from_json(const Json& j);

}  // namespace sizebias
