#include "sizebias/serialize.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "sizebias/error.hpp"

namespace sizebias {
namespace {

double number(const Json& j, const char* what) {
  if (!j.is_number()) fail(Errc::ParseError, std::string(what) + " must be a number");
  return j.get<double>();
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    fail(Errc::ParseError, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::vector<std::pair<double, double>> pairs(const Json& j, const char* what) {
  if (!j.is_array()) fail(Errc::ParseError, std::string(what) + " must be an array");
  std::vector<std::pair<double, double>> out;
  for (const auto& item : j) {
    if (!item.is_array() || item.size() != 2)
      fail(Errc::ParseError, std::string(what) + " entries must be [value, mass] pairs");
    out.emplace_back(number(item[0], what), number(item[1], what));
  }
  return out;
}

DiscreteDist renormalize_checked(std::vector<Atom> atoms) {
  double sum = 0.0;
  for (const auto& a : atoms) sum += a.p;
  require(std::abs(sum - 1.0) <= 1e-9, Errc::InvalidDistribution,
          "masses sum to " + std::to_string(sum));
  return DiscreteDist::normalized(std::move(atoms));
}

}  // namespace

Json to_json(const DiscreteDist& d) {
  Json atoms = Json::array();
  for (const auto& a : d.atoms()) atoms.push_back({a.x, a.p});
  Json out = {{"atoms", atoms}};
  if (d.truncation_tail() > 0.0) out["truncation_tail"] = d.truncation_tail();
  return out;
}

Json to_json(const GridDensity& g) {
  Json values(std::vector<double>(g.values().begin(), g.values().end()));
  return {{"grid", {{"h", g.h()}, {"values", values}, {"atom0", g.atom0()}}}};
}

Json to_json(const LevyRepr& levy) {
  Json jumps = Json::array();
  for (const auto& jump : levy.jumps()) jumps.push_back({jump.y, jump.rate});
  return {{"a", levy.a()}, {"alpha0", levy.alpha0()}, {"jumps", jumps}};
}

DiscreteDist discrete_from_json(const Json& j) {
  if (j.is_object() && j.contains("pmf")) {
    const auto& pmf = j.at("pmf");
    if (!pmf.is_array()) fail(Errc::ParseError, "pmf must be an array");
    std::vector<Atom> atoms;
    for (std::size_t k = 0; k < pmf.size(); ++k)
      atoms.push_back({static_cast<double>(k), number(pmf[k], "pmf")});
    return renormalize_checked(std::move(atoms));
  }
  std::vector<Atom> atoms;
  for (const auto& [x, p] : pairs(field(j, "atoms"), "atoms")) atoms.push_back({x, p});
  return renormalize_checked(std::move(atoms));
}

GridDensity grid_from_json(const Json& j) {
  const auto& g = field(j, "grid");
  const auto& values = field(g, "values");
  if (!values.is_array()) fail(Errc::ParseError, "grid values must be an array");
  std::vector<double> v;
  for (const auto& x : values) v.push_back(number(x, "grid value"));
  const double atom0 = g.contains("atom0") ? number(g.at("atom0"), "atom0") : 0.0;
  return GridDensity(number(field(g, "h"), "h"), std::move(v), atom0);
}

LevyRepr levy_from_json(const Json& j) {
  std::vector<Jump> jumps;
  for (const auto& [y, rate] : pairs(field(j, "jumps"), "jumps")) jumps.push_back({y, rate});
  const double alpha0 = j.contains("alpha0") ? number(j.at("alpha0"), "alpha0") : 0.0;
  return LevyRepr(number(field(j, "a"), "a"), alpha0, std::move(jumps));
}

}  // namespace sizebias
