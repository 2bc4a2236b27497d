#include "sizebias/discrete_dist.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sizebias/error.hpp"

namespace sizebias {
namespace {

bool same_point(double a, double b) {
  return std::abs(a - b) <= kMergeTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

double total_mass(const std::vector<Atom>& atoms) {
  double sum = 0.0;
  for (const auto& a : atoms) sum += a.p;
  return sum;
}

void check_atoms(const std::vector<Atom>& atoms) {
  for (const auto& a : atoms) {
    if (!std::isfinite(a.x) || !std::isfinite(a.p)) fail(Errc::InvalidDistribution, "non-finite atom");
    if (a.x < 0.0)
      fail(Errc::InvalidDistribution, "support point " + std::to_string(a.x) + " is negative");
    if (a.p < 0.0) fail(Errc::InvalidDistribution, "mass " + std::to_string(a.p) + " is negative");
  }
}

}  // namespace

std::vector<Atom> canonicalize_atoms(std::vector<Atom> atoms) {
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.x < b.x; });
  std::vector<Atom> merged;
  merged.reserve(atoms.size());
  for (const auto& a : atoms) {
    if (!merged.empty() && same_point(merged.back().x, a.x)) {
      merged.back().p += a.p;
    } else {
      merged.push_back(a);
    }
  }
  std::erase_if(merged, [](const Atom& a) { return a.p == 0.0; });
  return merged;
}

DiscreteDist::DiscreteDist(std::vector<Atom> atoms) {
  check_atoms(atoms);
  atoms_ = canonicalize_atoms(std::move(atoms));
  require(!atoms_.empty(), Errc::InvalidDistribution, "distribution has no mass");
  const double sum = total_mass(atoms_);
  require(std::abs(sum - 1.0) <= kMassTolerance, Errc::InvalidDistribution,
          "masses sum to " + std::to_string(sum) + ", not 1");
  build_cumulative();
}

DiscreteDist::DiscreteDist(Unchecked, std::vector<Atom> atoms, double tail)
    : atoms_(std::move(atoms)), tail_(tail) {
  build_cumulative();
}

DiscreteDist DiscreteDist::normalized(std::vector<Atom> atoms, double truncated_tail) {
  check_atoms(atoms);
  auto canon = canonicalize_atoms(std::move(atoms));
  require(!canon.empty(), Errc::InvalidDistribution, "distribution has no mass");
  const double sum = total_mass(canon);
  require(sum > 0.0, Errc::InvalidDistribution, "distribution has no mass");
  for (auto& a : canon) a.p /= sum;
  return DiscreteDist(Unchecked{}, std::move(canon), truncated_tail);
}

DiscreteDist DiscreteDist::point(double x) { return DiscreteDist({{x, 1.0}}); }

DiscreteDist DiscreteDist::from_pmf(std::span<const double> masses, double truncated_tail) {
  std::vector<Atom> atoms;
  atoms.reserve(masses.size());
  for (std::size_t k = 0; k < masses.size(); ++k) atoms.push_back({static_cast<double>(k), masses[k]});
  return normalized(std::move(atoms), truncated_tail);
}

void DiscreteDist::build_cumulative() {
  cumulative_.resize(atoms_.size());
  double running = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    running += atoms_[i].p;
    cumulative_[i] = running;
  }
}

double DiscreteDist::mean() const noexcept {
  double m = 0.0;
  for (const auto& a : atoms_) m += a.x * a.p;
  return m;
}

double DiscreteDist::mass_at(double x) const noexcept {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x,
                             [](const Atom& a, double v) { return a.x < v && !same_point(a.x, v); });
  if (it != atoms_.end() && same_point(it->x, x)) return it->p;
  return 0.0;
}

double DiscreteDist::cdf(double t) const noexcept {
  auto it = std::upper_bound(atoms_.begin(), atoms_.end(), t,
                             [](double v, const Atom& a) { return v < a.x; });
  if (it == atoms_.begin()) return 0.0;
  return std::min(1.0, cumulative_[static_cast<std::size_t>(it - atoms_.begin()) - 1]);
}

double DiscreteDist::survival(double t) const noexcept {
  // Summed from the top so tiny upper tails keep their precision.
  double s = 0.0;
  for (auto it = atoms_.rbegin(); it != atoms_.rend() && it->x > t; ++it) s += it->p;
  return s;
}

bool DiscreteDist::is_integer_valued() const noexcept {
  return std::all_of(atoms_.begin(), atoms_.end(),
                     [](const Atom& a) { return a.x == std::floor(a.x); });
}

double DiscreteDist::sample(Rng& rng) const {
  const double u = rng.uniform() * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;
  return atoms_[static_cast<std::size_t>(it - cumulative_.begin())].x;
}

double max_atom_difference(const DiscreteDist& a, const DiscreteDist& b) {
  double worst = 0.0;
  for (const auto& atom : a.atoms()) worst = std::max(worst, std::abs(atom.p - b.mass_at(atom.x)));
  for (const auto& atom : b.atoms()) worst = std::max(worst, std::abs(atom.p - a.mass_at(atom.x)));
  return worst;
}

double ks_distance(const DiscreteDist& a, const DiscreteDist& b) {
  std::vector<double> points;
  points.reserve(a.size() + b.size());
  for (const auto& atom : a.atoms()) points.push_back(atom.x);
  for (const auto& atom : b.atoms()) points.push_back(atom.x);
  double worst = 0.0;
  for (double t : points) worst = std::max(worst, std::abs(a.cdf(t) - b.cdf(t)));
  return worst;
}

DiscreteDist empirical(std::span<const double> samples) {
  require(!samples.empty(), Errc::InvalidArgument, "empty sample");
  std::vector<Atom> atoms;
  atoms.reserve(samples.size());
  const double w = 1.0 / static_cast<double>(samples.size());
  for (double s : samples) atoms.push_back({s, w});
  return DiscreteDist::normalized(std::move(atoms));
}

}  // namespace sizebias
