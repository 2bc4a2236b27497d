#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sizebias/rng.hpp"

namespace sizebias {

struct Atom {
  double x = 0.0;
  double p = 0.0;
};

/// Tolerance on |sum p - 1| accepted by the strict constructor.
inline constexpr double kMassTolerance = 1e-12;

/// Support points within this relative distance are treated as one atom.
inline constexpr double kMergeTolerance = 1e-12;

/// Sort by support point, merge points closer than kMergeTolerance (relative
/// to max(1, |x|)) by summing their mass, and drop zero-mass atoms.
std::vector<Atom> canonicalize_atoms(std::vector<Atom> atoms);

/// Finite law on the nonnegative reals.
///
/// Atoms are kept sorted and strictly increasing. Zero-mass atoms are dropped
/// on construction. A distribution tabulated from an infinite-support family
/// remembers the tail mass that was cut off before renormalizing.
class DiscreteDist {
 public:
  /// Strict: masses must already sum to one within kMassTolerance.
  explicit DiscreteDist(std::vector<Atom> atoms);

  /// Rescales the masses to sum to one. `truncated_tail` records how much mass
  /// the caller dropped before handing the atoms over.
  static DiscreteDist normalized(std::vector<Atom> atoms, double truncated_tail = 0.0);

  static DiscreteDist point(double x);

  /// Masses p[k] placed at k = 0, 1, 2, ...; renormalized.
  static DiscreteDist from_pmf(std::span<const double> masses, double truncated_tail = 0.0);

  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  double min_support() const noexcept { return atoms_.front().x; }
  double max_support() const noexcept { return atoms_.back().x; }
  double truncation_tail() const noexcept { return tail_; }

  double mean() const noexcept;
  /// Mass at x (with merge tolerance); 0 if x is not a support point.
  double mass_at(double x) const noexcept;
  double cdf(double t) const noexcept;
  /// P(X > t).
  double survival(double t) const noexcept;
  bool is_integer_valued() const noexcept;

  double sample(Rng& rng) const;

 private:
  struct Unchecked {};
  DiscreteDist(Unchecked, std::vector<Atom> atoms, double tail);

  void build_cumulative();

  std::vector<Atom> atoms_;
  std::vector<double> cumulative_;
  double tail_ = 0.0;
};

/// Largest atom-wise absolute mass difference over the union of supports.
double max_atom_difference(const DiscreteDist& a, const DiscreteDist& b);

/// Kolmogorov-Smirnov distance between two finite laws.
double ks_distance(const DiscreteDist& a, const DiscreteDist& b);

/// Empirical law of a sample (each draw mass 1/n).
DiscreteDist empirical(std::span<const double> samples);

}  // namespace sizebias
