#pragma once

#include <span>
#include <vector>

#include "sizebias/discrete_dist.hpp"

namespace sizebias {

/// Smallest ratio accepted by this module; the theta series converges too
/// slowly closer to 1.
inline constexpr double kMinOrbitRatio = 1.01;

/// t(b,c) = sum over integers m of b^{-m} c^{-m^2/2}, summed outward from the
/// largest term until the next term is below 1e-16 of the partial sum.
double theta_t(double b, double c);

struct OrbitPoint {
  double b;   ///< representative in [1, c)
  int shift;  ///< original b = representative * c^shift
};

/// Reduces b > 0 to its representative in [1, c) modulo powers of c.
OrbitPoint reduce_to_orbit(double b, double c);

/// Smallest M whose boundary term b^{-M} c^{-M^2/2} / t is below `eps`
/// on both sides.
int default_orbit_truncation(double b, double c, double eps = 1e-14);

/// Chihara-Leipnik single-orbit law: mass b^{-n} c^{-n^2/2} / t(b,c) at b c^n.
class OrbitDist {
 public:
  OrbitDist(double b, double c, int M);

  double b() const noexcept { return b_; }
  double c() const noexcept { return c_; }
  int M() const noexcept { return M_; }
  double theta() const noexcept { return theta_; }
  /// Mass at index n in [-M, M].
  double mass(int n) const { return masses_.at(static_cast<std::size_t>(n + M_)); }
  double point(int n) const;
  std::span<const double> masses() const noexcept { return masses_; }
  DiscreteDist as_discrete() const;

 private:
  double b_;
  double c_;
  int M_;
  double theta_;
  std::vector<double> masses_;
};

/// Extra half-width added to the default truncation so that moments with
/// |k| <= 3 keep boundary terms negligible.
inline constexpr int kMomentHeadroom = 4;

/// b outside [1, c) is reduced first. M = 0 picks
/// default_orbit_truncation + kMomentHeadroom.
OrbitDist orbit_pmf(double b, double c, int M = 0);

/// E X^k over the truncated orbit (k may be negative). Throws
/// TruncationTooSevere when the boundary terms contribute more than 1e-8
/// relative to the result.
double orbit_moment(const OrbitDist& o, int k);

/// Whether size_bias(d) equals scale(d, c) atom-wise within tol.
bool satisfies_times_c(const DiscreteDist& d, double c, double tol = 1e-10);

bool orbit_size_bias_check(const OrbitDist& o, double tol = 1e-10);

/// Berg's perturbation on the orbit of sqrt(c): masses multiplied by
/// (1 + s (-1)^n), s = -1 or +1.
DiscreteDist berg_pmf(int s, double c, int M = 0);

/// Lognormal exp(sigma Z) density.
double lognormal_density(double sigma, double x);

/// Stieltjes' perturbation f(x) (1 + delta sin(2 pi m log(x) / sigma^2)).
struct StieltjesDensity {
  int m = 1;
  double delta = 0.0;
  double sigma = 1.0;
};

double stieltjes_density(const StieltjesDensity& s, double x);

/// int x^n h(x) dx by substituting x = e^{sigma z} and applying Simpson's
/// rule on z in [-10, 10] with `panels` panels.
double stieltjes_moment(const StieltjesDensity& s, int n, int panels = 100'000);

/// The lognormal e^{sigma Z}, c = e^{sigma^2}, written as a mixture over
/// b in [1, c) of orbit laws with mixing density h_c(b) = f(b) t(b,c) / k_c.
class LognormalOrbitMixture {
 public:
  explicit LognormalOrbitMixture(double c, int panels = 10'000);

  double c() const noexcept { return c_; }
  double kc() const noexcept { return kc_; }
  /// Mixing density h_c on [1, c).
  double density(double b) const;
  /// Density of the mixture at x > 0, assembled from h_c and the orbit masses.
  double reconstructed_density(double x) const;
  /// Simpson integral of h_c over [1, c).
  double total_mass(int panels = 10'000) const;

 private:
  double c_;
  double sigma_;
  double kc_;
};

double mixture_density_hc(double c, double b);

/// Largest |reconstructed - lognormal| over the given points.
double mixture_reconstruction_check(double c, std::span<const double> xs);

}  // namespace sizebias
