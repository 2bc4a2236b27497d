#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sizebias/discrete_dist.hpp"
#include "sizebias/grid_density.hpp"

namespace sizebias {

struct Jump {
  double y = 0.0;     ///< jump size, > 0
  double rate = 0.0;  ///< Poisson rate of jumps of this size, > 0
};

/// Compound-Poisson data of a nonnegative infinitely divisible law with mean a:
/// X = a*alpha0 + sum_i y_i Z_i, Z_i ~ Poisson(rate_i) independent.
/// Invariant: sum rate_i * y_i = a (1 - alpha0).
class LevyRepr {
 public:
  LevyRepr(double a, double alpha0, std::vector<Jump> jumps);

  double a() const noexcept { return a_; }
  double alpha0() const noexcept { return alpha0_; }
  std::span<const Jump> jumps() const noexcept { return jumps_; }
  double total_rate() const noexcept;
  bool has_integer_jumps() const noexcept;
  /// The increment law Y with X* = X + Y: P(Y = y_i) = rate_i y_i / a, P(Y = 0) = alpha0.
  DiscreteDist increment() const;

 private:
  double a_;
  double alpha0_;
  std::vector<Jump> jumps_;
};

/// rate_i = a p_i / y_i for the given increment law Y (all y_i > 0).
LevyRepr compound_poisson_from_increment(const DiscreteDist& y_dist, double a);

std::complex<double> levy_char_fn(const LevyRepr& levy, double u);

/// Raw output of the size-bias recursion on {0..N}.
struct TruncatedPmf {
  std::vector<double> masses;  ///< f(0..N), unnormalized; f(0) = exp(-total rate)
  double tail = 0.0;           ///< 1 - sum of masses

  DiscreteDist dist() const;
};

/// f(0) = exp(-sum rate); f(m+1) = a/(m+1) sum_{i<=m} f(i) f_Y(m+1-i),
/// with a f_Y(k) = k rate_k. Jumps must be positive integers and alpha0 = 0.
TruncatedPmf pmf_recursion(const LevyRepr& levy, int N);

struct IdWitness {
  int index = 0;
  double value = 0.0;  ///< the negative extracted f_Y(index)
};

struct IdTestResult {
  bool is_id = false;
  double a = 0.0;
  /// Extracted f_Y(k) for k = 0..examined (f_Y(0) = 0), before clamping.
  std::vector<double> extracted;
  int examined = 0;
  std::optional<DiscreteDist> increment;  ///< set when is_id
  std::optional<IdWitness> witness;       ///< set when !is_id
};

/// Inverts the size-bias recursion for f_Y given f_X on the nonnegative
/// integers. Only indices k with P(X < k) < 1 - 1e-6 are examined; is_id
/// holds iff every examined f_Y(k) >= -1e-9.
IdTestResult extract_increment(const DiscreteDist& fX);

/// Kaluza's sufficient condition: support {0..N}, all masses positive and
/// f(n-1) f(n+1) >= f(n)^2 - 1e-15 at every interior n.
bool log_convexity_check(const DiscreteDist& fX);

/// Density of the nonnegative ID law with mean a and increment Uniform(0,1),
/// from f(x) = (a/x) int_{x-1}^{x} f(z) dz. The grid covers at least [0, xmax]
/// and extends until the density is negligible; normalized to total mass 1.
GridDensity dickman_solve(double a, double h = 1e-3, double xmax = 10.0);

/// Same with increment Uniform(b,1): atom b^{a/(1-b)} at 0 plus a defective
/// density. Not renormalized, so atom0 + integral = 1 is a genuine check.
GridDensity buchstab_solve(double a, double b, double h = 1e-3, double xmax = 10.0);

}  // namespace sizebias
