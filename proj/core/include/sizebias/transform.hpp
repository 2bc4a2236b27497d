#pragma once

#include <complex>
#include <span>

#include "sizebias/discrete_dist.hpp"
#include "sizebias/grid_density.hpp"

namespace sizebias {

/// Mass x p(x) / E X at each atom; atoms at 0 vanish.
DiscreteDist size_bias(const DiscreteDist& d);

/// Density x f(x) / E X on the same grid, renormalized. Requires atom0 == 0.
GridDensity size_bias(const GridDensity& g);

/// Unique zero-free law Y with Y* = z: mass proportional to p(x) / x.
DiscreteDist inverse_size_bias(const DiscreteDist& z);

/// E X^k. Negative k is allowed when no atom sits at 0.
double moment(const DiscreteDist& d, int k);
double moment(const GridDensity& g, int k);

/// Law of cX; c must be positive.
DiscreteDist scale(const DiscreteDist& d, double c);
GridDensity scale(const GridDensity& g, double c);

std::complex<double> char_fn(const DiscreteDist& d, double u);

/// Characteristic function of X*, computed on size_bias(d).
std::complex<double> size_biased_char_fn(const DiscreteDist& d, double u);

/// Same quantity as phi'(u) / (i E X), with phi' by central differences.
std::complex<double> size_biased_char_fn_derivative(const DiscreteDist& d, double u,
                                                    double step = 1e-5);

/// Checks P(X* > t) >= P(X > t) - 1e-12 at every support point t.
bool dominance_check(const DiscreteDist& d);

struct ConditionedDraw {
  double x;   ///< P(A | F) for this draw
  bool event; ///< whether A occurred
};

/// Empirical law of x over draws where the event occurred. When x is the
/// conditional probability of the event, this estimates the size-biased law of x.
DiscreteDist size_bias_by_conditioning(std::span<const ConditionedDraw> draws);

/// Borel(lambda) pmf on 1..N, renormalized. Throws TailTooHeavy if the mass
/// beyond N exceeds 1e-9.
DiscreteDist borel_pmf(double lambda, int N);

}  // namespace sizebias
