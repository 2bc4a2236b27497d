#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>

#include "sizebias/discrete_dist.hpp"
#include "sizebias/rng.hpp"

namespace sizebias {

/// Half the L1 distance between the mass functions.
double tv_distance(const DiscreteDist& p, const DiscreteDist& q);

/// E|X* - (X + 1)| under the coupling named by `coupling_tag`.
struct CouplingGap {
  double gap = 0.0;
  std::string coupling_tag;
};

/// (1 - e^{-lambda}) gap.
double stein_poisson_bound(double lambda, const CouplingGap& gap);

struct BinomialPoissonCheck {
  double gap = 0.0;       ///< p, from the coupling that shares X_2..X_n
  double bound = 0.0;     ///< (1 - e^{-np}) p
  double exact_tv = 0.0;  ///< d_TV(Bin(n,p), Poisson(np))
  /// n = 1 attains the bound, so equality is allowed up to rounding.
  bool holds() const noexcept { return exact_tv <= bound * (1.0 + 1e-12); }
};

BinomialPoissonCheck binomial_poisson_check(int n, double p);

/// P(Poisson(lambda) >= x), summed until terms drop below 1e-18 of the sum.
double poisson_upper_tail(double lambda, int x);
/// P(Poisson(lambda) <= x).
double poisson_lower_tail(double lambda, int x);

/// X with mean a, coupled so that X* <= X + c.
struct ConcentrationParams {
  double a = 1.0;
  double c = 1.0;
  double x = 1.0;
};

struct ConcentrationBound {
  double tight = 0.0;     ///< (a/x)^{x/c} e^{(x-a)/c}
  double gaussian = 0.0;  ///< the weaker Gaussian-type form
};

/// Bound on P(X >= x) for x >= a.
ConcentrationBound concentration_upper(const ConcentrationParams& cp);
/// Bound on P(X <= x) for 0 < x <= a.
ConcentrationBound concentration_lower(const ConcentrationParams& cp);

/// prod_k a / (x - k c) over k = 0, 1, ... while x - k c > a.
double tail_iteration(const ConcentrationParams& cp);

/// One coupled draw (X, X*).
using CouplingSampler = std::function<std::pair<double, double>(Rng&)>;

struct GapEstimate {
  CouplingGap gap;
  double standard_error = 0.0;
  std::size_t draws = 0;
};

GapEstimate estimate_coupling_gap(const CouplingSampler& sampler, std::string tag,
                                  std::size_t n, Rng& rng);

/// X and X* drawn independently.
CouplingSampler independent_coupling(const DiscreteDist& d);
/// X ~ Poisson(lambda) and X* = X + 1.
CouplingSampler poisson_plus_one_coupling(double lambda);
/// X = X_1 + ... + X_n Bernoulli(p); X* replaces X_1 by 1.
CouplingSampler binomial_shared_coupling(int n, double p);

}  // namespace sizebias
