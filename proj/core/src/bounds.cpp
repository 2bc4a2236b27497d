#include "sizebias/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sizebias/error.hpp"
#include "sizebias/named_dist.hpp"
#include "sizebias/transform.hpp"

namespace sizebias {
namespace {

void check_params(const ConcentrationParams& cp) {
  require(cp.a > 0.0 && cp.c > 0.0 && cp.x > 0.0 && std::isfinite(cp.a) && std::isfinite(cp.c) &&
              std::isfinite(cp.x),
          Errc::InvalidArgument, "a, c and x must be positive");
}

double tight_bound(const ConcentrationParams& cp) {
  return std::exp((cp.x / cp.c) * std::log(cp.a / cp.x) + (cp.x - cp.a) / cp.c);
}

void check_order(const ConcentrationBound& b) {
  if (b.tight > b.gaussian + 1e-15)
    throw std::logic_error("tight bound exceeds its Gaussian relaxation");
}

}  // namespace

double tv_distance(const DiscreteDist& p, const DiscreteDist& q) {
  double s = 0.0;
  for (const auto& a : p.atoms()) s += std::abs(a.p - q.mass_at(a.x));
  for (const auto& a : q.atoms())
    if (p.mass_at(a.x) == 0.0) s += a.p;
  return 0.5 * s;
}

double stein_poisson_bound(double lambda, const CouplingGap& gap) {
  require(lambda > 0.0 && std::isfinite(lambda), Errc::InvalidArgument, "lambda must be positive");
  require(gap.gap >= 0.0, Errc::InvalidArgument, "gap must be nonnegative");
  return -std::expm1(-lambda) * gap.gap;
}

double poisson_upper_tail(double lambda, int x) {
  require(lambda > 0.0, Errc::InvalidArgument, "lambda must be positive");
  if (x <= 0) return 1.0;
  double sum = 0.0;
  for (int k = x;; ++k) {
    const double term = std::exp(poisson_log_pmf(lambda, k));
    sum += term;
    if (k > lambda && term < 1e-18 * sum) break;
  }
  return sum;
}

double poisson_lower_tail(double lambda, int x) {
  require(lambda > 0.0, Errc::InvalidArgument, "lambda must be positive");
  double sum = 0.0;
  for (int k = 0; k <= x; ++k) sum += std::exp(poisson_log_pmf(lambda, k));
  return sum;
}

BinomialPoissonCheck binomial_poisson_check(int n, double p) {
  require(n >= 1, Errc::InvalidArgument, "n must be positive");
  require(p > 0.0 && p < 1.0, Errc::InvalidArgument, "p must lie in (0,1)");
  const double lambda = n * p;
  BinomialPoissonCheck out;
  out.gap = p;
  out.bound = stein_poisson_bound(lambda, {p, "binomial-shared"});
  double s = 0.0;
  for (int k = 0; k <= n; ++k)
    s += std::abs(binomial_pmf(n, p, k) - std::exp(poisson_log_pmf(lambda, k)));
  s += poisson_upper_tail(lambda, n + 1);
  out.exact_tv = 0.5 * s;
  return out;
}

ConcentrationBound concentration_upper(const ConcentrationParams& cp) {
  check_params(cp);
  require(cp.x >= cp.a, Errc::DomainError, "upper bound needs x >= a");
  const double d = cp.x - cp.a;
  ConcentrationBound b{tight_bound(cp), std::exp(-d * d / (cp.c * (cp.a + cp.x)))};
  check_order(b);
  return b;
}

ConcentrationBound concentration_lower(const ConcentrationParams& cp) {
  check_params(cp);
  require(cp.x <= cp.a, Errc::DomainError, "lower bound needs x <= a");
  const double d = cp.a - cp.x;
  ConcentrationBound b{tight_bound(cp), std::exp(-d * d / (2.0 * cp.c * cp.a))};
  check_order(b);
  return b;
}

double tail_iteration(const ConcentrationParams& cp) {
  check_params(cp);
  require(cp.x > cp.a, Errc::DomainError, "tail iteration needs x > a");
  double bound = 1.0;
  for (double arg = cp.x; arg > cp.a; arg -= cp.c) bound *= cp.a / arg;
  return bound;
}

GapEstimate estimate_coupling_gap(const CouplingSampler& sampler, std::string tag,
                                  std::size_t n, Rng& rng) {
  require(n >= 2, Errc::InvalidArgument, "need at least two draws");
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto [x, x_star] = sampler(rng);
    const double d = std::abs(x_star - (x + 1.0));
    const double delta = d - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (d - mean);
  }
  const double var = m2 / static_cast<double>(n - 1);
  return {{mean, std::move(tag)}, std::sqrt(var / static_cast<double>(n)), n};
}

CouplingSampler independent_coupling(const DiscreteDist& d) {
  return [d, star = size_bias(d)](Rng& rng) { return std::pair{d.sample(rng), star.sample(rng)}; };
}

CouplingSampler poisson_plus_one_coupling(double lambda) {
  const NamedDist law = Poisson{lambda};
  validate(law);
  return [law](Rng& rng) {
    const double x = sample(law, rng);
    return std::pair{x, x + 1.0};
  };
}

CouplingSampler binomial_shared_coupling(int n, double p) {
  require(n >= 1 && p > 0.0 && p <= 1.0, Errc::InvalidArgument, "need n >= 1 and p in (0,1]");
  return [n, p](Rng& rng) {
    const double first = rng.bernoulli(p) ? 1.0 : 0.0;
    double rest = 0.0;
    for (int i = 1; i < n; ++i) rest += rng.bernoulli(p) ? 1.0 : 0.0;
    return std::pair{first + rest, 1.0 + rest};
  };
}

}  // namespace sizebias
