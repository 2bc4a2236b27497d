#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "sizebias/discrete_dist.hpp"
#include "sizebias/grid_density.hpp"
#include "sizebias/rng.hpp"

namespace sizebias {

struct Poisson { double lambda; };
struct Bernoulli { double p; };
struct Binomial { int n; double p; };
/// P(X = k) = (1-p)^k p on k = 0, 1, 2, ...
struct Geometric { double p; };
struct Gamma { double shape; };
struct Exponential {};
/// exp(mu + sigma Z); the second parameter is the variance sigma^2.
struct LogNormal { double mu; double sigma2; };
struct Uniform01 {};
struct Beta { double alpha; double beta; };
/// Total progeny of a Poisson(lambda) Galton-Watson tree.
struct Borel { double lambda; };
struct Dirac { double c; };

using NamedDist = std::variant<Poisson, Bernoulli, Binomial, Geometric, Gamma, Exponential,
                               LogNormal, Uniform01, Beta, Borel, Dirac>;

/// Throws InvalidDistribution on parameters outside the family's domain.
void validate(const NamedDist& d);
double mean(const NamedDist& d);
bool is_discrete(const NamedDist& d);
std::string describe(const NamedDist& d);

/// Parses "poisson:2", "binomial:5,0.3", "lognormal:0,1", "exponential", ...
NamedDist parse_named(std::string_view spec);

/// Result of a closed-form size bias: X* =d shift + base.
struct ShiftedNamed {
  double shift = 0.0;
  NamedDist base;

  std::string describe() const;
};

/// Poisson(l) -> 1 + Poisson(l); Bernoulli(p) -> Dirac(1);
/// Binomial(n,p) -> 1 + Binomial(n-1,p) (Dirac(1) when n = 1);
/// Exponential -> Gamma(2); Gamma(a) -> Gamma(a+1);
/// LogNormal(mu,s2) -> LogNormal(mu+s2,s2); Uniform01 -> Beta(2,1);
/// Beta(a,b) -> Beta(a+1,b); Dirac(c) -> Dirac(c).
/// Geometric and Borel throw NoClosedForm.
ShiftedNamed closed_form_size_bias(const NamedDist& d);

/// Tabulate a discrete family until the remaining tail mass drops below
/// `tail`, then renormalize. The dropped tail is kept on the result.
DiscreteDist tabulate(const NamedDist& d, double tail = 1e-12);

/// Tabulate a continuous family's density on [0, xmax] with step h and
/// renormalize by the trapezoid integral.
GridDensity tabulate_density(const NamedDist& d, double h = 1e-3, double xmax = 20.0);

/// Density of a continuous family at x (0 for x outside the support).
double density(const NamedDist& d, double x);

double sample(const NamedDist& d, Rng& rng);

/// log P(Poisson(lambda) = k).
double poisson_log_pmf(double lambda, int k);
/// P(Binomial(n, p) = k).
double binomial_pmf(int n, double p, int k);

}  // namespace sizebias
