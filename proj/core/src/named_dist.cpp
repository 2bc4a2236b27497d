#include "sizebias/named_dist.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "sizebias/error.hpp"

namespace sizebias {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void check(bool ok, const std::string& what) { require(ok, Errc::InvalidDistribution, what); }

double borel_log_pmf(double lambda, int i) {
  if (lambda == 0.0) return i == 1 ? 0.0 : -INFINITY;
  const double li = lambda * i;
  return -li + (i - 1) * std::log(li) - std::lgamma(i + 1.0);
}

std::vector<double> parse_numbers(std::string_view text) {
  std::vector<double> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string token(text.substr(0, comma));
    try {
      std::size_t used = 0;
      out.push_back(std::stod(token, &used));
      require(used == token.size(), Errc::ParseError, "bad number '" + token + "'");
    } catch (const std::logic_error&) {
      fail(Errc::ParseError, "bad number '" + token + "'");
    }
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

void validate(const NamedDist& d) {
  std::visit(overloaded{
                 [](const Poisson& v) { check(v.lambda > 0.0, "Poisson needs lambda > 0"); },
                 [](const Bernoulli& v) { check(v.p > 0.0 && v.p <= 1.0, "Bernoulli needs p in (0,1]"); },
                 [](const Binomial& v) {
                   check(v.n >= 1, "Binomial needs n >= 1");
                   check(v.p > 0.0 && v.p <= 1.0, "Binomial needs p in (0,1]");
                 },
                 [](const Geometric& v) { check(v.p > 0.0 && v.p <= 1.0, "Geometric needs p in (0,1]"); },
                 [](const Gamma& v) { check(v.shape > 0.0, "Gamma needs shape > 0"); },
                 [](const Exponential&) {},
                 [](const LogNormal& v) {
                   check(std::isfinite(v.mu), "LogNormal needs finite mu");
                   check(v.sigma2 > 0.0, "LogNormal needs sigma^2 > 0");
                 },
                 [](const Uniform01&) {},
                 [](const Beta& v) { check(v.alpha > 0.0 && v.beta > 0.0, "Beta needs alpha, beta > 0"); },
                 [](const Borel& v) { check(v.lambda >= 0.0 && v.lambda < 1.0, "Borel needs lambda in [0,1)"); },
                 [](const Dirac& v) { check(v.c >= 0.0 && std::isfinite(v.c), "Dirac needs c >= 0"); },
             },
             d);
}

double mean(const NamedDist& d) {
  validate(d);
  return std::visit(overloaded{
                        [](const Poisson& v) { return v.lambda; },
                        [](const Bernoulli& v) { return v.p; },
                        [](const Binomial& v) { return v.n * v.p; },
                        [](const Geometric& v) { return (1.0 - v.p) / v.p; },
                        [](const Gamma& v) { return v.shape; },
                        [](const Exponential&) { return 1.0; },
                        [](const LogNormal& v) { return std::exp(v.mu + 0.5 * v.sigma2); },
                        [](const Uniform01&) { return 0.5; },
                        [](const Beta& v) { return v.alpha / (v.alpha + v.beta); },
                        [](const Borel& v) { return 1.0 / (1.0 - v.lambda); },
                        [](const Dirac& v) { return v.c; },
                    },
                    d);
}

bool is_discrete(const NamedDist& d) {
  return std::holds_alternative<Poisson>(d) || std::holds_alternative<Bernoulli>(d) ||
         std::holds_alternative<Binomial>(d) || std::holds_alternative<Geometric>(d) ||
         std::holds_alternative<Borel>(d) || std::holds_alternative<Dirac>(d);
}

std::string describe(const NamedDist& d) {
  return std::visit(overloaded{
                        [](const Poisson& v) { return "Poisson(" + num(v.lambda) + ")"; },
                        [](const Bernoulli& v) { return "Bernoulli(" + num(v.p) + ")"; },
                        [](const Binomial& v) {
                          return "Binomial(" + std::to_string(v.n) + ", " + num(v.p) + ")";
                        },
                        [](const Geometric& v) { return "Geometric(" + num(v.p) + ")"; },
                        [](const Gamma& v) { return "Gamma(" + num(v.shape) + ")"; },
                        [](const Exponential&) { return std::string("Exponential(1)"); },
                        [](const LogNormal& v) {
                          return "LogNormal(" + num(v.mu) + ", " + num(v.sigma2) + ")";
                        },
                        [](const Uniform01&) { return std::string("Uniform(0,1)"); },
                        [](const Beta& v) { return "Beta(" + num(v.alpha) + ", " + num(v.beta) + ")"; },
                        [](const Borel& v) { return "Borel(" + num(v.lambda) + ")"; },
                        [](const Dirac& v) { return "Dirac(" + num(v.c) + ")"; },
                    },
                    d);
}

NamedDist parse_named(std::string_view spec) {
  const auto colon = spec.find(':');
  std::string name(spec.substr(0, colon));
  for (auto& ch : name) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  const auto params = colon == std::string_view::npos ? std::vector<double>{}
                                                      : parse_numbers(spec.substr(colon + 1));
  auto want = [&](std::size_t count) {
    require(params.size() == count, Errc::ParseError,
            "'" + name + "' takes " + std::to_string(count) + " parameter(s)");
  };
  NamedDist d;
  if (name == "poisson") {
    want(1);
    d = Poisson{params[0]};
  } else if (name == "bernoulli") {
    want(1);
    d = Bernoulli{params[0]};
  } else if (name == "binomial") {
    want(2);
    require(params[0] == std::floor(params[0]), Errc::ParseError, "binomial n must be an integer");
    d = Binomial{static_cast<int>(params[0]), params[1]};
  } else if (name == "geometric") {
    want(1);
    d = Geometric{params[0]};
  } else if (name == "gamma") {
    want(1);
    d = Gamma{params[0]};
  } else if (name == "exponential" || name == "exp") {
    want(0);
    d = Exponential{};
  } else if (name == "lognormal") {
    want(2);
    d = LogNormal{params[0], params[1]};
  } else if (name == "uniform") {
    want(0);
    d = Uniform01{};
  } else if (name == "beta") {
    want(2);
    d = Beta{params[0], params[1]};
  } else if (name == "borel") {
    want(1);
    d = Borel{params[0]};
  } else if (name == "dirac") {
    want(1);
    d = Dirac{params[0]};
  } else {
    fail(Errc::ParseError, "unknown distribution '" + name + "'");
  }
  validate(d);
  return d;
}

std::string ShiftedNamed::describe() const {
  const std::string body = sizebias::describe(base);
  if (shift == 0.0) return body;
  return num(shift) + " + " + body;
}

ShiftedNamed closed_form_size_bias(const NamedDist& d) {
  validate(d);
  require(mean(d) > 0.0, Errc::ZeroMean, describe(d) + " has mean zero");
  return std::visit(
      overloaded{
          [](const Poisson& v) { return ShiftedNamed{1.0, v}; },
          [](const Bernoulli&) { return ShiftedNamed{0.0, Dirac{1.0}}; },
          [](const Binomial& v) {
            if (v.n == 1) return ShiftedNamed{0.0, Dirac{1.0}};
            return ShiftedNamed{1.0, Binomial{v.n - 1, v.p}};
          },
          [](const Geometric&) -> ShiftedNamed {
            fail(Errc::NoClosedForm, "Geometric has no closed-form size bias in this family");
          },
          [](const Gamma& v) { return ShiftedNamed{0.0, Gamma{v.shape + 1.0}}; },
          [](const Exponential&) { return ShiftedNamed{0.0, Gamma{2.0}}; },
          [](const LogNormal& v) { return ShiftedNamed{0.0, LogNormal{v.mu + v.sigma2, v.sigma2}}; },
          [](const Uniform01&) { return ShiftedNamed{0.0, Beta{2.0, 1.0}}; },
          [](const Beta& v) { return ShiftedNamed{0.0, Beta{v.alpha + 1.0, v.beta}}; },
          [](const Borel&) -> ShiftedNamed {
            fail(Errc::NoClosedForm, "Borel has no closed-form size bias in this family");
          },
          [](const Dirac& v) { return ShiftedNamed{0.0, v}; },
      },
      d);
}

double poisson_log_pmf(double lambda, int k) {
  if (k < 0) return -INFINITY;
  return -lambda + k * std::log(lambda) - std::lgamma(k + 1.0);
}

double binomial_pmf(int n, double p, int k) {
  if (k < 0 || k > n) return 0.0;
  if (p == 1.0) return k == n ? 1.0 : 0.0;
  const double log_choose = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
  return std::exp(log_choose + k * std::log(p) + (n - k) * std::log1p(-p));
}

DiscreteDist tabulate(const NamedDist& d, double tail) {
  validate(d);
  require(tail > 0.0 && tail < 1.0, Errc::InvalidArgument, "tail must lie in (0,1)");
  std::vector<double> pmf;
  double dropped = 0.0;
  std::visit(overloaded{
                 [&](const Poisson& v) {
                   for (int k = 0;; ++k) {
                     const double term = std::exp(poisson_log_pmf(v.lambda, k));
                     pmf.push_back(term);
                     // Beyond the mode the tail is dominated by a geometric series.
                     const double ratio = v.lambda / (k + 2.0);
                     if (k + 1 > v.lambda && ratio < 1.0) {
                       const double next = std::exp(poisson_log_pmf(v.lambda, k + 1));
                       const double bound = next / (1.0 - ratio);
                       if (bound < tail) {
                         dropped = bound;
                         break;
                       }
                     }
                   }
                 },
                 [&](const Bernoulli& v) { pmf = {1.0 - v.p, v.p}; },
                 [&](const Binomial& v) {
                   for (int k = 0; k <= v.n; ++k) pmf.push_back(binomial_pmf(v.n, v.p, k));
                 },
                 [&](const Geometric& v) {
                   const double q = 1.0 - v.p;
                   double term = v.p;
                   for (int k = 0;; ++k) {
                     pmf.push_back(term);
                     const double rest = std::pow(q, k + 1.0);
                     if (rest < tail) {
                       dropped = rest;
                       break;
                     }
                     term *= q;
                   }
                 },
                 [&](const Borel& v) {
                   pmf.push_back(0.0);
                   double sum = 0.0;
                   for (int i = 1;; ++i) {
                     const double term = std::exp(borel_log_pmf(v.lambda, i));
                     pmf.push_back(term);
                     sum += term;
                     if (1.0 - sum < tail) {
                       dropped = std::max(0.0, 1.0 - sum);
                       break;
                     }
                     require(i < 50'000'000, Errc::TailTooHeavy, "Borel tail too heavy to tabulate");
                   }
                 },
                 [&](const Dirac& v) {
                   if (v.c == std::floor(v.c) && v.c < 1e6) {
                     pmf.assign(static_cast<std::size_t>(v.c) + 1, 0.0);
                     pmf.back() = 1.0;
                   }
                 },
                 [&](const auto&) { fail(Errc::InvalidArgument, describe(d) + " is not discrete"); },
             },
             d);
  if (const auto* dirac = std::get_if<Dirac>(&d); dirac && pmf.empty()) return DiscreteDist::point(dirac->c);
  return DiscreteDist::from_pmf(pmf, dropped);
}

double density(const NamedDist& d, double x) {
  validate(d);
  if (x < 0.0) return 0.0;
  return std::visit(overloaded{
                        [&](const Gamma& v) {
                          if (x == 0.0) return v.shape == 1.0 ? 1.0 : (v.shape > 1.0 ? 0.0 : INFINITY);
                          return std::exp((v.shape - 1.0) * std::log(x) - x - std::lgamma(v.shape));
                        },
                        [&](const Exponential&) { return std::exp(-x); },
                        [&](const LogNormal& v) {
                          if (x == 0.0) return 0.0;
                          const double z = std::log(x) - v.mu;
                          return std::exp(-z * z / (2.0 * v.sigma2)) /
                                 (x * std::sqrt(2.0 * std::numbers::pi * v.sigma2));
                        },
                        [&](const Uniform01&) { return x <= 1.0 ? 1.0 : 0.0; },
                        [&](const Beta& v) {
                          if (x > 1.0) return 0.0;
                          const double log_beta =
                              std::lgamma(v.alpha) + std::lgamma(v.beta) - std::lgamma(v.alpha + v.beta);
                          if (x == 0.0) return v.alpha == 1.0 ? std::exp(-log_beta) : (v.alpha > 1.0 ? 0.0 : INFINITY);
                          if (x == 1.0) return v.beta == 1.0 ? std::exp(-log_beta) : (v.beta > 1.0 ? 0.0 : INFINITY);
                          return std::exp((v.alpha - 1.0) * std::log(x) + (v.beta - 1.0) * std::log1p(-x) - log_beta);
                        },
                        [&](const auto&) -> double {
                          fail(Errc::InvalidArgument, describe(d) + " has no density");
                        },
                    },
                    d);
}

GridDensity tabulate_density(const NamedDist& d, double h, double xmax) {
  require(!is_discrete(d), Errc::InvalidArgument, describe(d) + " is discrete");
  require(h > 0.0 && xmax > h, Errc::InvalidArgument, "need 0 < h < xmax");
  const auto n = static_cast<std::size_t>(std::llround(xmax / h)) + 1;
  std::vector<double> values(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double v = density(d, static_cast<double>(j) * h);
    require(std::isfinite(v), Errc::InvalidArgument, describe(d) + " density is unbounded at 0");
    values[j] = v;
  }
  return GridDensity::normalized(h, std::move(values));
}

double sample(const NamedDist& d, Rng& rng) {
  validate(d);
  return std::visit(overloaded{
                        [&](const Poisson& v) {
                          // Inversion; fine for the moderate rates used here.
                          const double u = rng.uniform();
                          double term = std::exp(-v.lambda);
                          double cdf = term;
                          int k = 0;
                          while (u >= cdf && term > 0.0) {
                            ++k;
                            term *= v.lambda / k;
                            cdf += term;
                          }
                          return static_cast<double>(k);
                        },
                        [&](const Bernoulli& v) { return rng.bernoulli(v.p) ? 1.0 : 0.0; },
                        [&](const Binomial& v) {
                          int count = 0;
                          for (int i = 0; i < v.n; ++i) count += rng.bernoulli(v.p) ? 1 : 0;
                          return static_cast<double>(count);
                        },
                        [&](const Geometric& v) {
                          if (v.p == 1.0) return 0.0;
                          return std::floor(std::log(rng.uniform_open0()) / std::log1p(-v.p));
                        },
                        [&](const Gamma& v) { return rng.gamma(v.shape); },
                        [&](const Exponential&) { return rng.exponential(); },
                        [&](const LogNormal& v) { return std::exp(v.mu + std::sqrt(v.sigma2) * rng.normal()); },
                        [&](const Uniform01&) { return rng.uniform(); },
                        [&](const Beta& v) {
                          const double g1 = rng.gamma(v.alpha);
                          const double g2 = rng.gamma(v.beta);
                          return g1 / (g1 + g2);
                        },
                        [&](const Borel&) { return tabulate(d).sample(rng); },
                        [&](const Dirac& v) { return v.c; },
                    },
                    d);
}

}  // namespace sizebias
