#include "sizebias/lognormal.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sizebias/error.hpp"
#include "sizebias/transform.hpp"

namespace sizebias {
namespace {

void check_ratio(double c) {
  require(std::isfinite(c) && c >= kMinOrbitRatio, Errc::DomainError,
          "c must be at least " + std::to_string(kMinOrbitRatio));
}

/// log of the unnormalized orbit weight b^{-m} c^{-m^2/2}.
double log_weight(double log_b, double log_c, int m) {
  return -m * log_b - 0.5 * m * static_cast<double>(m) * log_c;
}

template <class F>
double simpson(F&& f, double lo, double hi, int panels) {
  if (panels % 2 != 0) ++panels;
  const double h = (hi - lo) / panels;
  double sum = f(lo) + f(hi);
  for (int i = 1; i < panels; ++i) sum += f(lo + i * h) * ((i % 2) ? 4.0 : 2.0);
  return sum * h / 3.0;
}

}  // namespace

double theta_t(double b, double c) {
  require(b > 0.0 && std::isfinite(b), Errc::DomainError, "b must be positive");
  require(c > 1.0 && std::isfinite(c), Errc::DomainError, "c must exceed 1");
  const double log_b = std::log(b);
  const double log_c = std::log(c);
  // Largest term sits at m = -log(b)/log(c); sum outward from there.
  const int centre = static_cast<int>(std::lround(-log_b / log_c));
  const double ref = log_weight(log_b, log_c, centre);
  double sum = 1.0;
  for (int dir : {+1, -1}) {
    for (int m = centre + dir;; m += dir) {
      const double term = std::exp(log_weight(log_b, log_c, m) - ref);
      sum += term;
      if (term < 1e-16 * sum) break;
    }
  }
  return sum * std::exp(ref);
}

OrbitPoint reduce_to_orbit(double b, double c) {
  require(b > 0.0 && std::isfinite(b), Errc::DomainError, "b must be positive");
  require(c > 1.0, Errc::DomainError, "c must exceed 1");
  int shift = static_cast<int>(std::floor(std::log(b) / std::log(c)));
  double rep = b * std::pow(c, -shift);
  // Guard the floor against rounding at the interval ends.
  if (rep >= c) {
    rep /= c;
    ++shift;
  } else if (rep < 1.0) {
    rep *= c;
    --shift;
  }
  return {rep, shift};
}

int default_orbit_truncation(double b, double c, double eps) {
  const double log_b = std::log(b);
  const double log_c = std::log(c);
  const double log_t = std::log(theta_t(b, c));
  int M = 1;
  while (log_weight(log_b, log_c, M) - log_t > std::log(eps) ||
         log_weight(log_b, log_c, -M) - log_t > std::log(eps)) {
    ++M;
  }
  return M;
}

OrbitDist::OrbitDist(double b, double c, int M) : b_(b), c_(c), M_(M) {
  check_ratio(c);
  require(b >= 1.0 && b < c, Errc::DomainError, "orbit representative must lie in [1, c)");
  require(M >= 1, Errc::InvalidArgument, "truncation M must be positive");
  theta_ = theta_t(b, c);
  const double log_b = std::log(b);
  const double log_c = std::log(c);
  const double log_t = std::log(theta_);
  const double edge = std::max(std::exp(log_weight(log_b, log_c, M) - log_t),
                               std::exp(log_weight(log_b, log_c, -M) - log_t));
  require(edge < 1e-14, Errc::TruncationTooSevere,
          "boundary mass " + std::to_string(edge) + " at M = " + std::to_string(M) + " is too large");
  masses_.resize(static_cast<std::size_t>(2 * M + 1));
  for (int n = -M; n <= M; ++n)
    masses_[static_cast<std::size_t>(n + M)] = std::exp(log_weight(log_b, log_c, n) - log_t);
}

double OrbitDist::point(int n) const { return b_ * std::pow(c_, n); }

DiscreteDist OrbitDist::as_discrete() const {
  std::vector<Atom> atoms;
  atoms.reserve(masses_.size());
  double sum = 0.0;
  for (int n = -M_; n <= M_; ++n) {
    atoms.push_back({point(n), mass(n)});
    sum += mass(n);
  }
  return DiscreteDist::normalized(std::move(atoms), std::max(0.0, 1.0 - sum));
}

OrbitDist orbit_pmf(double b, double c, int M) {
  check_ratio(c);
  const auto rep = reduce_to_orbit(b, c);
  return OrbitDist(rep.b, c, M > 0 ? M : default_orbit_truncation(rep.b, c) + kMomentHeadroom);
}

double orbit_moment(const OrbitDist& o, int k) {
  double sum = 0.0;
  double edge = 0.0;
  for (int n = -o.M(); n <= o.M(); ++n) {
    const double term = std::pow(o.point(n), k) * o.mass(n);
    sum += term;
    if (n == -o.M() || n == o.M()) edge = std::max(edge, term);
  }
  require(edge <= 1e-8 * std::abs(sum), Errc::TruncationTooSevere,
          "moment " + std::to_string(k) + " needs a larger truncation M");
  return sum;
}

bool satisfies_times_c(const DiscreteDist& d, double c, double tol) {
  return max_atom_difference(size_bias(d), scale(d, c)) <= tol;
}

bool orbit_size_bias_check(const OrbitDist& o, double tol) {
  return satisfies_times_c(o.as_discrete(), o.c(), tol);
}

DiscreteDist berg_pmf(int s, double c, int M) {
  require(s == -1 || s == 1, Errc::InvalidArgument, "s must be -1 or +1");
  check_ratio(c);
  const double b = std::sqrt(c);
  const auto orbit = OrbitDist(b, c, M > 0 ? M : default_orbit_truncation(b, c) + kMomentHeadroom);
  std::vector<Atom> atoms;
  for (int n = -orbit.M(); n <= orbit.M(); ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    atoms.push_back({orbit.point(n), (1.0 + s * sign) * orbit.mass(n)});
  }
  return DiscreteDist::normalized(std::move(atoms));
}

double lognormal_density(double sigma, double x) {
  if (x <= 0.0) return 0.0;
  const double z = std::log(x) / sigma;
  return std::exp(-0.5 * z * z) / (x * sigma * std::sqrt(2.0 * std::numbers::pi));
}

double stieltjes_density(const StieltjesDensity& s, double x) {
  require(s.m >= 1, Errc::InvalidArgument, "m must be a positive integer");
  require(s.delta >= -1.0 && s.delta <= 1.0, Errc::InvalidArgument, "delta must lie in [-1,1]");
  require(s.sigma > 0.0, Errc::InvalidArgument, "sigma must be positive");
  require(x > 0.0, Errc::DomainError, "x must be positive");
  const double phase = 2.0 * std::numbers::pi * s.m * std::log(x) / (s.sigma * s.sigma);
  return lognormal_density(s.sigma, x) * (1.0 + s.delta * std::sin(phase));
}

double stieltjes_moment(const StieltjesDensity& s, int n, int panels) {
  require(s.m >= 1 && s.delta >= -1.0 && s.delta <= 1.0 && s.sigma > 0.0, Errc::InvalidArgument,
          "invalid Stieltjes parameters");
  require(panels >= 2, Errc::InvalidArgument, "need at least two panels");
  // x = e^{sigma z}: x^n h(x) dx = e^{n sigma z} phi(z) (1 + delta sin(2 pi m z / sigma)) dz.
  const auto integrand = [&](double z) {
    const double phi = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
    return std::exp(n * s.sigma * z) * phi *
           (1.0 + s.delta * std::sin(2.0 * std::numbers::pi * s.m * z / s.sigma));
  };
  return simpson(integrand, -10.0, 10.0, panels);
}

LognormalOrbitMixture::LognormalOrbitMixture(double c, int panels) : c_(c) {
  check_ratio(c);
  sigma_ = std::sqrt(std::log(c));
  kc_ = simpson([&](double x) { return lognormal_density(sigma_, x) * theta_t(x, c_); }, 1.0, c_,
                panels);
  require(std::isfinite(kc_) && std::abs(kc_ - 1.0) < 1e-3, Errc::QuadratureFailure,
          "normalizer k_c = " + std::to_string(kc_) + " is off");
}

double LognormalOrbitMixture::density(double b) const {
  if (b < 1.0 || b >= c_) return 0.0;
  return lognormal_density(sigma_, b) * theta_t(b, c_) / kc_;
}

double LognormalOrbitMixture::reconstructed_density(double x) const {
  require(x > 0.0, Errc::DomainError, "x must be positive");
  const auto orbit = reduce_to_orbit(x, c_);
  const int n = orbit.shift;
  const double b = orbit.b;
  // Mass b^{-n} c^{-n^2/2} / t(b,c) of orbit b sits at x = b c^n; the map
  // b -> b c^n stretches lengths by c^n.
  const double orbit_mass =
      std::exp(log_weight(std::log(b), std::log(c_), n)) / theta_t(b, c_);
  return density(b) * orbit_mass / std::pow(c_, n);
}

double LognormalOrbitMixture::total_mass(int panels) const {
  return simpson([&](double b) { return b < c_ ? density(b) : density(std::nextafter(c_, 1.0)); },
                 1.0, c_, panels);
}

double mixture_density_hc(double c, double b) { return LognormalOrbitMixture(c).density(b); }

double mixture_reconstruction_check(double c, std::span<const double> xs) {
  const LognormalOrbitMixture mixture(c);
  const double sigma = std::sqrt(std::log(c));
  double worst = 0.0;
  for (double x : xs)
    worst = std::max(worst, std::abs(mixture.reconstructed_density(x) - lognormal_density(sigma, x)));
  return worst;
}

}  // namespace sizebias
