#include "sizebias/inf_div.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sizebias/error.hpp"

namespace sizebias {
namespace {

bool is_integer(double v) { return v == std::floor(v); }

/// Number of grid steps in `length`, insisting the grid hits it exactly.
std::size_t aligned_steps(double length, double h, const char* what) {
  const double steps = length / h;
  const auto n = static_cast<std::size_t>(std::llround(steps));
  require(std::abs(static_cast<double>(n) - steps) <= 1e-9 * std::max(1.0, steps),
          Errc::InvalidArgument, std::string("grid step must divide ") + what);
  return n;
}

void check_grid(double a, double h, double xmax) {
  require(a > 0.0 && std::isfinite(a), Errc::InvalidArgument, "a must be positive");
  require(h > 0.0 && h <= 1e-3, Errc::GridTooCoarse, "grid step must be at most 1e-3");
  require(xmax >= 3.0, Errc::InvalidArgument, "xmax must be at least 3");
}

/// Marches past xmax until x f(x) is negligible against the running peak.
bool keep_marching(double x, double xmax, double f, double peak) {
  if (x < xmax) return true;
  return x * f > 1e-18 * std::max(peak, 1.0) && x < xmax + 400.0;
}

}  // namespace

LevyRepr::LevyRepr(double a, double alpha0, std::vector<Jump> jumps)
    : a_(a), alpha0_(alpha0), jumps_(std::move(jumps)) {
  require(a_ > 0.0 && std::isfinite(a_), Errc::InvalidArgument, "a must be positive");
  require(alpha0_ >= 0.0 && alpha0_ <= 1.0, Errc::InvalidArgument, "alpha0 must lie in [0,1]");
  std::sort(jumps_.begin(), jumps_.end(), [](const Jump& l, const Jump& r) { return l.y < r.y; });
  double flux = 0.0;
  for (std::size_t i = 0; i < jumps_.size(); ++i) {
    require(jumps_[i].y > 0.0 && jumps_[i].rate > 0.0, Errc::InvalidArgument,
            "jump sizes and rates must be positive");
    require(i == 0 || jumps_[i].y != jumps_[i - 1].y, Errc::InvalidArgument,
            "jump sizes must be distinct");
    flux += jumps_[i].rate * jumps_[i].y;
  }
  require(std::abs(flux - a_ * (1.0 - alpha0_)) <= 1e-10 * std::max(1.0, a_), Errc::InvalidArgument,
          "sum rate*y = " + std::to_string(flux) + " must equal a(1 - alpha0)");
}

double LevyRepr::total_rate() const noexcept {
  double total = 0.0;
  for (const auto& j : jumps_) total += j.rate;
  return total;
}

bool LevyRepr::has_integer_jumps() const noexcept {
  return std::all_of(jumps_.begin(), jumps_.end(), [](const Jump& j) { return is_integer(j.y); });
}

DiscreteDist LevyRepr::increment() const {
  std::vector<Atom> atoms;
  if (alpha0_ > 0.0) atoms.push_back({0.0, alpha0_});
  for (const auto& j : jumps_) atoms.push_back({j.y, j.rate * j.y / a_});
  return DiscreteDist::normalized(std::move(atoms));
}

LevyRepr compound_poisson_from_increment(const DiscreteDist& y_dist, double a) {
  require(a > 0.0 && std::isfinite(a), Errc::InvalidArgument, "a must be positive");
  require(y_dist.min_support() > 0.0, Errc::ZeroSupportPoint, "increment law has an atom at 0");
  std::vector<Jump> jumps;
  jumps.reserve(y_dist.size());
  for (const auto& atom : y_dist.atoms()) jumps.push_back({atom.x, a * atom.p / atom.x});
  return LevyRepr(a, 0.0, std::move(jumps));
}

std::complex<double> levy_char_fn(const LevyRepr& levy, double u) {
  std::complex<double> exponent{0.0, u * levy.a() * levy.alpha0()};
  for (const auto& j : levy.jumps()) exponent += j.rate * (std::polar(1.0, u * j.y) - 1.0);
  return std::exp(exponent);
}

DiscreteDist TruncatedPmf::dist() const { return DiscreteDist::from_pmf(masses, tail); }

TruncatedPmf pmf_recursion(const LevyRepr& levy, int N) {
  require(N >= 0, Errc::InvalidArgument, "N must be nonnegative");
  require(levy.has_integer_jumps(), Errc::NonIntegerJump, "pmf recursion needs integer jumps");
  require(levy.alpha0() == 0.0, Errc::InvalidArgument, "pmf recursion needs alpha0 = 0");
  TruncatedPmf out;
  out.masses.assign(static_cast<std::size_t>(N) + 1, 0.0);
  out.masses[0] = std::exp(-levy.total_rate());
  for (int m = 1; m <= N; ++m) {
    double acc = 0.0;
    for (const auto& j : levy.jumps()) {
      const auto k = static_cast<int>(j.y);
      if (k > m) break;
      acc += out.masses[static_cast<std::size_t>(m - k)] * k * j.rate;
    }
    out.masses[static_cast<std::size_t>(m)] = acc / m;
  }
  double sum = 0.0;
  for (double f : out.masses) sum += f;
  out.tail = std::max(0.0, 1.0 - sum);
  return out;
}

IdTestResult extract_increment(const DiscreteDist& fX) {
  require(fX.is_integer_valued(), Errc::InvalidArgument, "increment extraction needs integer support");
  const double a = fX.mean();
  require(a > 0.0, Errc::ZeroMean, "the identically zero variable cannot be size biased");
  const double f0 = fX.mass_at(0.0);
  require(f0 > 0.0, Errc::ZeroAtOrigin, "f(0) = 0: the recursion cannot be inverted");

  const auto top = static_cast<std::size_t>(fX.max_support());
  std::vector<double> f(top + 1, 0.0);
  for (const auto& atom : fX.atoms()) f[static_cast<std::size_t>(atom.x)] = atom.p;

  // k is examined while P(X < k) < 1 - 1e-6.
  std::size_t examined = 0;
  double below = f[0];
  while (examined < top && below < 1.0 - 1e-6) {
    ++examined;
    below += f[examined];
  }

  IdTestResult result;
  result.a = a;
  result.examined = static_cast<int>(examined);
  std::vector<double> g(examined + 1, 0.0);  // g(k) = a f_Y(k)
  for (std::size_t k = 1; k <= examined; ++k) {
    double acc = static_cast<double>(k) * f[k];
    for (std::size_t i = 1; i < k; ++i) acc -= f[i] * g[k - i];
    g[k] = acc / f0;
  }
  result.extracted.resize(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) result.extracted[k] = g[k] / a;

  for (std::size_t k = 1; k < g.size(); ++k) {
    if (result.extracted[k] < -1e-9) {
      result.witness = IdWitness{static_cast<int>(k), result.extracted[k]};
      return result;
    }
  }
  result.is_id = true;
  std::vector<Atom> atoms;
  double sum = 0.0;
  for (std::size_t k = 1; k < g.size(); ++k) {
    const double mass = std::max(0.0, result.extracted[k]);
    atoms.push_back({static_cast<double>(k), mass});
    sum += mass;
  }
  require(sum > 0.0, Errc::InvalidDistribution, "extracted increment has no mass");
  result.increment = DiscreteDist::normalized(std::move(atoms), std::max(0.0, 1.0 - sum));
  return result;
}

bool log_convexity_check(const DiscreteDist& fX) {
  const auto atoms = fX.atoms();
  for (std::size_t n = 0; n < atoms.size(); ++n) {
    require(atoms[n].x == static_cast<double>(n), Errc::GapInSupport,
            "support must be {0, 1, ..., N} with positive masses");
  }
  for (std::size_t n = 1; n + 1 < atoms.size(); ++n) {
    if (atoms[n - 1].p * atoms[n + 1].p < atoms[n].p * atoms[n].p - 1e-15) return false;
  }
  return true;
}

GridDensity dickman_solve(double a, double h, double xmax) {
  check_grid(a, h, xmax);
  const std::size_t n1 = aligned_steps(1.0, h, "1");

  // On (0,1] the equation reduces to f' = (a-1) f / x, so f = C x^{a-1};
  // take C = 1, integrate analytically there, and normalize at the end.
  std::vector<double> f(n1 + 1);
  std::vector<double> F(n1 + 1);
  for (std::size_t j = 0; j <= n1; ++j) {
    const double x = static_cast<double>(j) * h;
    f[j] = (j == 0) ? 0.0 : std::pow(x, a - 1.0);
    F[j] = std::pow(x, a) / a;
  }
  if (a == 1.0) {
    f[0] = 1.0;
  } else if (a < 1.0) {
    // Endpoint value chosen so the first trapezoid panel carries the exact mass h^a / a.
    f[0] = std::pow(h, a - 1.0) * (2.0 / a - 1.0);
  }

  double peak = *std::max_element(f.begin(), f.end());
  for (std::size_t j = n1 + 1;; ++j) {
    const double x = static_cast<double>(j) * h;
    // Trapezoid step for F_j, solved for f_j (the relation is linear in f_j).
    const double rhs = (a / x) * (F[j - 1] + 0.5 * h * f[j - 1] - F[j - n1]);
    const double fj = rhs / (1.0 - 0.5 * a * h / x);
    f.push_back(std::max(0.0, fj));
    F.push_back(F[j - 1] + 0.5 * h * (f[j - 1] + f[j]));
    peak = std::max(peak, f[j]);
    if (!keep_marching(x, xmax, f[j], peak)) break;
  }
  return GridDensity::normalized(h, std::move(f));
}

GridDensity buchstab_solve(double a, double b, double h, double xmax) {
  check_grid(a, h, xmax);
  require(b > 0.0 && b < 1.0, Errc::InvalidArgument, "b must lie in (0,1)");
  require(b >= 2.0 * h, Errc::GridTooCoarse, "grid step must resolve b");
  const std::size_t n1 = aligned_steps(1.0, h, "1");
  const std::size_t nb = aligned_steps(b, h, "b");
  const double atom = std::pow(b, a / (1.0 - b));
  const double k = a / (1.0 - b);

  std::vector<double> f;
  std::vector<double> F;
  double peak = 0.0;
  for (std::size_t j = 0;; ++j) {
    const double x = static_cast<double>(j) * h;
    double fj = 0.0;
    if (j >= nb) {
      // The atom term switches on at b and off at 1; at those grid points the
      // midpoint of the two one-sided limits keeps the trapezoid rule second order.
      double indicator = 0.0;
      if (j > nb && j < n1) indicator = 1.0;
      if (j == nb || j == n1) indicator = 0.5;
      const double upper = F[j - nb];
      const double lower = (j >= n1) ? F[j - n1] : 0.0;
      fj = (k / x) * (atom * indicator + upper - lower);
    }
    f.push_back(std::max(0.0, fj));
    F.push_back(j == 0 ? 0.0 : F[j - 1] + 0.5 * h * (f[j - 1] + f[j]));
    peak = std::max(peak, f[j]);
    if (j > n1 && !keep_marching(x, xmax, f[j], peak)) break;
  }
  return GridDensity(h, std::move(f), atom, 1e-3);
}

}  // namespace sizebias
