#include "sizebias/transform.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "sizebias/error.hpp"

namespace sizebias {

DiscreteDist size_bias(const DiscreteDist& d) {
  const double a = d.mean();
  require(a > 0.0, Errc::ZeroMean, "the identically zero variable cannot be size biased");
  std::vector<Atom> out;
  out.reserve(d.size());
  for (const auto& atom : d.atoms()) {
    if (atom.x > 0.0) out.push_back({atom.x, atom.x * atom.p / a});
  }
  return DiscreteDist::normalized(std::move(out), d.truncation_tail());
}

GridDensity size_bias(const GridDensity& g) {
  require(g.atom0() == 0.0, Errc::AtomPresent, "size bias the atom through the discrete path");
  const double a = g.mean();
  require(a > 0.0, Errc::ZeroMean, "density has zero mean");
  std::vector<double> values(g.values().begin(), g.values().end());
  for (std::size_t j = 0; j < values.size(); ++j) values[j] *= g.x(j) / a;
  return GridDensity::normalized(g.h(), std::move(values));
}

DiscreteDist inverse_size_bias(const DiscreteDist& z) {
  require(z.min_support() > 0.0, Errc::AtomAtZero, "a size-biased law has no atom at zero");
  std::vector<Atom> out;
  out.reserve(z.size());
  for (const auto& atom : z.atoms()) out.push_back({atom.x, atom.p / atom.x});
  return DiscreteDist::normalized(std::move(out));
}

double moment(const DiscreteDist& d, int k) {
  if (k < 0) require(d.min_support() > 0.0, Errc::NegativeMomentAtZero, "atom at 0");
  double m = 0.0;
  for (const auto& atom : d.atoms()) m += (k == 0 ? 1.0 : std::pow(atom.x, k)) * atom.p;
  return m;
}

double moment(const GridDensity& g, int k) { return g.moment(k); }

DiscreteDist scale(const DiscreteDist& d, double c) {
  require(c > 0.0 && std::isfinite(c), Errc::NonpositiveScale, "scale factor must be positive");
  std::vector<Atom> out(d.atoms().begin(), d.atoms().end());
  for (auto& atom : out) atom.x *= c;
  return DiscreteDist::normalized(std::move(out), d.truncation_tail());
}

GridDensity scale(const GridDensity& g, double c) {
  require(c > 0.0 && std::isfinite(c), Errc::NonpositiveScale, "scale factor must be positive");
  std::vector<double> values(g.values().begin(), g.values().end());
  for (double& v : values) v /= c;
  return GridDensity(g.h() * c, std::move(values), g.atom0(), g.tolerance());
}

std::complex<double> char_fn(const DiscreteDist& d, double u) {
  std::complex<double> acc{0.0, 0.0};
  for (const auto& atom : d.atoms()) acc += atom.p * std::polar(1.0, u * atom.x);
  return acc;
}

std::complex<double> size_biased_char_fn(const DiscreteDist& d, double u) {
  return char_fn(size_bias(d), u);
}

std::complex<double> size_biased_char_fn_derivative(const DiscreteDist& d, double u, double step) {
  const double a = d.mean();
  require(a > 0.0, Errc::ZeroMean, "the identically zero variable cannot be size biased");
  const auto derivative = (char_fn(d, u + step) - char_fn(d, u - step)) / (2.0 * step);
  return derivative / std::complex<double>(0.0, a);
}

bool dominance_check(const DiscreteDist& d) {
  const auto biased = size_bias(d);
  for (const auto& atom : d.atoms()) {
    if (biased.survival(atom.x) < d.survival(atom.x) - 1e-12) return false;
  }
  return true;
}

DiscreteDist size_bias_by_conditioning(std::span<const ConditionedDraw> draws) {
  std::vector<Atom> kept;
  for (const auto& draw : draws) {
    require(draw.x >= 0.0 && draw.x <= 1.0, Errc::InvalidArgument, "x must be a probability");
    if (draw.event) kept.push_back({draw.x, 1.0});
  }
  require(!kept.empty(), Errc::NoSuccesses, "no draw had the event");
  return DiscreteDist::normalized(std::move(kept));
}

DiscreteDist borel_pmf(double lambda, int N) {
  require(lambda >= 0.0 && lambda < 1.0, Errc::InvalidArgument, "Borel needs lambda in [0,1)");
  require(N >= 1, Errc::InvalidArgument, "N must be at least 1");
  std::vector<Atom> atoms;
  atoms.reserve(static_cast<std::size_t>(N));
  double sum = 0.0;
  for (int i = 1; i <= N; ++i) {
    double p = 0.0;
    if (lambda == 0.0) {
      p = (i == 1) ? 1.0 : 0.0;  // 0^0 = 1: the root alone
    } else {
      const double li = lambda * i;
      p = std::exp(-li + (i - 1) * std::log(li) - std::lgamma(i + 1.0));
    }
    atoms.push_back({static_cast<double>(i), p});
    sum += p;
  }
  const double tail = std::max(0.0, 1.0 - sum);
  require(tail < 1e-9, Errc::TailTooHeavy,
          "Borel(" + std::to_string(lambda) + ") leaves tail mass " + std::to_string(tail) +
              " beyond N = " + std::to_string(N));
  return DiscreteDist::normalized(std::move(atoms), tail);
}

}  // namespace sizebias
