#include "sizebias/grid_density.hpp"

#include <cmath>
#include <string>

#include "sizebias/error.hpp"

namespace sizebias {

double trapezoid(std::span<const double> samples, double h) noexcept {
  if (samples.size() < 2) return 0.0;
  double sum = 0.5 * (samples.front() + samples.back());
  for (std::size_t j = 1; j + 1 < samples.size(); ++j) sum += samples[j];
  return sum * h;
}

GridDensity::GridDensity(double h, std::vector<double> values, double atom0, double tolerance)
    : h_(h), values_(std::move(values)), atom0_(atom0), tolerance_(tolerance) {
  require(h_ > 0.0 && std::isfinite(h_), Errc::InvalidDistribution, "grid step must be positive");
  require(values_.size() >= 2, Errc::InvalidDistribution, "grid needs at least two points");
  require(atom0_ >= 0.0 && atom0_ <= 1.0, Errc::InvalidDistribution, "atom0 must lie in [0,1]");
  for (double v : values_) {
    require(std::isfinite(v) && v >= 0.0, Errc::InvalidDistribution,
            "density values must be finite and nonnegative");
  }
  const double total = atom0_ + integral();
  require(std::abs(total - 1.0) <= tolerance_, Errc::InvalidDistribution,
          "atom0 + integral = " + std::to_string(total) + ", not 1");
}

GridDensity GridDensity::normalized(double h, std::vector<double> values, double atom0) {
  require(atom0 >= 0.0 && atom0 < 1.0, Errc::InvalidDistribution, "atom0 must lie in [0,1)");
  const double mass = trapezoid(values, h);
  require(mass > 0.0, Errc::InvalidDistribution, "density has no mass");
  const double factor = (1.0 - atom0) / mass;
  for (double& v : values) v *= factor;
  return GridDensity(h, std::move(values), atom0, 1e-9);
}

double GridDensity::integral() const noexcept { return trapezoid(values_, h_); }

double GridDensity::moment(int k) const {
  // The grid always contains x = 0.
  require(k >= 0, Errc::NegativeMomentAtZero, "negative moment of a grid density");
  std::vector<double> weighted(values_.size());
  for (std::size_t j = 0; j < values_.size(); ++j) {
    const double xj = x(j);
    // x^k f(x) at x = 0 is taken as 0 for k != 0 (finite density assumed).
    weighted[j] = (k == 0) ? values_[j] : (j == 0 ? 0.0 : std::pow(xj, k) * values_[j]);
  }
  const double atom_part = (k == 0) ? atom0_ : 0.0;
  return atom_part + trapezoid(weighted, h_);
}

double GridDensity::value_at(double xq) const noexcept {
  if (xq < 0.0 || xq > xmax()) return 0.0;
  const double pos = xq / h_;
  auto j = static_cast<std::size_t>(pos);
  if (j + 1 >= values_.size()) return values_.back();
  const double t = pos - static_cast<double>(j);
  return (1.0 - t) * values_[j] + t * values_[j + 1];
}

double GridDensity::cdf(double xq) const noexcept {
  if (xq < 0.0) return 0.0;
  double acc = atom0_;
  const double pos = std::min(xq, xmax()) / h_;
  const auto full = static_cast<std::size_t>(pos);
  for (std::size_t j = 0; j < full && j + 1 < values_.size(); ++j)
    acc += 0.5 * h_ * (values_[j] + values_[j + 1]);
  const double t = pos - static_cast<double>(full);
  if (t > 0.0 && full + 1 < values_.size()) {
    const double f0 = values_[full];
    const double f1 = values_[full + 1];
    acc += h_ * t * (f0 + 0.5 * t * (f1 - f0));
  }
  return acc;
}

}  // namespace sizebias
