#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sizebias {

/// Density tabulated on the uniform grid x_j = j*h, j = 0..n-1, plus an
/// optional point mass at 0. Integrals use the trapezoid rule.
class GridDensity {
 public:
  /// Validates values >= 0, atom0 in [0,1] and |atom0 + integral - 1| <= tolerance.
  GridDensity(double h, std::vector<double> values, double atom0 = 0.0, double tolerance = 1e-6);

  /// Scales the values so that atom0 + integral = 1.
  static GridDensity normalized(double h, std::vector<double> values, double atom0 = 0.0);

  double h() const noexcept { return h_; }
  std::span<const double> values() const noexcept { return values_; }
  double atom0() const noexcept { return atom0_; }
  double tolerance() const noexcept { return tolerance_; }
  std::size_t size() const noexcept { return values_.size(); }
  double x(std::size_t j) const noexcept { return static_cast<double>(j) * h_; }
  double xmax() const noexcept { return x(values_.size() - 1); }

  /// Trapezoid integral of the density part (excludes atom0).
  double integral() const noexcept;
  /// Trapezoid integral of x^k f(x) plus the atom's contribution 0^k.
  double moment(int k) const;
  double mean() const { return moment(1); }
  /// Linear interpolation; 0 outside the grid.
  double value_at(double x) const noexcept;
  /// atom0 + integral of f over [0, x].
  double cdf(double x) const noexcept;

 private:
  double h_;
  std::vector<double> values_;
  double atom0_;
  double tolerance_;
};

/// Trapezoid rule on uniformly spaced samples.
double trapezoid(std::span<const double> samples, double h) noexcept;

}  // namespace sizebias
