#pragma once

#include <cstddef>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include "sizebias/rng.hpp"

namespace sizebias {

/// Finite population of (x_i, y_i) pairs with x_i >= 0 and sum x > 0.
class Population {
 public:
  Population(std::vector<double> xs, std::vector<double> ys);

  std::span<const double> xs() const noexcept { return xs_; }
  std::span<const double> ys() const noexcept { return ys_; }
  std::size_t size() const noexcept { return xs_.size(); }
  double x_total() const noexcept { return x_total_; }
  double y_total() const noexcept { return y_total_; }
  /// ybar / xbar.
  double population_ratio() const noexcept { return y_total_ / x_total_; }

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
  double x_total_;
  double y_total_;
};

/// Reads a header line `x,y` followed by one `x,y` row per unit. Blank lines
/// are ignored; any other malformed row throws ParseError naming the line.
Population read_population_csv(std::istream& in);
Population read_population_csv(const std::string& path);

using IndexSet = std::vector<std::size_t>;

/// First index drawn with probability x_i / sum x, the remaining m-1 as a
/// simple random sample from the others. Returned sorted.
IndexSet midzuno_sample(const Population& p, std::size_t m, Rng& rng);

/// sum_{i in r} y_i / sum_{i in r} x_i.
double ratio_estimate(const Population& p, std::span<const std::size_t> r);

/// C(n,m)^{-1} xbar_r / xbar with m = |r|.
double subset_probability(const Population& p, std::span<const std::size_t> r, std::size_t m);

/// Largest population exact_expectation will enumerate.
inline constexpr std::size_t kMaxEnumeration = 20;

/// E T_R over all C(n,m) subsets under the Midzuno design.
double exact_expectation(const Population& p, std::size_t m);

/// E T_R when R is a uniform m-subset; subsets with zero x-total are skipped
/// and the rest reweighted.
double naive_uniform_expectation(const Population& p, std::size_t m);

/// Calls f(subset) for every m-subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t m, F&& f) {
  if (m > n) return;
  IndexSet r(m);
  for (std::size_t i = 0; i < m; ++i) r[i] = i;
  while (true) {
    f(static_cast<const IndexSet&>(r));
    std::size_t i = m;
    while (i > 0 && r[i - 1] == n - m + (i - 1)) --i;
    if (i == 0) return;
    ++r[i - 1];
    for (std::size_t k = i; k < m; ++k) r[k] = r[k - 1] + 1;
  }
}

double binomial_coefficient(std::size_t n, std::size_t k);

}  // namespace sizebias
