#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sizebias/discrete_dist.hpp"
#include "sizebias/rng.hpp"

namespace sizebias {

/// Hard cap on convolution support size. Exceeding it is an error so that
/// exact results never silently truncate.
inline constexpr std::size_t kDefaultSupportCap = 1'000'000;

/// Independent nonnegative summands X_1..X_n, each with positive mean.
class IndependentSum {
 public:
  explicit IndependentSum(std::vector<DiscreteDist> terms);

  std::span<const DiscreteDist> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  double mean() const noexcept;

 private:
  std::vector<DiscreteDist> terms_;
};

/// P(I = i) = E X_i / E S.
struct IndexDist {
  std::vector<double> probs;
};

IndexDist index_distribution(const IndependentSum& s);

DiscreteDist convolve(const DiscreteDist& a, const DiscreteDist& b,
                      std::size_t cap = kDefaultSupportCap);
DiscreteDist convolve_all(std::span<const DiscreteDist> terms, std::size_t cap = kDefaultSupportCap);

/// Law of S* as the mixture over i of S with only the i-th term biased.
DiscreteDist size_biased_sum_pmf(const IndependentSum& s, std::size_t cap = kDefaultSupportCap);

/// Draws S - X_I + X_I*, with X_I* independent of X_I.
std::vector<double> sample_size_biased_sum(const IndependentSum& s, Rng& rng, std::size_t n);

/// Law of X_1 * ... * X_n for independent factors.
DiscreteDist product_law(std::span<const DiscreteDist> factors, std::size_t cap = kDefaultSupportCap);

/// Law of X_1* ... X_n* (every factor biased). Supports must be strictly positive.
DiscreteDist size_biased_product_pmf(std::span<const DiscreteDist> factors,
                                     std::size_t cap = kDefaultSupportCap);

DiscreteDist mix(std::span<const DiscreteDist> components, std::span<const double> weights);

struct BiasedMixture {
  DiscreteDist dist;
  std::vector<double> weights;
};

/// Size bias of a mixture: reweight by component means, bias each component.
BiasedMixture size_bias_mixture(std::span<const DiscreteDist> components,
                                std::span<const double> weights);

/// U* for U uniform on (0,1): set the binary digit at a Geometric(1/2) index to 1.
std::vector<double> sample_uniform_star(Rng& rng, std::size_t n);

/// S* for the Cantor variable S = sum 2 B_i / 3^i: S + 2 (1 - B_I) / 3^I with
/// P(I = i) = 2 / 3^i, using `depth` ternary digits.
std::vector<double> sample_cantor_star(Rng& rng, std::size_t n, int depth = 40);

/// Plain Cantor draws with the same digit depth.
std::vector<double> sample_cantor(Rng& rng, std::size_t n, int depth = 40);

}  // namespace sizebias
