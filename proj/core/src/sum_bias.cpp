#include "sizebias/sum_bias.hpp"

#include <cmath>
#include <string>

#include "sizebias/error.hpp"
#include "sizebias/transform.hpp"

namespace sizebias {
namespace {

void check_cap(std::size_t a, std::size_t b, std::size_t cap) {
  require(b == 0 || a <= cap / b, Errc::SupportOverflow,
          "convolution support " + std::to_string(a) + " x " + std::to_string(b) +
              " exceeds the cap of " + std::to_string(cap));
}

}  // namespace

IndependentSum::IndependentSum(std::vector<DiscreteDist> terms) : terms_(std::move(terms)) {
  require(!terms_.empty(), Errc::InvalidArgument, "a sum needs at least one term");
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    require(terms_[i].mean() > 0.0, Errc::ZeroMeanTerm,
            "term " + std::to_string(i) + " has mean zero");
  }
}

double IndependentSum::mean() const noexcept {
  double total = 0.0;
  for (const auto& t : terms_) total += t.mean();
  return total;
}

IndexDist index_distribution(const IndependentSum& s) {
  const double total = s.mean();
  IndexDist out;
  out.probs.reserve(s.size());
  for (const auto& t : s.terms()) out.probs.push_back(t.mean() / total);
  return out;
}

DiscreteDist convolve(const DiscreteDist& a, const DiscreteDist& b, std::size_t cap) {
  check_cap(a.size(), b.size(), cap);
  std::vector<Atom> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a.atoms())
    for (const auto& y : b.atoms()) out.push_back({x.x + y.x, x.p * y.p});
  return DiscreteDist::normalized(std::move(out), a.truncation_tail() + b.truncation_tail());
}

DiscreteDist convolve_all(std::span<const DiscreteDist> terms, std::size_t cap) {
  require(!terms.empty(), Errc::InvalidArgument, "nothing to convolve");
  DiscreteDist acc = terms.front();
  for (std::size_t i = 1; i < terms.size(); ++i) acc = convolve(acc, terms[i], cap);
  return acc;
}

DiscreteDist size_biased_sum_pmf(const IndependentSum& s, std::size_t cap) {
  const auto index = index_distribution(s);
  const auto terms = s.terms();
  std::vector<Atom> mixture;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    std::vector<DiscreteDist> replaced(terms.begin(), terms.end());
    replaced[i] = size_bias(terms[i]);
    const auto part = convolve_all(replaced, cap);
    for (const auto& atom : part.atoms()) mixture.push_back({atom.x, index.probs[i] * atom.p});
    require(mixture.size() <= cap, Errc::SupportOverflow, "mixture support exceeds the cap");
  }
  return DiscreteDist::normalized(std::move(mixture));
}

std::vector<double> sample_size_biased_sum(const IndependentSum& s, Rng& rng, std::size_t n) {
  require(n >= 1, Errc::InvalidArgument, "need at least one sample");
  const auto index = index_distribution(s);
  std::vector<Atom> index_atoms;
  for (std::size_t i = 0; i < index.probs.size(); ++i)
    index_atoms.push_back({static_cast<double>(i), index.probs[i]});
  const auto index_law = DiscreteDist::normalized(std::move(index_atoms));

  std::vector<DiscreteDist> biased;
  biased.reserve(s.size());
  for (const auto& t : s.terms()) biased.push_back(size_bias(t));

  std::vector<double> out(n);
  std::vector<double> draws(s.size());
  for (auto& value : out) {
    double total = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) {
      draws[j] = s.terms()[j].sample(rng);
      total += draws[j];
    }
    const auto i = static_cast<std::size_t>(index_law.sample(rng));
    value = total - draws[i] + biased[i].sample(rng);
  }
  return out;
}

DiscreteDist product_law(std::span<const DiscreteDist> factors, std::size_t cap) {
  require(!factors.empty(), Errc::InvalidArgument, "a product needs at least one factor");
  std::vector<Atom> acc(factors.front().atoms().begin(), factors.front().atoms().end());
  for (std::size_t i = 1; i < factors.size(); ++i) {
    check_cap(acc.size(), factors[i].size(), cap);
    std::vector<Atom> next;
    next.reserve(acc.size() * factors[i].size());
    for (const auto& x : acc)
      for (const auto& y : factors[i].atoms()) next.push_back({x.x * y.x, x.p * y.p});
    acc = canonicalize_atoms(std::move(next));
  }
  return DiscreteDist::normalized(std::move(acc));
}

DiscreteDist size_biased_product_pmf(std::span<const DiscreteDist> factors, std::size_t cap) {
  require(!factors.empty(), Errc::InvalidArgument, "a product needs at least one factor");
  std::vector<DiscreteDist> biased;
  biased.reserve(factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) {
    require(factors[i].min_support() > 0.0, Errc::ZeroInSupport,
            "factor " + std::to_string(i) + " has an atom at zero");
    biased.push_back(size_bias(factors[i]));
  }
  return product_law(biased, cap);
}

DiscreteDist mix(std::span<const DiscreteDist> components, std::span<const double> weights) {
  require(!components.empty() && components.size() == weights.size(), Errc::InvalidArgument,
          "need one weight per component");
  double total = 0.0;
  for (double w : weights) {
    require(w >= 0.0, Errc::InvalidArgument, "weights must be nonnegative");
    total += w;
  }
  require(std::abs(total - 1.0) <= 1e-12, Errc::InvalidArgument, "weights must sum to 1");
  std::vector<Atom> atoms;
  for (std::size_t b = 0; b < components.size(); ++b)
    for (const auto& atom : components[b].atoms()) atoms.push_back({atom.x, weights[b] * atom.p});
  return DiscreteDist::normalized(std::move(atoms));
}

BiasedMixture size_bias_mixture(std::span<const DiscreteDist> components,
                                std::span<const double> weights) {
  require(!components.empty() && components.size() == weights.size(), Errc::InvalidArgument,
          "need one weight per component");
  std::vector<double> reweighted(weights.size());
  double total = 0.0;
  for (std::size_t b = 0; b < components.size(); ++b) {
    const double m = components[b].mean();
    require(m > 0.0, Errc::ZeroMeanComponent, "component " + std::to_string(b) + " has mean zero");
    reweighted[b] = weights[b] * m;
    total += reweighted[b];
  }
  for (double& w : reweighted) w /= total;
  std::vector<DiscreteDist> biased;
  biased.reserve(components.size());
  for (const auto& c : components) biased.push_back(size_bias(c));
  auto dist = mix(biased, reweighted);
  return {std::move(dist), std::move(reweighted)};
}

std::vector<double> sample_uniform_star(Rng& rng, std::size_t n) {
  constexpr int kBits = 53;
  std::vector<double> out(n);
  for (auto& value : out) {
    const std::uint64_t bits = rng() >> (64 - kBits);
    int j = 1;
    while (j <= 64 && rng.bernoulli(0.5)) ++j;  // P(J = j) = 2^-j
    std::uint64_t digits = bits;
    if (j <= kBits) digits |= std::uint64_t{1} << (kBits - j);
    value = static_cast<double>(digits) * 0x1.0p-53;
  }
  return out;
}

namespace {

std::vector<double> cantor_draws(Rng& rng, std::size_t n, int depth, bool biased) {
  require(depth >= 30, Errc::InvalidArgument, "Cantor depth must be at least 30");
  std::vector<double> out(n);
  std::vector<int> digits(static_cast<std::size_t>(depth));
  std::vector<double> weight(static_cast<std::size_t>(depth));
  for (int i = 1; i <= depth; ++i) weight[static_cast<std::size_t>(i - 1)] = 2.0 * std::pow(3.0, -i);
  for (auto& value : out) {
    for (auto& b : digits) b = rng.bernoulli(0.5) ? 1 : 0;
    if (biased) {
      // P(I = i) = 2/3^i: continue with probability 1/3.
      int i = 1;
      while (rng.uniform() < 1.0 / 3.0) ++i;
      if (i <= depth) digits[static_cast<std::size_t>(i - 1)] = 1;
    }
    double sum = 0.0;
    for (std::size_t i = digits.size(); i-- > 0;) sum += digits[i] * weight[i];
    value = sum;
  }
  return out;
}

}  // namespace

std::vector<double> sample_cantor_star(Rng& rng, std::size_t n, int depth) {
  return cantor_draws(rng, n, depth, true);
}

std::vector<double> sample_cantor(Rng& rng, std::size_t n, int depth) {
  return cantor_draws(rng, n, depth, false);
}

}  // namespace sizebias
