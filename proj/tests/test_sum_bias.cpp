#include <doctest.h>

#include <cmath>
#include <vector>

#include "sizebias/error.hpp"
#include "sizebias/named_dist.hpp"
#include "sizebias/sum_bias.hpp"
#include "sizebias/transform.hpp"
#include "support/generators.hpp"

using namespace sizebias;
using testsupport::enumerate_law;
using testsupport::from_map;

namespace {

DiscreteDist atoms(std::vector<Atom> a) { return DiscreteDist(std::move(a)); }

DiscreteDist bernoulli(double p) { return atoms({{0, 1 - p}, {1, p}}); }

double sample_mean(const std::vector<double>& xs, double* se = nullptr) {
  double s = 0, s2 = 0;
  for (double x : xs) {
    s += x;
    s2 += x * x;
  }
  const double n = static_cast<double>(xs.size());
  const double m = s / n;
  if (se) *se = std::sqrt((s2 / n - m * m) / (n - 1));
  return m;
}

}  // namespace

TEST_SUITE("index distribution") {
  TEST_CASE("proportional to term means") {
    const IndependentSum a({DiscreteDist::point(1), DiscreteDist::point(1)});
    CHECK(index_distribution(a).probs == std::vector<double>{0.5, 0.5});
    const IndependentSum b({DiscreteDist::point(1), DiscreteDist::point(2), DiscreteDist::point(3)});
    const auto p = index_distribution(b).probs;
    CHECK(p[0] == doctest::Approx(1.0 / 6));
    CHECK(p[1] == doctest::Approx(1.0 / 3));
    CHECK(p[2] == doctest::Approx(0.5));
  }
  TEST_CASE("Cantor digits give a geometric index") {
    std::vector<DiscreteDist> terms;
    // Deeper digits would sit within kMergeTolerance of 0 and merge with it.
    const int depth = 20;
    for (int i = 1; i <= depth; ++i) terms.push_back(atoms({{0, 0.5}, {2 * std::pow(3.0, -i), 0.5}}));
    const auto p = index_distribution(IndependentSum(terms)).probs;
    const double norm = 1.0 - std::pow(3.0, -depth);
    for (int i = 1; i <= depth; ++i)
      CHECK(p[i - 1] == doctest::Approx(2 * std::pow(3.0, -i) / norm).epsilon(1e-12));
  }
  TEST_CASE("zero-mean terms are rejected") {
    try {
      IndependentSum({DiscreteDist::point(0), DiscreteDist::point(1)});
      FAIL("expected ZeroMeanTerm");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::ZeroMeanTerm);
    }
  }
}

TEST_SUITE("sum") {
  TEST_CASE("two fair coins") {
    const auto s = size_biased_sum_pmf(IndependentSum({bernoulli(0.5), bernoulli(0.5)}));
    CHECK(max_atom_difference(s, atoms({{1, 0.5}, {2, 0.5}})) < 1e-15);
  }
  TEST_CASE("two-point lattice") {
    const auto t = atoms({{0, 0.5}, {2, 0.5}});
    const auto conv = convolve(t, t);
    CHECK(max_atom_difference(conv, atoms({{0, 0.25}, {2, 0.5}, {4, 0.25}})) < 1e-15);
    const auto s = size_biased_sum_pmf(IndependentSum({t, t}));
    CHECK(max_atom_difference(s, atoms({{2, 0.5}, {4, 0.5}})) < 1e-15);
  }
  TEST_CASE("Poisson(1) + Poisson(2) is a shifted Poisson(3)") {
    const IndependentSum sum({tabulate(Poisson{1}), tabulate(Poisson{2})});
    const auto s = size_biased_sum_pmf(sum);
    CHECK(max_atom_difference(s, size_bias(convolve_all(sum.terms()))) < 1e-12);
    const auto p3 = tabulate(Poisson{3});
    for (int k = 0; k < 20; ++k) CHECK(std::abs(s.mass_at(k + 1) - p3.mass_at(k)) < 1e-10);
  }
  TEST_CASE("mixture route equals the convolution oracle on random instances") {
    Rng rng(1001);
    for (int t = 0; t < 100; ++t) {
      std::vector<DiscreteDist> terms;
      const auto n = testsupport::between(rng, 1, 4);
      for (std::size_t i = 0; i < n; ++i) terms.push_back(testsupport::random_dist(rng, 5));
      const IndependentSum sum(terms);
      const auto oracle = from_map(
          testsupport::raw_size_bias(from_map(enumerate_law(terms, std::plus<>(), 0.0))));
      CHECK(max_atom_difference(size_biased_sum_pmf(sum), oracle) <= 1e-10);
    }
  }
  TEST_CASE("iid sums: biasing the first term is enough") {
    Rng rng(1002);
    for (int t = 0; t < 30; ++t) {
      const auto x = testsupport::random_dist(rng, 4);
      const std::vector<DiscreteDist> terms(3, x);
      const std::vector<DiscreteDist> first_biased = {size_bias(x), x, x};
      CHECK(max_atom_difference(size_biased_sum_pmf(IndependentSum(terms)),
                                convolve_all(first_biased)) <= 1e-12);
    }
  }
  TEST_CASE("support cap is enforced") {
    std::vector<Atom> a, b;
    for (int i = 0; i < 100; ++i) {
      a.push_back({static_cast<double>(i), 0.01});
      b.push_back({i * 0.001 + 1000.0 * i, 0.01});
    }
    try {
      convolve(DiscreteDist(a), DiscreteDist(b), 5000);
      FAIL("expected SupportOverflow");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::SupportOverflow);
    }
  }
}

TEST_SUITE("sum sampler") {
  TEST_CASE("mean matches the moment shift") {
    const IndependentSum sum({atoms({{1, 0.3}, {4, 0.7}}), tabulate(Poisson{2}), bernoulli(0.4)});
    Rng rng(1101);
    double se = 0;
    const double m = sample_mean(sample_size_biased_sum(sum, rng, 100'000), &se);
    const auto s = convolve_all(sum.terms());
    const double want = moment(s, 2) / moment(s, 1);
    CHECK(std::abs(m - want) < 4 * se);
  }
  TEST_CASE("two fair coins empirically") {
    Rng rng(1102);
    const auto draws = sample_size_biased_sum(IndependentSum({bernoulli(0.5), bernoulli(0.5)}), rng,
                                              100'000);
    CHECK(ks_distance(empirical(draws), atoms({{1, 0.5}, {2, 0.5}})) <= 0.01);
  }
  TEST_CASE("a single term samples X*") {
    Rng rng(1103);
    const auto x = atoms({{1, 0.5}, {3, 0.5}});
    const auto draws = sample_size_biased_sum(IndependentSum({x}), rng, 100'000);
    CHECK(ks_distance(empirical(draws), size_bias(x)) <= 0.01);
  }
}

TEST_SUITE("product") {
  TEST_CASE("two fair two-point factors") {
    const auto f = atoms({{1, 0.5}, {2, 0.5}});
    const std::vector<DiscreteDist> factors = {f, f};
    const auto s = size_biased_product_pmf(factors);
    CHECK(max_atom_difference(s, atoms({{1, 1.0 / 9}, {2, 4.0 / 9}, {4, 4.0 / 9}})) < 1e-15);
  }
  TEST_CASE("a point factor scales") {
    const auto d = atoms({{1, 0.2}, {3, 0.8}});
    const std::vector<DiscreteDist> factors = {DiscreteDist::point(2), d};
    CHECK(max_atom_difference(size_biased_product_pmf(factors), scale(size_bias(d), 2)) < 1e-15);
    const std::vector<DiscreteDist> single = {d};
    CHECK(max_atom_difference(size_biased_product_pmf(single), size_bias(d)) < 1e-15);
  }
  TEST_CASE("factor rule equals the enumeration oracle") {
    Rng rng(1201);
    for (int t = 0; t < 100; ++t) {
      std::vector<DiscreteDist> factors;
      const auto n = testsupport::between(rng, 1, 3);
      for (std::size_t i = 0; i < n; ++i) factors.push_back(testsupport::random_dist(rng, 4, false));
      const auto oracle = from_map(testsupport::raw_size_bias(
          from_map(enumerate_law(factors, std::multiplies<>(), 1.0))));
      CHECK(max_atom_difference(size_biased_product_pmf(factors), oracle) <= 1e-10);
    }
  }
  TEST_CASE("zero in a factor's support is rejected") {
    const std::vector<DiscreteDist> factors = {bernoulli(0.5), DiscreteDist::point(2)};
    try {
      size_biased_product_pmf(factors);
      FAIL("expected ZeroInSupport");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::ZeroInSupport);
    }
  }
}

TEST_SUITE("mixture") {
  TEST_CASE("equal means keep the weights") {
    const std::vector<DiscreteDist> c = {atoms({{1, 0.5}, {3, 0.5}}), DiscreteDist::point(2)};
    const std::vector<double> w = {0.3, 0.7};
    const auto r = size_bias_mixture(c, w);
    CHECK(r.weights[0] == doctest::Approx(0.3));
    CHECK(r.weights[1] == doctest::Approx(0.7));
  }
  TEST_CASE("means 1 and 3") {
    const std::vector<DiscreteDist> c = {DiscreteDist::point(1), DiscreteDist::point(3)};
    const std::vector<double> w = {0.5, 0.5};
    const auto r = size_bias_mixture(c, w);
    CHECK(r.weights[0] == doctest::Approx(0.25));
    CHECK(r.weights[1] == doctest::Approx(0.75));
  }
  TEST_CASE("single component") {
    const std::vector<DiscreteDist> c = {atoms({{1, 0.5}, {3, 0.5}})};
    const std::vector<double> w = {1.0};
    const auto r = size_bias_mixture(c, w);
    CHECK(r.weights[0] == 1.0);
    CHECK(max_atom_difference(r.dist, size_bias(c[0])) < 1e-15);
  }
  TEST_CASE("biased-then-mixed equals mixed-then-biased") {
    Rng rng(1301);
    for (int t = 0; t < 100; ++t) {
      std::vector<DiscreteDist> c;
      const auto n = testsupport::between(rng, 1, 4);
      for (std::size_t i = 0; i < n; ++i) c.push_back(testsupport::random_dist(rng, 4));
      const auto w = testsupport::random_masses(rng, n);
      CHECK(max_atom_difference(size_bias_mixture(c, w).dist, size_bias(mix(c, w))) <= 1e-10);
    }
  }
}

TEST_SUITE("uniform and Cantor") {
  TEST_CASE("U* has cdf x^2") {
    Rng rng(1401);
    auto xs = sample_uniform_star(rng, 100'000);
    std::sort(xs.begin(), xs.end());
    double d = 0;
    const double n = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double f = xs[i] * xs[i];
      d = std::max({d, std::abs(f - i / n), std::abs((i + 1) / n - f)});
    }
    CHECK(d <= 0.01);
    double se = 0;
    const double m = sample_mean(xs, &se);
    CHECK(std::abs(m - 2.0 / 3.0) < 4 * se);
  }
  TEST_CASE("Cantor means") {
    Rng rng(1402);
    double se = 0;
    const double m = sample_mean(sample_cantor(rng, 100'000), &se);
    CHECK(std::abs(m - 0.5) < 4 * se);
    const double ms = sample_mean(sample_cantor_star(rng, 100'000), &se);
    CHECK(std::abs(ms - 0.75) < 4 * se);
  }
  TEST_CASE("shallow Cantor depth is rejected") {
    Rng rng(1);
    CHECK_THROWS_AS(sample_cantor_star(rng, 1, 10), Error);
  }
}
