#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "sizebias/error.hpp"
#include "sizebias/midzuno.hpp"
#include "support/generators.hpp"

using namespace sizebias;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected sizebias::Error");
  return Errc::InvalidArgument;
}

Population random_population(Rng& rng, std::size_t n, double zero_rate = 0.15) {
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Some zero x values exercise units that can only enter after the first draw.
    xs[i] = rng.uniform() < zero_rate ? 0.0 : 0.1 + 10.0 * rng.uniform();
    ys[i] = -5.0 + 20.0 * rng.uniform();
  }
  if (std::all_of(xs.begin(), xs.end(), [](double x) { return x == 0.0; })) xs[0] = 1.0;
  return Population(xs, ys);
}

/// Chi-square p-value of observed subset counts against subset_probability.
double subset_chi_square_p(const Population& p, std::size_t m, std::size_t draws, Rng& rng) {
  std::map<IndexSet, double> counts;
  for (std::size_t i = 0; i < draws; ++i) counts[midzuno_sample(p, m, rng)] += 1.0;
  double stat = 0.0;
  int cells = 0;
  double impossible = 0.0;
  for_each_subset(p.size(), m, [&](const IndexSet& r) {
    const double expected = subset_probability(p, r, m) * static_cast<double>(draws);
    const double observed = counts.count(r) ? counts.at(r) : 0.0;
    if (expected == 0.0) {
      impossible += observed;
      return;
    }
    stat += (observed - expected) * (observed - expected) / expected;
    ++cells;
  });
  CHECK(impossible == 0.0);
  if (cells < 2) return 1.0;
  boost::math::chi_squared dist(cells - 1);
  return boost::math::cdf(boost::math::complement(dist, stat));
}

}  // namespace

TEST_SUITE("population") {
  TEST_CASE("validation") {
    CHECK(code_of([] { Population({1.0}, {1.0}); }) == Errc::InvalidArgument);
    CHECK(code_of([] { Population({1.0, 2.0}, {1.0}); }) == Errc::InvalidArgument);
    CHECK(code_of([] { Population({0.0, 0.0}, {1.0, 2.0}); }) == Errc::InvalidArgument);
    CHECK(code_of([] { Population({-1.0, 2.0}, {1.0, 2.0}); }) == Errc::InvalidArgument);
  }
  TEST_CASE("csv") {
    std::istringstream ok("x,y\n1,2\n\n3.5, -4\n");
    const auto p = read_population_csv(ok);
    REQUIRE(p.size() == 2);
    CHECK(p.xs()[1] == 3.5);
    CHECK(p.ys()[1] == -4.0);
    std::istringstream bad_header("a,b\n1,2\n3,4\n");
    CHECK(code_of([&] { read_population_csv(bad_header); }) == Errc::ParseError);
    std::istringstream bad_row("x,y\n1,2\n3,oops\n");
    CHECK(code_of([&] { read_population_csv(bad_row); }) == Errc::ParseError);
    std::istringstream extra_column("x,y\n1,2,3\n3,4\n");
    CHECK(code_of([&] { read_population_csv(extra_column); }) == Errc::ParseError);
  }
}

TEST_SUITE("sampling") {
  TEST_CASE("m = n takes everything") {
    const Population p({1.0, 2.0}, {0.0, 0.0});
    Rng rng(1);
    for (int i = 0; i < 100; ++i) CHECK(midzuno_sample(p, 2, rng) == IndexSet{0, 1});
  }
  TEST_CASE("first draw is proportional to x") {
    const Population p({1.0, 3.0}, {1.0, 0.0});
    Rng rng(2);
    CHECK(subset_chi_square_p(p, 1, 100'000, rng) > 0.01);
    CHECK(subset_probability(p, IndexSet{1}, 1) == doctest::Approx(0.75));
  }
  TEST_CASE("equal x values give uniform subsets") {
    const Population p({2, 2, 2, 2, 2}, {1, 2, 3, 4, 5});
    for_each_subset(5, 2, [&](const IndexSet& r) {
      CHECK(subset_probability(p, r, 2) == doctest::Approx(1.0 / 10));
    });
    Rng rng(3);
    CHECK(subset_chi_square_p(p, 2, 100'000, rng) > 0.001);
  }
  TEST_CASE("empirical law matches subset probabilities") {
    Rng rng(4);
    for (int t = 0; t < 5; ++t) {
      const auto n = testsupport::between(rng, 2, 6);
      const auto p = random_population(rng, n);
      const auto m = testsupport::between(rng, 1, n);
      CAPTURE(n);
      CAPTURE(m);
      CHECK(subset_chi_square_p(p, m, 100'000, rng) > 0.001);
    }
  }
  TEST_CASE("bad sample size") {
    const Population p({1.0, 3.0}, {1.0, 0.0});
    Rng rng(5);
    CHECK(code_of([&] { midzuno_sample(p, 0, rng); }) == Errc::BadSampleSize);
    CHECK(code_of([&] { midzuno_sample(p, 3, rng); }) == Errc::BadSampleSize);
  }
}

TEST_SUITE("ratio estimate") {
  TEST_CASE("examples") {
    const Population prop({1, 2, 3}, {2, 4, 6});
    CHECK(ratio_estimate(prop, IndexSet{0, 2}) == 2.0);
    const Population p({1, 3}, {1, 0});
    CHECK(ratio_estimate(p, IndexSet{0}) == 1.0);
    CHECK(ratio_estimate(p, IndexSet{1}) == 0.0);
  }
  TEST_CASE("zero denominator") {
    const Population p({0, 3}, {1, 0});
    CHECK(code_of([&] { ratio_estimate(p, IndexSet{0}); }) == Errc::ZeroDenominator);
  }
}

TEST_SUITE("subset probability") {
  TEST_CASE("sums to one") {
    Rng rng(6);
    for (int t = 0; t < 20; ++t) {
      const auto n = testsupport::between(rng, 2, 8);
      const auto p = random_population(rng, n);
      for (std::size_t m = 1; m <= n; ++m) {
        double sum = 0.0;
        for_each_subset(n, m, [&](const IndexSet& r) { sum += subset_probability(p, r, m); });
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }
  TEST_CASE("size mismatch") {
    const Population p({1, 3}, {1, 0});
    CHECK(code_of([&] { subset_probability(p, IndexSet{0, 1}, 1); }) == Errc::BadSubsetSize);
  }
}

TEST_SUITE("unbiasedness") {
  TEST_CASE("examples") {
    CHECK(exact_expectation(Population({1, 2, 3}, {2, 4, 6}), 2) == doctest::Approx(2.0));
    CHECK(exact_expectation(Population({1, 3}, {1, 0}), 1) == doctest::Approx(0.25));
    CHECK(exact_expectation(Population({1, 1}, {0, 1}), 1) == doctest::Approx(0.5));
  }
  TEST_CASE("E T_R = ybar / xbar on random populations") {
    Rng rng(7);
    for (int t = 0; t < 50; ++t) {
      const auto n = testsupport::between(rng, 2, 8);
      const auto p = random_population(rng, n, 0.0);
      for (std::size_t m = 1; m <= n; ++m)
        CHECK(std::abs(exact_expectation(p, m) - p.population_ratio()) <= 1e-12);
    }
  }
  TEST_CASE("subsets with zero x total drop out") {
    // Such subsets are never drawn, so E T_R misses their y totals:
    // E T_R = (Y - sum over zero subsets of Y_r / C(n-1, m-1)) / X.
    Rng rng(8);
    for (int t = 0; t < 50; ++t) {
      const auto n = testsupport::between(rng, 2, 8);
      const auto p = random_population(rng, n, 0.4);
      for (std::size_t m = 1; m <= n; ++m) {
        double missed = 0.0;
        std::vector<bool> pick(n, false);
        std::fill(pick.begin(), pick.begin() + static_cast<long>(m), true);
        do {
          double x = 0.0, y = 0.0;
          for (std::size_t i = 0; i < n; ++i)
            if (pick[i]) {
              x += p.xs()[i];
              y += p.ys()[i];
            }
          if (x == 0.0) missed += y;
        } while (std::prev_permutation(pick.begin(), pick.end()));
        double choose = 1.0;
        for (std::size_t i = 1; i < m; ++i) choose = choose * static_cast<double>(n - m + i) / static_cast<double>(i);
        const double want = (p.y_total() - missed / choose) / p.x_total();
        CHECK(std::abs(exact_expectation(p, m) - want) <= 1e-12);
      }
    }
  }
  TEST_CASE("uniform subsets are biased") {
    const Population p({1, 3}, {1, 0});
    CHECK(naive_uniform_expectation(p, 1) == doctest::Approx(0.5));
    CHECK(std::abs(naive_uniform_expectation(p, 1) - p.population_ratio()) > 0.2);
  }
  TEST_CASE("enumeration guard") {
    const Population p(std::vector<double>(21, 1.0), std::vector<double>(21, 1.0));
    CHECK(code_of([&] { exact_expectation(p, 2); }) == Errc::TooLargeToEnumerate);
  }
}
