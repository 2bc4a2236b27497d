#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "sizebias/error.hpp"
#include "sizebias/named_dist.hpp"
#include "sizebias/serialize.hpp"
#include "sizebias/transform.hpp"
#include "support/generators.hpp"

using namespace sizebias;
using testsupport::random_dist;

namespace {

DiscreteDist atoms(std::vector<Atom> a) { return DiscreteDist(std::move(a)); }

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected sizebias::Error");
  return Errc::InvalidArgument;
}

/// KS distance between a sample and a continuous CDF.
template <class F>
double ks_to_cdf(std::vector<double> xs, F cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, std::abs(f - i / n), std::abs((i + 1) / n - f)});
  }
  return d;
}

}  // namespace

TEST_SUITE("rng") {
  TEST_CASE("same seed gives the same stream") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a() == b());
  }
  TEST_CASE("derived streams differ by label and index") {
    auto a = Rng::derive(1, "x", 0);
    auto b = Rng::derive(1, "x", 1);
    auto c = Rng::derive(1, "y", 0);
    const auto va = a();
    CHECK(va != b());
    CHECK(va != c());
    CHECK(Rng::derive(1, "x", 0)() == va);
  }
  TEST_CASE("samplers have the right first moments") {
    Rng rng(7);
    const int n = 200'000;
    double u = 0, e = 0, z = 0, z2 = 0, g = 0;
    for (int i = 0; i < n; ++i) {
      u += rng.uniform();
      e += rng.exponential();
      const double v = rng.normal();
      z += v;
      z2 += v * v;
      g += rng.gamma(2.5);
    }
    CHECK(u / n == doctest::Approx(0.5).epsilon(0.01));
    CHECK(e / n == doctest::Approx(1.0).epsilon(0.01));
    CHECK(std::abs(z / n) < 0.01);
    CHECK(z2 / n == doctest::Approx(1.0).epsilon(0.01));
    CHECK(g / n == doctest::Approx(2.5).epsilon(0.01));
  }
  TEST_CASE("below stays in range and hits every value") {
    Rng rng(3);
    std::vector<int> seen(7, 0);
    for (int i = 0; i < 7000; ++i) ++seen.at(rng.below(7));
    for (int c : seen) CHECK(c > 800);
  }
}

TEST_SUITE("discrete dist") {
  TEST_CASE("strict constructor rejects bad input") {
    CHECK(code_of([] { atoms({{1, 0.5}, {2, 0.4}}); }) == Errc::InvalidDistribution);
    CHECK(code_of([] { atoms({{-1, 0.5}, {2, 0.5}}); }) == Errc::InvalidDistribution);
    CHECK(code_of([] { atoms({{1, -0.5}, {2, 1.5}}); }) == Errc::InvalidDistribution);
  }
  TEST_CASE("atoms are sorted and merged") {
    const auto d = atoms({{3, 0.25}, {1, 0.25}, {3 + 1e-14, 0.5}});
    REQUIRE(d.size() == 2);
    CHECK(d.atoms()[0].x == 1.0);
    CHECK(d.atoms()[1].p == doctest::Approx(0.75));
  }
  TEST_CASE("cdf, survival and mass") {
    const auto d = atoms({{1, 0.5}, {3, 0.5}});
    CHECK(d.cdf(0.9) == 0.0);
    CHECK(d.cdf(1.0) == 0.5);
    CHECK(d.survival(1.0) == 0.5);
    CHECK(d.survival(3.0) == 0.0);
    CHECK(d.mass_at(3.0) == 0.5);
    CHECK(d.mass_at(2.0) == 0.0);
  }
  TEST_CASE("sampling matches masses") {
    const auto d = atoms({{1, 0.2}, {2, 0.3}, {5, 0.5}});
    Rng rng(11);
    std::vector<double> xs(100'000);
    for (auto& x : xs) x = d.sample(rng);
    CHECK(ks_distance(empirical(xs), d) < 0.01);
  }
}

TEST_SUITE("size bias") {
  TEST_CASE("Bernoulli half becomes a point mass at one") {
    const auto s = size_bias(atoms({{0, 0.5}, {1, 0.5}}));
    REQUIRE(s.size() == 1);
    CHECK(s.atoms()[0].x == 1.0);
    CHECK(s.atoms()[0].p == 1.0);
  }
  TEST_CASE("two-point example") {
    const auto s = size_bias(atoms({{1, 0.5}, {3, 0.5}}));
    CHECK(s.mass_at(1) == doctest::Approx(0.25));
    CHECK(s.mass_at(3) == doctest::Approx(0.75));
  }
  TEST_CASE("Poisson pmf shifts by one index") {
    const auto x = tabulate(Poisson{1.0}, 1e-15);
    const auto s = size_bias(x);
    for (const auto& a : x.atoms()) {
      if (a.x + 1 > x.max_support()) break;
      CHECK(std::abs(s.mass_at(a.x + 1) - a.p) < 1e-12);
    }
    CHECK(s.mass_at(0) == 0.0);
  }
  TEST_CASE("zero mean is rejected") {
    CHECK(code_of([] { size_bias(DiscreteDist::point(0)); }) == Errc::ZeroMean);
  }
  TEST_CASE("size bias matches the definition on random laws") {
    Rng rng(101);
    for (int t = 0; t < 100; ++t) {
      const auto d = random_dist(rng);
      const auto oracle = testsupport::raw_size_bias(d);
      const auto s = size_bias(d);
      CHECK(s.size() == oracle.size());
      for (const auto& [x, p] : oracle) CHECK(std::abs(s.mass_at(x) - p) < 1e-14);
    }
  }
  TEST_CASE("moment shift on random laws") {
    Rng rng(202);
    for (int t = 0; t < 100; ++t) {
      const auto d = random_dist(rng);
      const auto s = size_bias(d);
      for (int k = 0; k <= 4; ++k) {
        const double want = moment(d, k + 1) / moment(d, 1);
        CHECK(testsupport::relative_error(moment(s, k), want) <= 1e-10);
      }
    }
  }
  TEST_CASE("scaling commutes with size bias") {
    Rng rng(303);
    for (int t = 0; t < 50; ++t) {
      const auto d = random_dist(rng);
      const double c = 0.1 + 5.0 * rng.uniform();
      const auto lhs = size_bias(scale(d, c));
      const auto rhs = scale(size_bias(d), c);
      REQUIRE(lhs.size() == rhs.size());
      for (std::size_t i = 0; i < lhs.size(); ++i) {
        CHECK(lhs.atoms()[i].x == rhs.atoms()[i].x);
        CHECK(std::abs(lhs.atoms()[i].p - rhs.atoms()[i].p) < 1e-15);
      }
    }
    const auto base = atoms({{1, 0.5}, {3, 0.5}});
    CHECK(max_atom_difference(size_bias(scale(base, 2)), scale(size_bias(base), 2)) == 0.0);
    CHECK(max_atom_difference(scale(base, 1), base) == 0.0);
    CHECK(scale(DiscreteDist::point(1), 3).atoms()[0].x == 3.0);
    CHECK(code_of([&] { scale(base, 0); }) == Errc::NonpositiveScale);
  }
  TEST_CASE("inverse size bias") {
    CHECK(max_atom_difference(inverse_size_bias(DiscreteDist::point(1)), DiscreteDist::point(1)) == 0);
    CHECK(max_atom_difference(inverse_size_bias(DiscreteDist::point(2)), DiscreteDist::point(2)) == 0);
    const auto y = inverse_size_bias(atoms({{1, 0.25}, {3, 0.75}}));
    CHECK(y.mass_at(1) == doctest::Approx(0.5));
    CHECK(y.mass_at(3) == doctest::Approx(0.5));
    CHECK(code_of([] { inverse_size_bias(atoms({{0, 0.5}, {1, 0.5}})); }) == Errc::AtomAtZero);
    Rng rng(404);
    for (int t = 0; t < 100; ++t) {
      const auto d = random_dist(rng, 6, false);
      CHECK(max_atom_difference(inverse_size_bias(size_bias(d)), d) <= 1e-12);
    }
  }
  TEST_CASE("dominance holds") {
    CHECK(dominance_check(atoms({{1, 0.5}, {3, 0.5}})));
    CHECK(dominance_check(DiscreteDist::point(2.5)));
    CHECK(dominance_check(tabulate(Poisson{3.0})));
    Rng rng(505);
    for (int t = 0; t < 100; ++t) CHECK(dominance_check(random_dist(rng)));
  }
}

TEST_SUITE("moments") {
  TEST_CASE("examples") {
    CHECK(moment(atoms({{1, 0.25}, {3, 0.75}}), 1) == doctest::Approx(2.5));
    CHECK(moment(atoms({{1, 0.5}, {3, 0.5}}), 2) == doctest::Approx(5.0));
    CHECK(moment(atoms({{0, 0.3}, {3, 0.7}}), 0) == doctest::Approx(1.0));
    CHECK(moment(tabulate_density(Uniform01{}, 1e-3, 1.0), 1) == doctest::Approx(0.5).epsilon(1e-6));
  }
  TEST_CASE("negative moments need zero-free support") {
    CHECK(moment(atoms({{1, 0.5}, {2, 0.5}}), -1) == doctest::Approx(0.75));
    CHECK(code_of([] { moment(atoms({{0, 0.5}, {2, 0.5}}), -1); }) == Errc::NegativeMomentAtZero);
  }
}

TEST_SUITE("grid densities") {
  TEST_CASE("uniform becomes 2x") {
    const auto u = tabulate_density(Uniform01{}, 1e-3, 1.0);
    const auto s = size_bias(u);
    for (double x : {0.1, 0.5, 0.9}) CHECK(s.value_at(x) == doctest::Approx(2 * x).epsilon(1e-5));
    CHECK(s.mean() == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
  }
  TEST_CASE("exponential becomes x e^-x with mean 2") {
    const auto e = tabulate_density(Exponential{}, 1e-3, 40.0);
    const auto s = size_bias(e);
    CHECK(s.mean() == doctest::Approx(2.0).epsilon(1e-5));
    for (double x : {0.5, 1.0, 3.0}) CHECK(s.value_at(x) == doctest::Approx(x * std::exp(-x)).epsilon(1e-5));
  }
  TEST_CASE("narrow bump is nearly fixed") {
    std::vector<double> v(4001, 0.0);
    const double h = 1e-3, c = 3.0, w = 0.01;
    for (std::size_t j = 0; j < v.size(); ++j) {
      const double z = (j * h - c) / w;
      v[j] = std::exp(-0.5 * z * z);
    }
    const auto g = GridDensity::normalized(h, v);
    const auto s = size_bias(g);
    CHECK(std::abs(s.mean() - g.mean()) < 1e-4);
  }
  TEST_CASE("atoms must go through the discrete path") {
    const auto g = GridDensity(1e-3, std::vector<double>(1001, 0.5), 0.5);
    CHECK(code_of([&] { size_bias(g); }) == Errc::AtomPresent);
    CHECK(code_of([&] { g.moment(-1); }) == Errc::NegativeMomentAtZero);
  }
  TEST_CASE("scaling a grid density") {
    const auto u = tabulate_density(Uniform01{}, 1e-3, 1.0);
    const auto s = scale(u, 2.0);
    CHECK(s.mean() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(s.integral() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_SUITE("closed forms") {
  TEST_CASE("named examples") {
    CHECK(closed_form_size_bias(Poisson{2}).describe() == "1 + Poisson(2)");
    CHECK(closed_form_size_bias(Binomial{5, 0.3}).describe() == "1 + Binomial(4, 0.3)");
    CHECK(closed_form_size_bias(Bernoulli{0.3}).describe() == "Dirac(1)");
    CHECK(closed_form_size_bias(Exponential{}).describe() == "Gamma(2)");
    CHECK(closed_form_size_bias(Gamma{1.5}).describe() == "Gamma(2.5)");
    CHECK(closed_form_size_bias(Dirac{4}).describe() == "Dirac(4)");
    const auto ln = closed_form_size_bias(LogNormal{0, 0.5});
    REQUIRE(std::holds_alternative<LogNormal>(ln.base));
    CHECK(std::get<LogNormal>(ln.base).mu == 0.5);
    CHECK(std::get<LogNormal>(ln.base).sigma2 == 0.5);
    CHECK(code_of([] { closed_form_size_bias(Geometric{0.5}); }) == Errc::NoClosedForm);
    CHECK(code_of([] { closed_form_size_bias(Borel{0.5}); }) == Errc::NoClosedForm);
  }
  TEST_CASE("discrete closed forms agree with the tabulated transform") {
    const std::vector<NamedDist> families = {Poisson{2.0}, Bernoulli{0.3}, Binomial{5, 0.3},
                                             Binomial{1, 0.6}, Dirac{3.0}};
    for (const auto& f : families) {
      CAPTURE(describe(f));
      const auto star = closed_form_size_bias(f);
      const auto want = tabulate(star.base);
      std::vector<Atom> shifted;
      for (const auto& a : want.atoms()) shifted.push_back({a.x + star.shift, a.p});
      CHECK(max_atom_difference(size_bias(tabulate(f)), DiscreteDist::normalized(shifted)) <= 1e-9);
    }
  }
  TEST_CASE("continuous closed forms agree with the tabulated transform") {
    const std::vector<NamedDist> families = {Exponential{}, Gamma{2.5}, Uniform01{}, Beta{2, 3},
                                             LogNormal{0.0, 0.25}};
    for (const auto& f : families) {
      CAPTURE(describe(f));
      const double xmax = std::holds_alternative<Uniform01>(f) || std::holds_alternative<Beta>(f)
                              ? 1.0
                              : 40.0;
      const auto biased = size_bias(tabulate_density(f, 1e-3, xmax));
      const auto star = closed_form_size_bias(f);
      REQUIRE(star.shift == 0.0);
      for (double x : {0.2, 0.5, 0.8})
        CHECK(biased.value_at(x) == doctest::Approx(density(star.base, x)).epsilon(1e-4));
    }
  }
  TEST_CASE("exponential satisfies U X* = X") {
    Rng rng(606);
    std::vector<double> xs(100'000);
    for (auto& x : xs) x = rng.uniform() * sample(Gamma{2.0}, rng);
    CHECK(ks_to_cdf(xs, [](double x) { return 1.0 - std::exp(-x); }) < 0.01);
  }
}

TEST_SUITE("characteristic functions") {
  TEST_CASE("point mass") {
    const auto phi = char_fn(DiscreteDist::point(1), std::numbers::pi);
    CHECK(phi.real() == doctest::Approx(-1.0));
    CHECK(std::abs(phi.imag()) < 1e-15);
  }
  TEST_CASE("Poisson: X* = X + 1") {
    const auto x = tabulate(Poisson{1.5});
    for (double u : {0.3, 1.0, 2.5}) {
      const auto want = std::exp(std::complex<double>(0, u)) * char_fn(x, u);
      CHECK(std::abs(size_biased_char_fn(x, u) - want) < 1e-10);
    }
  }
  TEST_CASE("derivative route agrees with the direct route") {
    CHECK(std::abs(size_biased_char_fn(atoms({{1, 0.5}, {3, 0.5}}), 0.7) -
                   size_biased_char_fn_derivative(atoms({{1, 0.5}, {3, 0.5}}), 0.7)) < 1e-6);
    Rng rng(707);
    for (int t = 0; t < 30; ++t) {
      const auto d = random_dist(rng);
      for (double u = -10; u <= 10; u += 0.5)
        CHECK(std::abs(size_biased_char_fn(d, u) - size_biased_char_fn_derivative(d, u)) < 1e-6);
    }
  }
}

TEST_SUITE("conditioning") {
  TEST_CASE("two-coin model") {
    Rng rng(808);
    std::vector<ConditionedDraw> draws;
    for (int i = 0; i < 100'000; ++i) {
      const double x = rng.bernoulli(0.5) ? 0.8 : 0.2;
      draws.push_back({x, rng.bernoulli(x)});
    }
    const auto est = size_bias_by_conditioning(draws);
    const auto exact = atoms({{0.2, 0.2}, {0.8, 0.8}});
    CHECK(ks_distance(est, exact) < 0.02);
    CHECK(ks_distance(est, size_bias(atoms({{0.2, 0.5}, {0.8, 0.5}}))) < 0.02);
  }
  TEST_CASE("equal x values are unchanged") {
    std::vector<ConditionedDraw> draws = {{0.4, true}, {0.4, false}, {0.4, true}};
    CHECK(max_atom_difference(size_bias_by_conditioning(draws), DiscreteDist::point(0.4)) == 0);
  }
  TEST_CASE("no successes") {
    std::vector<ConditionedDraw> draws = {{0.4, false}};
    CHECK(code_of([&] { size_bias_by_conditioning(draws); }) == Errc::NoSuccesses);
  }
}

TEST_SUITE("borel") {
  TEST_CASE("lambda zero is the root alone") {
    CHECK(max_atom_difference(borel_pmf(0.0, 10), DiscreteDist::point(1)) == 0);
  }
  TEST_CASE("mean 1/(1-lambda)") {
    // Oracle: direct series with the defining pmf.
    const auto d = borel_pmf(0.5, 2000);
    double oracle = 0.0;
    for (int i = 1; i <= 2000; ++i)
      oracle += i * std::exp(-0.5 * i + (i - 1) * std::log(0.5 * i) - std::lgamma(i + 1.0));
    CHECK(d.mean() == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(d.mean() == doctest::Approx(oracle).epsilon(1e-9));
    CHECK(moment(size_bias(d), 1) == doctest::Approx(moment(d, 2) / moment(d, 1)).epsilon(1e-12));
  }
  TEST_CASE("heavy tail is rejected") {
    CHECK(code_of([] { borel_pmf(0.9, 20); }) == Errc::TailTooHeavy);
  }
}

TEST_SUITE("named families") {
  TEST_CASE("parsing") {
    CHECK(describe(parse_named("poisson:2")) == "Poisson(2)");
    CHECK(describe(parse_named("binomial:5,0.3")) == "Binomial(5, 0.3)");
    CHECK(std::holds_alternative<Exponential>(parse_named("exp")));
    CHECK(code_of([] { parse_named("poisson:-1"); }) == Errc::InvalidDistribution);
    CHECK(code_of([] { parse_named("nosuch:1"); }) == Errc::ParseError);
    CHECK(code_of([] { parse_named("poisson:abc"); }) == Errc::ParseError);
  }
  TEST_CASE("tabulation records the tail") {
    const auto p = tabulate(Poisson{2.0});
    CHECK(p.truncation_tail() < 1e-12);
    CHECK(p.mean() == doctest::Approx(2.0).epsilon(1e-10));
    const auto g = tabulate(Geometric{0.5});
    CHECK(g.mean() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_SUITE("serialization") {
  TEST_CASE("discrete round trip") {
    const auto d = atoms({{0.1, 0.3}, {2.5, 0.7}});
    const auto back = discrete_from_json(Json::parse(to_json(d).dump()));
    CHECK(max_atom_difference(d, back) == 0.0);
    CHECK(back.atoms()[0].x == 0.1);
  }
  TEST_CASE("pmf form") {
    const auto d = discrete_from_json(Json::parse(R"({"pmf": [0.25, 0.5, 0.25]})"));
    CHECK(d.mass_at(1) == 0.5);
  }
  TEST_CASE("grid round trip") {
    const auto g = tabulate_density(Uniform01{}, 0.01, 1.0);
    const auto back = grid_from_json(to_json(g));
    CHECK(back.h() == g.h());
    CHECK(back.size() == g.size());
  }
  TEST_CASE("malformed input") {
    CHECK(code_of([] { discrete_from_json(Json::parse(R"({"atoms": [[1]]})")); }) == Errc::ParseError);
    CHECK(code_of([] { discrete_from_json(Json::parse(R"({"nope": 1})")); }) == Errc::ParseError);
    CHECK(code_of([] { discrete_from_json(Json::parse(R"({"atoms": [[1, 0.4]]})")); }) ==
          Errc::InvalidDistribution);
  }
}
