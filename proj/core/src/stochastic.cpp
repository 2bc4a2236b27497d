#include "sizebias/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "sizebias/error.hpp"
#include "sizebias/transform.hpp"

namespace sizebias {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool named_has_zero(const NamedDist& d) {
  return std::visit(Overloaded{[](const Poisson&) { return true; },
                               [](const Bernoulli&) { return true; },
                               [](const Binomial&) { return true; },
                               [](const Geometric&) { return true; },
                               [](const Dirac& x) { return x.c <= 0.0; },
                               [](const auto&) { return false; }},
                    d);
}

}  // namespace

void validate_interarrival(const Interarrival& d) {
  std::visit(Overloaded{[](const DiscreteDist& x) {
                          require(x.min_support() > 0.0, Errc::InvalidDistribution,
                                  "interarrival support must be strictly positive");
                        },
                        [](const NamedDist& x) {
                          validate(x);
                          require(!named_has_zero(x), Errc::InvalidDistribution,
                                  describe(x) + " puts mass at 0");
                        }},
             d);
}

double interarrival_mean(const Interarrival& d) {
  return std::visit(Overloaded{[](const DiscreteDist& x) { return x.mean(); },
                               [](const NamedDist& x) { return mean(x); }},
                    d);
}

double size_biased_mean(const Interarrival& d) {
  return std::visit(Overloaded{[](const DiscreteDist& x) { return size_bias(x).mean(); },
                               [](const NamedDist& x) {
                                 try {
                                   const auto star = closed_form_size_bias(x);
                                   return star.shift + mean(star.base);
                                 } catch (const Error& e) {
                                   if (e.code() != Errc::NoClosedForm) throw;
                                   return size_bias(tabulate(x)).mean();
                                 }
                               }},
                    d);
}

double sample_interarrival(const Interarrival& d, Rng& rng) {
  return std::visit(Overloaded{[&](const DiscreteDist& x) { return x.sample(rng); },
                               [&](const NamedDist& x) { return sample(x, rng); }},
                    d);
}

double sample_size_biased_interarrival(const Interarrival& d, Rng& rng) {
  return std::visit(Overloaded{[&](const DiscreteDist& x) { return size_bias(x).sample(rng); },
                               [&](const NamedDist& x) {
                                 try {
                                   const auto star = closed_form_size_bias(x);
                                   return star.shift + sample(star.base, rng);
                                 } catch (const Error& e) {
                                   if (e.code() != Errc::NoClosedForm) throw;
                                   return size_bias(tabulate(x)).sample(rng);
                                 }
                               }},
                    d);
}

std::vector<InspectionSample> simulate_renewal_inspection(const Interarrival& d, double horizon,
                                                          std::size_t n, Rng& rng) {
  validate_interarrival(d);
  const double mu = interarrival_mean(d);
  require(std::isfinite(horizon) && horizon >= 50.0 * mu, Errc::HorizonTooShort,
          "horizon must be at least 50 times the mean interarrival " + std::to_string(mu));
  // Tabulating once keeps repeated discrete draws cheap.
  std::optional<DiscreteDist> table;
  if (const auto* named = std::get_if<NamedDist>(&d); named && is_discrete(*named))
    table = tabulate(*named);
  std::vector<InspectionSample> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = rng.uniform() * kInspectionWindow * horizon;
    double arrival = 0.0;
    double gap = 0.0;
    while (arrival <= t) {
      gap = table ? table->sample(rng) : sample_interarrival(d, rng);
      arrival += gap;
    }
    out.push_back({gap, arrival - t});
  }
  return out;
}

StationaryCounts stationary_renewal_arrivals(const Interarrival& d, double window_t,
                                             std::size_t n, Rng& rng) {
  validate_interarrival(d);
  require(std::isfinite(window_t) && window_t > 0.0, Errc::InvalidArgument,
          "window must be positive");
  StationaryCounts out;
  out.counts.reserve(n);
  out.first_wait.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double star = sample_size_biased_interarrival(d, rng);
    double arrival = rng.uniform() * star;
    out.first_wait.push_back(arrival);
    int count = 0;
    while (arrival <= window_t) {
      ++count;
      arrival += sample_interarrival(d, rng);
    }
    out.counts.push_back(count);
  }
  return out;
}

SignedDist::SignedDist(std::vector<Atom> atoms) {
  require(!atoms.empty(), Errc::InvalidDistribution, "empty distribution");
  double sum = 0.0;
  for (const auto& a : atoms) {
    require(std::isfinite(a.x) && std::isfinite(a.p) && a.p >= 0.0, Errc::InvalidDistribution,
            "atoms need finite support and nonnegative mass");
    sum += a.p;
  }
  require(std::abs(sum - 1.0) <= kMassTolerance, Errc::InvalidDistribution,
          "masses sum to " + std::to_string(sum));
  atoms_ = canonicalize_atoms(std::move(atoms));
}

double SignedDist::mean() const noexcept { return moment(1); }

double SignedDist::moment(int k) const noexcept {
  double s = 0.0;
  for (const auto& a : atoms_) s += std::pow(a.x, k) * a.p;
  return s;
}

double SignedDist::mass_at(double x) const noexcept {
  for (const auto& a : atoms_)
    if (std::abs(a.x - x) <= kMergeTolerance * std::max(1.0, std::abs(x))) return a.p;
  return 0.0;
}

double max_atom_difference(const SignedDist& a, const SignedDist& b) {
  double worst = 0.0;
  for (const auto& atom : a.atoms()) worst = std::max(worst, std::abs(atom.p - b.mass_at(atom.x)));
  for (const auto& atom : b.atoms()) worst = std::max(worst, std::abs(atom.p - a.mass_at(atom.x)));
  return worst;
}

SkorohodCoupling skorohod_coupling(const SignedDist& x) {
  require(x.size() >= 2, Errc::ConstantInput, "X is constant");
  double abs_mean = 0.0;
  for (const auto& a : x.atoms()) abs_mean += std::abs(a.x) * a.p;
  require(std::abs(x.mean()) <= 1e-12 * std::max(1.0, abs_mean), Errc::NonzeroMean,
          "X must have mean zero, got " + std::to_string(x.mean()));

  std::vector<Atom> neg;  // law of -X on X < 0, unnormalized
  std::vector<Atom> pos;
  SkorohodCoupling sc;
  for (const auto& a : x.atoms()) {
    if (a.x < 0.0) {
      neg.push_back({-a.x, a.p});
      sc.p_minus += a.p;
    } else if (a.x > 0.0) {
      pos.push_back({a.x, a.p});
      sc.p_plus += a.p;
    } else {
      sc.p_zero += a.p;
    }
  }
  const auto A = DiscreteDist::normalized(neg);
  const auto B = DiscreteDist::normalized(pos);
  const auto A_star = size_bias(A);
  const auto B_star = size_bias(B);

  std::map<std::pair<double, double>, double> uv;
  const auto add_product = [&](const DiscreteDist& U, const DiscreteDist& V, double w) {
    for (const auto& u : U.atoms())
      for (const auto& v : V.atoms()) uv[{u.x, v.x}] += w * u.p * v.p;
  };
  add_product(A_star, B, sc.p_plus);
  add_product(A, B_star, sc.p_minus);
  if (sc.p_zero > 0.0) uv[{0.0, 0.0}] += sc.p_zero;
  for (const auto& [key, p] : uv) sc.uv_atoms.push_back({key.first, key.second, p});
  return sc;
}

SignedDist skorohod_exit_pmf(const SkorohodCoupling& sc) {
  std::vector<Atom> atoms;
  for (const auto& a : sc.uv_atoms) {
    if (a.u == 0.0 && a.v == 0.0) {
      atoms.push_back({0.0, a.p});
      continue;
    }
    const double width = a.u + a.v;
    atoms.push_back({-a.u, a.p * a.v / width});
    atoms.push_back({a.v, a.p * a.u / width});
  }
  return SignedDist(std::move(atoms));
}

double expected_exit_time(const SkorohodCoupling& sc) {
  double s = 0.0;
  for (const auto& a : sc.uv_atoms) s += a.u * a.v * a.p;
  return s;
}

}  // namespace sizebias
