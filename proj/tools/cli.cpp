#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>
#include <variant>

#include "sizebias/bounds.hpp"
#include "sizebias/error.hpp"
#include "sizebias/inf_div.hpp"
#include "sizebias/lognormal.hpp"
#include "sizebias/midzuno.hpp"
#include "sizebias/named_dist.hpp"
#include "sizebias/serialize.hpp"
#include "sizebias/stochastic.hpp"
#include "sizebias/sum_bias.hpp"
#include "sizebias/transform.hpp"

namespace sizebias::cli {
namespace {

using DistArg = std::variant<DiscreteDist, NamedDist>;

struct RunConfig {
  std::uint64_t seed = Rng::kDefaultSeed;
  std::string format = "json";
  std::string out_path;
  unsigned workers = 1;
};

// Monte Carlo replicates are split into chunks of this size; chunk i always
// draws from stream i, so results do not depend on the worker count.
constexpr std::size_t kChunk = 10'000;

double parse_double(const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  require(!text.empty() && end == text.c_str() + text.size(), Errc::ParseError,
          "bad number \"" + text + "\"");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> v;
  for (const auto& part : split(s, ',')) v.push_back(parse_double(part));
  return v;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), Errc::ParseError, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    fail(Errc::ParseError, path + ": " + e.what());
  }
}

/// "1=0.5,3=0.5" -> [[1,0.5],[3,0.5]]
Json atom_pairs(const std::string& body) {
  Json atoms = Json::array();
  for (const auto& part : split(body, ',')) {
    const auto eq = part.find('=');
    require(eq != std::string::npos, Errc::ParseError, "atom \"" + part + "\" needs x=p");
    atoms.push_back({parse_double(part.substr(0, eq)), parse_double(part.substr(eq + 1))});
  }
  return atoms;
}

DistArg parse_dist(const std::string& spec) {
  if (spec.starts_with("@")) return discrete_from_json(read_json_file(spec.substr(1)));
  if (spec.starts_with("atoms:")) return discrete_from_json({{"atoms", atom_pairs(spec.substr(6))}});
  if (spec.starts_with("pmf:")) return discrete_from_json({{"pmf", parse_list(spec.substr(4))}});
  return parse_named(spec);
}

DiscreteDist as_discrete(const DistArg& d) {
  if (const auto* named = std::get_if<NamedDist>(&d)) {
    require(is_discrete(*named), Errc::InvalidArgument,
            describe(*named) + " is continuous; a discrete law is required here");
    return tabulate(*named);
  }
  return std::get<DiscreteDist>(d);
}

SignedDist parse_signed(const std::string& spec) {
  Json atoms;
  if (spec.starts_with("@")) {
    const Json j = read_json_file(spec.substr(1));
    require(j.is_object() && j.contains("atoms"), Errc::ParseError, "expected {\"atoms\": ...}");
    atoms = j.at("atoms");
  } else {
    require(spec.starts_with("atoms:"), Errc::ParseError, "signed laws are given as atoms:x=p,...");
    atoms = atom_pairs(spec.substr(6));
  }
  std::vector<Atom> v;
  double sum = 0.0;
  for (const auto& a : atoms) {
    require(a.is_array() && a.size() == 2 && a[0].is_number() && a[1].is_number(),
            Errc::ParseError, "atoms must be [x, p] pairs");
    v.push_back({a[0].get<double>(), a[1].get<double>()});
    sum += v.back().p;
  }
  require(std::abs(sum - 1.0) <= 1e-9, Errc::InvalidDistribution,
          "masses sum to " + std::to_string(sum));
  for (auto& a : v) a.p /= sum;
  return SignedDist(std::move(v));
}

Json atoms_json(std::span<const Atom> atoms) {
  Json a = Json::array();
  for (const auto& atom : atoms) a.push_back({atom.x, atom.p});
  return a;
}

Json grid_samples(const GridDensity& g, double xmax) {
  Json pts = Json::array();
  pts.push_back({0.5, g.value_at(0.5)});
  for (int x = 1; x <= static_cast<int>(xmax); ++x) pts.push_back({x, g.value_at(x)});
  return pts;
}

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t n = 0;
  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++n;
  }
  void merge(const Moments& o) {
    sum += o.sum;
    sum_sq += o.sum_sq;
    n += o.n;
  }
  double mean() const { return sum / static_cast<double>(n); }
  double se() const {
    const double m = mean();
    const double var = (sum_sq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1);
    return std::sqrt(std::max(var, 0.0) / static_cast<double>(n));
  }
};

/// Runs fn(chunk_rng, count) over ceil(n / kChunk) chunks on `workers`
/// threads and returns the per-chunk results in chunk order.
template <class R>
std::vector<R> run_chunks(std::size_t n, const RunConfig& cfg, std::string_view label,
                          const std::function<R(Rng&, std::size_t)>& fn) {
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<R> results(chunks);
  std::vector<std::exception_ptr> errors(chunks);
  const auto work = [&](std::size_t first) {
    for (std::size_t c = first; c < chunks; c += cfg.workers) {
      try {
        Rng rng = Rng::derive(cfg.seed, label, c);
        results[c] = fn(rng, std::min(kChunk, n - c * kChunk));
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  for (unsigned w = 1; w < cfg.workers; ++w) threads.emplace_back(work, w);
  work(0);
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

// ---- subcommands ----------------------------------------------------------

Json cmd_transform(const std::string& dist, bool inverse) {
  const DistArg d = parse_dist(dist);
  Json out;
  if (const auto* named = std::get_if<NamedDist>(&d)) {
    validate(*named);
    out["input"] = describe(*named);
    out["mean"] = mean(*named);
    try {
      out["closed_form"] = closed_form_size_bias(*named).describe();
    } catch (const Error& e) {
      if (e.code() != Errc::NoClosedForm) throw;
      out["closed_form"] = nullptr;
    }
    out["size_biased"] = is_discrete(*named) ? to_json(size_bias(tabulate(*named))) : Json(nullptr);
  } else {
    const auto& x = std::get<DiscreteDist>(d);
    out["input"] = "atoms";
    out["mean"] = x.mean();
    out["closed_form"] = nullptr;
    out["size_biased"] = to_json(size_bias(x));
  }
  if (inverse) out["inverse_size_biased"] = to_json(inverse_size_bias(as_discrete(d)));
  return out;
}

Json cmd_sum(const std::vector<std::string>& dists, std::size_t samples, const RunConfig& cfg) {
  std::vector<DiscreteDist> terms;
  for (const auto& s : dists) terms.push_back(as_discrete(parse_dist(s)));
  const IndependentSum sum(terms);
  const auto mixture = size_biased_sum_pmf(sum);
  const auto direct = size_bias(convolve_all(sum.terms()));
  Json out = {{"terms", sum.size()},
              {"mean", sum.mean()},
              {"index_probs", index_distribution(sum).probs},
              {"size_biased", to_json(mixture)},
              {"oracle_max_diff", max_atom_difference(mixture, direct)}};
  if (samples > 0) {
    const auto parts = run_chunks<Moments>(samples, cfg, "sum", [&](Rng& rng, std::size_t count) {
      Moments m;
      for (double v : sample_size_biased_sum(sum, rng, count)) m.add(v);
      return m;
    });
    Moments total;
    for (const auto& p : parts) total.merge(p);
    out["samples"] = samples;
    out["sample_mean"] = total.mean();
    out["sample_se"] = total.se();
    out["exact_mean"] = mixture.mean();
  }
  return out;
}

Json cmd_product(const std::vector<std::string>& dists) {
  std::vector<DiscreteDist> factors;
  for (const auto& s : dists) factors.push_back(as_discrete(parse_dist(s)));
  const auto biased = size_biased_product_pmf(factors);
  const auto direct = size_bias(product_law(factors));
  return {{"factors", factors.size()},
          {"size_biased", to_json(biased)},
          {"oracle_max_diff", max_atom_difference(biased, direct)}};
}

Json cmd_compound_poisson(const std::string& increment, double a, int N) {
  const auto y = as_discrete(parse_dist(increment));
  const auto levy = compound_poisson_from_increment(y, a);
  const auto pmf = pmf_recursion(levy, N);
  return {{"levy", to_json(levy)}, {"pmf", pmf.masses}, {"tail", pmf.tail}};
}

Json cmd_id_test(const std::string& pmf, const std::string& dist) {
  require(pmf.empty() != dist.empty(), Errc::InvalidArgument, "give exactly one of --pmf, --dist");
  const DiscreteDist x =
      pmf.empty() ? as_discrete(parse_dist(dist)) : std::get<DiscreteDist>(parse_dist("pmf:" + pmf));
  const auto r = extract_increment(x);
  Json out = {{"is_id", r.is_id},
              {"a", r.a},
              {"examined", r.examined},
              {"extracted", r.extracted},
              {"witness_index", r.witness ? Json(r.witness->index) : Json(nullptr)},
              {"witness_value", r.witness ? Json(r.witness->value) : Json(nullptr)},
              {"increment", r.increment ? to_json(*r.increment) : Json(nullptr)}};
  try {
    out["log_convex"] = log_convexity_check(x);
  } catch (const Error& e) {
    if (e.code() != Errc::GapInSupport) throw;
    out["log_convex"] = nullptr;
  }
  return out;
}

Json cmd_dickman(double a, double h, double xmax) {
  const auto g = dickman_solve(a, h, xmax);
  return {{"a", a},         {"h", h},
          {"xmax", xmax},   {"grid_extent", g.xmax()},
          {"mass", g.integral()}, {"mean", g.mean()},
          {"density", grid_samples(g, xmax)}};
}

Json cmd_buchstab(double a, double b, double h, double xmax) {
  const auto g = buchstab_solve(a, b, h, xmax);
  return {{"a", a},
          {"b", b},
          {"h", h},
          {"atom0", g.atom0()},
          {"total_mass", g.atom0() + g.integral()},
          {"mean", g.mean()},
          {"density", grid_samples(g, xmax)}};
}

Json cmd_orbit(double b, double c, int M) {
  const auto o = orbit_pmf(b, c, M);
  const auto d = o.as_discrete();
  Json moments = Json::array();
  for (int k = -3; k <= 3; ++k) moments.push_back({k, orbit_moment(o, k), std::pow(c, 0.5 * k * k)});
  return {{"b", o.b()},
          {"c", c},
          {"M", o.M()},
          {"theta", o.theta()},
          {"mean", d.mean()},
          {"moments", moments},
          {"size_bias_check", orbit_size_bias_check(o)},
          {"atoms", atoms_json(d.atoms())}};
}

Json cmd_stieltjes(int m, double delta, double sigma) {
  const StieltjesDensity s{m, delta, sigma};
  double worst = 0.0;
  Json moments = Json::array();
  for (int n = 0; n <= 4; ++n) {
    const double got = stieltjes_moment(s, n);
    const double want = std::exp(0.5 * n * n * sigma * sigma);
    worst = std::max(worst, std::abs(got - want) / want);
    moments.push_back({n, got, want});
  }
  return {{"m", m}, {"delta", delta}, {"sigma", sigma}, {"moments", moments},
          {"max_rel_error", worst}};
}

Json cmd_berg(int s, double c) {
  const auto d = berg_pmf(s, c);
  Json moments = Json::array();
  for (int k = 0; k <= 3; ++k) moments.push_back({k, moment(d, k), std::pow(c, 0.5 * k * k)});
  return {{"s", s},
          {"c", c},
          {"moments", moments},
          {"size_bias_check", satisfies_times_c(d, c)},
          {"atoms", atoms_json(d.atoms())}};
}

Json cmd_mixture_check(double c, const std::string& xs) {
  const LognormalOrbitMixture mixture(c);
  const double sigma = std::sqrt(std::log(c));
  Json points = Json::array();
  double worst = 0.0;
  for (double x : parse_list(xs)) {
    const double got = mixture.reconstructed_density(x);
    const double want = lognormal_density(sigma, x);
    worst = std::max(worst, std::abs(got - want));
    points.push_back({x, got, want});
  }
  return {{"c", c}, {"kc", mixture.kc()}, {"max_error", worst}, {"points", points}};
}

Json cmd_midzuno(const std::string& csv, std::size_t m, const RunConfig& cfg) {
  const auto pop = read_population_csv(csv);
  Rng rng = Rng::derive(cfg.seed, "midzuno", 0);
  const auto r = midzuno_sample(pop, m, rng);
  return {{"estimate", ratio_estimate(pop, r)}, {"subset", r}, {"seed", cfg.seed}};
}

Json cmd_renewal(const std::string& dist, double horizon, std::size_t n, const RunConfig& cfg) {
  const DistArg d = parse_dist(dist);
  struct Acc {
    Moments length;
    Moments wait;
  };
  const auto parts = run_chunks<Acc>(n, cfg, "renewal", [&](Rng& rng, std::size_t count) {
    Acc acc;
    for (const auto& s : simulate_renewal_inspection(d, horizon, count, rng)) {
      acc.length.add(s.covering_length);
      acc.wait.add(s.residual_wait);
    }
    return acc;
  });
  Acc total;
  for (const auto& p : parts) {
    total.length.merge(p.length);
    total.wait.merge(p.wait);
  }
  const double star_mean = size_biased_mean(d);
  return {{"n", n},
          {"horizon", horizon},
          {"mean_covering_length", total.length.mean()},
          {"se_covering_length", total.length.se()},
          {"theory_covering_length", star_mean},
          {"mean_residual_wait", total.wait.mean()},
          {"se_residual_wait", total.wait.se()},
          {"theory_residual_wait", 0.5 * star_mean}};
}

Json cmd_skorohod(const std::string& dist) {
  const auto x = parse_signed(dist);
  const auto sc = skorohod_coupling(x);
  const auto exit = skorohod_exit_pmf(sc);
  Json uv = Json::array();
  for (const auto& a : sc.uv_atoms) uv.push_back({a.u, a.v, a.p});
  return {{"p_plus", sc.p_plus},
          {"p_zero", sc.p_zero},
          {"p_minus", sc.p_minus},
          {"uv_atoms", uv},
          {"exit_atoms", atoms_json(exit.atoms())},
          {"max_exit_error", max_atom_difference(exit, x)},
          {"expected_exit_time", expected_exit_time(sc)},
          {"second_moment", x.moment(2)}};
}

Json cmd_stein(int n, double p, std::size_t samples, const RunConfig& cfg) {
  const auto check = binomial_poisson_check(n, p);
  Json out = {{"n", n},
              {"p", p},
              {"lambda", n * p},
              {"gap", check.gap},
              {"bound", check.bound},
              {"exact_tv", check.exact_tv},
              {"holds", check.holds()}};
  if (samples > 0) {
    const auto coupling = binomial_shared_coupling(n, p);
    const auto parts = run_chunks<Moments>(samples, cfg, "stein", [&](Rng& rng, std::size_t count) {
      Moments m;
      for (std::size_t i = 0; i < count; ++i) {
        const auto [x, x_star] = coupling(rng);
        m.add(std::abs(x_star - (x + 1.0)));
      }
      return m;
    });
    Moments total;
    for (const auto& part : parts) total.merge(part);
    out["mc_gap"] = total.mean();
    out["mc_se"] = total.se();
  }
  return out;
}

Json cmd_concentration(double a, double c, double x, bool poisson) {
  const ConcentrationParams cp{a, c, x};
  const bool upper = x >= a;
  const auto b = upper ? concentration_upper(cp) : concentration_lower(cp);
  Json out = {{"a", a},
              {"c", c},
              {"x", x},
              {"side", upper ? "upper" : "lower"},
              {"tight", b.tight},
              {"gaussian", b.gaussian},
              {"iterated", upper && x > a ? Json(tail_iteration(cp)) : Json(nullptr)}};
  out["poisson_exact"] = nullptr;
  if (poisson) {
    out["poisson_exact"] = upper ? poisson_upper_tail(a, static_cast<int>(std::ceil(x)))
                                 : poisson_lower_tail(a, static_cast<int>(std::floor(x)));
  }
  return out;
}

// ---- output ---------------------------------------------------------------

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

/// Flattens a result object to rows: scalars as `key,value`, arrays of
/// scalars as `key,v1,v2,...`, arrays of arrays as one `key,...` row each.
void write_csv(const Json& j, std::ostream& os, const std::string& prefix = "") {
  for (const auto& [key, value] : j.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      write_csv(value, os, name);
    } else if (value.is_array()) {
      const bool nested = !value.empty() && value.front().is_array();
      if (nested) {
        for (const auto& row : value) {
          os << name;
          for (const auto& cell : row) os << ',' << scalar_text(cell);
          os << '\n';
        }
      } else {
        os << name;
        for (const auto& cell : value) os << ',' << scalar_text(cell);
        os << '\n';
      }
    } else {
      os << name << ',' << scalar_text(value) << '\n';
    }
  }
}

void emit(const Json& result, const RunConfig& cfg, std::ostream& out) {
  std::ostringstream text;
  if (cfg.format == "csv") {
    write_csv(result, text);
  } else {
    text << result.dump() << '\n';
  }
  if (cfg.out_path.empty()) {
    out << text.str();
    return;
  }
  std::ofstream file(cfg.out_path, std::ios::binary);
  require(static_cast<bool>(file), Errc::InvalidArgument, "cannot write " + cfg.out_path);
  file << text.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Size-biased distributions toolkit", "sizebias"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--out", cfg.out_path, "Write the result to this file");
  app.add_option("--workers", cfg.workers, "Threads for Monte Carlo subcommands")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();

  std::function<Json()> action;

  struct {
    std::string dist;
    bool inverse = false;
  } tr;
  auto* transform = app.add_subcommand("transform", "Size bias of a distribution");
  transform->add_option("--dist", tr.dist, "Distribution")->required();
  transform->add_flag("--inverse", tr.inverse, "Also report the inverse size bias");
  transform->callback([&] { action = [&] { return cmd_transform(tr.dist, tr.inverse); }; });

  struct {
    std::vector<std::string> dists;
    std::size_t samples = 0;
  } su;
  auto* sum = app.add_subcommand("sum", "Size bias of an independent sum");
  sum->add_option("--dist", su.dists, "Summand (repeatable)")->required();
  sum->add_option("--samples", su.samples, "Monte Carlo draws of S*");
  sum->callback([&] { action = [&] { return cmd_sum(su.dists, su.samples, cfg); }; });

  std::vector<std::string> factors;
  auto* product = app.add_subcommand("product", "Size bias of an independent product");
  product->add_option("--dist", factors, "Factor (repeatable)")->required();
  product->callback([&] { action = [&] { return cmd_product(factors); }; });

  struct {
    std::string increment;
    double a = 1.0;
    int N = 50;
  } cpo;
  auto* cp = app.add_subcommand("compound-poisson", "Pmf of the ID law with a given increment");
  cp->add_option("--increment", cpo.increment, "Increment law Y on positive integers")->required();
  cp->add_option("--a", cpo.a, "Mean of X")->required();
  cp->add_option("--N", cpo.N, "Largest support point")->capture_default_str();
  cp->callback([&] { action = [&] { return cmd_compound_poisson(cpo.increment, cpo.a, cpo.N); }; });

  struct {
    std::string pmf;
    std::string dist;
  } ido;
  auto* id = app.add_subcommand("id-test", "Infinite divisibility test on the integers");
  id->add_option("--pmf", ido.pmf, "Masses at 0, 1, 2, ...");
  id->add_option("--dist", ido.dist, "Distribution");
  id->callback([&] { action = [&] { return cmd_id_test(ido.pmf, ido.dist); }; });

  struct {
    double a = 1.0;
    double b = 0.5;
    double h = 1e-3;
    double xmax = 10.0;
  } gr;
  auto* dickman = app.add_subcommand("dickman", "Dickman-type density");
  dickman->add_option("--a", gr.a, "Mean")->capture_default_str();
  dickman->add_option("--h", gr.h, "Grid step")->capture_default_str();
  dickman->add_option("--xmax", gr.xmax, "Minimum grid extent")->capture_default_str();
  dickman->callback([&] { action = [&] { return cmd_dickman(gr.a, gr.h, gr.xmax); }; });

  auto* buchstab = app.add_subcommand("buchstab", "Buchstab-type law");
  buchstab->add_option("--a", gr.a, "Mean")->capture_default_str();
  buchstab->add_option("--b", gr.b, "Lower end of the increment")->capture_default_str();
  buchstab->add_option("--h", gr.h, "Grid step")->capture_default_str();
  buchstab->add_option("--xmax", gr.xmax, "Minimum grid extent")->capture_default_str();
  buchstab->callback([&] { action = [&] { return cmd_buchstab(gr.a, gr.b, gr.h, gr.xmax); }; });

  struct {
    double b = 1.0;
    double c = std::numbers::e;
    int M = 0;
    int s = 1;
    std::string xs = "0.5,1.7,4.0";
  } ln;
  auto* orbit = app.add_subcommand("orbit", "Single-orbit law with lognormal moments");
  orbit->add_option("--b", ln.b, "Orbit point")->capture_default_str();
  orbit->add_option("--c", ln.c, "Ratio")->capture_default_str();
  orbit->add_option("--M", ln.M, "Truncation half-width (0 picks one)");
  orbit->callback([&] { action = [&] { return cmd_orbit(ln.b, ln.c, ln.M); }; });

  auto* berg = app.add_subcommand("berg", "Berg's alternating perturbation");
  berg->add_option("--s", ln.s, "Sign, -1 or 1")->capture_default_str();
  berg->add_option("--c", ln.c, "Ratio")->capture_default_str();
  berg->callback([&] { action = [&] { return cmd_berg(ln.s, ln.c); }; });

  auto* mixture = app.add_subcommand("mixture-check", "Lognormal as a mixture of orbit laws");
  mixture->add_option("--c", ln.c, "Ratio")->capture_default_str();
  mixture->add_option("--x", ln.xs, "Evaluation points")->capture_default_str();
  mixture->callback([&] { action = [&] { return cmd_mixture_check(ln.c, ln.xs); }; });

  struct {
    int m = 1;
    double delta = 0.5;
    double sigma = 1.0;
  } st;
  auto* stieltjes = app.add_subcommand("stieltjes", "Moments of a perturbed lognormal density");
  stieltjes->add_option("--m", st.m, "Frequency")->capture_default_str();
  stieltjes->add_option("--delta", st.delta, "Amplitude")->capture_default_str();
  stieltjes->add_option("--sigma", st.sigma, "Scale")->capture_default_str();
  stieltjes->callback([&] { action = [&] { return cmd_stieltjes(st.m, st.delta, st.sigma); }; });

  struct {
    std::string csv;
    std::size_t m = 1;
  } mz;
  auto* midzuno = app.add_subcommand("midzuno", "One Midzuno sample and its ratio estimate");
  midzuno->add_option("--csv", mz.csv, "Population file with header x,y")->required();
  midzuno->add_option("--m", mz.m, "Sample size")->required();
  midzuno->callback([&] { action = [&] { return cmd_midzuno(mz.csv, mz.m, cfg); }; });

  struct {
    std::string dist;
    double horizon = 1000.0;
    std::size_t n = 100'000;
  } rn;
  auto* renewal = app.add_subcommand("renewal", "Inspection paradox simulation");
  renewal->add_option("--dist", rn.dist, "Interarrival law")->required();
  renewal->add_option("--horizon", rn.horizon, "Horizon")->capture_default_str();
  renewal->add_option("--n", rn.n, "Replicates")->capture_default_str();
  renewal->callback([&] { action = [&] { return cmd_renewal(rn.dist, rn.horizon, rn.n, cfg); }; });

  std::string signed_dist;
  auto* skorohod = app.add_subcommand("skorohod", "Size-bias Skorohod embedding");
  skorohod->add_option("--dist", signed_dist, "Mean-zero law as atoms:x=p,...")->required();
  skorohod->callback([&] { action = [&] { return cmd_skorohod(signed_dist); }; });

  struct {
    int n = 10;
    double p = 0.1;
    std::size_t samples = 0;
  } sp;
  auto* stein = app.add_subcommand("stein", "Binomial-Poisson Stein bound");
  stein->add_option("--n", sp.n, "Trials")->required();
  stein->add_option("--p", sp.p, "Success probability")->required();
  stein->add_option("--samples", sp.samples, "Monte Carlo draws of the coupling gap");
  stein->callback([&] { action = [&] { return cmd_stein(sp.n, sp.p, sp.samples, cfg); }; });

  struct {
    double a = 1.0;
    double c = 1.0;
    double x = 1.0;
    bool poisson = false;
  } co;
  auto* conc = app.add_subcommand("concentration", "Size-bias concentration bounds");
  conc->add_option("--a", co.a, "Mean")->required();
  conc->add_option("--c", co.c, "Coupling bound")->required();
  conc->add_option("--x", co.x, "Evaluation point")->required();
  conc->add_flag("--poisson", co.poisson, "Report the exact Poisson(a) tail");
  conc->callback([&] { action = [&] { return cmd_concentration(co.a, co.c, co.x, co.poisson); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    emit(action(), cfg, out);
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace sizebias::cli
