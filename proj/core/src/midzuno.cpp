#include "sizebias/midzuno.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>

#include "sizebias/error.hpp"

namespace sizebias {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_cell(const std::string& cell, std::size_t line) {
  const std::string t = trim(cell);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v))
    fail(Errc::ParseError, "line " + std::to_string(line) + ": bad number \"" + t + "\"");
  return v;
}

double subset_x_total(const Population& p, std::span<const std::size_t> r) {
  double s = 0.0;
  for (auto i : r) s += p.xs()[i];
  return s;
}

void check_indices(const Population& p, std::span<const std::size_t> r) {
  for (auto i : r)
    if (i >= p.size()) fail(Errc::InvalidArgument, "index " + std::to_string(i) + " out of range");
  IndexSet sorted(r.begin(), r.end());
  std::sort(sorted.begin(), sorted.end());
  require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
          Errc::InvalidArgument, "indices must be distinct");
}

}  // namespace

Population::Population(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  require(xs_.size() == ys_.size(), Errc::InvalidArgument, "xs and ys differ in length");
  require(xs_.size() >= 2, Errc::InvalidArgument, "population needs at least two units");
  for (double x : xs_)
    require(std::isfinite(x) && x >= 0.0, Errc::InvalidArgument, "x values must be nonnegative");
  for (double y : ys_) require(std::isfinite(y), Errc::InvalidArgument, "y values must be finite");
  x_total_ = std::accumulate(xs_.begin(), xs_.end(), 0.0);
  y_total_ = std::accumulate(ys_.begin(), ys_.end(), 0.0);
  require(x_total_ > 0.0, Errc::InvalidArgument, "x values are all zero");
}

Population read_population_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  std::vector<double> xs;
  std::vector<double> ys;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (!header) {
      std::string compact;
      for (char ch : t)
        if (ch != ' ' && ch != '\t') compact += ch;
      require(compact == "x,y", Errc::ParseError, "expected header \"x,y\", got \"" + t + "\"");
      header = true;
      continue;
    }
    const auto comma = t.find(',');
    require(comma != std::string::npos && t.find(',', comma + 1) == std::string::npos,
            Errc::ParseError, "line " + std::to_string(lineno) + ": expected two columns");
    xs.push_back(parse_cell(t.substr(0, comma), lineno));
    ys.push_back(parse_cell(t.substr(comma + 1), lineno));
  }
  require(header, Errc::ParseError, "empty CSV");
  return Population(std::move(xs), std::move(ys));
}

Population read_population_csv(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), Errc::ParseError, "cannot open " + path);
  return read_population_csv(in);
}

IndexSet midzuno_sample(const Population& p, std::size_t m, Rng& rng) {
  const std::size_t n = p.size();
  require(m >= 1 && m <= n, Errc::BadSampleSize, "m must lie in [1, n]");
  // First unit proportional to x.
  double target = rng.uniform() * p.x_total();
  std::size_t first = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (p.xs()[i] <= 0.0) continue;
    first = i;
    target -= p.xs()[i];
    if (target < 0.0) break;
  }
  std::vector<std::size_t> rest;
  rest.reserve(n - 1);
  for (std::size_t i = 0; i < n; ++i)
    if (i != first) rest.push_back(i);
  // Partial Fisher-Yates for the simple random sample.
  IndexSet r{first};
  for (std::size_t k = 0; k + 1 < m; ++k) {
    const auto j = k + static_cast<std::size_t>(rng.below(rest.size() - k));
    std::swap(rest[k], rest[j]);
    r.push_back(rest[k]);
  }
  std::sort(r.begin(), r.end());
  return r;
}

double ratio_estimate(const Population& p, std::span<const std::size_t> r) {
  check_indices(p, r);
  const double x = subset_x_total(p, r);
  require(x > 0.0, Errc::ZeroDenominator, "subset has zero x total");
  double y = 0.0;
  for (auto i : r) y += p.ys()[i];
  return y / x;
}

double binomial_coefficient(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(c);
}

double subset_probability(const Population& p, std::span<const std::size_t> r, std::size_t m) {
  require(r.size() == m && m >= 1 && m <= p.size(), Errc::BadSubsetSize,
          "subset size must equal m");
  check_indices(p, r);
  const double n = static_cast<double>(p.size());
  const double xbar_r = subset_x_total(p, r) / static_cast<double>(m);
  return xbar_r / (p.x_total() / n) / binomial_coefficient(p.size(), m);
}

double exact_expectation(const Population& p, std::size_t m) {
  require(p.size() <= kMaxEnumeration, Errc::TooLargeToEnumerate,
          "enumeration limited to n <= " + std::to_string(kMaxEnumeration));
  require(m >= 1 && m <= p.size(), Errc::BadSampleSize, "m must lie in [1, n]");
  double sum = 0.0;
  for_each_subset(p.size(), m, [&](const IndexSet& r) {
    const double prob = subset_probability(p, r, m);
    if (prob > 0.0) sum += ratio_estimate(p, r) * prob;
  });
  return sum;
}

double naive_uniform_expectation(const Population& p, std::size_t m) {
  require(m >= 1 && m <= p.size(), Errc::BadSampleSize, "m must lie in [1, n]");
  double sum = 0.0;
  double count = 0.0;
  for_each_subset(p.size(), m, [&](const IndexSet& r) {
    if (subset_x_total(p, r) <= 0.0) return;
    sum += ratio_estimate(p, r);
    count += 1.0;
  });
  return sum / count;
}

}  // namespace sizebias
