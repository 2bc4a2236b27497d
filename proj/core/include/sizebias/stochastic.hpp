#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "sizebias/discrete_dist.hpp"
#include "sizebias/named_dist.hpp"
#include "sizebias/rng.hpp"

namespace sizebias {

/// Interarrival law of a renewal process; support must be strictly positive.
using Interarrival = std::variant<DiscreteDist, NamedDist>;

void validate_interarrival(const Interarrival& d);
double interarrival_mean(const Interarrival& d);
/// E X* = E X^2 / E X, from the closed-form size bias when one exists.
double size_biased_mean(const Interarrival& d);
double sample_interarrival(const Interarrival& d, Rng& rng);
/// One draw from the size-biased interarrival law.
double sample_size_biased_interarrival(const Interarrival& d, Rng& rng);

struct InspectionSample {
  double covering_length = 0.0;  ///< length of the interval containing T
  double residual_wait = 0.0;    ///< time from T to the next arrival
};

/// Fraction of the horizon from which the inspection time T is drawn.
inline constexpr double kInspectionWindow = 0.9;

/// Per draw: an ordinary renewal process started at 0, T uniform on
/// [0, 0.9 horizon], recording the interval covering T. Requires
/// horizon >= 50 E X.
std::vector<InspectionSample> simulate_renewal_inspection(const Interarrival& d, double horizon,
                                                          std::size_t n, Rng& rng);

struct StationaryCounts {
  std::vector<int> counts;         ///< arrivals in [0, t] per replicate
  std::vector<double> first_wait;  ///< U X0*, the first arrival time
};

/// Renewal process whose first arrival is U X0* and later gaps are iid.
StationaryCounts stationary_renewal_arrivals(const Interarrival& d, double window_t,
                                             std::size_t n, Rng& rng);

/// Finite law on the real line. Used only for mean-zero Skorohod inputs.
class SignedDist {
 public:
  explicit SignedDist(std::vector<Atom> atoms);
  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  double mean() const noexcept;
  double moment(int k) const noexcept;
  double mass_at(double x) const noexcept;

 private:
  std::vector<Atom> atoms_;
};

double max_atom_difference(const SignedDist& a, const SignedDist& b);

struct UVAtom {
  double u = 0.0;
  double v = 0.0;
  double p = 0.0;
};

/// Random interval [-U, V] whose Brownian exit value has the law of X.
struct SkorohodCoupling {
  double p_plus = 0.0;
  double p_zero = 0.0;
  double p_minus = 0.0;
  std::vector<UVAtom> uv_atoms;  ///< sorted by (u, v), duplicates merged
};

/// With A = law(-X | X < 0), B = law(X | X > 0): (A*, B) w.p. P(X > 0),
/// (0, 0) w.p. P(X = 0), (A, B*) w.p. P(X < 0), components independent.
/// Mean zero is checked to 1e-12 max(1, E|X|).
SkorohodCoupling skorohod_coupling(const SignedDist& x);

/// Exit law of Brownian motion from [-u, v]: v/(u+v) at -u, u/(u+v) at v.
SignedDist skorohod_exit_pmf(const SkorohodCoupling& sc);

/// E[UV], the mean exit time.
double expected_exit_time(const SkorohodCoupling& sc);

}  // namespace sizebias
