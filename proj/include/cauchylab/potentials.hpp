#pragma once

// Potential-theoretic sums over Ahlfors-regular point sets: the potential P
// with kernel |x - z|^(1-n), its local/distant split at scale r, truncated
// Riesz transforms, maximal functions, and the snowflake variant with
// kernel rho(x, z)^(-alpha (n-1)).
//
// Every sum skips an atom within 1e-12 of the evaluation point.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cauchylab/fixtures.hpp"
#include "cauchylab/geometry_measures.hpp"

namespace cauchylab::potentials {

using geometry::DiscreteMeasure;
using geometry::Point;

inline constexpr double kSelfDistance = 1e-12;

/// A metric on atom indices whose alpha-th power is comparable to the
/// Euclidean distance.
struct Snowflake {
  std::function<double(std::size_t, std::size_t)> rho;
  double alpha;
};

class RegularSet {
 public:
  RegularSet(DiscreteMeasure measure, double n_dim);
  /// alpha must lie in (0, 1).
  RegularSet(DiscreteMeasure measure, double n_dim, Snowflake metric);

  const DiscreteMeasure& measure() const noexcept { return measure_; }
  double n_dim() const noexcept { return n_dim_; }
  std::size_t size() const noexcept { return measure_.size(); }
  bool has_snowflake() const noexcept { return snowflake_.has_value(); }
  /// Throws DomainError when the set carries no snowflake metric.
  const Snowflake& snowflake() const;
  double rho(std::size_t i, std::size_t j) const { return snowflake().rho(i, j); }

 private:
  DiscreteMeasure measure_;
  double n_dim_;
  std::optional<Snowflake> snowflake_;
};

/// Cantor fixture with its ultrametric 3^(-k/alpha); n = log(branching)/log 3.
RegularSet cantor_snowflake(int depth, int ambient, double alpha);
/// Koch fixture with rho = parameter distance and alpha = log 3 / log 4;
/// n = log 4 / log 3.
RegularSet koch_snowflake(int depth);

/// One finite value per atom.
struct SampleFunction {
  std::vector<double> values;
};

/// (sum w |f|^q)^(1/q).
double lq_norm(const RegularSet& E, std::span<const double> values, double q);

/// sum w f |x - z|^(1-n).
double potential_P(const RegularSet& E, const SampleFunction& f, std::span<const double> x);
/// P at every atom, evaluated in parallel.
std::vector<double> potential_P_all(const RegularSet& E, const SampleFunction& f);

struct LocalDistant {
  double local;    // |x - z| < r
  double distant;  // |x - z| >= r
};
LocalDistant split_LJ(const RegularSet& E, const SampleFunction& f, std::span<const double> x, double r);

/// J_r(x) - J_r(y) as one sum over the combined kernel.
double jr_difference(const RegularSet& E, const SampleFunction& f, std::span<const double> x,
                     std::span<const double> y, double r);

/// sum over |x - z| >= r of w f (x - z) |x - z|^-(n+1), a vector in R^m.
Point truncated_riesz_Tr(const RegularSet& E, const SampleFunction& f, std::span<const double> x, double r);

struct Bound {
  double lhs;
  double rhs;
};

/// lhs = |J_r(x) - J_r(y) - (n-1) (y-x).T_r(x)| / r,
/// rhs = sum w |f| r / (|x-z|^(n+1) + r^(n+1)). Needs |x - y| <= r.
Bound taylor_remainder_check(const RegularSet& E, const SampleFunction& f, std::span<const double> x,
                             std::span<const double> y, double r);

/// mu(B(x,r))^-1 sum over the open ball of w(y) |P(x) - P(y)| / r. Throws
/// DomainError when the ball holds no atom.
double oscillation_functional(const RegularSet& E, const SampleFunction& f, std::span<const double> x, double r);
/// Same, reusing P at every atom (from potential_P_all) and P(x).
double oscillation_from_potential(const RegularSet& E, std::span<const double> p_atoms, double p_x,
                                  std::span<const double> x, double r);
/// Max of the oscillation functional over radii; empty balls are skipped.
double oscillation_sup(const RegularSet& E, const SampleFunction& f, std::span<const double> x,
                       std::span<const double> radii);

/// max over radii of the mean of |f| over the open ball B(x, r).
double hl_maximal(const RegularSet& E, const SampleFunction& f, std::span<const double> x,
                  std::span<const double> radii);

/// max over radii of |T_r f(x)|.
double maximal_truncated(const RegularSet& E, const SampleFunction& f, std::span<const double> x,
                         std::span<const double> radii);

/// Dyadic radii 2^lo ... 2^hi clipped to [4 median spacing, diameter].
std::vector<double> dyadic_radii(const RegularSet& E, int lo = -10, int hi = 3);

struct SnowflakeBand {
  double c1_low;   // min rho^alpha / |x - y|
  double c1_high;  // max rho^alpha / |x - y|
  double worst_triangle_excess;  // max of rho(x,z) - rho(x,y) - rho(y,z), <= 1e-9
  std::size_t pairs;
  std::size_t triples;
};

/// Spot checks the snowflake comparison and the triangle inequality. Uses
/// every pair (every triple) when the requested count reaches the total.
/// Throws InvalidMetricError on a triangle violation beyond 1e-9.
SnowflakeBand snowflake_check(const RegularSet& E, std::size_t pairs = 20000, std::size_t triples = 20000,
                              std::uint64_t seed = 1);

/// sum over z != x of w f rho(x, z)^(-alpha (n-1)), x an atom index.
double potential_Ptilde(const RegularSet& E, const SampleFunction& f, std::size_t x);

/// lhs = |a^-s - b^-s|, rhs = s |a - b| / min(a, b)^(s+1).
Bound power_difference_bound(double a, double b, double s);

struct KernelDifference {
  double lhs;            // |rho(x,z)^-s - rho(y,z)^-s|, s = alpha (n-1)
  double rhs_metric;     // rho(x,y) / min(rho(x,z), rho(y,z))^(s+1)
  double rhs_euclidean;  // |x-y|^(1/alpha) / min(|x-z|, |y-z|)^exponent
  double exponent;       // n - 1 + 1/alpha
};

/// Atom indices; throws DegenerateError when z equals x or y.
KernelDifference kernel_difference_check(const RegularSet& E, std::size_t x, std::size_t y, std::size_t z);

/// Snowflake analogue of the Taylor bound with the T_r term removed:
/// lhs = |J~_r(x) - J~_r(y)| / r with the rho kernel on |z - x| >= r,
/// rhs = sum w |f| r^(1/alpha - 1) / (|x-z|^e + r^e), e = n - 1 + 1/alpha.
Bound snowflake_taylor_check(const RegularSet& E, const SampleFunction& f, std::size_t x, std::size_t y, double r);

/// Smooth random function: a short sum of low-frequency plane waves.
SampleFunction smooth_random_function(const RegularSet& E, std::uint64_t seed, double max_frequency = 3.0);

struct Calibration {
  std::vector<double> radii;
  std::vector<double> constants;  // max lhs / rhs at each radius
  double stability() const;       // max constant / min constant
};

/// For each radius: `trials` smooth random f, x a random atom in the central
/// half of the set, y = x + (r/2) u for a random unit u.
Calibration calibrate_taylor(const RegularSet& E, std::span<const double> radii, std::size_t trials,
                             std::uint64_t seed);

/// Snowflake version: x a random atom, y a random other atom with |x-y| <= r.
Calibration calibrate_snowflake_taylor(const RegularSet& E, std::span<const double> radii, std::size_t trials,
                                       std::uint64_t seed);

struct KernelCalibration {
  double max_ratio;  // max lhs / rhs_metric
  double min_exponent_excess;  // exponent - n over the checked triples
  std::size_t triples;
};

KernelCalibration calibrate_kernel_difference(const RegularSet& E, std::size_t triples, std::uint64_t seed);

struct NormRow {
  double q;
  double r;
  double estimate;
};

/// Randomised lower estimates of ||T_r||_{L^q -> L^q}: the largest ratio
/// ||T_r f||_q / ||f||_q over `trials` signed sums of ball indicators at
/// random scales. All radii share the trial functions.
std::vector<NormRow> tr_norm_sweep(const RegularSet& E, std::span<const double> radii, std::span<const double> qs,
                                   std::size_t trials, std::uint64_t seed);

/// ||osc(., r)||_q over the atoms for each radius, f fixed.
std::vector<NormRow> oscillation_sweep(const RegularSet& E, const SampleFunction& f, std::span<const double> radii,
                                       double q);

}  // namespace cauchylab::potentials
