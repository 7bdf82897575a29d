#include "cauchylab/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

#include "cauchylab/error.hpp"
#include "cauchylab/numeric.hpp"

namespace cauchylab::potentials {
namespace {

// d^e with an integer fast path; the common kernels have integer exponents.
class Power {
 public:
  explicit Power(double e) : e_(e), k_(static_cast<int>(std::lround(e))), integral_(std::abs(e - k_) < 1e-15) {}
  double operator()(double d) const {
    if (!integral_) return std::pow(d, e_);
    double out = 1.0;
    const int k = std::abs(k_);
    for (int i = 0; i < k; ++i) out *= d;
    return k_ < 0 ? 1.0 / out : out;
  }

 private:
  double e_;
  int k_;
  bool integral_;
};

void check(const RegularSet& E, const SampleFunction& f) {
  if (f.values.size() != E.size()) throw DimensionError("sample function needs one value per atom");
}

void check_point(const RegularSet& E, std::span<const double> x) {
  if (static_cast<int>(x.size()) != E.measure().dimension()) throw DimensionError("point has the wrong dimension");
}

void check_radius(double r) {
  if (!(r > 0.0)) throw DomainError("radius must be positive");
}

void check_index(const RegularSet& E, std::size_t i) {
  if (i >= E.size()) throw DimensionError("atom index out of range");
}

// Stable |a^-s - b^-s| for a, b > 0.
double reciprocal_power_gap(double a, double b, double s) {
  if (a == b) return 0.0;
  return std::abs(std::pow(a, -s) * std::expm1(s * std::log1p((a - b) / b)));
}

std::vector<std::size_t> central_atoms(const DiscreteMeasure& mu) {
  const int m = mu.dimension();
  Point centre(m, 0.0);
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (int a = 0; a < m; ++a) centre[a] += mu.point(i)[a];
  for (auto& c : centre) c /= static_cast<double>(mu.size());
  double reach = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) reach = std::max(reach, distance(centre, mu.point(i)));
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (distance(centre, mu.point(i)) <= 0.5 * reach) out.push_back(i);
  return out;
}

}  // namespace

RegularSet::RegularSet(DiscreteMeasure measure, double n_dim) : measure_(std::move(measure)), n_dim_(n_dim) {
  if (!(n_dim > 0.0)) throw DomainError("Ahlfors dimension must be positive");
}

RegularSet::RegularSet(DiscreteMeasure measure, double n_dim, Snowflake metric)
    : RegularSet(std::move(measure), n_dim) {
  if (!metric.rho) throw DomainError("snowflake metric needs a distance oracle");
  if (!(metric.alpha > 0.0 && metric.alpha < 1.0)) throw DomainError("snowflake order must lie in (0, 1)");
  snowflake_ = std::move(metric);
}

const Snowflake& RegularSet::snowflake() const {
  if (!snowflake_) throw DomainError("set carries no snowflake metric");
  return *snowflake_;
}

RegularSet cantor_snowflake(int depth, int ambient, double alpha) {
  auto set = std::make_shared<const fixtures::CantorSet>(fixtures::cantor_set(depth, ambient));
  DiscreteMeasure mu(set->cloud.dim, set->cloud.points, set->cloud.weights);
  if (mu.size() != set->address.size()) throw DomainError("Cantor atoms must be distinct");
  return RegularSet(std::move(mu), set->dimension(),
                    Snowflake{[set, alpha](std::size_t i, std::size_t j) { return set->ultrametric(i, j, alpha); }, alpha});
}

RegularSet koch_snowflake(int depth) {
  auto curve = std::make_shared<const fixtures::KochCurve>(fixtures::koch_curve(depth));
  DiscreteMeasure mu(curve->cloud.dim, curve->cloud.points, curve->cloud.weights);
  if (mu.size() != curve->parameter.size()) throw DomainError("Koch vertices must be distinct");
  return RegularSet(std::move(mu), std::log(4.0) / std::log(3.0),
                    Snowflake{[curve](std::size_t i, std::size_t j) { return curve->parameter_distance(i, j); },
                              fixtures::KochCurve::alpha()});
}

double lq_norm(const RegularSet& E, std::span<const double> values, double q) {
  if (values.size() != E.size()) throw DimensionError("one value per atom required");
  if (!(q >= 1.0)) throw DomainError("q must be at least 1");
  CompensatedSum s;
  for (std::size_t i = 0; i < values.size(); ++i) s.add(E.measure().weight(i) * std::pow(std::abs(values[i]), q));
  return std::pow(s.value(), 1.0 / q);
}

double potential_P(const RegularSet& E, const SampleFunction& f, std::span<const double> x) {
  check(E, f);
  check_point(E, x);
  const auto& mu = E.measure();
  const Power kernel(1.0 - E.n_dim());
  CompensatedSum s;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (f.values[i] == 0.0) continue;
    const double d = distance(x, mu.point(i));
    if (d <= kSelfDistance) continue;
    s.add(mu.weight(i) * f.values[i] * kernel(d));
  }
  return s.value();
}

std::vector<double> potential_P_all(const RegularSet& E, const SampleFunction& f) {
  check(E, f);
  std::vector<double> out(E.size());
  parallel_for(E.size(), [&](std::size_t i) { out[i] = potential_P(E, f, E.measure().point(i)); });
  return out;
}

LocalDistant split_LJ(const RegularSet& E, const SampleFunction& f, std::span<const double> x, double r) {
  check(E, f);
  check_point(E, x);
  check_radius(r);
  const auto& mu = E.measure();
  const Power kernel(1.0 - E.n_dim());
  CompensatedSum local, distant;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double d = distance(x, mu.point(i));
    if (d <= kSelfDistance || f.values[i] == 0.0) continue;
    (d < r ? local : distant).add(mu.weight(i) * f.values[i] * kernel(d));
  }
  return {local.value(), distant.value()};
}

double jr_difference(const RegularSet& E, const SampleFunction& f, std::span<const double> x,
                     std::span<const double> y, double r) {
  check(E, f);
  check_point(E, x);
  check_point(E, y);
  check_radius(r);
  const auto& mu = E.measure();
  const Power kernel(1.0 - E.n_dim());
  CompensatedSum s;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (f.values[i] == 0.0) continue;
    const double dx = distance(x, mu.point(i));
    const double dy = distance(y, mu.point(i));
    const double kx = dx >= r && dx > kSelfDistance ? kernel(dx) : 0.0;
    const double ky = dy >= r && dy > kSelfDistance ? kernel(dy) : 0.0;
    if (kx != ky) s.add(mu.weight(i) * f.values[i] * (kx - ky));
  }
  return s.value();
}

Point truncated_riesz_Tr(const RegularSet& E, const SampleFunction& f, std::span<const double> x, double r) {
  check(E, f);
  check_point(E, x);
  check_radius(r);
  const auto& mu = E.measure();
  const int m = mu.dimension();
  const Power kernel(-(E.n_dim() + 1.0));
  std::vector<CompensatedSum> acc(m);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (f.values[i] == 0.0) continue;
    const auto z = mu.point(i);
    const double d = distance(x, z);
    if (d < r || d <= kSelfDistance) continue;
    const double c = mu.weight(i) * f.values[i] * kernel(d);
    for (int a = 0; a < m; ++a) acc[a].add(c * (x[a] - z[a]));
  }
  Point out(m);
  for (int a = 0; a < m; ++a) out[a] = acc[a].value();
  return out;
}

Bound taylor_remainder_check(const RegularSet& E, const SampleFunction& f, std::span<const double> x,
                             std::span<const double> y, double r) {
  check(E, f);
  check_point(E, x);
  check_point(E, y);
  check_radius(r);
  if (distance(x, y) > r) throw DomainError("Taylor bound needs |x - y| <= r");
  const auto& mu = E.measure();
  const int m = mu.dimension();
  const double n = E.n_dim();
  const Power pot(1.0 - n), riesz(-(n + 1.0)), lift(n + 1.0);
  const double r_lift = lift(r);
  CompensatedSum jx, jy, rhs;
  std::vector<CompensatedSum> t(m);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double fv = f.values[i];
    if (fv == 0.0) continue;
    const auto z = mu.point(i);
    const double w = mu.weight(i);
    const double dx = distance(x, z);
    const double dy = distance(y, z);
    if (dx >= r && dx > kSelfDistance) {
      jx.add(w * fv * pot(dx));
      const double c = w * fv * riesz(dx);
      for (int a = 0; a < m; ++a) t[a].add(c * (x[a] - z[a]));
    }
    if (dy >= r && dy > kSelfDistance) jy.add(w * fv * pot(dy));
    rhs.add(w * std::abs(fv) * r / (lift(dx) + r_lift));
  }
  double drift = 0.0;
  for (int a = 0; a < m; ++a) drift += (y[a] - x[a]) * t[a].value();
  const double lhs = std::abs(jx.value() - jy.value() - (n - 1.0) * drift) / r;
  return {lhs, rhs.value()};
}

double oscillation_from_potential(const RegularSet& E, std::span<const double> p_atoms, double p_x,
                                  std::span<const double> x, double r) {
  if (p_atoms.size() != E.size()) throw DimensionError("one potential value per atom required");
  check_point(E, x);
  check_radius(r);
  const auto& mu = E.measure();
  CompensatedSum mass, sum;
  mu.for_each_in_ball(x, r, false, [&](std::size_t i, double) {
    mass.add(mu.weight(i));
    sum.add(mu.weight(i) * std::abs(p_x - p_atoms[i]));
  });
  if (mass.value() == 0.0) throw DomainError("oscillation ball contains no atom");
  return sum.value() / (mass.value() * r);
}

double oscillation_functional(const RegularSet& E, const SampleFunction& f, std::span<const double> x, double r) {
  check(E, f);
  check_point(E, x);
  check_radius(r);
  const auto& mu = E.measure();
  const auto inside = mu.ball(x, r, false);
  if (inside.empty()) throw DomainError("oscillation ball contains no atom");
  const double px = potential_P(E, f, x);
  CompensatedSum mass, sum;
  for (auto i : inside) {
    mass.add(mu.weight(i));
    sum.add(mu.weight(i) * std::abs(px - potential_P(E, f, mu.point(i))));
  }
  return sum.value() / (mass.value() * r);
}

double oscillation_sup(const RegularSet& E, const SampleFunction& f, std::span<const double> x,
                       std::span<const double> radii) {
  if (radii.empty()) throw DomainError("radius list must be nonempty");
  double best = 0.0;
  bool any = false;
  for (double r : radii) {
    if (E.measure().ball_mass(x, r, false) == 0.0) continue;
    best = std::max(best, oscillation_functional(E, f, x, r));
    any = true;
  }
  if (!any) throw DomainError("every oscillation ball is empty");
  return best;
}

double hl_maximal(const RegularSet& E, const SampleFunction& f, std::span<const double> x,
                  std::span<const double> radii) {
  check(E, f);
  check_point(E, x);
  if (radii.empty()) throw DomainError("radius list must be nonempty");
  const auto& mu = E.measure();
  double best = 0.0;
  for (double r : radii) {
    check_radius(r);
    CompensatedSum mass, sum;
    mu.for_each_in_ball(x, r, false, [&](std::size_t i, double) {
      mass.add(mu.weight(i));
      sum.add(mu.weight(i) * std::abs(f.values[i]));
    });
    if (mass.value() > 0.0) best = std::max(best, sum.value() / mass.value());
  }
  return best;
}

double maximal_truncated(const RegularSet& E, const SampleFunction& f, std::span<const double> x,
                         std::span<const double> radii) {
  if (radii.empty()) throw DomainError("radius list must be nonempty");
  double best = 0.0;
  for (double r : radii) best = std::max(best, norm(truncated_riesz_Tr(E, f, x, r)));
  return best;
}

std::vector<double> dyadic_radii(const RegularSet& E, int lo, int hi) {
  const double floor = 4.0 * E.measure().median_spacing();
  const double ceil = E.measure().diameter();
  std::vector<double> out;
  for (int k = lo; k <= hi; ++k) {
    const double r = std::ldexp(1.0, k);
    if (r >= floor && r <= ceil) out.push_back(r);
  }
  return out;
}

SnowflakeBand snowflake_check(const RegularSet& E, std::size_t pairs, std::size_t triples, std::uint64_t seed) {
  const auto& sf = E.snowflake();
  const auto& mu = E.measure();
  const std::size_t n = E.size();
  if (n < 3) throw DomainError("snowflake check needs at least three atoms");
  Rng rng(seed);
  SnowflakeBand band{std::numeric_limits<double>::infinity(), 0.0, -std::numeric_limits<double>::infinity(), 0, 0};
  auto pair = [&](std::size_t i, std::size_t j) {
    const double ratio = std::pow(sf.rho(i, j), sf.alpha) / distance(mu.point(i), mu.point(j));
    band.c1_low = std::min(band.c1_low, ratio);
    band.c1_high = std::max(band.c1_high, ratio);
    ++band.pairs;
  };
  const double all_pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  if (static_cast<double>(pairs) >= all_pairs) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) pair(i, j);
  } else {
    for (std::size_t k = 0; k < pairs; ++k) {
      const std::size_t i = rng.index(n);
      std::size_t j = rng.index(n - 1);
      if (j >= i) ++j;
      pair(i, j);
    }
  }
  auto triple = [&](std::size_t a, std::size_t b, std::size_t c) {
    const double ab = sf.rho(a, b), bc = sf.rho(b, c), ac = sf.rho(a, c);
    const double excess = std::max({ac - ab - bc, ab - ac - bc, bc - ab - ac});
    band.worst_triangle_excess = std::max(band.worst_triangle_excess, excess);
    ++band.triples;
    if (excess > 1e-9 * std::max({1.0, ab, bc, ac})) {
      throw InvalidMetricError("triangle inequality fails for atoms " + std::to_string(a) + ", " +
                               std::to_string(b) + ", " + std::to_string(c));
    }
  };
  const double all_triples = all_pairs * static_cast<double>(n - 2) / 3.0;
  if (static_cast<double>(triples) >= all_triples) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        for (std::size_t c = b + 1; c < n; ++c) triple(a, b, c);
  } else {
    for (std::size_t k = 0; k < triples; ++k) {
      const std::size_t a = rng.index(n);
      std::size_t b = rng.index(n - 1);
      if (b >= a) ++b;
      std::size_t c = rng.index(n - 2);
      if (c >= std::min(a, b)) ++c;
      if (c >= std::max(a, b)) ++c;
      triple(a, b, c);
    }
  }
  return band;
}

double potential_Ptilde(const RegularSet& E, const SampleFunction& f, std::size_t x) {
  check(E, f);
  check_index(E, x);
  const auto& sf = E.snowflake();
  const double s = sf.alpha * (E.n_dim() - 1.0);
  CompensatedSum sum;
  for (std::size_t i = 0; i < E.size(); ++i) {
    if (i == x || f.values[i] == 0.0) continue;
    sum.add(E.measure().weight(i) * f.values[i] * std::pow(sf.rho(x, i), -s));
  }
  return sum.value();
}

Bound power_difference_bound(double a, double b, double s) {
  if (!(a > 0.0) || !(b > 0.0) || !(s > 0.0)) throw DomainError("power bound needs positive a, b, s");
  return {reciprocal_power_gap(a, b, s), s * std::abs(a - b) / std::pow(std::min(a, b), s + 1.0)};
}

KernelDifference kernel_difference_check(const RegularSet& E, std::size_t x, std::size_t y, std::size_t z) {
  check_index(E, x);
  check_index(E, y);
  check_index(E, z);
  if (z == x || z == y) throw DegenerateError("kernel difference needs z distinct from x and y");
  const auto& sf = E.snowflake();
  const auto& mu = E.measure();
  const double s = sf.alpha * (E.n_dim() - 1.0);
  const double exponent = E.n_dim() - 1.0 + 1.0 / sf.alpha;
  const double rxz = sf.rho(x, z), ryz = sf.rho(y, z);
  KernelDifference out{};
  out.exponent = exponent;
  out.lhs = reciprocal_power_gap(rxz, ryz, s);
  out.rhs_metric = sf.rho(x, y) / std::pow(std::min(rxz, ryz), s + 1.0);
  const double exz = distance(mu.point(x), mu.point(z));
  const double eyz = distance(mu.point(y), mu.point(z));
  out.rhs_euclidean =
      std::pow(distance(mu.point(x), mu.point(y)), 1.0 / sf.alpha) / std::pow(std::min(exz, eyz), exponent);
  return out;
}

Bound snowflake_taylor_check(const RegularSet& E, const SampleFunction& f, std::size_t x, std::size_t y,
                             double r) {
  check(E, f);
  check_index(E, x);
  check_index(E, y);
  check_radius(r);
  const auto& sf = E.snowflake();
  const auto& mu = E.measure();
  const auto px = mu.point(x), py = mu.point(y);
  if (distance(px, py) > r) throw DomainError("snowflake Taylor bound needs |x - y| <= r");
  const double s = sf.alpha * (E.n_dim() - 1.0);
  const double e = E.n_dim() - 1.0 + 1.0 / sf.alpha;
  const double re = std::pow(r, e);
  const double scale = std::pow(r, 1.0 / sf.alpha - 1.0);
  CompensatedSum jx, jy, rhs;
  for (std::size_t i = 0; i < E.size(); ++i) {
    const double fv = f.values[i];
    if (fv == 0.0) continue;
    const double w = mu.weight(i);
    const double dx = distance(px, mu.point(i));
    const double dy = distance(py, mu.point(i));
    if (i != x && dx >= r) jx.add(w * fv * std::pow(sf.rho(x, i), -s));
    if (i != y && dy >= r) jy.add(w * fv * std::pow(sf.rho(y, i), -s));
    rhs.add(w * std::abs(fv) * scale / (std::pow(dx, e) + re));
  }
  return {std::abs(jx.value() - jy.value()) / r, rhs.value()};
}

SampleFunction smooth_random_function(const RegularSet& E, std::uint64_t seed, double max_frequency) {
  const auto& mu = E.measure();
  const int m = mu.dimension();
  Rng rng(seed);
  constexpr int kWaves = 6;
  std::vector<std::vector<double>> omega;
  std::vector<double> amp, phase;
  for (int k = 0; k < kWaves; ++k) {
    auto dir = rng.unit_vector(static_cast<std::size_t>(m));
    const double speed = max_frequency * rng.uniform();
    for (auto& v : dir) v *= speed;
    omega.push_back(std::move(dir));
    amp.push_back(rng.normal());
    phase.push_back(rng.uniform(0.0, 2.0 * std::numbers::pi));
  }
  SampleFunction f{std::vector<double>(mu.size())};
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const auto z = mu.point(i);
    double v = 0.0;
    for (int k = 0; k < kWaves; ++k) {
      double arg = phase[k];
      for (int a = 0; a < m; ++a) arg += omega[k][a] * z[a];
      v += amp[k] * std::cos(arg);
    }
    f.values[i] = v;
  }
  return f;
}

double Calibration::stability() const {
  if (constants.empty()) return std::numeric_limits<double>::quiet_NaN();
  const auto [lo, hi] = std::minmax_element(constants.begin(), constants.end());
  return *hi / *lo;
}

Calibration calibrate_taylor(const RegularSet& E, std::span<const double> radii, std::size_t trials,
                             std::uint64_t seed) {
  if (radii.empty() || trials == 0) throw DomainError("calibration needs radii and trials");
  const auto& mu = E.measure();
  const auto centre = central_atoms(mu);
  Calibration out{{radii.begin(), radii.end()}, std::vector<double>(radii.size(), 0.0)};
  // One independent stream per (radius, trial) so the parallel split does not
  // change the draws.
  const std::size_t jobs = radii.size() * trials;
  std::vector<double> ratio(jobs, 0.0);
  parallel_for(jobs, [&](std::size_t job) {
    Rng rng(seed ^ (0x9e3779b97f4a7c15ULL * (job + 1)));
    const double r = radii[job / trials];
    const auto f = smooth_random_function(E, rng.bits(), 3.0 / r);
    const auto x = mu.point(centre[rng.index(centre.size())]);
    const auto u = rng.unit_vector(x.size());
    Point y(x.begin(), x.end());
    for (std::size_t a = 0; a < y.size(); ++a) y[a] += 0.5 * r * u[a];
    const auto b = taylor_remainder_check(E, f, x, y, r);
    ratio[job] = b.rhs > 0.0 ? b.lhs / b.rhs : 0.0;
  });
  for (std::size_t job = 0; job < jobs; ++job) {
    auto& c = out.constants[job / trials];
    c = std::max(c, ratio[job]);
  }
  return out;
}

Calibration calibrate_snowflake_taylor(const RegularSet& E, std::span<const double> radii, std::size_t trials,
                                       std::uint64_t seed) {
  if (radii.empty() || trials == 0) throw DomainError("calibration needs radii and trials");
  E.snowflake();
  const auto& mu = E.measure();
  Calibration out{{radii.begin(), radii.end()}, std::vector<double>(radii.size(), 0.0)};
  const std::size_t jobs = radii.size() * trials;
  std::vector<double> ratio(jobs, 0.0);
  parallel_for(jobs, [&](std::size_t job) {
    Rng rng(seed ^ (0x9e3779b97f4a7c15ULL * (job + 1)));
    const double r = radii[job / trials];
    const auto f = smooth_random_function(E, rng.bits(), 3.0 / r);
    for (int attempt = 0; attempt < 100; ++attempt) {
      const std::size_t x = rng.index(mu.size());
      auto near = mu.ball(mu.point(x), r, true);
      near.erase(std::remove(near.begin(), near.end(), x), near.end());
      if (near.empty()) continue;
      const std::size_t y = near[rng.index(near.size())];
      const auto b = snowflake_taylor_check(E, f, x, y, r);
      ratio[job] = b.rhs > 0.0 ? b.lhs / b.rhs : 0.0;
      return;
    }
  });
  for (std::size_t job = 0; job < jobs; ++job) {
    auto& c = out.constants[job / trials];
    c = std::max(c, ratio[job]);
  }
  return out;
}

KernelCalibration calibrate_kernel_difference(const RegularSet& E, std::size_t triples, std::uint64_t seed) {
  const std::size_t n = E.size();
  if (n < 3) throw DomainError("kernel calibration needs at least three atoms");
  Rng rng(seed);
  KernelCalibration out{0.0, std::numeric_limits<double>::infinity(), 0};
  for (std::size_t k = 0; k < triples; ++k) {
    const std::size_t z = rng.index(n);
    std::size_t x = rng.index(n - 1);
    if (x >= z) ++x;
    std::size_t y = rng.index(n - 1);
    if (y >= z) ++y;
    const auto d = kernel_difference_check(E, x, y, z);
    if (d.rhs_metric > 0.0) out.max_ratio = std::max(out.max_ratio, d.lhs / d.rhs_metric);
    out.min_exponent_excess = std::min(out.min_exponent_excess, d.exponent - E.n_dim());
    ++out.triples;
  }
  return out;
}

std::vector<NormRow> tr_norm_sweep(const RegularSet& E, std::span<const double> radii, std::span<const double> qs,
                                   std::size_t trials, std::uint64_t seed) {
  if (radii.empty() || qs.empty() || trials == 0) throw DomainError("norm sweep needs radii, exponents and trials");
  std::vector<double> sorted(radii.begin(), radii.end());
  std::sort(sorted.begin(), sorted.end());
  const auto& mu = E.measure();
  const int m = mu.dimension();
  const std::size_t n = mu.size();
  const std::size_t nr = sorted.size();
  const Power riesz(-(E.n_dim() + 1.0));
  const double lo = std::max(sorted.front(), 2.0 * mu.median_spacing());
  const double hi = std::max(lo, 0.5 * mu.diameter());
  std::vector<std::vector<double>> best(qs.size(), std::vector<double>(nr, 0.0));
  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    // f: signed indicators of four balls sharing a random radius.
    SampleFunction f{std::vector<double>(n, 0.0)};
    const double rad = std::exp(rng.uniform(std::log(lo), std::log(hi)));
    for (int k = 0; k < 4; ++k) {
      const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
      for (auto i : mu.ball(mu.point(rng.index(n)), rad, false)) f.values[i] += sign;
    }
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < n; ++i)
      if (f.values[i] != 0.0) support.push_back(i);
    if (support.empty()) continue;
    // T_r f at every atom for every radius: bucket each pair by how many
    // radii it clears, then accumulate from the largest radius down.
    std::vector<double> tr(n * nr * m, 0.0);
    parallel_for(n, [&](std::size_t i) {
      const auto x = mu.point(i);
      std::vector<double> bucket((nr + 1) * m, 0.0);
      for (auto j : support) {
        const auto z = mu.point(j);
        const double d = distance(x, z);
        if (d <= kSelfDistance || d < sorted.front()) continue;
        const auto b = static_cast<std::size_t>(std::upper_bound(sorted.begin(), sorted.end(), d) - sorted.begin());
        const double c = mu.weight(j) * f.values[j] * riesz(d);
        for (int a = 0; a < m; ++a) bucket[b * m + a] += c * (x[a] - z[a]);
      }
      std::vector<double> run(m, 0.0);
      for (std::size_t k = nr; k-- > 0;) {
        for (int a = 0; a < m; ++a) {
          run[a] += bucket[(k + 1) * m + a];
          tr[(i * nr + k) * m + a] = run[a];
        }
      }
    });
    for (std::size_t qi = 0; qi < qs.size(); ++qi) {
      const double fq = lq_norm(E, f.values, qs[qi]);
      for (std::size_t k = 0; k < nr; ++k) {
        std::vector<double> mag(n);
        for (std::size_t i = 0; i < n; ++i) mag[i] = norm(std::span<const double>(&tr[(i * nr + k) * m], m));
        best[qi][k] = std::max(best[qi][k], lq_norm(E, mag, qs[qi]) / fq);
      }
    }
  }
  std::vector<NormRow> rows;
  for (std::size_t qi = 0; qi < qs.size(); ++qi)
    for (std::size_t k = 0; k < nr; ++k) rows.push_back({qs[qi], sorted[k], best[qi][k]});
  return rows;
}

std::vector<NormRow> oscillation_sweep(const RegularSet& E, const SampleFunction& f, std::span<const double> radii,
                                       double q) {
  const auto p = potential_P_all(E, f);
  const auto& mu = E.measure();
  std::vector<NormRow> rows;
  for (double r : radii) {
    std::vector<double> osc(E.size());
    parallel_for(E.size(), [&](std::size_t i) { osc[i] = oscillation_from_potential(E, p, p[i], mu.point(i), r); });
    rows.push_back({q, r, lq_norm(E, osc, q)});
  }
  return rows;
}

}  // namespace cauchylab::potentials
