#pragma once

// Diagnostics on finite weighted point sets standing in for measures on R^m.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace cauchylab::geometry {

using Point = std::vector<double>;

/// Atoms with positive masses. Points closer than 1e-12 are merged (masses
/// summed, first occurrence kept in input order). A grid-hash index is built
/// at construction; queries are read-only and safe to run concurrently.
class DiscreteMeasure {
 public:
  static constexpr double kMergeDistance = 1e-12;

  /// Empty weights means unit masses. Throws DimensionError on arity
  /// mismatch and DomainError on non-finite coordinates or weights <= 0.
  DiscreteMeasure(int m, std::vector<Point> points, std::vector<double> weights = {},
                  std::optional<double> support_radius = {});

  int dimension() const noexcept { return m_; }
  std::size_t size() const noexcept { return weights_.size(); }
  std::span<const double> point(std::size_t i) const { return {coords_.data() + i * m_, static_cast<std::size_t>(m_)}; }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  double total_mass() const noexcept { return total_mass_; }
  /// Number of input rows absorbed into earlier atoms.
  std::size_t merged() const noexcept { return merged_; }

  double median_spacing() const noexcept { return median_spacing_; }
  double min_spacing() const noexcept { return min_spacing_; }
  /// Bounding-box diagonal, an upper bound for the diameter.
  double diameter() const noexcept { return diameter_; }
  /// Default 2x the median nearest-neighbour spacing.
  double support_radius() const noexcept { return support_radius_; }

  /// Nearest atom to x as (index, distance); `skip` excludes one atom.
  std::pair<std::size_t, double> nearest(std::span<const double> x,
                                         std::optional<std::size_t> skip = {}) const;
  bool in_support(std::span<const double> x) const;

  /// Calls visit(index, distance) for atoms with |z - x| < r (open) or
  /// <= r (closed), in increasing index order.
  void for_each_in_ball(std::span<const double> x, double r, bool closed,
                        const std::function<void(std::size_t, double)>& visit) const;
  std::vector<std::size_t> ball(std::span<const double> x, double r, bool closed) const;
  double ball_mass(std::span<const double> x, double r, bool closed) const;

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<std::int64_t>& k) const noexcept;
  };
  std::vector<std::int64_t> cell_of(std::span<const double> x) const;
  void build_index();

  int m_;
  std::vector<double> coords_;
  std::vector<double> weights_;
  std::size_t merged_ = 0;
  double total_mass_ = 0.0;
  std::vector<double> lower_;
  double cell_ = 1.0;
  std::unordered_map<std::vector<std::int64_t>, std::vector<std::size_t>, KeyHash> cells_;
  double median_spacing_ = 0.0;
  double min_spacing_ = 0.0;
  double diameter_ = 0.0;
  double support_radius_ = 0.0;
};

struct SymmetryDefect {
  Point moment;  // sum over the open ball of w(z) (z - a)
  double mass;
  /// |moment| / (r * mass), absent when the ball is empty.
  std::optional<double> normalized;
};

/// Throws SupportError when a is not in the support.
SymmetryDefect symmetry_defect(const DiscreteMeasure& mu, std::span<const double> a, double r);

struct SymmetryRow {
  Point center;
  double radius;
  double normalized;  // NaN for an empty ball
};

struct SymmetryProfile {
  std::vector<SymmetryRow> rows;
  /// Slope of log(mean normalized defect) against log r; NaN when fewer
  /// than three radii have a positive mean.
  double alpha_hat;
};

SymmetryProfile symmetry_profile(const DiscreteMeasure& mu, const std::vector<Point>& centers,
                                 const std::vector<double>& radii);

/// mu(B(a, r)) / r^m_dim over the open ball.
double density_ratio(const DiscreteMeasure& mu, std::span<const double> a, double r, double m_dim);

/// Reciprocal circumradius 4 Area / (|x-y||y-z||z-x|), with the area from
/// Kahan's form of Heron's formula. Throws DegenerateError on coincident points.
double menger_curvature(std::span<const double> x, std::span<const double> y, std::span<const double> z);

struct AhlforsBand {
  double c_low;
  double c_high;
  double t_lo;  // after clipping
  double t_hi;
  /// max(1 / c_low, c_high)
  double constant() const { return std::max(1.0 / c_low, c_high); }
  double spread() const { return c_high / c_low; }
};

/// Extremes of mu(closed B(x, t)) / t^n over `samples` atoms (evenly strided
/// by index, endpoints included) and `t_count` log-spaced radii in t_range
/// clipped to [10 min_spacing, diameter]. Throws DomainError when the
/// clipped range is empty.
AhlforsBand ahlfors_constants(const DiscreteMeasure& mu, double n_dim, std::size_t samples,
                              std::pair<double, double> t_range, std::size_t t_count = 24);

/// Evenly strided atom indices, first and last included.
std::vector<std::size_t> strided_indices(std::size_t size, std::size_t samples);

}  // namespace cauchylab::geometry
