#pragma once

// Clifford analysis on R^n: the Cauchy kernel E(x) = sum_j x_j e_j / |x|^n,
// the left Dirac operator D f = sum_j e_j df/dx_j on lattice-sampled fields,
// and facet-sum surface integrals of E against N(y) dy and dalpha(y).

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cauchylab/clifford.hpp"

namespace cauchylab::clifford_analysis {

using clifford::Multivector;

/// E(x - y) as a grade-1 element of C(n), n = x.size(). Throws
/// SingularError when x = y.
Multivector cauchy_kernel(std::span<const double> x, std::span<const double> y);

/// d/dx_axis of E(x - y), differentiated analytically:
/// coefficient on e_j is delta_{j,axis} |d|^-n - n d_j d_axis |d|^-(n+2).
/// axis is 0-based.
Multivector cauchy_kernel_derivative(std::span<const double> x, std::span<const double> y, int axis);

/// Multivector-valued samples on a uniform lattice in R^n. The outer
/// `margin()` layers are invalid (left over from earlier stencils).
class GridFunction {
 public:
  GridFunction(std::vector<double> origin, double spacing, std::vector<std::size_t> counts, int margin = 0);

  static GridFunction sample(std::vector<double> origin, double spacing, std::vector<std::size_t> counts,
                             const std::function<Multivector(std::span<const double>)>& f);

  int dimension() const noexcept { return static_cast<int>(counts_.size()); }
  double spacing() const noexcept { return spacing_; }
  const std::vector<std::size_t>& counts() const noexcept { return counts_; }
  const std::vector<double>& origin() const noexcept { return origin_; }
  int margin() const noexcept { return margin_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::vector<std::size_t> multi_index(std::size_t linear) const;
  std::vector<double> point(std::size_t linear) const;
  /// True when the node lies at least `margin()` layers inside the box.
  bool valid(std::size_t linear) const;

  const Multivector& operator[](std::size_t linear) const { return values_[linear]; }
  Multivector& operator[](std::size_t linear) { return values_[linear]; }

  /// Largest coefficient-vector norm over valid nodes accepted by `include`.
  double max_norm(const std::function<bool(std::span<const double>)>& include = {}) const;

 private:
  friend GridFunction dirac_apply_fd(const GridFunction&);
  friend GridFunction laplacian_fd(const GridFunction&);

  std::vector<double> origin_;
  double spacing_;
  std::vector<std::size_t> counts_;
  std::vector<std::size_t> strides_;
  int margin_;
  std::vector<Multivector> values_;
};

/// sum_j e_j * (central difference along axis j), left multiplication.
/// Needs at least 3 points per axis beyond the existing margin; the result
/// has one more invalid layer. Throws DimensionError on small grids.
GridFunction dirac_apply_fd(const GridFunction& f);

/// Compact 3-point discrete Laplacian, one more invalid layer.
GridFunction laplacian_fd(const GridFunction& f);

/// max over valid nodes of |D(D f) + Delta_h f|. Zero for quadratics,
/// O(h^2) for smooth fields. Needs at least 5 points per axis.
double dirac_square_check(const GridFunction& f);

struct Facet {
  std::vector<double> centroid;
  std::vector<double> normal;  // unit, oriented
  double area;
  double density = 1.0;
};

class DiscreteSurface {
 public:
  /// Validates unit normals (1e-9), positive areas and densities, and for
  /// closed surfaces a vanishing total vector area. mesh_size is the largest
  /// facet diameter; estimated from facet areas when omitted.
  DiscreteSurface(int n, std::vector<Facet> facets, bool closed, std::optional<double> mesh_size = {});

  int dimension() const noexcept { return n_; }
  const std::vector<Facet>& facets() const noexcept { return facets_; }
  bool closed() const noexcept { return closed_; }
  double mesh_size() const noexcept { return mesh_size_; }
  /// Evaluation points must be farther than this from every centroid.
  double guard() const noexcept { return 3.0 * mesh_size_; }
  double total_area() const noexcept;
  std::vector<double> vector_area() const;

  /// Copy with every density multiplied by factor.
  DiscreteSurface reweighted(double factor) const;

 private:
  int n_;
  std::vector<Facet> facets_;
  bool closed_;
  double mesh_size_;
};

enum class SurfaceElement { NormalDy, WeightedDalpha };

/// sum over facets of E(x - c) N(c) area. Throws ProximityError when x is
/// within the guard distance of a centroid.
Multivector surface_cauchy_integral(const DiscreteSurface& s, std::span<const double> x);

/// sum over facets of dE(x - c)/dx_axis times N(c) area (NormalDy) or
/// density * area (WeightedDalpha).
Multivector surface_derivative_integral(const DiscreteSurface& s, std::span<const double> x, int axis,
                                        SurfaceElement element);

/// Same facet sum with norms inside: the size the derivative integral would
/// have without cancellation.
double surface_derivative_magnitude(const DiscreteSurface& s, std::span<const double> x, int axis,
                                    SurfaceElement element);

}  // namespace cauchylab::clifford_analysis
