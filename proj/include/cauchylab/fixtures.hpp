#pragma once

// Deterministic test geometries: weighted point clouds and faceted surfaces.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cauchylab/clifford_analysis.hpp"

namespace cauchylab::fixtures {

struct PointCloud {
  int dim = 0;
  std::vector<std::vector<double>> points;
  std::vector<double> weights;
};

/// Points (t, 0) on [0, length] with the given spacing; weight = spacing,
/// so the linear density is 1.
PointCloud segment_grid(double length, double spacing);

/// Square [0, side]^2 lattice; weight = spacing^2.
PointCloud square_grid(double side, double spacing);

/// Lattice points of spacing h inside the closed disc of the given radius
/// about the origin; weight = h^2.
PointCloud disc_grid(double radius, double spacing);

/// count equally spaced atoms on the circle, weight = arc length.
PointCloud circle_atoms(double radius, std::size_t count);

/// Graph of phi(u, v) = L/sqrt(2) (sin u + sin v) over [-half, half]^2 in R^3,
/// with |grad phi| <= L. Weights sqrt(1 + |grad phi|^2) h^2.
PointCloud lipschitz_graph(double half_width, double spacing, double lip_const);

/// Self-similar Cantor construction with ratio 1/3: the middle-thirds set
/// in R^1 (2 children per cell) or the four-corner dust in R^2 (4 children).
/// Atoms are the centres of the depth-d cells with equal masses summing to 1.
struct CantorSet {
  PointCloud cloud;
  int depth = 0;
  int branching = 0;
  std::vector<std::uint64_t> address;  // base-`branching` digits, most significant first
  double dimension() const;            // log(branching) / log 3
  /// Number of leading digits shared by atoms i and j (depth when i = j).
  int common_prefix(std::size_t i, std::size_t j) const;
  /// Ultrametric 3^(-k/alpha), k the shared prefix length; 0 on the diagonal.
  double ultrametric(std::size_t i, std::size_t j, double alpha) const;
};

CantorSet cantor_set(int depth, int ambient = 1);

/// Koch curve from (0,0) to (1,0): 4^depth + 1 vertices with weights
/// 4^-depth, and the curve parameter t_i = i 4^-depth of each vertex.
struct KochCurve {
  PointCloud cloud;
  std::vector<double> parameter;
  double parameter_distance(std::size_t i, std::size_t j) const;
  static double alpha();  // log 3 / log 4
};

KochCurve koch_curve(int depth);

/// Icosahedron subdivided `level` times, vertices projected to the sphere;
/// 20 * 4^level flat triangular facets with outward normals.
clifford_analysis::DiscreteSurface icosphere(int level, double radius = 1.0);

/// Facets of the icosphere with centroid above the equator plane; open.
clifford_analysis::DiscreteSurface hemisphere(int level, double radius = 1.0);

/// Regular polygon inscribed in the circle, as a closed curve in R^2.
clifford_analysis::DiscreteSurface polygon_circle(std::size_t sides, double radius = 1.0);

/// Square [-half, half]^2 in the plane x3 = 0 of R^3, split into cells^2
/// squares with normal e3 and the given constant density.
clifford_analysis::DiscreteSurface plane_patch(double half_width, std::size_t cells, double density = 1.0);

}  // namespace cauchylab::fixtures
