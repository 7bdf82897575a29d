#include "cauchylab/fixtures.hpp"

#include <array>
#include <cmath>
#include <map>
#include <numbers>

#include "cauchylab/error.hpp"
#include "cauchylab/numeric.hpp"

namespace cauchylab::fixtures {
namespace {

using clifford_analysis::DiscreteSurface;
using clifford_analysis::Facet;
using Vec3 = std::array<double, 3>;

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double len(const Vec3& a) { return std::sqrt(dot(a, a)); }
Vec3 unit(const Vec3& a) {
  const double l = len(a);
  return {a[0] / l, a[1] / l, a[2] / l};
}

std::size_t lattice_count(double extent, double spacing) {
  if (!(spacing > 0.0) || !(extent > 0.0)) throw DomainError("extent and spacing must be positive");
  return static_cast<std::size_t>(std::floor(extent / spacing + 1e-9)) + 1;
}

struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<std::size_t, 3>> faces;
};

Mesh icosahedron() {
  const double phi = std::numbers::phi;
  Mesh mesh;
  for (double s1 : {-1.0, 1.0}) {
    for (double s2 : {-phi, phi}) {
      mesh.vertices.push_back(unit({0.0, s1, s2}));
      mesh.vertices.push_back(unit({s1, s2, 0.0}));
      mesh.vertices.push_back(unit({s2, 0.0, s1}));
    }
  }
  // Faces are the triples of mutually adjacent vertices (edge length 2 before
  // normalisation), oriented so the normal points away from the origin.
  const double edge = 2.0 / std::sqrt(1.0 + phi * phi);
  auto adjacent = [&](std::size_t a, std::size_t b) {
    return std::abs(len(sub(mesh.vertices[a], mesh.vertices[b])) - edge) < 1e-9;
  };
  for (std::size_t a = 0; a < 12; ++a)
    for (std::size_t b = a + 1; b < 12; ++b)
      for (std::size_t c = b + 1; c < 12; ++c) {
        if (!adjacent(a, b) || !adjacent(b, c) || !adjacent(a, c)) continue;
        const Vec3 n = cross(sub(mesh.vertices[b], mesh.vertices[a]), sub(mesh.vertices[c], mesh.vertices[a]));
        if (dot(n, mesh.vertices[a]) > 0) {
          mesh.faces.push_back({a, b, c});
        } else {
          mesh.faces.push_back({a, c, b});
        }
      }
  return mesh;
}

Mesh subdivide(const Mesh& in) {
  Mesh out{in.vertices, {}};
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> midpoint;
  auto mid = [&](std::size_t a, std::size_t b) {
    const auto key = std::minmax(a, b);
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    const Vec3& p = out.vertices[a];
    const Vec3& q = out.vertices[b];
    out.vertices.push_back(unit({p[0] + q[0], p[1] + q[1], p[2] + q[2]}));
    midpoint.emplace(key, out.vertices.size() - 1);
    return out.vertices.size() - 1;
  };
  for (const auto& f : in.faces) {
    const std::size_t ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
    out.faces.push_back({f[0], ab, ca});
    out.faces.push_back({ab, f[1], bc});
    out.faces.push_back({ca, bc, f[2]});
    out.faces.push_back({ab, bc, ca});
  }
  return out;
}

std::vector<Facet> mesh_facets(const Mesh& mesh, double radius, double& max_edge) {
  std::vector<Facet> facets;
  facets.reserve(mesh.faces.size());
  max_edge = 0.0;
  for (const auto& f : mesh.faces) {
    Vec3 p[3];
    for (int k = 0; k < 3; ++k)
      for (int a = 0; a < 3; ++a) p[k][a] = radius * mesh.vertices[f[k]][a];
    const Vec3 n = cross(sub(p[1], p[0]), sub(p[2], p[0]));
    const Vec3 u = unit(n);
    Facet facet;
    facet.centroid = {(p[0][0] + p[1][0] + p[2][0]) / 3, (p[0][1] + p[1][1] + p[2][1]) / 3,
                      (p[0][2] + p[1][2] + p[2][2]) / 3};
    facet.normal = {u[0], u[1], u[2]};
    facet.area = 0.5 * len(n);
    facets.push_back(std::move(facet));
    for (int k = 0; k < 3; ++k) max_edge = std::max(max_edge, len(sub(p[k], p[(k + 1) % 3])));
  }
  return facets;
}

Mesh icosphere_mesh(int level) {
  if (level < 0 || level > 8) throw DomainError("icosphere level must be in [0, 8]");
  Mesh mesh = icosahedron();
  for (int k = 0; k < level; ++k) mesh = subdivide(mesh);
  return mesh;
}

}  // namespace

PointCloud segment_grid(double length, double spacing) {
  const std::size_t count = lattice_count(length, spacing);
  PointCloud pc{2, {}, {}};
  for (std::size_t i = 0; i < count; ++i) {
    pc.points.push_back({static_cast<double>(i) * spacing, 0.0});
    pc.weights.push_back(spacing);
  }
  return pc;
}

PointCloud square_grid(double side, double spacing) {
  const std::size_t count = lattice_count(side, spacing);
  PointCloud pc{2, {}, {}};
  for (std::size_t j = 0; j < count; ++j)
    for (std::size_t i = 0; i < count; ++i) {
      pc.points.push_back({static_cast<double>(i) * spacing, static_cast<double>(j) * spacing});
      pc.weights.push_back(spacing * spacing);
    }
  return pc;
}

PointCloud disc_grid(double radius, double spacing) {
  if (!(radius > 0.0) || !(spacing > 0.0)) throw DomainError("radius and spacing must be positive");
  const auto k = static_cast<long>(std::floor(radius / spacing));
  PointCloud pc{2, {}, {}};
  for (long j = -k; j <= k; ++j)
    for (long i = -k; i <= k; ++i) {
      const double x = static_cast<double>(i) * spacing, y = static_cast<double>(j) * spacing;
      if (x * x + y * y <= radius * radius * (1 + 1e-12)) {
        pc.points.push_back({x, y});
        pc.weights.push_back(spacing * spacing);
      }
    }
  return pc;
}

PointCloud circle_atoms(double radius, std::size_t count) {
  if (!(radius > 0.0) || count < 3) throw DomainError("circle needs a positive radius and at least 3 atoms");
  PointCloud pc{2, {}, {}};
  const double step = 2.0 * std::numbers::pi / static_cast<double>(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double t = step * static_cast<double>(k);
    pc.points.push_back({radius * std::cos(t), radius * std::sin(t)});
    pc.weights.push_back(radius * step);
  }
  return pc;
}

PointCloud lipschitz_graph(double half_width, double spacing, double lip_const) {
  if (!(lip_const >= 0.0)) throw DomainError("Lipschitz constant must be nonnegative");
  const std::size_t count = lattice_count(2.0 * half_width, spacing);
  const double a = lip_const / std::sqrt(2.0);
  PointCloud pc{3, {}, {}};
  for (std::size_t j = 0; j < count; ++j)
    for (std::size_t i = 0; i < count; ++i) {
      const double u = -half_width + static_cast<double>(i) * spacing;
      const double v = -half_width + static_cast<double>(j) * spacing;
      const double gu = a * std::cos(u), gv = a * std::cos(v);
      pc.points.push_back({u, v, a * (std::sin(u) + std::sin(v))});
      pc.weights.push_back(std::sqrt(1.0 + gu * gu + gv * gv) * spacing * spacing);
    }
  return pc;
}

double CantorSet::dimension() const { return std::log(static_cast<double>(branching)) / std::log(3.0); }

int CantorSet::common_prefix(std::size_t i, std::size_t j) const {
  std::uint64_t a = address[i], b = address[j];
  std::uint64_t scale = 1;
  for (int k = 1; k < depth; ++k) scale *= static_cast<std::uint64_t>(branching);
  for (int k = 0; k < depth; ++k) {
    if (a / scale != b / scale) return k;
    a %= scale;
    b %= scale;
    scale /= static_cast<std::uint64_t>(branching);
  }
  return depth;
}

double CantorSet::ultrametric(std::size_t i, std::size_t j, double alpha) const {
  if (i == j) return 0.0;
  return std::pow(3.0, -static_cast<double>(common_prefix(i, j)) / alpha);
}

CantorSet cantor_set(int depth, int ambient) {
  if (ambient != 1 && ambient != 2) throw DomainError("Cantor fixture supports ambient dimension 1 or 2");
  const int branching = ambient == 1 ? 2 : 4;
  if (depth < 1 || depth * (ambient == 1 ? 1 : 2) > 24) throw DomainError("Cantor depth out of range");
  CantorSet set;
  set.depth = depth;
  set.branching = branching;
  set.cloud.dim = ambient;
  std::uint64_t count = 1;
  for (int k = 0; k < depth; ++k) count *= static_cast<std::uint64_t>(branching);
  const double cell = std::pow(3.0, -depth);
  for (std::uint64_t code = 0; code < count; ++code) {
    std::vector<double> p(ambient, 0.0);
    std::uint64_t rest = code;
    // Least significant digit is the finest level.
    for (int level = depth; level >= 1; --level) {
      const auto digit = rest % static_cast<std::uint64_t>(branching);
      rest /= static_cast<std::uint64_t>(branching);
      const double offset = 2.0 * std::pow(3.0, -level);
      if (digit & 1U) p[0] += offset;
      if (digit & 2U) p[1] += offset;
    }
    for (auto& v : p) v += 0.5 * cell;
    set.cloud.points.push_back(std::move(p));
    set.cloud.weights.push_back(1.0 / static_cast<double>(count));
    set.address.push_back(code);
  }
  return set;
}

double KochCurve::parameter_distance(std::size_t i, std::size_t j) const {
  return std::abs(parameter[i] - parameter[j]);
}

double KochCurve::alpha() { return std::log(3.0) / std::log(4.0); }

KochCurve koch_curve(int depth) {
  if (depth < 0 || depth > 10) throw DomainError("Koch depth must be in [0, 10]");
  std::vector<std::array<double, 2>> pts{{0.0, 0.0}, {1.0, 0.0}};
  const double c = std::cos(std::numbers::pi / 3), s = std::sin(std::numbers::pi / 3);
  for (int d = 0; d < depth; ++d) {
    std::vector<std::array<double, 2>> next;
    next.reserve(4 * pts.size());
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
      const auto& p = pts[k];
      const auto& q = pts[k + 1];
      const double dx = (q[0] - p[0]) / 3, dy = (q[1] - p[1]) / 3;
      const std::array<double, 2> a{p[0] + dx, p[1] + dy};
      const std::array<double, 2> b{p[0] + 2 * dx, p[1] + 2 * dy};
      const std::array<double, 2> apex{a[0] + c * dx - s * dy, a[1] + s * dx + c * dy};
      next.push_back(p);
      next.push_back(a);
      next.push_back(apex);
      next.push_back(b);
    }
    next.push_back(pts.back());
    pts = std::move(next);
  }
  KochCurve curve;
  curve.cloud.dim = 2;
  const double w = std::pow(4.0, -depth);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    curve.cloud.points.push_back({pts[k][0], pts[k][1]});
    curve.cloud.weights.push_back(w);
    curve.parameter.push_back(static_cast<double>(k) * w);
  }
  return curve;
}

DiscreteSurface icosphere(int level, double radius) {
  if (!(radius > 0.0)) throw DomainError("sphere radius must be positive");
  double max_edge = 0.0;
  auto facets = mesh_facets(icosphere_mesh(level), radius, max_edge);
  return DiscreteSurface(3, std::move(facets), true, max_edge);
}

DiscreteSurface hemisphere(int level, double radius) {
  if (!(radius > 0.0)) throw DomainError("sphere radius must be positive");
  double max_edge = 0.0;
  auto all = mesh_facets(icosphere_mesh(level), radius, max_edge);
  std::vector<Facet> upper;
  for (auto& f : all)
    if (f.centroid[2] > 0.0) upper.push_back(std::move(f));
  return DiscreteSurface(3, std::move(upper), false, max_edge);
}

DiscreteSurface polygon_circle(std::size_t sides, double radius) {
  if (sides < 3 || !(radius > 0.0)) throw DomainError("polygon needs at least 3 sides and a positive radius");
  std::vector<Facet> facets;
  const double step = 2.0 * std::numbers::pi / static_cast<double>(sides);
  const double edge = 2.0 * radius * std::sin(0.5 * step);
  const double apothem = radius * std::cos(0.5 * step);
  for (std::size_t k = 0; k < sides; ++k) {
    const double t = step * (static_cast<double>(k) + 0.5);
    facets.push_back({{apothem * std::cos(t), apothem * std::sin(t)}, {std::cos(t), std::sin(t)}, edge, 1.0});
  }
  return DiscreteSurface(2, std::move(facets), true, edge);
}

DiscreteSurface plane_patch(double half_width, std::size_t cells, double density) {
  if (!(half_width > 0.0) || cells == 0) throw DomainError("plane patch needs a positive size");
  const double h = 2.0 * half_width / static_cast<double>(cells);
  std::vector<Facet> facets;
  facets.reserve(cells * cells);
  for (std::size_t j = 0; j < cells; ++j)
    for (std::size_t i = 0; i < cells; ++i) {
      facets.push_back({{-half_width + (static_cast<double>(i) + 0.5) * h,
                         -half_width + (static_cast<double>(j) + 0.5) * h, 0.0},
                        {0.0, 0.0, 1.0},
                        h * h,
                        density});
    }
  return DiscreteSurface(3, std::move(facets), false, h * std::sqrt(2.0));
}

}  // namespace cauchylab::fixtures
