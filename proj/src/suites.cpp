#include "cauchylab/suites.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>

#include "cauchylab/clifford.hpp"
#include "cauchylab/clifford_analysis.hpp"
#include "cauchylab/complex_contours.hpp"
#include "cauchylab/complex_planes.hpp"
#include "cauchylab/error.hpp"
#include "cauchylab/fixtures.hpp"
#include "cauchylab/geometry_measures.hpp"
#include "cauchylab/io.hpp"
#include "cauchylab/numeric.hpp"
#include "cauchylab/potentials.hpp"

namespace cauchylab::suites {

using report::Report;
using report::Table;

namespace {

constexpr double kPi = std::numbers::pi;

// Tolerance lookup with --tol.<name> overrides; remembers which names exist.
class Context {
 public:
  explicit Context(const RunConfig& cfg) : cfg(cfg) {}

  double tol(const std::string& name, double fallback) {
    known_.insert(name);
    const auto it = cfg.tolerances.find(name);
    return it == cfg.tolerances.end() ? fallback : it->second;
  }

  void check_overrides() const {
    for (const auto& [name, value] : cfg.tolerances)
      if (!known_.count(name)) throw DomainError("unknown tolerance '" + name + "' for " + cfg.command);
  }

  const RunConfig& cfg;

 private:
  std::set<std::string> known_;
};

double relative_error(std::complex<double> got, std::complex<double> want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// ---------------------------------------------------------------- contours

std::vector<contours::Complex> random_polygon(Rng& rng, std::size_t vertices) {
  std::vector<double> angles(vertices);
  for (auto& a : angles) a = rng.uniform(0.0, 2.0 * kPi);
  std::sort(angles.begin(), angles.end());
  std::vector<contours::Complex> out;
  for (double a : angles) out.push_back(std::polar(rng.uniform(0.5, 2.0), a));
  return out;
}

// Points at distance >= 0.1 diam from the contour, drawn around its bounding box.
std::vector<contours::Complex> far_points(const contours::Contour& c, std::span<const contours::Complex> hull,
                                          Rng& rng, std::size_t count) {
  double lo_x = INFINITY, hi_x = -INFINITY, lo_y = INFINITY, hi_y = -INFINITY;
  for (auto v : hull) {
    lo_x = std::min(lo_x, v.real());
    hi_x = std::max(hi_x, v.real());
    lo_y = std::min(lo_y, v.imag());
    hi_y = std::max(hi_y, v.imag());
  }
  const double diam = std::hypot(hi_x - lo_x, hi_y - lo_y);
  std::vector<contours::Complex> out;
  while (out.size() < count) {
    const contours::Complex z(rng.uniform(lo_x - diam, hi_x + diam), rng.uniform(lo_y - diam, hi_y + diam));
    if (c.distance_to(z) >= 0.1 * diam) out.push_back(z);
  }
  return out;
}

void demo_contour(Context& ctx, Report& rep) {
  using namespace contours;
  Rng rng(ctx.cfg.seed);
  QuadratureControl quad;
  quad.max_panels = 10000;

  if (ctx.cfg.input) {
    const auto c = io::parse_contour(io::read_json_file(*ctx.cfg.input));
    std::vector<Complex> hull;
    for (const auto& s : c.segments()) {
      hull.push_back(s.start());
      if (s.bounded()) hull.push_back(s.point(s.length()));
    }
    Table t{"contour-integral", {"re_z", "im_z", "re_value", "im_value"}, {}};
    double worst = 0.0;
    for (auto z : far_points(c, hull, rng, 20)) {
      const auto v = contour_integral(c, Element::ComplexDz, Kernel::CauchySquared, z, quad).value;
      t.rows.push_back({z.real(), z.imag(), v.real(), v.imag()});
      worst = std::max(worst, std::abs(v));
    }
    rep.tables.push_back(std::move(t));
    if (c.closed())
      rep.expect_near("closed-curve-vanishing", "closed curve: integral of (z-zeta)^-2 dzeta is zero", worst, 0.0,
                      ctx.tol("closed-curve-vanishing", 1e-8));
    return;
  }

  double seg = 0.0, corner = 0.0;
  for (int k = 0; k < 10; ++k) {
    const Complex a(rng.uniform(-1, 1), rng.uniform(-1, 1)), b(rng.uniform(-1, 1), rng.uniform(-1, 1));
    const Complex z(rng.uniform(2, 3), rng.uniform(-3, 3));
    const auto q = contour_integral(Contour({ContourSegment(LineSegment{a, b})}, false), Element::ComplexDz,
                                    Kernel::CauchySquared, z, quad);
    seg = std::max(seg, relative_error(q.value, segment_closed_form(a, b, z)));
    const Complex p(rng.uniform(-1, 1), rng.uniform(-1, 1));
    const std::vector<Complex> path{a, p, b};
    const auto qc = contour_integral(Contour::polyline(path), Element::Arclength, Kernel::CauchySquared, z, quad);
    corner = std::max(corner, relative_error(qc.value, corner_closed_form(a, p, b, z).value));
  }
  rep.expect_near("segment-closed-form", "straight segment: integral of (z-zeta)^-2 dzeta is 1/(z-b) - 1/(z-a)", seg,
                  0.0, ctx.tol("segment-closed-form", 1e-6));
  rep.expect_near("corner-closed-form", "two-segment corner with arclength: c1, c2 combination", corner, 0.0,
                  ctx.tol("corner-closed-form", 1e-6));

  const auto circle = Contour::circle(0.0, 1.0);
  const Complex inside(0.3, -0.2), outside(1.7, 0.9);
  const auto qi = contour_integral(circle, Element::ComplexDz, Kernel::CauchySquaredOverZeta, inside, quad);
  rep.expect_near("circle-inside-zero", "unit circle with dzeta/zeta: zero inside", std::abs(qi.value), 0.0,
                  ctx.tol("circle-inside-zero", 1e-6));
  const auto qo = contour_integral(circle, Element::ComplexDz, Kernel::CauchySquaredOverZeta, outside, quad);
  rep.expect_near("circle-outside", "unit circle with dzeta/zeta: 2 pi i / z^2 outside",
                  relative_error(qo.value, circle_closed_form(outside)), 0.0, ctx.tol("circle-outside", 1e-6));

  double vanish = 0.0;
  for (int k = 0; k < 5; ++k) {
    const auto verts = random_polygon(rng, 3 + rng.index(8));
    const auto c = Contour::polygon(verts);
    for (auto z : far_points(c, verts, rng, 10))
      vanish = std::max(vanish, std::abs(contour_integral(c, Element::ComplexDz, Kernel::CauchySquared, z).value));
  }
  rep.expect_near("closed-curve-vanishing", "closed polygons: integral of (z-zeta)^-2 dzeta is zero", vanish, 0.0,
                  ctx.tol("closed-curve-vanishing", 1e-8));

  std::vector<RayDensity> star;
  std::vector<ContourSegment> rays;
  for (int k = 0; k < 3; ++k) {
    const auto d = std::polar(1.0, 2.0 * kPi * k / 3.0);
    star.push_back({d, 1.0});
    rays.emplace_back(Ray{0.0, d});
  }
  rep.expect_near("ray-star-balanced", "three equal rays at 120 degrees: balanced coefficient",
                  std::abs(ray_star_coefficient(star)), 0.0, ctx.tol("ray-star-balanced", 1e-12));
  const auto qs = contour_integral(Contour(rays, false), Element::WeightedArclength, Kernel::CauchySquared,
                                   Complex(0.6, 0.9), quad);
  rep.expect_near("ray-star-quadrature", "three equal rays: truncated quadrature with analytic tails",
                  std::abs(qs.value), 0.0, ctx.tol("ray-star-quadrature", 1e-6));

  // Corner a = -1, p = 0, b = e^{i theta}: |c1 - c2| = 2 sin(theta / 2).
  std::vector<double> thetas, coeffs;
  for (double theta = 0.02; theta <= 0.2001; theta += 0.02) {
    thetas.push_back(theta);
    coeffs.push_back(std::abs(corner_closed_form(-1.0, 0.0, std::polar(1.0, theta), 5.0).corner_coefficient));
  }
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    num += thetas[k] * coeffs[k];
    den += thetas[k] * thetas[k];
  }
  rep.expect_near("corner-flattening-slope", "flattening corner: c1 - c2 vanishes linearly in the bend angle",
                  num / den, 1.0, ctx.tol("corner-flattening-slope", 0.1));
}

// ---------------------------------------------------------------- clifford

clifford::Multivector random_integer_mv(int n, Rng& rng) {
  std::vector<double> c(std::size_t{1} << n);
  for (auto& v : c) v = static_cast<double>(static_cast<int>(rng.index(11)) - 5);
  return clifford::Multivector(n, c);
}

void demo_clifford(Context& ctx, Report& rep) {
  using clifford::Multivector;
  Rng rng(ctx.cfg.seed);

  const int q = 2;
  const Multivector unit[4] = {Multivector::scalar(q, 1), Multivector::generator(q, 1), Multivector::generator(q, 2),
                               Multivector::blade(q, clifford::Blade{3})};
  const int table[4][4][2] = {
      {{1, 0}, {1, 1}, {1, 2}, {1, 3}},
      {{1, 1}, {-1, 0}, {1, 3}, {-1, 2}},
      {{1, 2}, {-1, 3}, {-1, 0}, {1, 1}},
      {{1, 3}, {1, 2}, {-1, 1}, {-1, 0}},
  };
  int wrong = 0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (!(unit[r] * unit[c] == static_cast<double>(table[r][c][0]) * unit[table[r][c][1]])) ++wrong;
  rep.expect_near("quaternion-table", "two generators: i = e1, j = e2, k = e1e2 follow the quaternion table", wrong,
                  0.0, 0.0);

  int anti = 0, assoc = 0;
  for (int t = 0; t < 10000; ++t) {
    const int n = 1 + static_cast<int>(rng.index(5));
    const int j = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(n)));
    const int k = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(n)));
    const auto ej = Multivector::generator(n, j), ek = Multivector::generator(n, k);
    const auto expect = j == k ? Multivector::scalar(n, -2.0) : Multivector(n);
    if (!(ej * ek + ek * ej == expect)) ++anti;
    const auto a = random_integer_mv(n, rng), b = random_integer_mv(n, rng), c = random_integer_mv(n, rng);
    if (!((a * b) * c == a * (b * c))) ++assoc;
  }
  rep.expect_near("anticommutation", "generators anticommute and square to -1", anti, 0.0, 0.0);
  rep.expect_near("associativity", "the product is associative on integer coefficients", assoc, 0.0, 0.0);

  double round_trip = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int n = 1 + static_cast<int>(rng.index(5));
    clifford::Paravector p{rng.uniform(-2, 2), std::vector<double>(static_cast<std::size_t>(n))};
    for (auto& b : p.betas) b = rng.uniform(-2, 2);
    const auto prod = p.to_multivector() * clifford::paravector_inverse(p).to_multivector();
    round_trip = std::max(round_trip, (prod - Multivector::scalar(n, 1.0)).max_abs());
  }
  rep.expect_near("paravector-inverse", "beta times beta* / |beta|^2 is one", round_trip, 0.0,
                  ctx.tol("paravector-inverse", 1e-12));

  using namespace clifford_analysis;
  const std::vector<double> pole{0.05, -0.03, 0.02};
  auto kernel = [&](std::span<const double> p) { return cauchy_kernel(p, pole); };
  auto cube = [&](double h) {
    const auto count = static_cast<std::size_t>(std::llround(2.0 / h)) + 1;
    return GridFunction::sample({-1.0, -1.0, -1.0}, h, {count, count, count}, kernel);
  };
  auto on_coarse = [](std::span<const double> p, double h) {
    for (double v : p)
      if (std::abs((v + 1.0) / h - std::round((v + 1.0) / h)) > 1e-9) return false;
    return true;
  };
  const auto coarse = dirac_apply_fd(cube(0.1));
  const auto fine = dirac_apply_fd(cube(0.05));
  auto away = [&](std::span<const double> p) { return distance(p, pole) > 0.5; };
  const double ratio = coarse.max_norm(away) /
                       fine.max_norm([&](std::span<const double> p) { return away(p) && on_coarse(p, 0.1); });
  rep.expect_near("dirac-kernel-ratio", "Cauchy kernel is Clifford analytic: residual falls fourfold per halving",
                  ratio, 4.0, ctx.tol("dirac-kernel-ratio", 0.5));

  auto wave = [](std::span<const double> p) {
    auto m = Multivector::scalar(3, std::sin(p[0]) * std::cos(0.5 * p[1]));
    m[clifford::Blade{1}] = std::exp(0.3 * p[2]);
    return m;
  };
  const double h1 = dirac_square_check(GridFunction::sample({0.1, 0.2, 0.3}, 0.02, {11, 11, 11}, wave));
  const double h2 = dirac_square_check(GridFunction::sample({0.1, 0.2, 0.3}, 0.01, {21, 21, 21}, wave));
  rep.expect_near("dirac-square-ratio", "D^2 = -Laplacian: residual falls fourfold per halving", h1 / h2, 4.0,
                  ctx.tol("dirac-square-ratio", 0.5));
}

// ---------------------------------------------------------------- surfaces

void demo_surface(Context& ctx, Report& rep) {
  using namespace clifford_analysis;
  using clifford::Multivector;
  Rng rng(ctx.cfg.seed);

  if (ctx.cfg.input) {
    const auto s = io::parse_surface(io::read_json_file(*ctx.cfg.input));
    const int n = s.dimension();
    std::vector<double> centre(n, 0.0);
    for (const auto& f : s.facets())
      for (int d = 0; d < n; ++d) centre[d] += f.centroid[d] * f.area / s.total_area();
    double extent = 0.0;
    for (const auto& f : s.facets()) extent = std::max(extent, distance(f.centroid, centre));
    std::vector<double> far = centre;
    far[0] += 3.0 * extent;
    Table t{"surface-integral", {"x1", "scalar_part", "norm"}, {}};
    const auto at_far = surface_cauchy_integral(s, far);
    t.rows.push_back({far[0], at_far.scalar_part(), at_far.norm()});
    if (s.closed()) {
      const auto at_centre = surface_cauchy_integral(s, centre);
      t.rows.insert(t.rows.begin(), {centre[0], at_centre.scalar_part(), at_centre.norm()});
      rep.expect_at_most("exterior-vanishing", "closed surface: the Cauchy integral is zero outside",
                         at_far.norm() / std::abs(at_centre.scalar_part()), ctx.tol("exterior-vanishing", 0.01));
    }
    rep.tables.push_back(std::move(t));
    return;
  }

  const int level = ctx.cfg.depth.value_or(5);
  const auto sphere = fixtures::icosphere(level);
  const std::vector<double> origin{0.0, 0.0, 0.0};
  const double kappa = surface_cauchy_integral(sphere, origin).scalar_part();
  rep.expect_near("sphere-kappa", "closed sphere: inside constant equals the sphere area 4 pi", kappa / (4.0 * kPi),
                  1.0, ctx.tol("sphere-kappa", 0.01));

  double spread = 0.0, exterior = 0.0, derivative = 0.0;
  const double guard = sphere.guard();
  for (int k = 0; k < 8; ++k) {
    auto u = rng.unit_vector(3);
    std::vector<double> in(3), out(3);
    const double ri = rng.uniform(0.0, 1.0 - 2.0 * guard), ro = rng.uniform(1.0 + 2.0 * guard, 3.0);
    for (int d = 0; d < 3; ++d) {
      in[d] = ri * u[d];
      out[d] = ro * u[d];
    }
    spread = std::max(spread, (surface_cauchy_integral(sphere, in) - Multivector::scalar(3, kappa)).norm() / kappa);
    exterior = std::max(exterior, surface_cauchy_integral(sphere, out).norm() / kappa);
    for (const auto& x : {in, out})
      for (int axis = 0; axis < 3; ++axis)
        derivative = std::max(derivative, surface_derivative_integral(sphere, x, axis, SurfaceElement::NormalDy).norm() /
                                              surface_derivative_magnitude(sphere, x, axis, SurfaceElement::NormalDy));
  }
  rep.expect_at_most("sphere-interior-spread", "closed sphere: the Cauchy integral is locally constant inside", spread,
                     ctx.tol("sphere-interior-spread", 0.01));
  rep.expect_at_most("sphere-exterior", "closed sphere: the Cauchy integral is zero outside", exterior,
                     ctx.tol("sphere-exterior", 0.01));
  rep.expect_at_most("sphere-derivative", "closed sphere: differentiated N dy integral vanishes", derivative,
                     ctx.tol("sphere-derivative", 0.01));

  const auto circle = fixtures::polygon_circle(4096);
  const double k2 = surface_cauchy_integral(circle, std::vector<double>{0.1, 0.2}).scalar_part();
  rep.expect_near("circle-kappa", "closed curve in the plane: inside constant equals 2 pi", k2 / (2.0 * kPi), 1.0,
                  ctx.tol("circle-kappa", 1e-4));

  const auto cap = fixtures::hemisphere(3);
  std::vector<double> logd, logv;
  for (double d : {8.0, 16.0, 32.0}) {
    logd.push_back(std::log(d));
    logv.push_back(std::log(
        surface_derivative_integral(cap, std::vector<double>{0.0, 0.0, d}, 2, SurfaceElement::NormalDy).norm()));
  }
  rep.expect_near("hemisphere-decay", "open hemisphere: derivative integral decays like dist^-3",
                  fit_slope(logd, logv), -3.0, ctx.tol("hemisphere-decay", 0.15));

  Table t{"flat-patch", {"half_width", "axis", "relative_size"}, {}};
  const std::vector<double> x{0.0, 0.0, 0.5};
  for (double half : {2.0, 4.0, 8.0}) {
    const auto patch = fixtures::plane_patch(half, static_cast<std::size_t>(half * 40));
    for (int axis : {0, 2})
      t.rows.push_back({half, static_cast<double>(axis),
                        surface_derivative_integral(patch, x, axis, SurfaceElement::WeightedDalpha).norm() /
                            surface_derivative_magnitude(patch, x, axis, SurfaceElement::WeightedDalpha)});
  }
  rep.tables.push_back(std::move(t));
}

// ---------------------------------------------------------------- measures

struct Fixture {
  std::string name;
  fixtures::PointCloud cloud;
  double n_dim;
  std::optional<fixtures::CantorSet> cantor;
  std::optional<fixtures::KochCurve> koch;
};

Fixture make_fixture(const RunConfig& cfg, const std::string& name) {
  if (name == "line") {
    return {name, fixtures::segment_grid(1.0, cfg.spacing.value_or(1e-3)), 1.0, {}, {}};
  } else if (name == "grid") {
    return {name, fixtures::square_grid(1.0, cfg.spacing.value_or(1.0 / 48)), 2.0, {}, {}};
  } else if (name == "disc") {
    return {name, fixtures::disc_grid(4.0, cfg.spacing.value_or(1.0 / 128)), 2.0, {}, {}};
  } else if (name == "lipschitz") {
    return {name, fixtures::lipschitz_graph(0.5, cfg.spacing.value_or(1.0 / 48), cfg.lip_const), 2.0, {}, {}};
  } else if (name == "cantor") {
    auto c = fixtures::cantor_set(cfg.depth.value_or(6), cfg.ambient);
    const double n = c.dimension();
    auto cloud = c.cloud;
    return {name, std::move(cloud), n, std::move(c), {}};
  } else if (name == "koch") {
    auto k = fixtures::koch_curve(cfg.depth.value_or(6));
    auto cloud = k.cloud;
    return {name, std::move(cloud), std::log(4.0) / std::log(3.0), {}, std::move(k)};
  }
  throw DomainError("unknown fixture '" + name + "'");
}

geometry::DiscreteMeasure measure_of(const fixtures::PointCloud& pc) {
  return geometry::DiscreteMeasure(pc.dim, pc.points, pc.weights);
}

void symmetry_table(const geometry::DiscreteMeasure& mu, Report& rep) {
  std::vector<geometry::Point> centers;
  for (auto i : geometry::strided_indices(mu.size(), 8)) {
    const auto p = mu.point(i);
    centers.emplace_back(p.begin(), p.end());
  }
  const double lo = std::max(4.0 * mu.median_spacing(), 1e-3 * mu.diameter());
  const auto profile = geometry::symmetry_profile(mu, centers, log_space(lo, 0.25 * mu.diameter(), 6));
  Table t{"symmetry-profile", {"center_index", "radius", "normalized_defect"}, {}};
  for (std::size_t k = 0; k < profile.rows.size(); ++k)
    t.rows.push_back({static_cast<double>(k / 6), profile.rows[k].radius, profile.rows[k].normalized});
  rep.tables.push_back(std::move(t));
  rep.tables.push_back({"symmetry-exponent", {"alpha_hat"}, {{profile.alpha_hat}}});
}

void band_table(const geometry::AhlforsBand& b, double n, Report& rep, const std::string& name) {
  rep.tables.push_back({name, {"n", "c_low", "c_high", "t_lo", "t_hi"}, {{n, b.c_low, b.c_high, b.t_lo, b.t_hi}}});
}

void measure_diagnose(Context& ctx, Report& rep) {
  using namespace geometry;
  const auto& cfg = ctx.cfg;
  if (cfg.input || cfg.fixture) {
    std::optional<DiscreteMeasure> mu;
    double n;
    if (cfg.input) {
      auto loaded = io::parse_pointcloud_file(*cfg.input);
      rep.tables.push_back({"input", {"rows", "atoms", "merged"},
                            {{static_cast<double>(loaded.rows), static_cast<double>(loaded.measure.size()),
                              static_cast<double>(loaded.merged)}}});
      n = loaded.measure.dimension();
      mu.emplace(std::move(loaded.measure));
    } else {
      const auto f = make_fixture(cfg, *cfg.fixture);
      n = f.n_dim;
      mu.emplace(measure_of(f.cloud));
    }
    symmetry_table(*mu, rep);
    band_table(ahlfors_constants(*mu, n, 256, {0.0, INFINITY}), n, rep, "ahlfors-band");
    return;
  }

  const double h = 1e-3, hs = 0.01;
  const auto line = measure_of(fixtures::segment_grid(1.0, h));
  const auto square = measure_of(fixtures::square_grid(1.0, hs));
  double line_worst = 0.0, square_worst = 0.0;
  for (double r : {0.02, 0.05, 0.1, 0.3}) {
    for (double shift : {0.0, 0.3, 0.5}) {
      const Point a{0.5 + shift * h, 0.0}, b{0.5 + shift * hs, 0.5 - shift * hs};
      line_worst = std::max(line_worst, *symmetry_defect(line, a, r).normalized / (h / r));
      square_worst = std::max(square_worst, *symmetry_defect(square, b, r).normalized / (hs / r));
    }
  }
  rep.expect_at_most("line-symmetric", "segment: normalized symmetry defect in units of spacing / r", line_worst,
                     ctx.tol("line-symmetric", 2.0));
  rep.expect_at_most("square-symmetric", "square: normalized symmetry defect in units of spacing / r", square_worst,
                     ctx.tol("square-symmetric", 2.0));

  const auto cantor = fixtures::cantor_set(cfg.depth.value_or(14), 1);
  const auto cmu = measure_of(cantor.cloud);
  const auto at_dim = ahlfors_constants(cmu, cantor.dimension(), 256, {0.0, INFINITY});
  const auto at_one = ahlfors_constants(cmu, 1.0, 256, {0.0, INFINITY});
  band_table(at_dim, cantor.dimension(), rep, "cantor-band");
  band_table(at_one, 1.0, rep, "cantor-band-n1");
  rep.expect_at_most("cantor-band", "Cantor set is Ahlfors regular of dimension log 2 / log 3", at_dim.spread(),
                     ctx.tol("cantor-band", 10.0));
  rep.expect_at_least("cantor-band-n1", "Cantor set is not Ahlfors regular of dimension 1", at_one.spread(),
                      ctx.tol("cantor-band-n1", 100.0));

  const auto koch = fixtures::koch_curve(6);
  const auto kb = ahlfors_constants(measure_of(koch.cloud), std::log(4.0) / std::log(3.0), 256, {0.0, INFINITY});
  band_table(kb, std::log(4.0) / std::log(3.0), rep, "koch-band");
  rep.expect_at_most("koch-band", "Koch curve is Ahlfors regular of dimension log 4 / log 3", kb.spread(),
                     ctx.tol("koch-band", 10.0));

  const Point p{0.0, 0.0}, q{1.0, 1.0}, r{2.0, 2.0}, s{1.0, 0.0};
  rep.expect_near("menger-collinear", "Menger curvature vanishes on collinear triples", menger_curvature(p, q, r), 0.0,
                  ctx.tol("menger-collinear", 1e-12));
  rep.expect_near("menger-right-triangle", "Menger curvature is the reciprocal circumradius",
                  menger_curvature(p, q, s), std::sqrt(2.0), ctx.tol("menger-right-triangle", 1e-12));
}

// ---------------------------------------------------------------- potentials

constexpr std::size_t kSweepLimit = 20000;

// 2^-6 ... 2^0, keeping radii at most 3/4 of the set's extent so the
// distant parts still hold atoms.
std::vector<double> calibration_radii(const potentials::RegularSet& E) {
  std::vector<double> radii;
  for (int k = -6; k <= 0; ++k)
    if (std::ldexp(1.0, k) <= 0.75 * E.measure().diameter()) radii.push_back(std::ldexp(1.0, k));
  return radii;
}

void potential_sweep(Context& ctx, Report& rep) {
  using namespace potentials;
  const auto& cfg = ctx.cfg;
  Rng rng(cfg.seed);
  const std::string name = cfg.fixture.value_or(cfg.input ? "input" : "grid");

  std::optional<RegularSet> set;
  if (cfg.input) {
    auto loaded = io::parse_pointcloud_file(*cfg.input);
    const double n = loaded.measure.dimension();
    set.emplace(std::move(loaded.measure), n);
  } else if (name == "cantor") {
    set.emplace(cantor_snowflake(cfg.depth.value_or(6), cfg.ambient, 0.5));
  } else if (name == "koch") {
    set.emplace(koch_snowflake(cfg.depth.value_or(6)));
  } else {
    const auto f = make_fixture(cfg, name);
    set.emplace(measure_of(f.cloud), f.n_dim);
  }
  const RegularSet& E = *set;
  const auto& mu = E.measure();

  // Exact finite-sum identities at random atoms.
  const auto f = smooth_random_function(E, rng.bits());
  double split = 0.0, jr = 0.0;
  for (int k = 0; k < 8; ++k) {
    const auto a = mu.point(rng.index(E.size()));
    const Point x(a.begin(), a.end());
    const double r = mu.diameter() * rng.uniform(0.02, 0.3);
    const double p = potential_P(E, f, x);
    const auto lj = split_LJ(E, f, x, r);
    split = std::max(split, std::abs(lj.local + lj.distant - p) / std::abs(p));
    const auto b = mu.point(rng.index(E.size()));
    const Point y(b.begin(), b.end());
    const double expect = lj.distant - split_LJ(E, f, y, r).distant;
    jr = std::max(jr, std::abs(jr_difference(E, f, x, y, r) - expect) / std::max(std::abs(expect), 1e-300));
  }
  rep.expect_at_most("split-identity", "local plus distant parts equal the potential", split,
                     ctx.tol("split-identity", 1e-12));
  rep.expect_at_most("jr-difference", "combined-kernel sum equals the difference of distant parts", jr,
                     ctx.tol("jr-difference", 1e-12));

  if (name == "grid") {
    const Point centre{0.5, 0.5};
    const SampleFunction one{std::vector<double>(E.size(), 1.0)};
    double worst = 0.0;
    for (double r : {0.05, 0.1, 0.2, 0.4}) {
      const auto t = truncated_riesz_Tr(E, one, centre, r);
      worst = std::max(worst, std::hypot(t[0], t[1]));
    }
    rep.expect_at_most("odd-kernel-zero", "truncated Riesz transform of 1 vanishes at a centre of symmetry", worst,
                       ctx.tol("odd-kernel-zero", 1e-10));
  }

  // Both sweeps cost O(N^2); large sets only get the identities and calibrations.
  if (!E.has_snowflake() && E.size() <= kSweepLimit) {
    const std::vector<double> qs{1.5, 2.0, 4.0};
    const auto radii = dyadic_radii(E, -5, -2);
    const auto rows = tr_norm_sweep(E, radii, qs, 64, rng.bits());
    Table t{"tr-norm", {"q", "r", "estimate"}, {}};
    for (const auto& row : rows) t.rows.push_back({row.q, row.r, row.estimate});
    rep.tables.push_back(std::move(t));
    if (name == "grid" || name == "lipschitz") {
      double band = 0.0;
      for (double q : qs) {
        double lo = INFINITY, hi = 0.0;
        for (const auto& row : rows)
          if (row.q == q) {
            lo = std::min(lo, row.estimate);
            hi = std::max(hi, row.estimate);
          }
        band = std::max(band, hi / lo);
      }
      rep.expect_at_most("tr-norm-band", "uniformly rectifiable set: T_r norm estimates stay within a band in r", band,
                         ctx.tol("tr-norm-band", 3.0));
    }
    const auto osc = oscillation_sweep(E, f, radii, 2.0);
    Table o{"oscillation", {"q", "r", "estimate"}, {}};
    for (const auto& row : osc) o.rows.push_back({row.q, row.r, row.estimate});
    rep.tables.push_back(std::move(o));
  }

  if (name == "disc") {
    const auto radii = calibration_radii(E);
    const auto cal = calibrate_taylor(E, radii, 64, rng.bits());
    Table t{"taylor-calibration", {"r", "constant"}, {}};
    for (std::size_t k = 0; k < radii.size(); ++k) t.rows.push_back({radii[k], cal.constants[k]});
    rep.tables.push_back(std::move(t));
    rep.expect_at_most("taylor-stability", "Taylor remainder: empirical constant is uniform in r", cal.stability(),
                       ctx.tol("taylor-stability", 2.0));
  }

  if (E.has_snowflake()) {
    const auto band = snowflake_check(E, 20000, 20000, rng.bits());
    rep.tables.push_back({"snowflake-band", {"c1_low", "c1_high", "triangle_excess"},
                          {{band.c1_low, band.c1_high, band.worst_triangle_excess}}});
    const auto radii = calibration_radii(E);
    const auto cal = calibrate_snowflake_taylor(E, radii, 4096, rng.bits());
    Table t{"snowflake-calibration", {"r", "constant"}, {}};
    for (std::size_t k = 0; k < radii.size(); ++k) t.rows.push_back({radii[k], cal.constants[k]});
    rep.tables.push_back(std::move(t));
    rep.expect_at_most("snowflake-stability", "snowflake: bound without the T_r term is uniform in r",
                       cal.stability(), ctx.tol("snowflake-stability", 2.0));
    const double s = E.snowflake().alpha * (E.n_dim() - 1.0);
    const auto kc = calibrate_kernel_difference(E, 100000, rng.bits());
    rep.expect_at_most("kernel-difference", "snowflake kernel difference: constant alpha (n - 1) suffices",
                       kc.max_ratio, 1.01 * s, ctx.tol("kernel-difference", 0.0));
    rep.expect_at_least("kernel-exponent", "Euclidean majorant exponent n - 1 + 1/alpha exceeds n",
                        kc.min_exponent_excess, 0.0, ctx.tol("kernel-exponent", 0.0));
  }
}

// ---------------------------------------------------------------- planes

void planes_check(Context& ctx, Report& rep) {
  using namespace planes;
  Rng rng(ctx.cfg.seed);
  const double tol = ctx.tol("plane-tolerance", 1e-10);
  if (ctx.cfg.input) {
    const auto L = io::parse_plane(io::read_json_file(*ctx.cfg.input));
    const auto sl = special_lagrangian_test(L, tol);
    rep.tables.push_back({"plane",
                          {"m", "coefficient", "symplectic_defect", "lagrangian", "special", "reversed",
                           "volume_re", "volume_im"},
                          {{static_cast<double>(L.m()), totally_real_coefficient(L), symplectic_defect(L),
                            sl.lagrangian ? 1.0 : 0.0, sl.special ? 1.0 : 0.0, sl.reversed ? 1.0 : 0.0,
                            sl.volume.real(), sl.volume.imag()}}});
    return;
  }

  double coef = 0.0;
  bool lagrangian = true, special = true;
  for (int k = 0; k < 100; ++k) {
    const std::size_t m = 1 + static_cast<std::size_t>(k) % 5;
    const auto L = transform(random_unitary(m, rng), standard_plane(m));
    coef = std::max(coef, std::abs(totally_real_coefficient(L) - 1.0));
    lagrangian = lagrangian && is_lagrangian(L, tol);
    const auto S = transform(random_special_unitary(m, rng), standard_plane(m));
    special = special && is_special_lagrangian(S, tol);
  }
  rep.expect_near("unitary-coefficient", "unitary images of R^m have totally-real coefficient one", coef, 0.0,
                  ctx.tol("unitary-coefficient", 1e-10));
  rep.expect_true("unitary-lagrangian", "unitary images of R^m are Lagrangian", lagrangian);
  rep.expect_true("su-special-lagrangian", "SU(m) images of R^m are special Lagrangian", special);

  CMatrix viv(2, 2);
  CVector v(2);
  for (auto& c : v) c = Complex(rng.normal(), rng.normal());
  viv.col(0) = v;
  viv.col(1) = Complex(0.0, 1.0) * v;
  const PlaneBasis bad(viv);
  rep.expect_near("v-iv-rejected", "a plane containing v and iv is not totally real", totally_real_coefficient(bad),
                  0.0, tol);
  rep.expect_true("v-iv-not-totally-real", "a plane containing v and iv fails the transversality test",
                  !is_totally_real(bad, tol));

  CMatrix half(2, 2);
  half << 1.0, Complex(0.0, 1.0), 0.0, 1.0;
  rep.expect_near("half-plane-coefficient", "basis (1,0), (i,1) has coefficient 1/sqrt 2",
                  totally_real_coefficient(PlaneBasis(half)), 1.0 / std::sqrt(2.0), ctx.tol("half-plane-coefficient", 1e-12));

  CMatrix di(2, 2);
  di << Complex(0.0, 1.0), 0.0, 0.0, 1.0;
  const auto dl = special_lagrangian_test(transform(di, standard_plane(2)), tol);
  rep.expect_true("diag-i-1-lagrangian", "diag(i, 1) R^2 is Lagrangian", dl.lagrangian);
  rep.expect_true("diag-i-1-not-special", "diag(i, 1) R^2 has determinant i and is not special Lagrangian",
                  !dl.special);
}

// ---------------------------------------------------------------- fixtures

void fixture_gen(Context& ctx, Report& rep) {
  const auto& cfg = ctx.cfg;
  if (!cfg.fixture) throw DomainError("fixture-gen needs --fixture");
  if (!cfg.output) throw DomainError("fixture-gen needs --out");
  std::ofstream out(*cfg.output, std::ios::binary);
  if (!out) throw Error("cannot write '" + *cfg.output + "'");
  if (*cfg.fixture == "sphere") {
    const auto s = fixtures::icosphere(cfg.depth.value_or(4));
    nlohmann::json facets = nlohmann::json::array();
    for (const auto& f : s.facets())
      facets.push_back({{"centroid", f.centroid}, {"normal", f.normal}, {"area", f.area}, {"density", f.density}});
    nlohmann::json j{{"n", 3}, {"closed", true}, {"mesh_size", s.mesh_size()}, {"facets", std::move(facets)}};
    out << report::canonical(j) << '\n';
    rep.expect_near("facet-count", "icosphere: 20 * 4^level facets", static_cast<double>(s.facets().size()),
                    20.0 * std::pow(4.0, cfg.depth.value_or(4)), 0.0);
  } else {
    const auto f = make_fixture(cfg, *cfg.fixture);
    io::write_pointcloud(f.cloud, out);
    const double count = static_cast<double>(f.cloud.points.size());
    if (f.koch) {
      rep.expect_near("point-count", "Koch curve: 4^depth + 1 vertices", count,
                      std::pow(4.0, cfg.depth.value_or(6)) + 1.0, 0.0);
    } else if (f.cantor) {
      rep.expect_near("point-count", "Cantor set: branching^depth atoms", count,
                      std::pow(cfg.ambient == 1 ? 2.0 : 4.0, cfg.depth.value_or(6)), 0.0);
    } else {
      rep.expect_at_least("point-count", "fixture is nonempty", count, 1.0);
    }
  }
  if (!out.flush()) throw Error("cannot write '" + *cfg.output + "'");
}

using Runner = void (*)(Context&, Report&);

const std::vector<std::pair<std::string, Runner>>& runners() {
  static const std::vector<std::pair<std::string, Runner>> table{
      {"demo-contour", demo_contour},       {"demo-surface", demo_surface},       {"demo-clifford", demo_clifford},
      {"measure-diagnose", measure_diagnose}, {"potential-sweep", potential_sweep}, {"planes-check", planes_check},
      {"fixture-gen", fixture_gen},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : runners()) out.push_back(name);
    return out;
  }();
  return names;
}

report::Report run_suite(const RunConfig& cfg) {
  for (const auto& [name, fn] : runners()) {
    if (name != cfg.command) continue;
    Context ctx(cfg);
    Report rep;
    rep.command = cfg.command;
    rep.seed = cfg.seed;
    fn(ctx, rep);
    ctx.check_overrides();
    return rep;
  }
  throw DomainError("unknown command '" + cfg.command + "'");
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const auto rep = run_suite(cfg);
    if (cfg.output && cfg.command != "fixture-gen") {
      report::emit_report(rep, *cfg.output);
    } else {
      out << report::emit(rep) << '\n';
    }
    for (const auto& c : rep.checks)
      if (!c.pass) err << "FAIL " << c.name << ": value " << c.value << ", oracle " << c.oracle << '\n';
    return rep.all_pass() ? 0 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace cauchylab::suites
