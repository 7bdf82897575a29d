// Runs every acceptance criterion at its stated tolerance and time budget and
// prints one PASS/FAIL line per criterion. Exit status is nonzero when any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cauchylab/clifford.hpp"
#include "cauchylab/clifford_analysis.hpp"
#include "cauchylab/complex_contours.hpp"
#include "cauchylab/complex_planes.hpp"
#include "cauchylab/error.hpp"
#include "cauchylab/fixtures.hpp"
#include "cauchylab/geometry_measures.hpp"
#include "cauchylab/numeric.hpp"
#include "cauchylab/potentials.hpp"
#include "cauchylab/report.hpp"
#include "cauchylab/suites.hpp"

using namespace cauchylab;

namespace {

constexpr double kPi = std::numbers::pi;
using contours::Complex;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// ------------------------------------------------------------------ 1

Outcome closed_curve_vanishing() {
  using namespace contours;
  Rng rng(101);
  double worst = 0.0;
  for (int p = 0; p < 20; ++p) {
    const std::size_t n = 3 + rng.index(10);
    std::vector<double> angles(n);
    for (auto& a : angles) a = rng.uniform(0.0, 2.0 * kPi);
    std::sort(angles.begin(), angles.end());
    std::vector<Complex> verts;
    for (double a : angles) verts.push_back(std::polar(rng.uniform(0.5, 2.0), a));
    const auto c = Contour::polygon(verts);
    double diam = 0.0;
    for (auto u : verts)
      for (auto v : verts) diam = std::max(diam, std::abs(u - v));
    int found = 0;
    while (found < 50) {
      const Complex z(rng.uniform(-2.0 - diam, 2.0 + diam), rng.uniform(-2.0 - diam, 2.0 + diam));
      if (c.distance_to(z) < 0.1 * diam) continue;
      ++found;
      worst = std::max(worst, std::abs(contour_integral(c, Element::ComplexDz, Kernel::CauchySquared, z).value));
    }
  }
  return {worst <= 1e-8, "max |I| = " + fmt("%.3e", worst) + " over 20 polygons x 50 points (<= 1e-8)"};
}

// ------------------------------------------------------------------ 2

Outcome closed_form_oracles() {
  using namespace contours;
  Rng rng(202);
  QuadratureControl quad;
  quad.max_panels = 10000;
  auto rel = [](Complex got, Complex want) { return std::abs(got - want) / std::abs(want); };
  double seg = 0.0, corner = 0.0, circle_in = 0.0, circle_out = 0.0;
  for (int k = 0; k < 50; ++k) {
    const Complex a(rng.uniform(-1, 1), rng.uniform(-1, 1)), b(rng.uniform(-1, 1), rng.uniform(-1, 1));
    const Complex p(rng.uniform(-1, 1), rng.uniform(-1, 1));
    const Complex z = std::polar(rng.uniform(1.6, 4.0), rng.uniform(0.0, 2.0 * kPi));
    const auto qs = contour_integral(Contour({ContourSegment(LineSegment{a, b})}, false), Element::ComplexDz,
                                     Kernel::CauchySquared, z, quad);
    seg = std::max(seg, rel(qs.value, segment_closed_form(a, b, z)));
    const std::vector<Complex> path{a, p, b};
    const auto qc = contour_integral(Contour::polyline(path), Element::Arclength, Kernel::CauchySquared, z, quad);
    corner = std::max(corner, rel(qc.value, corner_closed_form(a, p, b, z).value));
  }
  const auto unit = Contour::circle(0.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const Complex zi = std::polar(rng.uniform(0.0, 0.8), rng.uniform(0.0, 2.0 * kPi));
    const Complex zo = std::polar(rng.uniform(1.2, 4.0), rng.uniform(0.0, 2.0 * kPi));
    // Inside the oracle is zero; the error is measured against the outside scale 2 pi.
    circle_in = std::max(circle_in, std::abs(contour_integral(unit, Element::ComplexDz, Kernel::CauchySquaredOverZeta,
                                                              zi, quad).value) / (2.0 * kPi));
    circle_out = std::max(circle_out, rel(contour_integral(unit, Element::ComplexDz, Kernel::CauchySquaredOverZeta, zo,
                                                           quad).value,
                                          circle_closed_form(zo)));
  }
  const double worst = std::max({seg, corner, circle_in, circle_out});
  return {worst <= 1e-6, "segment " + fmt("%.2e", seg) + ", corner " + fmt("%.2e", corner) + ", circle inside " +
                             fmt("%.2e", circle_in) + ", outside " + fmt("%.2e", circle_out) + " (<= 1e-6)"};
}

// ------------------------------------------------------------------ 3

Outcome ray_star_balancing() {
  using namespace contours;
  std::vector<RayDensity> star;
  std::vector<ContourSegment> rays;
  for (int k = 0; k < 3; ++k) {
    const auto d = std::polar(1.0, 2.0 * kPi * k / 3.0);
    star.push_back({d, 1.0});
    rays.emplace_back(Ray{0.0, d});
  }
  const double closed = std::abs(ray_star_coefficient(star));
  const Contour c(rays, false);
  double quad = 0.0;
  for (Complex z : {Complex(0.6, 0.9), Complex(-2.0, 0.3), Complex(0.1, -1.5)})
    quad = std::max(quad, std::abs(contour_integral(c, Element::WeightedArclength, Kernel::CauchySquared, z).value));

  // Corner -1 -> 0 -> e^{i theta}: least-squares slope of |c1 - c2| against theta.
  double num = 0.0, den = 0.0;
  for (int k = 1; k <= 10; ++k) {
    const double theta = 0.02 * k;
    const double coeff = std::abs(corner_closed_form(-1.0, 0.0, std::polar(1.0, theta), 5.0).corner_coefficient);
    num += theta * coeff;
    den += theta * theta;
  }
  const double slope = num / den;
  const bool ok = closed <= 1e-12 && quad <= 1e-6 && std::abs(slope - 1.0) <= 0.1;
  return {ok, "closed form " + fmt("%.2e", closed) + " (<= 1e-12), quadrature " + fmt("%.2e", quad) +
                  " (<= 1e-6), flattening slope " + fmt("%.4f", slope) + " (1 +- 10%)"};
}

// ------------------------------------------------------------------ 4

Outcome clifford_algebra() {
  using clifford::Multivector;
  Rng rng(404);
  auto random_mv = [&](int n) {
    std::vector<double> c(std::size_t{1} << n);
    for (auto& v : c) v = static_cast<double>(static_cast<int>(rng.index(11)) - 5);
    return Multivector(n, c);
  };
  int bad_anti = 0, bad_assoc = 0;
  for (int t = 0; t < 100000; ++t) {
    const int n = 1 + static_cast<int>(rng.index(5));
    const int j = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(n)));
    const int k = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(n)));
    const auto ej = Multivector::generator(n, j), ek = Multivector::generator(n, k);
    if (!(ej * ek + ek * ej == (j == k ? Multivector::scalar(n, -2.0) : Multivector(n)))) ++bad_anti;
    const auto a = random_mv(n), b = random_mv(n), c = random_mv(n);
    if (!((a * b) * c == a * (b * c))) ++bad_assoc;
  }
  const Multivector unit[4] = {Multivector::scalar(2, 1), Multivector::generator(2, 1), Multivector::generator(2, 2),
                               Multivector::blade(2, clifford::Blade{3})};
  const int table[4][4][2] = {{{1, 0}, {1, 1}, {1, 2}, {1, 3}},
                              {{1, 1}, {-1, 0}, {1, 3}, {-1, 2}},
                              {{1, 2}, {-1, 3}, {-1, 0}, {1, 1}},
                              {{1, 3}, {1, 2}, {-1, 1}, {-1, 0}}};
  int bad_table = 0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (!(unit[r] * unit[c] == static_cast<double>(table[r][c][0]) * unit[table[r][c][1]])) ++bad_table;
  double round_trip = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const int n = 1 + static_cast<int>(rng.index(5));
    clifford::Paravector p{rng.uniform(-3, 3), std::vector<double>(static_cast<std::size_t>(n))};
    for (auto& b : p.betas) b = rng.uniform(-3, 3);
    const auto prod = p.to_multivector() * clifford::paravector_inverse(p).to_multivector();
    round_trip = std::max(round_trip, (prod - Multivector::scalar(n, 1.0)).max_abs());
  }
  const bool ok = bad_anti == 0 && bad_assoc == 0 && bad_table == 0 && round_trip <= 1e-12;
  return {ok, std::to_string(bad_anti) + " anticommutation and " + std::to_string(bad_assoc) +
                  " associativity failures in 1e5 triples, " + std::to_string(bad_table) +
                  " quaternion mismatches, inverse round trip " + fmt("%.2e", round_trip) + " (<= 1e-12)"};
}

// ------------------------------------------------------------------ 5

Outcome finite_difference_orders() {
  using namespace clifford_analysis;
  using clifford::Multivector;
  auto on_lattice = [](std::span<const double> p, double origin, double h) {
    for (double v : p)
      if (std::abs((v - origin) / h - std::round((v - origin) / h)) > 1e-9) return false;
    return true;
  };
  // The Cauchy kernel with its pole off the lattice, residual compared on the coarse nodes.
  const std::vector<double> pole{0.05, -0.03, 0.02};
  auto kernel = [&](std::span<const double> p) { return cauchy_kernel(p, pole); };
  auto cube = [&](double h) {
    const auto count = static_cast<std::size_t>(std::llround(2.0 / h)) + 1;
    return GridFunction::sample({-1.0, -1.0, -1.0}, h, {count, count, count}, kernel);
  };
  auto away = [&](std::span<const double> p) { return distance(p, pole) > 0.5; };
  const double kc = dirac_apply_fd(cube(0.1)).max_norm(away);
  const double kf = dirac_apply_fd(cube(0.05)).max_norm(
      [&](std::span<const double> p) { return away(p) && on_lattice(p, -1.0, 0.1); });
  const double kernel_ratio = kc / kf;

  // A smooth multivector field: D^2 + Laplacian residual.
  auto wave = [](std::span<const double> p) {
    auto m = Multivector::scalar(3, std::sin(p[0]) * std::cos(0.5 * p[1]));
    m[clifford::Blade{1}] = std::exp(0.3 * p[2]);
    m[clifford::Blade{6}] = std::cos(p[0] + p[1] - p[2]);
    return m;
  };
  const double s1 = dirac_square_check(GridFunction::sample({0.1, 0.2, 0.3}, 0.02, {11, 11, 11}, wave));
  const double s2 = dirac_square_check(GridFunction::sample({0.1, 0.2, 0.3}, 0.01, {21, 21, 21}, wave));
  const double square_ratio = s1 / s2;

  // Dirac of a smooth field against its analytic value.
  auto field = [](std::span<const double> p) {
    auto m = Multivector::scalar(3, std::sin(p[0] + 0.5 * p[1]));
    m[clifford::Blade{2}] = std::cos(p[2]) * p[0];
    return m;
  };
  auto exact = [](std::span<const double> p) {
    // D f = sum_j e_j d_j f with f = s + c x1 e2 (s = sin(x1 + x2/2), c = cos x3).
    const double ds0 = std::cos(p[0] + 0.5 * p[1]);
    auto out = Multivector(3);
    out[clifford::Blade{1}] = ds0;
    out[clifford::Blade{2}] = 0.5 * ds0;
    out[clifford::Blade{4}] = 0.0;
    // e1 * (cos x3 e2) + e3 * (-sin x3 x1 e2)
    out += std::cos(p[2]) * (Multivector::generator(3, 1) * Multivector::generator(3, 2));
    out += (-std::sin(p[2]) * p[0]) * (Multivector::generator(3, 3) * Multivector::generator(3, 2));
    return out;
  };
  auto dirac_error = [&](double h, std::size_t count) {
    const auto df = dirac_apply_fd(GridFunction::sample({0.2, -0.1, 0.4}, h, {count, count, count}, field));
    double worst = 0.0;
    for (std::size_t k = 0; k < df.size(); ++k) {
      if (!df.valid(k)) continue;
      const auto p = df.point(k);
      const std::span<const double> c(p);
      if (!on_lattice(c.subspan(0, 1), 0.2, 0.04) || !on_lattice(c.subspan(1, 1), -0.1, 0.04) ||
          !on_lattice(c.subspan(2, 1), 0.4, 0.04))
        continue;
      worst = std::max(worst, (df[k] - exact(p)).norm());
    }
    return worst;
  };
  const double dirac_ratio = dirac_error(0.04, 11) / dirac_error(0.02, 21);

  auto in_band = [](double r) { return r >= 3.5 && r <= 4.5; };
  const bool ok = in_band(kernel_ratio) && in_band(square_ratio) && in_band(dirac_ratio);
  return {ok, "halving ratios: Cauchy kernel " + fmt("%.3f", kernel_ratio) + ", D^2 + Laplacian " +
                  fmt("%.3f", square_ratio) + ", D on a smooth field " + fmt("%.3f", dirac_ratio) + " (in [3.5, 4.5])"};
}

// ------------------------------------------------------------------ 6

Outcome surface_cauchy_integral_checks() {
  using namespace clifford_analysis;
  using clifford::Multivector;
  const auto sphere = fixtures::icosphere(5);
  const std::vector<double> origin{0.0, 0.0, 0.0};
  const double kappa = surface_cauchy_integral(sphere, origin).scalar_part();
  Rng rng(606);
  double spread = 0.0, exterior = 0.0, derivative = 0.0;
  const double guard = sphere.guard();
  for (int k = 0; k < 16; ++k) {
    const auto u = rng.unit_vector(3);
    const double ri = rng.uniform(0.0, 1.0 - 2.0 * guard), ro = rng.uniform(1.0 + 2.0 * guard, 4.0);
    std::vector<double> in(3), out(3);
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
  const bool ok = sphere.facets().size() >= 20000 && spread <= 0.01 && exterior <= 0.01 && derivative <= 0.01;
  return {ok, std::to_string(sphere.facets().size()) + " facets, kappa/4pi " + fmt("%.5f", kappa / (4.0 * kPi)) +
                  ", interior spread " + fmt("%.2e", spread) + ", exterior " + fmt("%.2e", exterior) +
                  ", derivative / flat-patch scale " + fmt("%.2e", derivative) + " (each <= 1%)"};
}

// ------------------------------------------------------------------ 7

Outcome symmetry_and_density() {
  using namespace geometry;
  auto measure = [](const fixtures::PointCloud& pc) { return DiscreteMeasure(pc.dim, pc.points, pc.weights); };
  const double h = 1e-3, hs = 0.01;
  const auto line = measure(fixtures::segment_grid(1.0, h));
  const auto square = measure(fixtures::square_grid(1.0, hs));
  Rng rng(707);
  double line_worst = 0.0, square_worst = 0.0;
  for (int k = 0; k < 40; ++k) {
    const double r = std::exp(rng.uniform(std::log(0.02), std::log(0.3)));
    // Centres in the support with the ball inside the fixture.
    const auto li = line.nearest(Point{rng.uniform(r, 1.0 - r), 0.0}).first;
    const auto si = square.nearest(Point{rng.uniform(r, 1.0 - r), rng.uniform(r, 1.0 - r)}).first;
    line_worst = std::max(line_worst, *symmetry_defect(line, line.point(li), r).normalized * r / h);
    square_worst = std::max(square_worst, *symmetry_defect(square, square.point(si), r).normalized * r / hs);
  }
  const auto cantor = fixtures::cantor_set(14, 1);
  const auto cmu = measure(cantor.cloud);
  const double at_dim = ahlfors_constants(cmu, cantor.dimension(), 256, {0.0, INFINITY}).spread();
  const double at_one = ahlfors_constants(cmu, 1.0, 256, {0.0, INFINITY}).spread();
  const bool ok = line_worst <= 2.0 && square_worst <= 2.0 && at_dim <= 10.0 && at_one > 100.0;
  return {ok, "defect / (spacing/r): line " + fmt("%.3f", line_worst) + ", square " + fmt("%.3f", square_worst) +
                  " (<= 2); Cantor band " + fmt("%.2f", at_dim) + " at n = log2/log3 (<= 10), " + fmt("%.1f", at_one) +
                  " at n = 1 (> 100)"};
}

// ------------------------------------------------------------------ 8

Outcome potential_identities() {
  using namespace potentials;
  auto from = [](const fixtures::PointCloud& pc, double n) {
    return RegularSet(DiscreteMeasure(pc.dim, pc.points, pc.weights), n);
  };
  std::vector<std::pair<std::string, RegularSet>> sets;
  sets.emplace_back("line", from(fixtures::segment_grid(1.0, 1e-3), 1.0));
  sets.emplace_back("grid", from(fixtures::square_grid(1.0, 1.0 / 64), 2.0));
  sets.emplace_back("disc", from(fixtures::disc_grid(1.0, 1.0 / 64), 2.0));
  sets.emplace_back("lipschitz", from(fixtures::lipschitz_graph(0.5, 1.0 / 48, 0.5), 2.0));
  sets.emplace_back("cantor", cantor_snowflake(6, 2, 0.5));
  sets.emplace_back("koch", koch_snowflake(6));
  Rng rng(808);
  double split = 0.0, jr = 0.0;
  for (const auto& [name, E] : sets) {
    const auto& mu = E.measure();
    SampleFunction f{std::vector<double>(E.size())};
    for (auto& v : f.values) v = rng.normal();
    for (int k = 0; k < 20; ++k) {
      const auto a = mu.point(rng.index(E.size())), b = mu.point(rng.index(E.size()));
      const Point x(a.begin(), a.end()), y(b.begin(), b.end());
      const double r = mu.diameter() * rng.uniform(0.01, 0.5);
      const auto lj = split_LJ(E, f, x, r);
      const double p = potential_P(E, f, x);
      split = std::max(split, std::abs(lj.local + lj.distant - p) / std::abs(p));
      const double want = lj.distant - split_LJ(E, f, y, r).distant;
      jr = std::max(jr, std::abs(jr_difference(E, f, x, y, r) - want) / std::abs(want));
    }
  }
  // Odd kernel: T_r(1) at the centre of the grid, disc and line.
  double odd = 0.0;
  const std::vector<std::pair<std::size_t, Point>> centres{{0, {0.5, 0.0}}, {1, {0.5, 0.5}}, {2, {0.0, 0.0}}};
  for (const auto& [idx, c] : centres) {
    const auto& E = sets[idx].second;
    const SampleFunction one{std::vector<double>(E.size(), 1.0)};
    const double scale = std::hypot(truncated_riesz_Tr(E, one, E.measure().point(0), 0.05)[0],
                                    truncated_riesz_Tr(E, one, E.measure().point(0), 0.05)[1]);
    for (double r : {0.0123, 0.0537, 0.1071, 0.3019}) {
      const auto t = truncated_riesz_Tr(E, one, c, r);
      odd = std::max(odd, std::hypot(t[0], t[1]) / scale);
    }
  }
  const bool ok = split <= 1e-12 && jr <= 1e-12 && odd <= 1e-12;
  return {ok, "L + J vs P " + fmt("%.2e", split) + ", jr_difference " + fmt("%.2e", jr) +
                  " (<= 1e-12 relative, 6 fixtures); T_r(1) at centres of symmetry " + fmt("%.2e", odd) +
                  " (<= 1e-12 of an off-centre value)"};
}

// ------------------------------------------------------------------ 9

Outcome taylor_calibration() {
  using namespace potentials;
  std::vector<double> radii;
  for (int k = -6; k <= 0; ++k) radii.push_back(std::ldexp(1.0, k));
  const auto pc = fixtures::disc_grid(4.0, 1.0 / 128);
  const RegularSet disc(DiscreteMeasure(pc.dim, pc.points, pc.weights), 2.0);
  const auto cal = calibrate_taylor(disc, radii, 64, 42);
  const auto cantor = cantor_snowflake(6, 2, 0.5);
  const auto snow = calibrate_snowflake_taylor(cantor, radii, 4096, 42);
  auto finite = [](const Calibration& c) {
    return std::all_of(c.constants.begin(), c.constants.end(), [](double v) { return std::isfinite(v) && v > 0.0; });
  };
  const bool ok = finite(cal) && cal.stability() < 2.0 && finite(snow) && snow.stability() < 2.0;
  auto list = [](const Calibration& c) {
    std::string s;
    for (double v : c.constants) s += (s.empty() ? "" : " ") + fmt("%.3f", v);
    return s;
  };
  return {ok, "disc max/min C " + fmt("%.3f", cal.stability()) + " [" + list(cal) + "], Cantor snowflake " +
                  fmt("%.3f", snow.stability()) + " [" + list(snow) + "] (< 2)"};
}

// ------------------------------------------------------------------ 10

Outcome power_and_kernel_bounds() {
  using namespace potentials;
  Rng rng(1010);
  std::size_t violations = 0;
  for (int k = 0; k < 1000000; ++k) {
    const double a = std::exp(rng.uniform(-6.0, 6.0)), b = std::exp(rng.uniform(-6.0, 6.0));
    const double s = 5.0 * (1.0 - rng.uniform());
    const auto r = power_difference_bound(a, b, s);
    if (!(r.lhs <= r.rhs * (1.0 + 1e-12))) ++violations;
  }
  double worst = 0.0;
  std::string detail;
  for (double alpha : {0.3, 0.5, 0.8}) {
    const auto E = cantor_snowflake(5, 2, alpha);
    const double s = alpha * (E.n_dim() - 1.0);
    const auto kc = calibrate_kernel_difference(E, 100000, 11);
    worst = std::max(worst, kc.max_ratio / s);
    detail += " alpha " + fmt("%.1f", alpha) + ": C/(alpha(n-1)) " + fmt("%.3f", kc.max_ratio / s) + ";";
  }
  const auto K = koch_snowflake(5);
  const auto kk = calibrate_kernel_difference(K, 100000, 11);
  const double ks = K.snowflake().alpha * (K.n_dim() - 1.0);
  worst = std::max(worst, kk.max_ratio / ks);
  detail += " Koch " + fmt("%.3f", kk.max_ratio / ks);
  const bool ok = violations == 0 && worst <= 1.01;
  return {ok, std::to_string(violations) + " violations in 1e6 (a, b, s);" + detail + " (<= 1.01)"};
}

// ------------------------------------------------------------------ 11

Outcome plane_tests() {
  using namespace planes;
  Rng rng(1111);
  double coef = 0.0;
  bool lagrangian = true, special = true;
  for (int k = 0; k < 100; ++k) {
    const std::size_t m = 1 + static_cast<std::size_t>(k) % 5;
    const auto L = transform(random_unitary(m, rng), standard_plane(m));
    coef = std::max(coef, std::abs(totally_real_coefficient(L) - 1.0));
    lagrangian = lagrangian && is_lagrangian(L);
    special = special && is_special_lagrangian(transform(random_special_unitary(m, rng), standard_plane(m)));
  }
  bool rejected = true;
  for (int k = 0; k < 20; ++k) {
    const std::size_t m = 2 + rng.index(4);
    CMatrix b(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      for (Eigen::Index i = 0; i < b.rows(); ++i) {
        const double re = rng.normal();
        b(i, j) = Complex(re, rng.normal());
      }
    b.col(1) = Complex(0.0, 1.0) * b.col(0);
    rejected = rejected && !is_totally_real(PlaneBasis(b));
  }
  CMatrix di(2, 2);
  di << Complex(0.0, 1.0), 0.0, 0.0, 1.0;
  const auto counter = special_lagrangian_test(transform(di, standard_plane(2)));
  const bool ok = coef <= 1e-10 && lagrangian && special && rejected && counter.lagrangian && !counter.special;
  return {ok, "max |coefficient - 1| " + fmt("%.2e", coef) + " (<= 1e-10), Lagrangian " + (lagrangian ? "yes" : "no") +
                  ", {v, iv} rejected " + (rejected ? "yes" : "no") + ", SU(m) special " + (special ? "yes" : "no") +
                  ", diag(i,1) special " + (counter.special ? "yes" : "no")};
}

// ------------------------------------------------------------------ 12

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "cauchylab-acceptance";
  fs::create_directories(dir);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  std::string detail;
  bool ok = true;
  for (const auto& command : suites::commands()) {
    std::string reports[2], files[2];
    for (int pass = 0; pass < 2; ++pass) {
      // Different worker caps on the two passes.
      setenv("CAUCHYLAB_THREADS", pass == 0 ? "1" : "3", 1);
      suites::RunConfig cfg;
      cfg.command = command;
      cfg.seed = 12;
      if (command == "fixture-gen") {
        cfg.fixture = "koch";
        cfg.output = (dir / ("koch" + std::to_string(pass) + ".csv")).string();
      }
      reports[pass] = report::emit(suites::run_suite(cfg));
      if (cfg.output) files[pass] = slurp(*cfg.output);
    }
    const bool same = reports[0] == reports[1] && files[0] == files[1];
    ok = ok && same;
    detail += command + (same ? " identical; " : " DIFFERS; ");
  }
  unsetenv("CAUCHYLAB_THREADS");
  fs::remove_all(dir);
  return {ok, detail};
}

struct Criterion {
  int id;
  std::string name;
  double budget_s;  // 0 when no time limit is stated
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "closed-curve vanishing", 5, closed_curve_vanishing},
      {2, "segment, corner and circle oracles", 10, closed_form_oracles},
      {3, "ray-star balancing", 0, ray_star_balancing},
      {4, "Clifford algebra", 5, clifford_algebra},
      {5, "Clifford analyticity and D^2 = -Laplacian", 30, finite_difference_orders},
      {6, "surface Cauchy integral", 60, surface_cauchy_integral_checks},
      {7, "symmetry and density diagnostics", 20, symmetry_and_density},
      {8, "potential identities", 10, potential_identities},
      {9, "Taylor-remainder calibration", 120, taylor_calibration},
      {10, "power and kernel-difference bounds", 10, power_and_kernel_bounds},
      {11, "Lagrangian and special Lagrangian planes", 5, plane_tests},
      {12, "determinism", 0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out{false, ""};
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.budget_s == 0 || secs < c.budget_s;
    const bool pass = out.pass && in_time;
    if (!pass) ++failures;
    std::string timing = fmt("%.2f s", secs);
    if (c.budget_s > 0) timing += fmt(" of %.0f s", c.budget_s);
    std::printf("%s %2d %s: %s [%s]\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(), out.detail.c_str(),
                timing.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
