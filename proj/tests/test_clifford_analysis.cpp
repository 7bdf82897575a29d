#include <cmath>
#include <numbers>

#include "cauchylab/clifford_analysis.hpp"
#include "cauchylab/error.hpp"
#include "cauchylab/fixtures.hpp"
#include "cauchylab/numeric.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cauchylab;
using namespace cauchylab::clifford_analysis;
using clifford::Blade;

namespace {

constexpr double kPi = std::numbers::pi;

double radius(std::span<const double> p) { return norm(p); }

GridFunction cube(int n, double half, double h, const std::function<Multivector(std::span<const double>)>& f) {
  const auto count = static_cast<std::size_t>(std::llround(2.0 * half / h)) + 1;
  return GridFunction::sample(std::vector<double>(n, -half), h, std::vector<std::size_t>(n, count), f);
}

// True when p is a node of the lattice with spacing h anchored at -half.
bool on_lattice(std::span<const double> p, double half, double h) {
  for (double v : p) {
    const double k = (v + half) / h;
    if (std::abs(k - std::round(k)) > 1e-9) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("Cauchy kernel worked values") {
  const std::vector<double> x2{1.0, 0.0}, o2{0.0, 0.0};
  CHECK(cauchy_kernel(x2, o2) == Multivector::generator(2, 1));
  const std::vector<double> x3{0.0, 2.0, 0.0}, o3{0.0, 0.0, 0.0};
  CHECK(cauchy_kernel(x3, o3) == Multivector::generator(3, 2, 0.25));
  CHECK_THROWS_AS(cauchy_kernel(x3, x3), SingularError);
  CHECK_THROWS_AS(cauchy_kernel(x3, x2), DimensionError);
}

TEST_CASE("Cauchy kernel is odd, grade 1, with modulus |v|^(1-n)") {
  Rng rng(11);
  for (int n = 2; n <= 6; ++n) {
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> v(n), minus(n), zero(n, 0.0);
      for (int j = 0; j < n; ++j) {
        v[j] = rng.uniform(-2.0, 2.0);
        minus[j] = -v[j];
      }
      const auto k = cauchy_kernel(v, zero);
      CHECK(k.is_grade(1, 0.0));
      CHECK((k + cauchy_kernel(minus, zero)).max_abs() == 0.0);
      CHECK(k.norm() == rel(std::pow(norm(v), 1 - n), 1e-13));
    }
  }
}

TEST_CASE("analytic kernel derivative agrees with a difference quotient") {
  Rng rng(5);
  for (int n = 2; n <= 5; ++n) {
    std::vector<double> x(n), y(n, 0.0);
    for (auto& v : x) v = rng.uniform(0.3, 1.0);
    for (int axis = 0; axis < n; ++axis) {
      const double h = 1e-5;
      auto xp = x, xm = x;
      xp[axis] += h;
      xm[axis] -= h;
      auto fd = cauchy_kernel(xp, y) - cauchy_kernel(xm, y);
      fd *= 0.5 / h;
      const auto exact = cauchy_kernel_derivative(x, y, axis);
      CHECK((fd - exact).max_abs() <= 1e-7 * exact.max_abs());
    }
    CHECK_THROWS_AS(cauchy_kernel_derivative(x, y, n), DimensionError);
  }
}

TEST_CASE("Dirac operator is exact on linear and quadratic fields") {
  const auto linear = cube(3, 1.0, 0.25, [](std::span<const double> p) { return Multivector::scalar(3, p[0]); });
  const auto d_linear = dirac_apply_fd(linear);
  CHECK(d_linear.margin() == 1);
  const auto square = cube(3, 1.0, 0.25, [](std::span<const double> p) {
    return Multivector::scalar(3, p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
  });
  const auto d_square = dirac_apply_fd(square);
  for (std::size_t k = 0; k < d_linear.size(); ++k) {
    if (!d_linear.valid(k)) {
      CHECK(d_linear[k].max_abs() == 0.0);
      continue;
    }
    CHECK((d_linear[k] - Multivector::generator(3, 1)).max_abs() <= 1e-12);
    auto p = d_square.point(k);
    for (auto& v : p) v *= 2.0;
    CHECK((d_square[k] - Multivector::vector(p)).max_abs() <= 1e-12);
  }
}

TEST_CASE("Dirac operator annihilates the Cauchy kernel to second order") {
  const std::vector<double> pole{0.05, -0.03, 0.02};
  const double half = 1.0;
  auto kernel = [&](std::span<const double> p) { return cauchy_kernel(p, pole); };
  auto away = [&](std::span<const double> p) { return distance(p, pole) > 0.5; };
  const double h = 0.1;
  const auto coarse = dirac_apply_fd(cube(3, half, h, kernel));
  const auto fine = dirac_apply_fd(cube(3, half, h / 2, kernel));
  const double rc = coarse.max_norm(away);
  const double rf = fine.max_norm([&](std::span<const double> p) { return away(p) && on_lattice(p, half, h); });
  CHECK(rc > 0.0);
  CHECK(rc / rf >= 3.5);
  CHECK(rc / rf <= 4.5);
}

TEST_CASE("Dirac of |x|^(2-n) is (2-n) times the Cauchy kernel") {
  for (int n : {3, 4}) {
    const double h = n == 3 ? 0.05 : 0.1;
    const double half = 1.0;
    const auto f = cube(n, half, h, [n](std::span<const double> p) {
      return Multivector::scalar(n, std::pow(radius(p), 2 - n));
    });
    // The lattice contains the origin, where f is infinite; stay clear of it.
    const auto df = dirac_apply_fd(f);
    const std::vector<double> zero(n, 0.0);
    double worst = 0.0;
    for (std::size_t k = 0; k < df.size(); ++k) {
      const auto p = df.point(k);
      if (!df.valid(k) || radius(p) < 0.5) continue;
      const auto expected = static_cast<double>(2 - n) * cauchy_kernel(p, zero);
      worst = std::max(worst, (df[k] - expected).norm() / expected.norm());
    }
    CHECK(worst < 10.0 * h * h);
  }
}

TEST_CASE("D squared equals minus the Laplacian") {
  Rng rng(21);
  for (int n = 2; n <= 4; ++n) {
    // Random quadratic with multivector coefficients.
    const std::size_t blades = std::size_t{1} << n;
    std::vector<Multivector> coeff;
    for (int k = 0; k < 1 + n + n * n; ++k) {
      std::vector<double> c(blades);
      for (auto& v : c) v = rng.uniform(-1.0, 1.0);
      coeff.emplace_back(n, c);
    }
    const auto f = cube(n, 1.0, 0.25, [&](std::span<const double> p) {
      Multivector out = coeff[0];
      for (int j = 0; j < n; ++j) out += p[j] * coeff[1 + j];
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) out += (p[j] * p[k]) * coeff[1 + n + j * n + k];
      return out;
    });
    CHECK(dirac_square_check(f) <= 1e-10);
  }
  auto sine = [](std::span<const double> p) { return Multivector::scalar(2, std::sin(p[0])); };
  const double at_h = dirac_square_check(
      GridFunction::sample({0.3, 0.3}, 0.01, {21, 21}, sine));
  CHECK(at_h <= 1e-3);
  CHECK(at_h > 0.0);
  const double at_half = dirac_square_check(GridFunction::sample({0.3, 0.3}, 0.005, {41, 41}, sine));
  CHECK(at_h / at_half == rel(4.0, 0.05));
}

TEST_CASE("grid size and spacing guards") {
  auto one = [](std::span<const double>) { return Multivector::scalar(2, 1.0); };
  CHECK_THROWS_AS(dirac_apply_fd(GridFunction::sample({0, 0}, 0.1, {2, 5}, one)), DimensionError);
  CHECK_THROWS_AS(dirac_square_check(GridFunction::sample({0, 0}, 0.1, {4, 5}, one)), DimensionError);
  CHECK_NOTHROW(dirac_square_check(GridFunction::sample({0, 0}, 0.1, {5, 5}, one)));
  CHECK_THROWS_AS(GridFunction({0.0}, 0.0, {3}), DomainError);
  CHECK_THROWS_AS(GridFunction({0.0}, 0.1, {0}), DomainError);
  CHECK_THROWS_AS(GridFunction({0.0, 0.0}, 0.1, {3}), DimensionError);
}

TEST_CASE("sphere Cauchy integral is locally constant and vanishes outside") {
  const auto sphere = fixtures::icosphere(4);
  CHECK(sphere.facets().size() == 5120);
  const std::vector<double> centre{0.0, 0.0, 0.0};
  const auto inside = surface_cauchy_integral(sphere, centre);
  const double kappa = inside.scalar_part();
  CHECK(kappa == rel(4.0 * kPi, 0.01));
  CHECK((inside - Multivector::scalar(3, kappa)).max_abs() <= 1e-10 * kappa);
  const std::vector<double> off{0.3, -0.2, 0.1};
  const auto moved = surface_cauchy_integral(sphere, off);
  CHECK((moved - inside).norm() <= 0.01 * kappa);
  const std::vector<double> outside{3.0, 0.0, 0.0};
  CHECK(surface_cauchy_integral(sphere, outside).norm() <= 0.01 * kappa);
}

TEST_CASE("inside constant converges under refinement") {
  const std::vector<double> x{0.3, -0.2, 0.1};
  std::vector<double> kappa;
  for (int level = 3; level <= 5; ++level) kappa.push_back(surface_cauchy_integral(fixtures::icosphere(level), x).scalar_part());
  const double d1 = std::abs(kappa[1] - kappa[0]);
  const double d2 = std::abs(kappa[2] - kappa[1]);
  CHECK(d2 < 2.0 * d1);
  CHECK(d2 < d1);

  const std::vector<double> centre2{0.1, 0.2};
  const auto circle = fixtures::polygon_circle(4096);
  CHECK(surface_cauchy_integral(circle, centre2).scalar_part() == rel(2.0 * kPi, 1e-4));
  const std::vector<double> far2{2.0, 1.0};
  CHECK(surface_cauchy_integral(circle, far2).norm() <= 1e-4);
}

TEST_CASE("differentiated N dy integral vanishes on a closed sphere") {
  const auto sphere = fixtures::icosphere(4);
  for (const auto& x : {std::vector<double>{0.2, 0.1, -0.3}, std::vector<double>{2.0, -1.0, 0.5}}) {
    for (int axis = 0; axis < 3; ++axis) {
      const auto value = surface_derivative_integral(sphere, x, axis, SurfaceElement::NormalDy);
      const double scale = surface_derivative_magnitude(sphere, x, axis, SurfaceElement::NormalDy);
      CHECK(value.norm() <= 0.01 * scale);
    }
  }
  CHECK_THROWS_AS(surface_derivative_integral(sphere, std::vector<double>{0, 0, 0}, 3, SurfaceElement::NormalDy),
                  DimensionError);
}

TEST_CASE("flat patch: weighted dalpha integral decays with truncation") {
  const std::vector<double> x{0.0, 0.0, 0.5};
  for (int axis : {0, 2}) {
    double previous = std::numeric_limits<double>::infinity();
    for (double half : {2.0, 4.0, 8.0}) {
      const auto patch = fixtures::plane_patch(half, static_cast<std::size_t>(half * 40));
      const auto value = surface_derivative_integral(patch, x, axis, SurfaceElement::WeightedDalpha);
      const double scale = surface_derivative_magnitude(patch, x, axis, SurfaceElement::WeightedDalpha);
      const double rel = value.norm() / scale;
      CHECK(rel < 0.6 * previous);
      previous = rel;
    }
    CHECK(previous < 0.05);
  }
}

TEST_CASE("hemisphere derivative integral is nonzero and decays like dist^-3") {
  const auto cap = fixtures::hemisphere(3);
  CHECK_FALSE(cap.closed());
  std::vector<double> logs, logd;
  for (double d : {8.0, 16.0, 32.0}) {
    const std::vector<double> x{0.0, 0.0, d};
    const double v = surface_derivative_integral(cap, x, 2, SurfaceElement::NormalDy).norm();
    CHECK(v > 0.0);
    logs.push_back(std::log(v));
    logd.push_back(std::log(d));
  }
  CHECK(fit_slope(logd, logs) == rel(-3.0, 0.05));
}

TEST_CASE("derivative integral is linear in the density") {
  const auto cap = fixtures::hemisphere(2);
  const std::vector<double> x{0.1, 0.4, 2.0};
  const auto base = surface_derivative_integral(cap, x, 1, SurfaceElement::WeightedDalpha);
  const auto doubled = surface_derivative_integral(cap.reweighted(2.0), x, 1, SurfaceElement::WeightedDalpha);
  CHECK((doubled - 2.0 * base).max_abs() <= 1e-13 * base.max_abs());
  // The N dy element ignores densities.
  const auto ndy = surface_derivative_integral(cap, x, 1, SurfaceElement::NormalDy);
  CHECK(surface_derivative_integral(cap.reweighted(3.0), x, 1, SurfaceElement::NormalDy) == ndy);
}

TEST_CASE("surface validation and proximity guard") {
  const auto sphere = fixtures::icosphere(2);
  const std::vector<double> near{0.0, 0.0, 0.99};
  CHECK_THROWS_AS(surface_cauchy_integral(sphere, near), ProximityError);
  CHECK_THROWS_AS(surface_cauchy_integral(sphere, std::vector<double>{0.0, 0.0}), DimensionError);
  CHECK_THROWS_AS(DiscreteSurface(3, {{{0, 0, 0}, {0, 0, 2}, 1.0}}, false), DomainError);
  CHECK_THROWS_AS(DiscreteSurface(3, {{{0, 0, 0}, {0, 0, 1}, 0.0}}, false), DomainError);
  CHECK_THROWS_AS(DiscreteSurface(3, {{{0, 0, 0}, {0, 0, 1}, 1.0, -1.0}}, false), DomainError);
  // A single facet cannot close up.
  CHECK_THROWS_AS(DiscreteSurface(3, {{{0, 0, 0}, {0, 0, 1}, 1.0}}, true), DomainError);
  const auto va = sphere.vector_area();
  CHECK(norm(va) <= 1e-12);
  CHECK(sphere.total_area() == rel(4.0 * kPi, 0.02));
}
