#include <cmath>
#include <numbers>

#include "cauchylab/error.hpp"
#include "cauchylab/fixtures.hpp"
#include "cauchylab/geometry_measures.hpp"
#include "cauchylab/numeric.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cauchylab;
using namespace cauchylab::geometry;

namespace {

DiscreteMeasure from(const fixtures::PointCloud& pc) { return DiscreteMeasure(pc.dim, pc.points, pc.weights); }

DiscreteMeasure random_cloud(std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Point> pts;
  std::vector<double> w;
  for (std::size_t i = 0; i < count; ++i) {
    pts.push_back({rng.uniform(), rng.uniform()});
    w.push_back(rng.uniform(0.5, 1.5));
  }
  return DiscreteMeasure(2, pts, w);
}

}  // namespace

TEST_CASE("duplicates are merged in input order") {
  const DiscreteMeasure mu(2, {{1.0, 1.0}, {0.0, 0.0}, {1.0, 1.0 + 1e-13}, {0.0, 0.0}, {2.0, 0.0}},
                           {1.0, 2.0, 3.0, 4.0, 5.0});
  REQUIRE(mu.size() == 3);
  CHECK(mu.merged() == 2);
  CHECK(mu.point(0)[0] == 1.0);
  CHECK(mu.weight(0) == 4.0);
  CHECK(mu.point(1)[0] == 0.0);
  CHECK(mu.weight(1) == 6.0);
  CHECK(mu.weight(2) == 5.0);
  CHECK(mu.total_mass() == 15.0);

  // The earliest row wins even when it sorts after its twin.
  const DiscreteMeasure twin(1, {{1e-13}, {0.0}}, {1.0, 1.0});
  REQUIRE(twin.size() == 1);
  CHECK(twin.point(0)[0] == 1e-13);
  CHECK(twin.weight(0) == 2.0);
}

TEST_CASE("measure validation") {
  CHECK_THROWS_AS(DiscreteMeasure(2, {{0.0, std::nan("")}}), DomainError);
  CHECK_THROWS_AS(DiscreteMeasure(2, {{0.0, 1.0}}, {0.0}), DomainError);
  CHECK_THROWS_AS(DiscreteMeasure(2, {{0.0, 1.0}}, {-1.0}), DomainError);
  CHECK_THROWS_AS(DiscreteMeasure(2, {{0.0}}), DimensionError);
  CHECK_THROWS_AS(DiscreteMeasure(2, {{0.0, 1.0}}, {1.0, 2.0}), DimensionError);
  CHECK_THROWS_AS(DiscreteMeasure(2, {}), DomainError);
  const DiscreteMeasure unit(1, {{0.0}, {1.0}});
  CHECK(unit.weight(1) == 1.0);
}

TEST_CASE("grid index agrees with brute force") {
  const auto mu = random_cloud(800, 3);
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const Point x{rng.uniform(-0.2, 1.2), rng.uniform(-0.2, 1.2)};
    const double r = std::pow(10.0, rng.uniform(-2.5, 0.3));
    for (bool closed : {false, true}) {
      std::vector<std::size_t> brute;
      for (std::size_t i = 0; i < mu.size(); ++i) {
        const double d = distance(x, mu.point(i));
        if (closed ? d <= r : d < r) brute.push_back(i);
      }
      CHECK(mu.ball(x, r, closed) == brute);
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < mu.size(); ++i)
      if (distance(x, mu.point(i)) < distance(x, mu.point(best))) best = i;
    CHECK(mu.nearest(x).first == best);
  }
  CHECK(mu.support_radius() == doctest::Approx(2.0 * mu.median_spacing()));
  CHECK(mu.min_spacing() <= mu.median_spacing());
}

TEST_CASE("symmetry defect worked examples") {
  const DiscreteMeasure single(2, {{0.5, 0.5}});
  const Point a{0.5, 0.5};
  const auto d0 = symmetry_defect(single, a, 3.0);
  CHECK(d0.moment == Point{0.0, 0.0});
  CHECK(*d0.normalized == 0.0);

  const DiscreteMeasure pair(2, {{0.0, 0.0}, {1.0, 0.0}}, {1.0, 0.75});
  const auto d1 = symmetry_defect(pair, Point{0.0, 0.0}, 2.0);
  CHECK(d1.moment[0] == 0.75);
  CHECK(d1.moment[1] == 0.0);
  CHECK(d1.mass == 1.75);
  // Open ball: the atom at distance exactly r is left out.
  CHECK(symmetry_defect(pair, Point{0.0, 0.0}, 1.0).moment[0] == 0.0);

  CHECK_THROWS_AS(symmetry_defect(pair, Point{0.5, 3.0}, 1.0), SupportError);
  CHECK_THROWS_AS(symmetry_defect(pair, Point{0.0, 0.0}, 0.0), DomainError);
}

TEST_CASE("line and square fixtures are nearly symmetric") {
  const double h = 1e-3;
  const auto line = from(fixtures::segment_grid(1.0, h));
  const auto square = from(fixtures::square_grid(1.0, 0.01));
  for (double r : {0.02, 0.05, 0.1, 0.3}) {
    for (double shift : {0.0, 0.3, 0.5}) {
      const Point a{0.5 + shift * h, 0.0};
      CHECK(*symmetry_defect(line, a, r).normalized <= 2.0 * h / r);
      const Point b{0.5 + shift * 0.01, 0.5 - shift * 0.01};
      CHECK(*symmetry_defect(square, b, r).normalized <= 2.0 * 0.01 / r);
    }
  }
}

TEST_CASE("symmetry profile of a circle has exponent one") {
  const auto circle = from(fixtures::circle_atoms(1.0, 40000));
  std::vector<Point> centers;
  for (std::size_t k = 0; k < 8; ++k) centers.push_back({circle.point(k * 4999)[0], circle.point(k * 4999)[1]});
  const auto profile = symmetry_profile(circle, centers, log_space(0.01, 0.2, 6));
  CHECK(profile.rows.size() == 48);
  CHECK(profile.alpha_hat == rel(1.0, 0.05));
  // Leading behaviour of the normalized defect is r / (6 R).
  for (const auto& row : profile.rows) CHECK(row.normalized == rel(row.radius / 6.0, 0.05));

  const auto cloud = random_cloud(500, 9);
  double mean = 0.0;
  std::vector<Point> cs;
  for (std::size_t i = 0; i < cloud.size(); i += 50) cs.push_back({cloud.point(i)[0], cloud.point(i)[1]});
  const auto rough = symmetry_profile(cloud, cs, {0.1, 0.15, 0.2});
  for (const auto& row : rough.rows) mean += row.normalized;
  mean /= static_cast<double>(rough.rows.size());
  CHECK(mean > 0.05);
  CHECK_THROWS_AS(symmetry_profile(cloud, cs, {0.1, 0.2}), DomainError);
}

TEST_CASE("symmetry defect is equivariant under rigid motions") {
  const auto mu = random_cloud(300, 17);
  const double c = std::cos(0.7), s = std::sin(0.7);
  const Point shift{3.0, -1.0};
  std::vector<Point> moved;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const auto p = mu.point(i);
    moved.push_back({c * p[0] - s * p[1] + shift[0], s * p[0] + c * p[1] + shift[1]});
  }
  const DiscreteMeasure nu(2, moved, mu.weights());
  for (std::size_t i = 0; i < mu.size(); i += 37) {
    const auto d = symmetry_defect(mu, mu.point(i), 0.2);
    const auto e = symmetry_defect(nu, moved[i], 0.2);
    CHECK(e.moment[0] == rel(c * d.moment[0] - s * d.moment[1], 1e-9));
    CHECK(e.moment[1] == rel(s * d.moment[0] + c * d.moment[1], 1e-9));
  }
}

TEST_CASE("density ratios on lattice fixtures") {
  const double h = 1e-3;
  const auto line = from(fixtures::segment_grid(1.0, h));
  for (double r : {0.01, 0.03, 0.1}) {
    CHECK(std::abs(density_ratio(line, Point{0.5, 0.0}, r, 1.0) - 2.0) <= 2.0 * 2.0 * h / r);
    CHECK(std::abs(density_ratio(line, Point{0.0, 0.0}, r, 1.0) - 1.0) <= 2.0 * h / r);
  }
  const auto square = from(fixtures::square_grid(1.0, 0.005));
  CHECK(density_ratio(square, Point{0.5, 0.5}, 0.2, 2.0) == rel(std::numbers::pi, 0.02));
  CHECK_THROWS_AS(density_ratio(line, Point{0.5, 0.5}, 0.1, 1.0), SupportError);
}

TEST_CASE("Menger curvature") {
  const Point p{2.0, 0.0}, q{0.0, 2.0}, r{-std::sqrt(2.0), -std::sqrt(2.0)};
  CHECK(menger_curvature(p, q, r) == rel(0.5, 1e-12));
  CHECK(menger_curvature(Point{0, 0}, Point{1, 0}, Point{2, 0}) == 0.0);
  CHECK(menger_curvature(Point{0, 0}, Point{1, 0}, Point{0, 1}) == rel(std::sqrt(2.0), 1e-14));
  CHECK_THROWS_AS(menger_curvature(p, p, q), DegenerateError);

  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    Point x(3), y(3), z(3);
    for (int a = 0; a < 3; ++a) {
      x[a] = rng.uniform(-1, 1);
      y[a] = rng.uniform(-1, 1);
      z[a] = rng.uniform(-1, 1);
    }
    const double c = menger_curvature(x, y, z);
    CHECK(menger_curvature(y, z, x) == rel(c, 1e-12));
    CHECK(menger_curvature(z, y, x) == rel(c, 1e-12));
    const double lam = rng.uniform(0.1, 10.0);
    Point xs = x, ys = y, zs = z;
    for (int a = 0; a < 3; ++a) {
      xs[a] = lam * x[a] + 1.0;
      ys[a] = lam * y[a] + 1.0;
      zs[a] = lam * z[a] + 1.0;
    }
    CHECK(menger_curvature(xs, ys, zs) == rel(c / lam, 1e-9));
  }
}

TEST_CASE("Ahlfors band on a segment") {
  const double h = 1e-3;
  const auto line = from(fixtures::segment_grid(1.0, h));
  const auto band = ahlfors_constants(line, 1.0, 101, {0.0, 10.0});
  CHECK(band.t_lo == doctest::Approx(10.0 * h));
  CHECK(band.t_hi == doctest::Approx(1.0));
  CHECK(band.c_low == rel(1.0, 0.05));
  CHECK(band.c_high == rel(2.0, 0.12));
  CHECK(band.constant() == doctest::Approx(band.c_high));
  CHECK_THROWS_AS(ahlfors_constants(line, 1.0, 10, {2.0, 3.0}), DomainError);
  CHECK_THROWS_AS(ahlfors_constants(line, 1.0, 0, {0.1, 0.2}), DomainError);
}

TEST_CASE("Ahlfors band on the Cantor set") {
  const double dim = std::log(2.0) / std::log(3.0);
  const std::pair<double, double> window{std::pow(3.0, -7), 1.0};
  std::vector<double> spreads;
  for (int depth : {10, 11}) {
    const auto cantor = fixtures::cantor_set(depth);
    const auto mu = from(cantor.cloud);
    const auto band = ahlfors_constants(mu, dim, 256, window);
    CHECK(band.spread() <= 10.0);
    spreads.push_back(band.spread());
  }
  CHECK(spreads[1] == rel(spreads[0], 0.2));

  // Wrong dimension: the band opens up as t shrinks.
  const auto mu = from(fixtures::cantor_set(12).cloud);
  const auto wide = ahlfors_constants(mu, 1.0, 256, {std::pow(3.0, -9), 1.0});
  const auto narrow = ahlfors_constants(mu, 1.0, 256, {std::pow(3.0, -5), 1.0});
  CHECK(wide.spread() > 3.0 * narrow.spread());
}

TEST_CASE("strided sampling includes both ends") {
  CHECK(strided_indices(10, 4) == std::vector<std::size_t>{0, 3, 6, 9});
  CHECK(strided_indices(3, 10).size() == 3);
  CHECK(strided_indices(5, 1) == std::vector<std::size_t>{0});
}
