#pragma once

// Contours in the complex plane and quadrature of Cauchy-type kernels against
// three elements of integration: the complex element dzeta, arclength
// |dzeta|, and a positive weighted arclength dalpha (piecewise-constant
// density).

#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace cauchylab::contours {

using Complex = std::complex<double>;

struct LineSegment {
  Complex a;
  Complex b;
};

/// Arc of the circle |zeta - center| = radius from angle theta0 to theta1
/// (radians). theta1 < theta0 traverses clockwise.
struct CircularArc {
  Complex center;
  double radius;
  double theta0;
  double theta1;
};

/// Ray origin + t * direction for t in [0, length]. length may be +infinity.
struct Ray {
  Complex origin;
  Complex direction;
  double length = std::numeric_limits<double>::infinity();
};

class ContourSegment {
 public:
  using Shape = std::variant<LineSegment, CircularArc, Ray>;

  /// Validates the shape: a != b, radius > 0, |direction| = 1 within 1e-12,
  /// density > 0. Throws DomainError otherwise.
  ContourSegment(Shape shape, double density = 1.0);

  const Shape& shape() const noexcept { return shape_; }
  double density() const noexcept { return density_; }

  /// Arclength; +infinity for unbounded rays.
  double length() const noexcept;
  bool bounded() const noexcept { return std::isfinite(length()); }
  /// Point at arclength t from the start.
  Complex point(double t) const noexcept;
  /// Unit tangent in the direction of traversal at arclength t.
  Complex tangent(double t) const noexcept;
  Complex start() const noexcept { return point(0.0); }
  /// End point; only meaningful for bounded segments.
  Complex end() const noexcept { return point(length()); }
  /// Euclidean distance from z to the segment.
  double distance_to(Complex z) const noexcept;

 private:
  Shape shape_;
  double density_;
};

class Contour {
 public:
  /// closed = true requires consecutive endpoints to meet within 1e-9 and the
  /// last segment to end at the first one's start. Throws DomainError.
  Contour(std::vector<ContourSegment> segments, bool closed);

  const std::vector<ContourSegment>& segments() const noexcept { return segments_; }
  bool closed() const noexcept { return closed_; }
  double distance_to(Complex z) const noexcept;
  /// Diameter of the bounded part (segment endpoints, arcs, finite rays);
  /// at least 1 when everything is unbounded or degenerate.
  double extent() const noexcept { return extent_; }
  double total_length() const noexcept;

  /// Straight segments through the given vertices.
  static Contour polyline(std::span<const Complex> vertices, double density = 1.0);
  /// Closed polygon; the closing edge is added automatically.
  static Contour polygon(std::span<const Complex> vertices, double density = 1.0);
  /// Counterclockwise circle.
  static Contour circle(Complex center, double radius, double density = 1.0);

  /// Copy with every point scaled about the origin by lambda > 0.
  Contour scaled(double lambda) const;
  /// Copy with every density multiplied by factor > 0.
  Contour reweighted(double factor) const;

 private:
  std::vector<ContourSegment> segments_;
  bool closed_;
  double extent_;
};

enum class Element { ComplexDz, Arclength, WeightedArclength };

enum class Kernel {
  Unit,                   // 1
  Cauchy,                 // (z - zeta)^-1
  CauchySquared,          // (z - zeta)^-2
  AbsSquared,             // |z - zeta|^-2
  CauchyOverZeta,         // (z - zeta)^-1 / zeta
  CauchySquaredOverZeta,  // (z - zeta)^-2 / zeta
};

struct QuadratureControl {
  double abs_tol = 1e-11;
  double rel_tol = 1e-12;
  int max_panels = 10000;
  /// Proximity guard; defaults to 1e-6 * contour extent.
  std::optional<double> min_distance;
};

struct QuadratureResult {
  Complex value;
  double error_estimate;
  int panels;
};

/// Adaptive Gauss-Kronrod (7/15) quadrature of kernel(z, zeta) * element over
/// the contour, refining the panel with the largest error first. Unbounded
/// rays are integrated to R0 = max(10, 10|z - origin|) and closed analytically
/// beyond; kernels without an integrable closed-form tail on an unbounded ray
/// throw DomainError.
///
/// Throws ProximityError when dist(z, contour) <= min_distance, and
/// ConvergenceError (carrying the best estimate) when the panel cap is hit.
QuadratureResult contour_integral(const Contour& c, Element element, Kernel kernel, Complex z,
                                  const QuadratureControl& quad = {});

/// 1/(z - b) - 1/(z - a): the integral of (z - zeta)^-2 dzeta along any path
/// from a to b avoiding z. Throws SingularError when z is a or b.
Complex segment_closed_form(Complex a, Complex b, Complex z);

struct CornerClosedForm {
  Complex value;
  Complex c1;  // 1 / unit tangent of [a, p]
  Complex c2;  // 1 / unit tangent of [p, b]
  Complex corner_coefficient;  // c1 - c2, coefficient of 1/(z - p)
  bool degenerate;  // a, p, b collinear with p between a and b
};

/// Integral of (z - zeta)^-2 |dzeta| over [a, p] followed by [p, b].
CornerClosedForm corner_closed_form(Complex a, Complex p, Complex b, Complex z);

/// Integral of (z - zeta)^-2 dzeta / zeta over the counterclockwise unit
/// circle: 0 for |z| < 1 and 2 pi i / z^2 for |z| > 1. Throws
/// ProximityError when |z| = 1.
Complex circle_closed_form(Complex z);

struct RayDensity {
  Complex direction;
  double density;
};

/// Coefficient k with sum over rays of the integral of (z - zeta)^-2 dalpha
/// equal to k / (z - q): k = -sum density / direction. Zero iff balanced.
Complex ray_star_coefficient(std::span<const RayDensity> rays);

struct AbsKernelResult {
  double value;
  double distance;
  double ratio;  // value * distance, the ratio to dist^-1
  int panels;
};

/// Integral of |z - zeta|^-2 dalpha(zeta) with its ratio to dist(z, contour)^-1.
AbsKernelResult abs_kernel_integral(const Contour& c, Complex z, const QuadratureControl& quad = {});

}  // namespace cauchylab::contours
