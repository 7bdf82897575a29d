#include "cauchylab/complex_contours.hpp"

#include <algorithm>
#include <array>
#include <numbers>
#include <queue>
#include <string>

#include "cauchylab/error.hpp"
#include "cauchylab/numeric.hpp"

namespace cauchylab::contours {
namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double arc_sign(const CircularArc& a) { return a.theta1 >= a.theta0 ? 1.0 : -1.0; }

double distance_to_segment(Complex a, Complex b, Complex z) {
  const Complex d = b - a;
  const double len2 = std::norm(d);
  const double t = std::clamp(((z - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(z - (a + t * d));
}

double distance_to_arc(const CircularArc& arc, Complex z) {
  const Complex rel = z - arc.center;
  const double lo = std::min(arc.theta0, arc.theta1);
  const double hi = std::max(arc.theta0, arc.theta1);
  const double r = std::abs(rel);
  if (hi - lo >= 2.0 * kPi) return std::abs(r - arc.radius);
  if (r > 0.0) {
    double phi = std::arg(rel);
    phi = lo + std::fmod(std::fmod(phi - lo, 2.0 * kPi) + 2.0 * kPi, 2.0 * kPi);
    if (phi <= hi) return std::abs(r - arc.radius);
  }
  const Complex p0 = arc.center + arc.radius * std::polar(1.0, arc.theta0);
  const Complex p1 = arc.center + arc.radius * std::polar(1.0, arc.theta1);
  return std::min(std::abs(z - p0), std::abs(z - p1));
}

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1]; the Gauss nodes are
// the odd-indexed Kronrod nodes plus the centre.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  std::size_t segment;
  double t0;
  double t1;
  Complex value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

class Integrand {
 public:
  Integrand(const Contour& c, Element element, Kernel kernel, Complex z)
      : contour_(c), element_(element), kernel_(kernel), z_(z) {}

  Complex operator()(std::size_t seg, double t) const {
    const auto& s = contour_.segments()[seg];
    const Complex zeta = s.point(t);
    return kernel_value(zeta) * element_factor(s, t);
  }

  Complex kernel_value(Complex zeta) const {
    const Complex d = z_ - zeta;
    switch (kernel_) {
      case Kernel::Unit:
        return 1.0;
      case Kernel::Cauchy:
        return 1.0 / d;
      case Kernel::CauchySquared:
        return 1.0 / (d * d);
      case Kernel::AbsSquared:
        return 1.0 / std::norm(d);
      case Kernel::CauchyOverZeta:
        return 1.0 / (d * zeta);
      case Kernel::CauchySquaredOverZeta:
        return 1.0 / (d * d * zeta);
    }
    return {};
  }

  Complex element_factor(const ContourSegment& s, double t) const {
    switch (element_) {
      case Element::ComplexDz:
        return s.tangent(t);
      case Element::Arclength:
        return 1.0;
      case Element::WeightedArclength:
        return s.density();
    }
    return {};
  }

  Panel integrate(std::size_t seg, double t0, double t1) const {
    const double centre = 0.5 * (t0 + t1);
    const double half = 0.5 * (t1 - t0);
    const Complex fc = (*this)(seg, centre);
    Complex kronrod = kWgk[7] * fc;
    Complex gauss = kWg[3] * fc;
    for (std::size_t k = 0; k < 7; ++k) {
      const double dx = half * kXgk[k];
      const Complex pair = (*this)(seg, centre - dx) + (*this)(seg, centre + dx);
      kronrod += kWgk[k] * pair;
      if (k % 2 == 1) gauss += kWg[k / 2] * pair;
    }
    kronrod *= half;
    gauss *= half;
    return {seg, t0, t1, kronrod, std::abs(kronrod - gauss)};
  }

  // Integral of the kernel over the ray beyond arclength r0, in closed form.
  Complex ray_tail(const ContourSegment& s, const Ray& ray, double r0) const {
    const Complex u = ray.direction;
    const Complex w = z_ - ray.origin;
    Complex along;  // integral against dt
    switch (kernel_) {
      case Kernel::CauchySquared:
        // d/dt [ (w - u t)^-1 / u ] = (w - u t)^-2
        along = -1.0 / (u * (w - u * r0));
        break;
      case Kernel::AbsSquared: {
        const Complex rot = std::conj(u) * w;
        const double shift = rot.real();
        const double height = std::abs(rot.imag());
        const double rest = r0 - shift;
        along = height > 1e-300 ? std::atan(height / rest) / height : 1.0 / rest;
        break;
      }
      default:
        throw DomainError("kernel has no closed-form tail on an unbounded ray");
    }
    return along * element_factor(s, r0);
  }

 private:
  const Contour& contour_;
  Element element_;
  Kernel kernel_;
  Complex z_;
};

bool uses_reciprocal_zeta(Kernel k) {
  return k == Kernel::CauchyOverZeta || k == Kernel::CauchySquaredOverZeta;
}

}  // namespace

ContourSegment::ContourSegment(Shape shape, double density) : shape_(std::move(shape)), density_(density) {
  if (!(density_ > 0.0) || !std::isfinite(density_)) throw DomainError("segment density must be positive");
  std::visit(Overloaded{
                 [](const LineSegment& s) {
                   if (s.a == s.b) throw DomainError("line segment endpoints must differ");
                 },
                 [](const CircularArc& a) {
                   if (!(a.radius > 0.0)) throw DomainError("arc radius must be positive");
                   if (a.theta0 == a.theta1) throw DomainError("arc must sweep a nonzero angle");
                 },
                 [](const Ray& r) {
                   if (std::abs(std::abs(r.direction) - 1.0) > 1e-12) throw DomainError("ray direction must be a unit complex");
                   if (!(r.length > 0.0)) throw DomainError("ray length must be positive");
                 },
             },
             shape_);
}

double ContourSegment::length() const noexcept {
  return std::visit(Overloaded{
                        [](const LineSegment& s) { return std::abs(s.b - s.a); },
                        [](const CircularArc& a) { return a.radius * std::abs(a.theta1 - a.theta0); },
                        [](const Ray& r) { return r.length; },
                    },
                    shape_);
}

Complex ContourSegment::point(double t) const noexcept {
  return std::visit(Overloaded{
                        [t](const LineSegment& s) { return s.a + (s.b - s.a) * (t / std::abs(s.b - s.a)); },
                        [t](const CircularArc& a) {
                          return a.center + a.radius * std::polar(1.0, a.theta0 + arc_sign(a) * t / a.radius);
                        },
                        [t](const Ray& r) { return r.origin + r.direction * t; },
                    },
                    shape_);
}

Complex ContourSegment::tangent(double t) const noexcept {
  return std::visit(Overloaded{
                        [](const LineSegment& s) { return (s.b - s.a) / std::abs(s.b - s.a); },
                        [t](const CircularArc& a) {
                          return kI * arc_sign(a) * std::polar(1.0, a.theta0 + arc_sign(a) * t / a.radius);
                        },
                        [](const Ray& r) { return r.direction; },
                    },
                    shape_);
}

double ContourSegment::distance_to(Complex z) const noexcept {
  return std::visit(Overloaded{
                        [z](const LineSegment& s) { return distance_to_segment(s.a, s.b, z); },
                        [z](const CircularArc& a) { return distance_to_arc(a, z); },
                        [z](const Ray& r) {
                          const double t = std::clamp((std::conj(r.direction) * (z - r.origin)).real(), 0.0, r.length);
                          return std::abs(z - (r.origin + r.direction * t));
                        },
                    },
                    shape_);
}

Contour::Contour(std::vector<ContourSegment> segments, bool closed)
    : segments_(std::move(segments)), closed_(closed), extent_(1.0) {
  if (segments_.empty()) throw DomainError("contour needs at least one segment");
  double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x, lo_y = lo_x, hi_y = -lo_x;
  auto include = [&](Complex p) {
    lo_x = std::min(lo_x, p.real());
    hi_x = std::max(hi_x, p.real());
    lo_y = std::min(lo_y, p.imag());
    hi_y = std::max(hi_y, p.imag());
  };
  for (const auto& s : segments_) {
    include(s.start());
    if (!s.bounded()) continue;
    include(s.end());
    if (std::holds_alternative<CircularArc>(s.shape())) {
      for (int k = 1; k < 32; ++k) include(s.point(s.length() * k / 32.0));
    }
  }
  const double diag = std::hypot(hi_x - lo_x, hi_y - lo_y);
  if (diag > 0.0) extent_ = diag;

  if (closed_) {
    const double tol = 1e-9 * std::max(1.0, extent_);
    for (std::size_t i = 0; i < segments_.size(); ++i) {
      const auto& cur = segments_[i];
      const auto& next = segments_[(i + 1) % segments_.size()];
      if (!cur.bounded()) throw DomainError("closed contour cannot contain an unbounded ray");
      if (std::abs(cur.end() - next.start()) > tol) {
        throw DomainError("closed contour: segment " + std::to_string(i) + " does not meet its successor");
      }
    }
  }
}

double Contour::distance_to(Complex z) const noexcept {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& s : segments_) d = std::min(d, s.distance_to(z));
  return d;
}

double Contour::total_length() const noexcept {
  double total = 0.0;
  for (const auto& s : segments_) total += s.length();
  return total;
}

Contour Contour::polyline(std::span<const Complex> vertices, double density) {
  if (vertices.size() < 2) throw DomainError("polyline needs at least two vertices");
  std::vector<ContourSegment> segs;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    segs.emplace_back(LineSegment{vertices[i], vertices[i + 1]}, density);
  }
  return Contour(std::move(segs), false);
}

Contour Contour::polygon(std::span<const Complex> vertices, double density) {
  if (vertices.size() < 3) throw DomainError("polygon needs at least three vertices");
  std::vector<ContourSegment> segs;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    segs.emplace_back(LineSegment{vertices[i], vertices[(i + 1) % vertices.size()]}, density);
  }
  return Contour(std::move(segs), true);
}

Contour Contour::circle(Complex center, double radius, double density) {
  std::vector<ContourSegment> segs;
  segs.emplace_back(CircularArc{center, radius, 0.0, 2.0 * kPi}, density);
  return Contour(std::move(segs), true);
}

Contour Contour::scaled(double lambda) const {
  if (!(lambda > 0.0)) throw DomainError("scale factor must be positive");
  std::vector<ContourSegment> segs;
  for (const auto& s : segments_) {
    auto shape = std::visit(Overloaded{
                                [lambda](const LineSegment& l) -> ContourSegment::Shape {
                                  return LineSegment{lambda * l.a, lambda * l.b};
                                },
                                [lambda](const CircularArc& a) -> ContourSegment::Shape {
                                  return CircularArc{lambda * a.center, lambda * a.radius, a.theta0, a.theta1};
                                },
                                [lambda](const Ray& r) -> ContourSegment::Shape {
                                  return Ray{lambda * r.origin, r.direction, lambda * r.length};
                                },
                            },
                            s.shape());
    segs.emplace_back(std::move(shape), s.density());
  }
  return Contour(std::move(segs), closed_);
}

Contour Contour::reweighted(double factor) const {
  std::vector<ContourSegment> segs;
  for (const auto& s : segments_) segs.emplace_back(s.shape(), s.density() * factor);
  return Contour(std::move(segs), closed_);
}

QuadratureResult contour_integral(const Contour& c, Element element, Kernel kernel, Complex z,
                                  const QuadratureControl& quad) {
  const double guard = quad.min_distance.value_or(1e-6 * c.extent());
  const double dist = c.distance_to(z);
  if (dist <= guard) throw ProximityError("evaluation point lies on or too near the contour", dist);
  if (uses_reciprocal_zeta(kernel)) {
    const double d0 = c.distance_to(Complex{0.0, 0.0});
    if (d0 <= guard) throw ProximityError("kernel has a pole at zeta = 0 on the contour", d0);
  }
  if (quad.max_panels < 1) throw DomainError("max_panels must be positive");

  const Integrand f(c, element, kernel, z);
  std::priority_queue<Panel> queue;
  Complex tails{0.0, 0.0};
  int panels = 0;

  for (std::size_t k = 0; k < c.segments().size(); ++k) {
    const auto& s = c.segments()[k];
    double upper = s.length();
    if (const auto* ray = std::get_if<Ray>(&s.shape()); ray && !std::isfinite(upper)) {
      upper = std::max(10.0, 10.0 * std::abs(z - ray->origin));
      tails += f.ray_tail(s, *ray, upper);
    }
    // Initial split: arcs into quarter turns at most, everything into pieces no
    // longer than a few times the distance to z.
    int pieces = 1;
    if (const auto* arc = std::get_if<CircularArc>(&s.shape())) {
      pieces = std::max(pieces, static_cast<int>(std::ceil(std::abs(arc->theta1 - arc->theta0) / (0.5 * kPi))));
    }
    const double seg_dist = std::max(s.distance_to(z), guard);
    pieces = std::max(pieces, std::min(64, static_cast<int>(std::ceil(upper / (4.0 * seg_dist)))));
    for (int p = 0; p < pieces; ++p) {
      const double t0 = upper * p / pieces;
      const double t1 = (p + 1 == pieces) ? upper : upper * (p + 1) / pieces;
      queue.push(f.integrate(k, t0, t1));
      ++panels;
    }
  }

  auto totals = [&] {
    CompensatedSum re, im, err;
    auto copy = queue;
    while (!copy.empty()) {
      re.add(copy.top().value.real());
      im.add(copy.top().value.imag());
      err.add(copy.top().error);
      copy.pop();
    }
    return std::pair{Complex{re.value(), im.value()} + tails, err.value()};
  };

  double err_total = 0.0;
  Complex value_total = tails;
  {
    auto copy = queue;
    while (!copy.empty()) {
      err_total += copy.top().error;
      value_total += copy.top().value;
      copy.pop();
    }
  }

  while (err_total > std::max(quad.abs_tol, quad.rel_tol * std::abs(value_total))) {
    if (panels + 1 > quad.max_panels) {
      const auto [best, err] = totals();
      throw ConvergenceError("quadrature tolerance not reached within " + std::to_string(quad.max_panels) + " panels",
                             best, err);
    }
    const Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.t0 + worst.t1);
    const Panel left = f.integrate(worst.segment, worst.t0, mid);
    const Panel right = f.integrate(worst.segment, mid, worst.t1);
    err_total += left.error + right.error - worst.error;
    value_total += left.value + right.value - worst.value;
    queue.push(left);
    queue.push(right);
    ++panels;
    if (panels % 256 == 0) std::tie(value_total, err_total) = totals();
  }

  const auto [value, err] = totals();
  return {value, err, panels};
}

Complex segment_closed_form(Complex a, Complex b, Complex z) {
  if (z == a || z == b) throw SingularError("segment closed form has a pole at an endpoint");
  return 1.0 / (z - b) - 1.0 / (z - a);
}

CornerClosedForm corner_closed_form(Complex a, Complex p, Complex b, Complex z) {
  if (p == a || p == b) throw DomainError("corner point must differ from both endpoints");
  if (z == a || z == p || z == b) throw SingularError("corner closed form has a pole at a vertex");
  const Complex t1 = (p - a) / std::abs(p - a);
  const Complex t2 = (b - p) / std::abs(b - p);
  CornerClosedForm out;
  out.c1 = std::conj(t1);
  out.c2 = std::conj(t2);
  out.corner_coefficient = out.c1 - out.c2;
  out.value = out.c1 * (1.0 / (z - p) - 1.0 / (z - a)) + out.c2 * (1.0 / (z - b) - 1.0 / (z - p));
  const double cross = ((p - a) * std::conj(b - a)).imag();
  const double along = ((p - a) * std::conj(b - p)).real();
  out.degenerate = std::abs(cross) <= 1e-12 * std::abs(p - a) * std::abs(b - a) && along > 0.0;
  return out;
}

Complex circle_closed_form(Complex z) {
  const double r = std::abs(z);
  if (std::abs(r - 1.0) <= 1e-12) throw ProximityError("z lies on the unit circle", std::abs(r - 1.0));
  if (r < 1.0) return {0.0, 0.0};
  return 2.0 * kPi * kI / (z * z);
}

Complex ray_star_coefficient(std::span<const RayDensity> rays) {
  if (rays.empty()) throw DomainError("ray star needs at least one ray");
  Complex k{0.0, 0.0};
  for (const auto& r : rays) {
    if (std::abs(std::abs(r.direction) - 1.0) > 1e-12) throw DomainError("ray direction must be a unit complex");
    if (!(r.density > 0.0)) throw DomainError("ray density must be positive");
    k -= r.density / r.direction;
  }
  return k;
}

AbsKernelResult abs_kernel_integral(const Contour& c, Complex z, const QuadratureControl& quad) {
  const auto q = contour_integral(c, Element::WeightedArclength, Kernel::AbsSquared, z, quad);
  const double dist = c.distance_to(z);
  return {q.value.real(), dist, q.value.real() * dist, q.panels};
}

}  // namespace cauchylab::contours
