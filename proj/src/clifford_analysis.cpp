#include "cauchylab/clifford_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cauchylab/error.hpp"
#include "cauchylab/numeric.hpp"

namespace cauchylab::clifford_analysis {
namespace {

std::vector<double> difference(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.empty()) throw DimensionError("points must share a positive dimension");
  std::vector<double> d(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) d[j] = x[j] - y[j];
  return d;
}

void check_stencil(const GridFunction& f, std::size_t needed, const char* what) {
  for (std::size_t c : f.counts()) {
    if (c < needed + 2 * static_cast<std::size_t>(f.margin())) {
      throw DimensionError(std::string(what) + ": grid needs at least " + std::to_string(needed) +
                           " valid points per axis");
    }
  }
}

void check_point(const DiscreteSurface& s, std::span<const double> x) {
  if (static_cast<int>(x.size()) != s.dimension()) throw DimensionError("evaluation point has the wrong dimension");
  double nearest = std::numeric_limits<double>::infinity();
  for (const auto& f : s.facets()) nearest = std::min(nearest, distance(x, f.centroid));
  if (nearest <= s.guard()) throw ProximityError("evaluation point too near the surface", nearest);
}

// Deterministic chunked facet sum; `term` adds facet k's contribution into acc.
Multivector facet_sum(const DiscreteSurface& s,
                      const std::function<void(const Facet&, std::vector<CompensatedSum>&)>& term) {
  const std::size_t blades = std::size_t{1} << s.dimension();
  const std::size_t chunk = 2048;
  const auto& facets = s.facets();
  std::vector<std::vector<CompensatedSum>> partial(chunk_count(facets.size(), chunk),
                                                   std::vector<CompensatedSum>(blades));
  for_each_chunk(facets.size(), chunk, [&](std::size_t b, std::size_t e, std::size_t c) {
    for (std::size_t k = b; k < e; ++k) term(facets[k], partial[c]);
  });
  std::vector<CompensatedSum> total(blades);
  for (const auto& p : partial)
    for (std::size_t k = 0; k < blades; ++k) total[k].add(p[k]);
  std::vector<double> coeffs(blades);
  for (std::size_t k = 0; k < blades; ++k) coeffs[k] = total[k].value();
  return Multivector(s.dimension(), std::move(coeffs));
}

void accumulate(std::vector<CompensatedSum>& acc, const Multivector& m, double scale) {
  const auto c = m.coefficients();
  for (std::size_t k = 0; k < c.size(); ++k)
    if (c[k] != 0.0) acc[k].add(scale * c[k]);
}

}  // namespace

Multivector cauchy_kernel(std::span<const double> x, std::span<const double> y) {
  auto d = difference(x, y);
  const double r = norm(d);
  if (r == 0.0) throw SingularError("Cauchy kernel is singular at x = y");
  const double scale = std::pow(r, -static_cast<double>(d.size()));
  for (auto& v : d) v *= scale;
  return Multivector::vector(d);
}

Multivector cauchy_kernel_derivative(std::span<const double> x, std::span<const double> y, int axis) {
  const auto d = difference(x, y);
  const int n = static_cast<int>(d.size());
  if (axis < 0 || axis >= n) throw DimensionError("derivative axis out of range");
  const double r = norm(d);
  if (r == 0.0) throw SingularError("Cauchy kernel is singular at x = y");
  const double rn = std::pow(r, -n);
  const double rn2 = rn / (r * r);
  std::vector<double> out(d.size());
  for (int j = 0; j < n; ++j) {
    out[j] = -n * d[j] * d[axis] * rn2;
    if (j == axis) out[j] += rn;
  }
  return Multivector::vector(out);
}

GridFunction::GridFunction(std::vector<double> origin, double spacing, std::vector<std::size_t> counts, int margin)
    : origin_(std::move(origin)), spacing_(spacing), counts_(std::move(counts)), margin_(margin) {
  if (counts_.empty() || counts_.size() != origin_.size()) throw DimensionError("grid origin and counts must match");
  if (!(spacing_ > 0.0)) throw DomainError("grid spacing must be positive");
  std::size_t total = 1;
  strides_.resize(counts_.size());
  for (std::size_t a = 0; a < counts_.size(); ++a) {
    if (counts_[a] == 0) throw DomainError("grid box must be nonempty");
    strides_[a] = total;
    total *= counts_[a];
  }
  values_.assign(total, Multivector(dimension()));
}

GridFunction GridFunction::sample(std::vector<double> origin, double spacing, std::vector<std::size_t> counts,
                                  const std::function<Multivector(std::span<const double>)>& f) {
  GridFunction g(std::move(origin), spacing, std::move(counts));
  for (std::size_t k = 0; k < g.size(); ++k) g.values_[k] = f(g.point(k));
  return g;
}

std::vector<std::size_t> GridFunction::multi_index(std::size_t linear) const {
  std::vector<std::size_t> idx(counts_.size());
  for (std::size_t a = 0; a < counts_.size(); ++a) {
    idx[a] = linear % counts_[a];
    linear /= counts_[a];
  }
  return idx;
}

std::vector<double> GridFunction::point(std::size_t linear) const {
  const auto idx = multi_index(linear);
  std::vector<double> p(idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a) p[a] = origin_[a] + spacing_ * static_cast<double>(idx[a]);
  return p;
}

bool GridFunction::valid(std::size_t linear) const {
  const auto m = static_cast<std::size_t>(margin_);
  const auto idx = multi_index(linear);
  for (std::size_t a = 0; a < idx.size(); ++a)
    if (idx[a] < m || idx[a] + m >= counts_[a]) return false;
  return true;
}

double GridFunction::max_norm(const std::function<bool(std::span<const double>)>& include) const {
  double best = 0.0;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!valid(k)) continue;
    if (include && !include(point(k))) continue;
    best = std::max(best, values_[k].norm());
  }
  return best;
}

GridFunction dirac_apply_fd(const GridFunction& f) {
  check_stencil(f, 3, "dirac_apply_fd");
  const int n = f.dimension();
  GridFunction out(f.origin_, f.spacing_, f.counts_, f.margin_ + 1);
  const double inv2h = 0.5 / f.spacing_;
  std::vector<Multivector> gens;
  for (int j = 1; j <= n; ++j) gens.push_back(Multivector::generator(n, j));
  parallel_for(out.size(), [&](std::size_t k) {
    if (!out.valid(k)) return;
    Multivector acc(n);
    for (int j = 0; j < n; ++j) {
      Multivector diff = f.values_[k + f.strides_[j]] - f.values_[k - f.strides_[j]];
      diff *= inv2h;
      acc += clifford::mv_mul(gens[j], diff);
    }
    out.values_[k] = std::move(acc);
  });
  return out;
}

GridFunction laplacian_fd(const GridFunction& f) {
  check_stencil(f, 3, "laplacian_fd");
  const int n = f.dimension();
  GridFunction out(f.origin_, f.spacing_, f.counts_, f.margin_ + 1);
  const double inv_h2 = 1.0 / (f.spacing_ * f.spacing_);
  parallel_for(out.size(), [&](std::size_t k) {
    if (!out.valid(k)) return;
    Multivector acc(n);
    for (int j = 0; j < n; ++j) {
      acc += f.values_[k + f.strides_[j]];
      acc += f.values_[k - f.strides_[j]];
      acc -= 2.0 * f.values_[k];
    }
    acc *= inv_h2;
    out.values_[k] = std::move(acc);
  });
  return out;
}

double dirac_square_check(const GridFunction& f) {
  check_stencil(f, 5, "dirac_square_check");
  const GridFunction dd = dirac_apply_fd(dirac_apply_fd(f));
  const GridFunction lap = laplacian_fd(f);
  double worst = 0.0;
  for (std::size_t k = 0; k < dd.size(); ++k) {
    if (!dd.valid(k)) continue;
    worst = std::max(worst, (dd[k] + lap[k]).norm());
  }
  return worst;
}

DiscreteSurface::DiscreteSurface(int n, std::vector<Facet> facets, bool closed, std::optional<double> mesh_size)
    : n_(n), facets_(std::move(facets)), closed_(closed), mesh_size_(0.0) {
  if (n < 2 || n > clifford::kMaxGenerators) throw DimensionError("surface ambient dimension must be in [2, 16]");
  if (facets_.empty()) throw DomainError("surface needs at least one facet");
  double max_area = 0.0;
  for (const auto& f : facets_) {
    if (static_cast<int>(f.centroid.size()) != n || static_cast<int>(f.normal.size()) != n) {
      throw DimensionError("facet centroid and normal must have dimension n");
    }
    if (std::abs(norm(f.normal) - 1.0) > 1e-9) throw DomainError("facet normal must be a unit vector");
    if (!(f.area > 0.0)) throw DomainError("facet area must be positive");
    if (!(f.density > 0.0)) throw DomainError("facet density must be positive");
    max_area = std::max(max_area, f.area);
  }
  mesh_size_ = mesh_size.value_or(2.0 * std::pow(max_area, 1.0 / (n - 1)));
  if (closed_) {
    const double tol = 1e-8 * total_area();
    if (norm(vector_area()) > tol) throw DomainError("closed surface must have zero total vector area");
  }
}

double DiscreteSurface::total_area() const noexcept {
  CompensatedSum s;
  for (const auto& f : facets_) s.add(f.area);
  return s.value();
}

std::vector<double> DiscreteSurface::vector_area() const {
  std::vector<CompensatedSum> acc(static_cast<std::size_t>(n_));
  for (const auto& f : facets_)
    for (int j = 0; j < n_; ++j) acc[j].add(f.area * f.normal[j]);
  std::vector<double> out(acc.size());
  for (std::size_t j = 0; j < acc.size(); ++j) out[j] = acc[j].value();
  return out;
}

DiscreteSurface DiscreteSurface::reweighted(double factor) const {
  auto facets = facets_;
  for (auto& f : facets) f.density *= factor;
  return DiscreteSurface(n_, std::move(facets), closed_, mesh_size_);
}

Multivector surface_cauchy_integral(const DiscreteSurface& s, std::span<const double> x) {
  check_point(s, x);
  return facet_sum(s, [&](const Facet& f, std::vector<CompensatedSum>& acc) {
    const auto term = clifford::mv_mul(cauchy_kernel(x, f.centroid), Multivector::vector(f.normal));
    accumulate(acc, term, f.area);
  });
}

Multivector surface_derivative_integral(const DiscreteSurface& s, std::span<const double> x, int axis,
                                        SurfaceElement element) {
  check_point(s, x);
  if (axis < 0 || axis >= s.dimension()) throw DimensionError("derivative axis out of range");
  return facet_sum(s, [&](const Facet& f, std::vector<CompensatedSum>& acc) {
    const auto dk = cauchy_kernel_derivative(x, f.centroid, axis);
    if (element == SurfaceElement::NormalDy) {
      accumulate(acc, clifford::mv_mul(dk, Multivector::vector(f.normal)), f.area);
    } else {
      accumulate(acc, dk, f.area * f.density);
    }
  });
}

double surface_derivative_magnitude(const DiscreteSurface& s, std::span<const double> x, int axis,
                                    SurfaceElement element) {
  check_point(s, x);
  if (axis < 0 || axis >= s.dimension()) throw DimensionError("derivative axis out of range");
  CompensatedSum total;
  for (const auto& f : s.facets()) {
    const auto dk = cauchy_kernel_derivative(x, f.centroid, axis);
    if (element == SurfaceElement::NormalDy) {
      total.add(f.area * clifford::mv_mul(dk, Multivector::vector(f.normal)).norm());
    } else {
      total.add(f.area * f.density * dk.norm());
    }
  }
  return total.value();
}

}  // namespace cauchylab::clifford_analysis
