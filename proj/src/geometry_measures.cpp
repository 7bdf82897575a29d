#include "cauchylab/geometry_measures.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "cauchylab/error.hpp"
#include "cauchylab/numeric.hpp"

namespace cauchylab::geometry {
namespace {

double dist(std::span<const double> a, std::span<const double> b) { return distance(a, b); }

}  // namespace

std::size_t DiscreteMeasure::KeyHash::operator()(const std::vector<std::int64_t>& k) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto v : k) {
    h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

DiscreteMeasure::DiscreteMeasure(int m, std::vector<Point> points, std::vector<double> weights,
                                 std::optional<double> support_radius)
    : m_(m) {
  if (m < 1) throw DimensionError("ambient dimension must be positive");
  if (points.empty()) throw DomainError("measure needs at least one atom");
  if (weights.empty()) weights.assign(points.size(), 1.0);
  if (weights.size() != points.size()) throw DimensionError("one weight per point required");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (static_cast<int>(points[i].size()) != m) throw DimensionError("point arity differs from the dimension");
    for (double v : points[i])
      if (!std::isfinite(v)) throw DomainError("point coordinates must be finite");
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) throw DomainError("weights must be positive and finite");
  }

  // Merge near-duplicates: sort lexicographically, compare inside a window on
  // the first coordinate, and keep each group at its earliest input row.
  const std::size_t count = points.size();
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return points[a] != points[b] ? points[a] < points[b] : a < b;
  });
  std::vector<std::size_t> rep(count);
  std::iota(rep.begin(), rep.end(), std::size_t{0});
  for (std::size_t p = 1; p < count; ++p) {
    const std::size_t i = order[p];
    for (std::size_t q = p; q-- > 0;) {
      const std::size_t j = order[q];
      if (points[i][0] - points[j][0] > kMergeDistance) break;
      if (rep[j] == j && dist(points[i], points[j]) <= kMergeDistance) {
        rep[i] = j;
        break;
      }
    }
  }
  // Representatives may sit later in input order than members; retarget each
  // group at its smallest index.
  std::vector<std::size_t> first(count, count);
  for (std::size_t i = 0; i < count; ++i) first[rep[i]] = std::min(first[rep[i]], i);
  std::vector<double> mass(count, 0.0);
  for (std::size_t i = 0; i < count; ++i) mass[first[rep[i]]] += weights[i];
  for (std::size_t i = 0; i < count; ++i) {
    if (mass[i] > 0.0) {
      coords_.insert(coords_.end(), points[i].begin(), points[i].end());
      weights_.push_back(mass[i]);
    }
  }
  merged_ = count - weights_.size();
  CompensatedSum total;
  for (double w : weights_) total.add(w);
  total_mass_ = total.value();

  build_index();

  const std::size_t n = size();
  if (n == 1) {
    median_spacing_ = min_spacing_ = 0.0;
  } else {
    std::vector<double> nn(n);
    parallel_for(n, [&](std::size_t i) { nn[i] = nearest(point(i), i).second; });
    min_spacing_ = *std::min_element(nn.begin(), nn.end());
    std::nth_element(nn.begin(), nn.begin() + n / 2, nn.end());
    median_spacing_ = nn[n / 2];
  }
  support_radius_ = support_radius.value_or(2.0 * median_spacing_);
  if (support_radius_ < 0.0) throw DomainError("support radius must be nonnegative");
}

void DiscreteMeasure::build_index() {
  const std::size_t n = size();
  lower_.assign(m_, std::numeric_limits<double>::infinity());
  std::vector<double> upper(m_, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    for (int a = 0; a < m_; ++a) {
      lower_[a] = std::min(lower_[a], point(i)[a]);
      upper[a] = std::max(upper[a], point(i)[a]);
    }
  }
  double diag = 0.0;
  for (int a = 0; a < m_; ++a) diag += (upper[a] - lower_[a]) * (upper[a] - lower_[a]);
  diameter_ = std::sqrt(diag);
  const double per_axis = std::ceil(std::pow(static_cast<double>(n), 1.0 / m_));
  cell_ = diameter_ > 0.0 ? diameter_ / per_axis : 1.0;
  for (std::size_t i = 0; i < n; ++i) cells_[cell_of(point(i))].push_back(i);
}

std::vector<std::int64_t> DiscreteMeasure::cell_of(std::span<const double> x) const {
  std::vector<std::int64_t> key(m_);
  for (int a = 0; a < m_; ++a) key[a] = static_cast<std::int64_t>(std::floor((x[a] - lower_[a]) / cell_));
  return key;
}

std::pair<std::size_t, double> DiscreteMeasure::nearest(std::span<const double> x,
                                                        std::optional<std::size_t> skip) const {
  if (static_cast<int>(x.size()) != m_) throw DimensionError("query point has the wrong dimension");
  std::size_t best = size();
  double best_d = std::numeric_limits<double>::infinity();
  auto consider = [&](std::size_t i) {
    if (skip && *skip == i) return;
    const double d = dist(x, point(i));
    if (d < best_d || (d == best_d && i < best)) {
      best_d = d;
      best = i;
    }
  };
  const auto centre = cell_of(x);
  std::vector<std::int64_t> key(m_);
  for (std::int64_t k = 0;; ++k) {
    const double box = std::pow(2.0 * static_cast<double>(k) + 1.0, m_);
    if (box > 4.0 * static_cast<double>(size()) + 16.0) {
      for (std::size_t i = 0; i < size(); ++i) consider(i);
      break;
    }
    // Visit the shell of cells at Chebyshev offset exactly k.
    std::vector<std::int64_t> off(m_, -k);
    while (true) {
      bool shell = false;
      for (auto o : off) shell = shell || o == -k || o == k;
      if (shell) {
        for (int a = 0; a < m_; ++a) key[a] = centre[a] + off[a];
        auto it = cells_.find(key);
        if (it != cells_.end())
          for (auto i : it->second) consider(i);
      }
      int a = 0;
      while (a < m_ && off[a] == k) off[a++] = -k;
      if (a == m_) break;
      ++off[a];
    }
    if (best < size() && best_d <= static_cast<double>(k) * cell_) break;
  }
  if (best == size()) throw DomainError("no atom available for a nearest-neighbour query");
  return {best, best_d};
}

bool DiscreteMeasure::in_support(std::span<const double> x) const {
  return nearest(x).second <= support_radius_;
}

void DiscreteMeasure::for_each_in_ball(std::span<const double> x, double r, bool closed,
                                       const std::function<void(std::size_t, double)>& visit) const {
  if (static_cast<int>(x.size()) != m_) throw DimensionError("query point has the wrong dimension");
  if (!(r >= 0.0)) throw DomainError("ball radius must be nonnegative");
  auto inside = [&](double d) { return closed ? d <= r : d < r; };
  double box = 1.0;
  for (int a = 0; a < m_; ++a) box *= std::floor(2.0 * r / cell_) + 2.0;
  std::vector<std::size_t> hits;
  if (!std::isfinite(box) || box > static_cast<double>(size())) {
    for (std::size_t i = 0; i < size(); ++i) {
      const double d = dist(x, point(i));
      if (inside(d)) visit(i, d);
    }
    return;
  }
  std::vector<double> lo(m_);
  for (int a = 0; a < m_; ++a) lo[a] = x[a] - r;
  const auto first = cell_of(lo);
  std::vector<std::int64_t> span_cells(m_);
  for (int a = 0; a < m_; ++a)
    span_cells[a] = static_cast<std::int64_t>(std::floor((x[a] + r - lower_[a]) / cell_)) - first[a];
  std::vector<std::int64_t> off(m_, 0), key(m_);
  while (true) {
    for (int a = 0; a < m_; ++a) key[a] = first[a] + off[a];
    auto it = cells_.find(key);
    if (it != cells_.end()) {
      for (auto i : it->second)
        if (inside(dist(x, point(i)))) hits.push_back(i);
    }
    int a = 0;
    while (a < m_ && off[a] == span_cells[a]) off[a++] = 0;
    if (a == m_) break;
    ++off[a];
  }
  std::sort(hits.begin(), hits.end());
  for (auto i : hits) visit(i, dist(x, point(i)));
}

std::vector<std::size_t> DiscreteMeasure::ball(std::span<const double> x, double r, bool closed) const {
  std::vector<std::size_t> out;
  for_each_in_ball(x, r, closed, [&](std::size_t i, double) { out.push_back(i); });
  return out;
}

double DiscreteMeasure::ball_mass(std::span<const double> x, double r, bool closed) const {
  CompensatedSum s;
  for_each_in_ball(x, r, closed, [&](std::size_t i, double) { s.add(weights_[i]); });
  return s.value();
}

SymmetryDefect symmetry_defect(const DiscreteMeasure& mu, std::span<const double> a, double r) {
  if (!(r > 0.0)) throw DomainError("radius must be positive");
  if (!mu.in_support(a)) throw SupportError("centre is not in the support of the measure");
  const int m = mu.dimension();
  std::vector<CompensatedSum> moment(m);
  CompensatedSum mass;
  mu.for_each_in_ball(a, r, false, [&](std::size_t i, double) {
    const auto z = mu.point(i);
    for (int j = 0; j < m; ++j) moment[j].add(mu.weight(i) * (z[j] - a[j]));
    mass.add(mu.weight(i));
  });
  SymmetryDefect out{Point(m), mass.value(), std::nullopt};
  for (int j = 0; j < m; ++j) out.moment[j] = moment[j].value();
  if (out.mass > 0.0) out.normalized = norm(out.moment) / (r * out.mass);
  return out;
}

SymmetryProfile symmetry_profile(const DiscreteMeasure& mu, const std::vector<Point>& centers,
                                 const std::vector<double>& radii) {
  if (radii.size() < 3) throw DomainError("symmetry profile needs at least three radii");
  if (centers.empty()) throw DomainError("symmetry profile needs at least one centre");
  SymmetryProfile out;
  std::vector<double> log_r, log_d;
  for (double r : radii) {
    double sum = 0.0;
    std::size_t used = 0;
    for (const auto& c : centers) {
      const auto d = symmetry_defect(mu, c, r);
      const double v = d.normalized.value_or(std::numeric_limits<double>::quiet_NaN());
      out.rows.push_back({c, r, v});
      if (d.normalized) {
        sum += v;
        ++used;
      }
    }
    if (used > 0 && sum > 0.0) {
      log_r.push_back(std::log(r));
      log_d.push_back(std::log(sum / static_cast<double>(used)));
    }
  }
  out.alpha_hat = log_r.size() >= 3 ? fit_slope(log_r, log_d) : std::numeric_limits<double>::quiet_NaN();
  return out;
}

double density_ratio(const DiscreteMeasure& mu, std::span<const double> a, double r, double m_dim) {
  if (!(r > 0.0)) throw DomainError("radius must be positive");
  if (!(m_dim > 0.0)) throw DomainError("dimension exponent must be positive");
  if (!mu.in_support(a)) throw SupportError("centre is not in the support of the measure");
  return mu.ball_mass(a, r, false) / std::pow(r, m_dim);
}

double menger_curvature(std::span<const double> x, std::span<const double> y, std::span<const double> z) {
  if (x.size() != y.size() || y.size() != z.size()) throw DimensionError("points must share a dimension");
  double s[3] = {distance(x, y), distance(y, z), distance(z, x)};
  if (s[0] == 0.0 || s[1] == 0.0 || s[2] == 0.0) throw DegenerateError("Menger curvature needs distinct points");
  const double product = s[0] * s[1] * s[2];
  std::sort(s, s + 3, std::greater<>());
  const double a = s[0], b = s[1], c = s[2];
  const double q = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
  const double area = q > 0.0 ? 0.25 * std::sqrt(q) : 0.0;
  return 4.0 * area / product;
}

std::vector<std::size_t> strided_indices(std::size_t size, std::size_t samples) {
  if (size == 0 || samples == 0) return {};
  if (samples >= size || size == 1) {
    std::vector<std::size_t> all(size);
    std::iota(all.begin(), all.end(), std::size_t{0});
    return all;
  }
  if (samples == 1) return {0};
  std::vector<std::size_t> out(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    out[k] = static_cast<std::size_t>(std::llround(static_cast<double>(k) * static_cast<double>(size - 1) /
                                                   static_cast<double>(samples - 1)));
  }
  return out;
}

AhlforsBand ahlfors_constants(const DiscreteMeasure& mu, double n_dim, std::size_t samples,
                              std::pair<double, double> t_range, std::size_t t_count) {
  if (!(n_dim > 0.0)) throw DomainError("dimension must be positive");
  if (samples == 0) throw DomainError("at least one sample point is required");
  if (t_count == 0) throw DomainError("at least one radius is required");
  const double lo = std::max(t_range.first, 10.0 * mu.min_spacing());
  const double hi = std::min(t_range.second, mu.diameter());
  if (!(lo > 0.0) || !(hi >= lo)) throw DomainError("t-range is empty after clipping to the valid window");
  const auto ts = t_count == 1 || hi == lo ? std::vector<double>{lo} : log_space(lo, hi, t_count);
  const auto idx = strided_indices(mu.size(), samples);
  std::vector<double> low(idx.size()), high(idx.size());
  parallel_for(idx.size(), [&](std::size_t k) {
    double l = std::numeric_limits<double>::infinity(), h = 0.0;
    for (double t : ts) {
      const double ratio = mu.ball_mass(mu.point(idx[k]), t, true) / std::pow(t, n_dim);
      l = std::min(l, ratio);
      h = std::max(h, ratio);
    }
    low[k] = l;
    high[k] = h;
  });
  return {*std::min_element(low.begin(), low.end()), *std::max_element(high.begin(), high.end()), lo, hi};
}

}  // namespace cauchylab::geometry
