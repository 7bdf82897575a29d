#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace cauchylab {

/// Neumaier-compensated running sum. Reduction-order drift stays at the
/// level of a few ulps of the largest partial sum.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  void add(const CompensatedSum& other) noexcept {
    add(other.sum_);
    add(other.comp_);
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Deterministic random stream. Wraps std::mt19937_64 (whose output sequence
/// is fixed by the standard) and maps it to doubles without going through the
/// implementation-defined std distributions, so reports are reproducible
/// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n). n must be positive.
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }
  /// Standard normal via Box-Muller (one value per call).
  double normal();
  /// Uniformly distributed unit vector in R^m.
  std::vector<double> unit_vector(std::size_t m);
  /// Independent sub-stream keyed by a label.
  Rng split(std::uint64_t label) { return Rng(engine_() ^ (0x9e3779b97f4a7c15ULL * (label + 1))); }

 private:
  std::mt19937_64 engine_;
};

/// Worker count: CAUCHYLAB_THREADS if set and positive, else the hardware
/// concurrency (at least 1).
unsigned worker_count();

/// Runs body(chunk_begin, chunk_end, chunk_index) over [0, count) split into
/// fixed chunks of `chunk` items. Chunk boundaries do not depend on the
/// worker count, so per-chunk results reduced in chunk order are bitwise
/// reproducible for any thread cap.
void for_each_chunk(std::size_t count, std::size_t chunk,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

inline std::size_t chunk_count(std::size_t count, std::size_t chunk) {
  return count == 0 ? 0 : (count + chunk - 1) / chunk;
}

/// Runs body(i) for every i in [0, count), in parallel chunks.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Euclidean distance between two equally sized coordinate spans.
inline double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

inline double norm(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

/// Least-squares slope of y against x.
double fit_slope(std::span<const double> x, std::span<const double> y);

/// `count` log-spaced values from lo to hi inclusive.
std::vector<double> log_space(double lo, double hi, std::size_t count);

}  // namespace cauchylab
