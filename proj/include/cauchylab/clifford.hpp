#pragma once

// Real Clifford algebra C(n): generators e_1..e_n with e_j e_k = -e_k e_j
// (j != k) and e_j^2 = -1. Elements are stored densely over the 2^n basis
// blades e_{j1} e_{j2} ... e_{jl}, j1 < j2 < ... < jl.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cauchylab::clifford {

/// Largest generator count accepted at construction.
inline constexpr int kMaxGenerators = 16;

/// Basis blade as a bit set: bit j set means e_{j+1} is a factor.
struct Blade {
  std::uint32_t mask = 0;

  static constexpr Blade identity() { return {}; }
  /// e_j for 1-based generator index j.
  static constexpr Blade generator(int j) { return {std::uint32_t{1} << (j - 1)}; }

  int grade() const noexcept { return __builtin_popcount(mask); }
  friend constexpr bool operator==(Blade, Blade) = default;
};

/// Product of two basis blades, e_A e_B = sign * e_{A xor B}.
struct BladeProduct {
  int sign;
  Blade blade;
};

/// Throws DimensionError when either blade uses a generator beyond n.
BladeProduct blade_product(Blade a, Blade b, int n);

/// Sign of e_A e_B with no range check. Counts the transpositions needed to
/// sort the concatenated factors, then one -1 per cancelled pair e_j e_j.
int blade_sign(std::uint32_t a, std::uint32_t b) noexcept;

class Multivector {
 public:
  /// Zero element of C(n).
  explicit Multivector(int n);
  Multivector(int n, std::vector<double> coeffs);

  static Multivector scalar(int n, double value);
  /// Coefficient `value` on e_j, 1-based.
  static Multivector generator(int n, int j, double value = 1.0);
  static Multivector blade(int n, Blade b, double value = 1.0);
  /// Sum_j v[j] e_{j+1}; n = v.size().
  static Multivector vector(std::span<const double> v);

  int generators() const noexcept { return n_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  double operator[](Blade b) const { return coeffs_.at(b.mask); }
  double& operator[](Blade b) { return coeffs_.at(b.mask); }
  std::span<const double> coefficients() const noexcept { return coeffs_; }

  double scalar_part() const noexcept { return coeffs_[0]; }
  /// Coefficient of e_j, 1-based.
  double vector_part(int j) const { return coeffs_.at(std::size_t{1} << (j - 1)); }
  /// True when every blade of grade other than `grade` is within tol of zero.
  bool is_grade(int grade, double tol = 0.0) const;
  /// Euclidean norm of the coefficient vector.
  double norm() const;
  /// Largest coefficient magnitude.
  double max_abs() const;

  Multivector& operator+=(const Multivector& other);
  Multivector& operator-=(const Multivector& other);
  Multivector& operator*=(double s);

  friend bool operator==(const Multivector&, const Multivector&) = default;

  std::string to_string() const;

 private:
  int n_;
  std::vector<double> coeffs_;
};

/// Geometric product, bilinear extension of blade_product.
Multivector mv_mul(const Multivector& a, const Multivector& b);
/// Coefficientwise sum.
Multivector mv_add(const Multivector& a, const Multivector& b);

inline Multivector operator*(const Multivector& a, const Multivector& b) { return mv_mul(a, b); }
inline Multivector operator+(const Multivector& a, const Multivector& b) { return mv_add(a, b); }
Multivector operator-(const Multivector& a, const Multivector& b);
Multivector operator*(double s, const Multivector& a);
Multivector operator-(const Multivector& a);

/// beta_0 + sum_j beta_j e_j.
struct Paravector {
  double beta0 = 0.0;
  std::vector<double> betas;

  int generators() const noexcept { return static_cast<int>(betas.size()); }
  /// Sum_{j=0}^n beta_j^2.
  double norm_squared() const noexcept;
  Multivector to_multivector() const;
  /// Throws DomainError when `m` has components of grade >= 2 beyond tol.
  static Paravector from_multivector(const Multivector& m, double tol = 0.0);

  friend bool operator==(const Paravector&, const Paravector&) = default;
};

/// beta* = beta_0 - sum_j beta_j e_j.
Paravector paravector_conj(const Paravector& b);
/// beta* / |beta|^2. Throws SingularError for the zero paravector.
Paravector paravector_inverse(const Paravector& b);

}  // namespace cauchylab::clifford
