#pragma once

// Real m-planes in C^m: the Hermitian form <v, w> = sum v_j conj(w_j), its
// real part (v, w) and imaginary part [v, w], and the totally-real and
// (special) Lagrangian tests built on them.

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "cauchylab/numeric.hpp"

namespace cauchylab::planes {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kRankTolerance = 1e-10;

struct Forms {
  Complex hermitian;
  double real_part;
  double symplectic;
};

/// Throws DimensionError on mismatched lengths.
Forms forms(const CVector& v, const CVector& w);

/// m vectors of C^m stored as the columns of an m x m complex matrix.
class PlaneBasis {
 public:
  /// Requires a square matrix whose columns are real-linearly independent:
  /// the 2m x m real matrix of real and imaginary parts has smallest
  /// singular value above 1e-10 times the largest. DimensionError for a
  /// non-square or empty matrix, DegenerateError for a dependent set.
  explicit PlaneBasis(CMatrix vectors);

  std::size_t m() const noexcept { return static_cast<std::size_t>(vectors_.cols()); }
  const CMatrix& vectors() const noexcept { return vectors_; }
  CVector vector(std::size_t j) const { return vectors_.col(static_cast<Eigen::Index>(j)); }
  /// Rows 0..m-1 hold real parts, rows m..2m-1 imaginary parts.
  Eigen::MatrixXd real_matrix() const;

 private:
  CMatrix vectors_;
};

/// The standard basis of R^m inside C^m.
PlaneBasis standard_plane(std::size_t m);
/// U applied to every basis vector.
PlaneBasis transform(const CMatrix& U, const PlaneBasis& L);

/// det_C of the basis after real Gram-Schmidt, i.e. det_C(B) / sqrt(det G)
/// with G_ij = (b_i, b_j). Its modulus is the totally-real coefficient; its
/// phase is the special-Lagrangian invariant.
Complex normalized_volume(const PlaneBasis& L);

/// In [0, 1]; 1 on Lagrangian planes, 0 when L meets iL.
double totally_real_coefficient(const PlaneBasis& L);
bool is_totally_real(const PlaneBasis& L, double tol = 1e-10);

/// max |[b_i, b_j]| over basis pairs.
double symplectic_defect(const PlaneBasis& L);
bool is_lagrangian(const PlaneBasis& L, double tol = 1e-10);

struct SpecialLagrangian {
  bool lagrangian;
  Complex volume;     // normalized_volume(L)
  bool special;       // lagrangian and volume = +1 or -1 within tol
  bool reversed;      // volume = -1: special once the orientation is flipped
};

SpecialLagrangian special_lagrangian_test(const PlaneBasis& L, double tol = 1e-10);
bool is_special_lagrangian(const PlaneBasis& L, double tol = 1e-10);

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of diag(R) moved into Q.
CMatrix random_unitary(std::size_t m, Rng& rng);
/// random_unitary divided by an m-th root of its determinant.
CMatrix random_special_unitary(std::size_t m, Rng& rng);

}  // namespace cauchylab::planes
