#include "cauchylab/complex_planes.hpp"

#include <algorithm>
#include <cmath>

#include "cauchylab/error.hpp"

namespace cauchylab::planes {

Forms forms(const CVector& v, const CVector& w) {
  if (v.size() != w.size()) throw DimensionError("forms need vectors of the same length");
  // Eigen's dot conjugates its first argument.
  const Complex h = w.dot(v);
  return {h, h.real(), h.imag()};
}

PlaneBasis::PlaneBasis(CMatrix vectors) : vectors_(std::move(vectors)) {
  if (vectors_.cols() == 0 || vectors_.rows() != vectors_.cols())
    throw DimensionError("a plane basis needs m vectors in C^m");
  if (!vectors_.allFinite()) throw DomainError("plane basis entries must be finite");
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(real_matrix());
  const auto& s = svd.singularValues();
  if (!(s(s.size() - 1) > kRankTolerance * s(0))) throw DegenerateError("basis vectors are real-linearly dependent");
}

Eigen::MatrixXd PlaneBasis::real_matrix() const {
  const auto m = vectors_.rows();
  Eigen::MatrixXd r(2 * m, m);
  r.topRows(m) = vectors_.real();
  r.bottomRows(m) = vectors_.imag();
  return r;
}

PlaneBasis standard_plane(std::size_t m) {
  const auto k = static_cast<Eigen::Index>(m);
  return PlaneBasis(CMatrix::Identity(k, k));
}

PlaneBasis transform(const CMatrix& U, const PlaneBasis& L) {
  if (U.rows() != U.cols() || static_cast<std::size_t>(U.cols()) != L.m())
    throw DimensionError("transform needs an m x m matrix");
  return PlaneBasis(U * L.vectors());
}

Complex normalized_volume(const PlaneBasis& L) {
  // sqrt(det G) is |det R| from a real QR of the 2m x m matrix.
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(L.real_matrix());
  const auto m = static_cast<Eigen::Index>(L.m());
  double volume = 1.0;
  for (Eigen::Index j = 0; j < m; ++j) volume *= std::abs(qr.matrixQR()(j, j));
  return L.vectors().determinant() / volume;
}

double totally_real_coefficient(const PlaneBasis& L) { return std::abs(normalized_volume(L)); }

bool is_totally_real(const PlaneBasis& L, double tol) { return totally_real_coefficient(L) > tol; }

double symplectic_defect(const PlaneBasis& L) {
  double worst = 0.0;
  for (std::size_t i = 0; i < L.m(); ++i)
    for (std::size_t j = i + 1; j < L.m(); ++j)
      worst = std::max(worst, std::abs(forms(L.vector(i), L.vector(j)).symplectic));
  return worst;
}

bool is_lagrangian(const PlaneBasis& L, double tol) { return symplectic_defect(L) <= tol; }

SpecialLagrangian special_lagrangian_test(const PlaneBasis& L, double tol) {
  SpecialLagrangian out{is_lagrangian(L, tol), normalized_volume(L), false, false};
  if (out.lagrangian) {
    if (std::abs(out.volume - 1.0) <= tol) {
      out.special = true;
    } else if (std::abs(out.volume + 1.0) <= tol) {
      out.special = true;
      out.reversed = true;
    }
  }
  return out;
}

bool is_special_lagrangian(const PlaneBasis& L, double tol) { return special_lagrangian_test(L, tol).special; }

CMatrix random_unitary(std::size_t m, Rng& rng) {
  if (m == 0) throw DimensionError("unitary size must be positive");
  const auto k = static_cast<Eigen::Index>(m);
  CMatrix z(k, k);
  for (Eigen::Index j = 0; j < k; ++j)
    for (Eigen::Index i = 0; i < k; ++i) {
      const double re = rng.normal();
      z(i, j) = Complex(re, rng.normal());
    }
  const Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const Complex d = qr.matrixQR()(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

CMatrix random_special_unitary(std::size_t m, Rng& rng) {
  CMatrix u = random_unitary(m, rng);
  const Complex d = u.determinant();
  return u * std::polar(1.0, -std::arg(d) / static_cast<double>(m));
}

}  // namespace cauchylab::planes
