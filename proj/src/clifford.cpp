#include "cauchylab/clifford.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "cauchylab/error.hpp"

namespace cauchylab::clifford {
namespace {

void check_generators(int n) {
  if (n < 1 || n > kMaxGenerators) {
    throw DimensionError("Clifford generator count must be in [1, " + std::to_string(kMaxGenerators) +
                         "], got " + std::to_string(n));
  }
}

int blade_sign_counting(std::uint32_t a, std::uint32_t b) noexcept {
  // For every factor of b, count the factors of a with a larger index that it
  // has to move past.
  int swaps = 0;
  for (std::uint32_t rest = a >> 1; rest != 0; rest >>= 1) {
    swaps += __builtin_popcount(rest & b);
  }
  swaps += __builtin_popcount(a & b);  // e_j e_j = -1
  return (swaps & 1) ? -1 : 1;
}

// Signs for blades drawn from the first 8 generators.
struct SignTable {
  std::array<std::int8_t, 256 * 256> sign{};
  SignTable() {
    for (std::uint32_t a = 0; a < 256; ++a)
      for (std::uint32_t b = 0; b < 256; ++b)
        sign[a * 256 + b] = static_cast<std::int8_t>(blade_sign_counting(a, b));
  }
};

const SignTable& sign_table() {
  static const SignTable table;
  return table;
}

}  // namespace

int blade_sign(std::uint32_t a, std::uint32_t b) noexcept {
  if ((a | b) < 256) return sign_table().sign[a * 256 + b];
  return blade_sign_counting(a, b);
}

BladeProduct blade_product(Blade a, Blade b, int n) {
  check_generators(n);
  const std::uint32_t limit = std::uint32_t{1} << n;
  if (a.mask >= limit || b.mask >= limit) {
    throw DimensionError("blade uses a generator beyond e_" + std::to_string(n));
  }
  return {blade_sign(a.mask, b.mask), Blade{a.mask ^ b.mask}};
}

Multivector::Multivector(int n) : n_(n) {
  check_generators(n);
  coeffs_.assign(std::size_t{1} << n, 0.0);
}

Multivector::Multivector(int n, std::vector<double> coeffs) : n_(n), coeffs_(std::move(coeffs)) {
  check_generators(n);
  if (coeffs_.size() != (std::size_t{1} << n)) {
    throw DimensionError("Multivector of C(" + std::to_string(n) + ") needs " +
                         std::to_string(std::size_t{1} << n) + " coefficients");
  }
}

Multivector Multivector::scalar(int n, double value) {
  Multivector m(n);
  m.coeffs_[0] = value;
  return m;
}

Multivector Multivector::generator(int n, int j, double value) {
  if (j < 1 || j > n) throw DimensionError("generator index " + std::to_string(j) + " out of range");
  return blade(n, Blade::generator(j), value);
}

Multivector Multivector::blade(int n, Blade b, double value) {
  Multivector m(n);
  if (b.mask >= m.coeffs_.size()) throw DimensionError("blade out of range for C(" + std::to_string(n) + ")");
  m.coeffs_[b.mask] = value;
  return m;
}

Multivector Multivector::vector(std::span<const double> v) {
  Multivector m(static_cast<int>(v.size()));
  for (std::size_t j = 0; j < v.size(); ++j) m.coeffs_[std::size_t{1} << j] = v[j];
  return m;
}

bool Multivector::is_grade(int grade, double tol) const {
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (__builtin_popcount(static_cast<unsigned>(k)) != grade && std::abs(coeffs_[k]) > tol) return false;
  }
  return true;
}

double Multivector::norm() const {
  double s = 0.0;
  for (double c : coeffs_) s += c * c;
  return std::sqrt(s);
}

double Multivector::max_abs() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Multivector& Multivector::operator+=(const Multivector& other) {
  if (other.n_ != n_) throw DimensionError("mismatched Clifford algebras in addition");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& other) {
  if (other.n_ != n_) throw DimensionError("mismatched Clifford algebras in subtraction");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  return *this;
}

Multivector& Multivector::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

std::string Multivector::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == 0.0) continue;
    if (!first) os << " + ";
    first = false;
    os << coeffs_[k];
    for (int j = 0; j < n_; ++j)
      if (k & (std::size_t{1} << j)) os << "*e" << (j + 1);
  }
  if (first) os << "0";
  return os.str();
}

Multivector mv_mul(const Multivector& a, const Multivector& b) {
  if (a.generators() != b.generators()) throw DimensionError("mismatched Clifford algebras in product");
  Multivector out(a.generators());
  const auto ca = a.coefficients();
  const auto cb = b.coefficients();
  std::vector<std::uint32_t> nonzero_b;
  for (std::uint32_t k = 0; k < cb.size(); ++k)
    if (cb[k] != 0.0) nonzero_b.push_back(k);
  for (std::uint32_t i = 0; i < ca.size(); ++i) {
    if (ca[i] == 0.0) continue;
    for (std::uint32_t k : nonzero_b) {
      out[Blade{i ^ k}] += blade_sign(i, k) * ca[i] * cb[k];
    }
  }
  return out;
}

Multivector mv_add(const Multivector& a, const Multivector& b) {
  Multivector out = a;
  out += b;
  return out;
}

Multivector operator-(const Multivector& a, const Multivector& b) {
  Multivector out = a;
  out -= b;
  return out;
}

Multivector operator*(double s, const Multivector& a) {
  Multivector out = a;
  out *= s;
  return out;
}

Multivector operator-(const Multivector& a) { return -1.0 * a; }

double Paravector::norm_squared() const noexcept {
  double s = beta0 * beta0;
  for (double b : betas) s += b * b;
  return s;
}

Multivector Paravector::to_multivector() const {
  Multivector m = Multivector::vector(betas);
  m[Blade::identity()] = beta0;
  return m;
}

Paravector Paravector::from_multivector(const Multivector& m, double tol) {
  const auto c = m.coefficients();
  Paravector p;
  p.beta0 = c[0];
  p.betas.resize(static_cast<std::size_t>(m.generators()));
  for (std::size_t k = 1; k < c.size(); ++k) {
    if (__builtin_popcount(static_cast<unsigned>(k)) == 1) {
      p.betas[static_cast<std::size_t>(__builtin_ctz(static_cast<unsigned>(k)))] = c[k];
    } else if (std::abs(c[k]) > tol) {
      throw DomainError("multivector has components of grade >= 2; not a paravector");
    }
  }
  return p;
}

Paravector paravector_conj(const Paravector& b) {
  Paravector out = b;
  for (auto& v : out.betas) v = -v;
  return out;
}

Paravector paravector_inverse(const Paravector& b) {
  const double n2 = b.norm_squared();
  if (n2 == 0.0) throw SingularError("the zero paravector has no inverse");
  Paravector out = paravector_conj(b);
  out.beta0 /= n2;
  for (auto& v : out.betas) v /= n2;
  return out;
}

}  // namespace cauchylab::clifford
