#pragma once

// Exact 4x4 complex-rational operator algebra with first-class antilinear
// (complex-conjugation) factors. Houses every constant matrix of the doublet
// model: gamma matrices in both representations, spin, charge sign and the
// involution v.

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace rcqm::clifford {

class ComplexRational {
public:
  ComplexRational() = default;
  ComplexRational(long re) : re_(re), im_(0) {}
  ComplexRational(mpq_class re, mpq_class im = 0);
  ComplexRational(long re_num, long re_den, long im_num, long im_den);

  static ComplexRational i() { return {0, 1}; }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  // Reduced fraction parts; denominators are always positive.
  mpz_class re_num() const { return re_.get_num(); }
  mpz_class re_den() const { return re_.get_den(); }
  mpz_class im_num() const { return im_.get_num(); }
  mpz_class im_den() const { return im_.get_den(); }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  ComplexRational conj() const { return {re_, -im_}; }
  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  /// "a/b+c/d i" with integers printed in lowest terms.
  std::string to_string() const;

  ComplexRational operator-() const { return {-re_, -im_}; }
  ComplexRational& operator+=(const ComplexRational& o);
  ComplexRational& operator-=(const ComplexRational& o);
  ComplexRational& operator*=(const ComplexRational& o);

  friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
  friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
  friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

private:
  mpq_class re_{0};
  mpq_class im_{0};
};

template <std::size_t N>
class ExactMatrix {
public:
  ExactMatrix() = default;

  static ExactMatrix identity() {
    ExactMatrix m;
    for (std::size_t r = 0; r < N; ++r) m(r, r) = 1;
    return m;
  }
  static ExactMatrix diagonal(const std::array<ComplexRational, N>& d) {
    ExactMatrix m;
    for (std::size_t r = 0; r < N; ++r) m(r, r) = d[r];
    return m;
  }

  ComplexRational& operator()(std::size_t r, std::size_t c) { return e_[r * N + c]; }
  const ComplexRational& operator()(std::size_t r, std::size_t c) const { return e_[r * N + c]; }

  ExactMatrix conj() const {
    ExactMatrix m;
    for (std::size_t i = 0; i < N * N; ++i) m.e_[i] = e_[i].conj();
    return m;
  }
  ExactMatrix adjoint() const {
    ExactMatrix m;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) m(r, c) = (*this)(c, r).conj();
    return m;
  }
  bool is_zero() const {
    for (const auto& x : e_)
      if (!x.is_zero()) return false;
    return true;
  }

  ExactMatrix& operator+=(const ExactMatrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) e_[i] += o.e_[i];
    return *this;
  }
  ExactMatrix& operator-=(const ExactMatrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) e_[i] -= o.e_[i];
    return *this;
  }
  friend ExactMatrix operator+(ExactMatrix a, const ExactMatrix& b) { return a += b; }
  friend ExactMatrix operator-(ExactMatrix a, const ExactMatrix& b) { return a -= b; }
  friend ExactMatrix operator-(ExactMatrix a) {
    for (auto& x : a.e_) x = -x;
    return a;
  }
  friend ExactMatrix operator*(const ComplexRational& s, ExactMatrix a) {
    for (auto& x : a.e_) x = s * x;
    return a;
  }
  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
    ExactMatrix m;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t k = 0; k < N; ++k) {
        if (a(r, k).is_zero()) continue;
        for (std::size_t c = 0; c < N; ++c) m(r, c) += a(r, k) * b(k, c);
      }
    return m;
  }
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) { return a.e_ == b.e_; }

  std::array<std::complex<double>, N * N> to_complex() const {
    std::array<std::complex<double>, N * N> out;
    for (std::size_t i = 0; i < N * N; ++i) out[i] = e_[i].to_complex();
    return out;
  }

private:
  std::array<ComplexRational, N * N> e_{};
};

using Matrix2 = ExactMatrix<2>;
using Matrix4 = ExactMatrix<4>;
using Vector4 = std::array<ComplexRational, 4>;

/// A 4x4 matrix composed with zero or one complex-conjugation factor on the
/// right: f -> M f (linear) or f -> M f* (antilinear).
struct MatrixOperator {
  Matrix4 matrix = Matrix4::identity();
  bool antilinear = false;

  static MatrixOperator identity() { return {}; }
  static MatrixOperator conjugation() { return {Matrix4::identity(), true}; }

  friend bool operator==(const MatrixOperator&, const MatrixOperator&) = default;
};

/// General real-linear map on C^4: f -> L f + A f*. Needed for operators such
/// as v that conjugate only part of the doublet.
struct BlockOperator {
  Matrix4 linear;
  Matrix4 antilinear;

  BlockOperator() = default;
  BlockOperator(Matrix4 lin, Matrix4 anti) : linear(std::move(lin)), antilinear(std::move(anti)) {}
  BlockOperator(const MatrixOperator& op);

  /// Returns the single-flag form when one of the two parts vanishes.
  bool is_pure() const { return linear.is_zero() || antilinear.is_zero(); }
  MatrixOperator to_matrix_operator() const;

  friend bool operator==(const BlockOperator&, const BlockOperator&) = default;
};

enum class Representation { PauliDirac, QuantumMechanical };

std::string to_string(Representation rep);

/// g^{mu nu} for mu, nu in 0..4, extended with g^{44} = -1.
int metric(int mu, int nu);

MatrixOperator gamma(int mu, Representation rep);
std::array<MatrixOperator, 5> gamma_set(Representation rep);

Matrix2 pauli(int j);
Matrix4 embed_upper(const Matrix2& m);
Matrix4 embed_lower(const Matrix2& m);

/// Hermitian spin vector (s^1, s^2, s^3). QuantumMechanical gives
/// s = 1/2 blockdiag(sigma, -C sigma C) with the conjugations resolved;
/// PauliDirac gives s^j = (i/2) eps^{jln} shat_{ln}.
std::array<MatrixOperator, 3> spin(Representation rep);

/// shat_{mu nu} = 1/4 [gamma_mu, gamma_nu] in the Pauli-Dirac representation,
/// lower indices (gamma_0 = gamma^0, gamma_l = -gamma^l). Anti-Hermitian for
/// spatial pairs.
MatrixOperator spin_tensor(int mu, int nu);

MatrixOperator charge_sign();

/// v = blockdiag(I2, C I2).
BlockOperator involution_v();

MatrixOperator compose(const MatrixOperator& a, const MatrixOperator& b);
BlockOperator compose(const BlockOperator& a, const BlockOperator& b);

MatrixOperator add(const MatrixOperator& a, const MatrixOperator& b);
MatrixOperator scale(const ComplexRational& s, const MatrixOperator& a);

/// ab - ba. Both orderings carry the same antilinearity flag.
MatrixOperator commutator(const MatrixOperator& a, const MatrixOperator& b);
MatrixOperator anticommutator(const MatrixOperator& a, const MatrixOperator& b);
BlockOperator commutator(const BlockOperator& a, const BlockOperator& b);
BlockOperator anticommutator(const BlockOperator& a, const BlockOperator& b);

Vector4 apply(const MatrixOperator& op, const Vector4& v);
Vector4 apply(const BlockOperator& op, const Vector4& v);

/// Linear operator as floating-point row-major entries. Throws if antilinear.
std::array<std::complex<double>, 16> to_complex(const MatrixOperator& op);

struct CliffordViolation {
  int mu;
  int nu;
  std::string detail;
};

/// Checks {gamma^mu, gamma^nu} = 2 g^{mu nu} for all 25 ordered pairs in 0..4.
std::vector<CliffordViolation> verify_clifford(const std::array<MatrixOperator, 5>& gammas);
std::vector<CliffordViolation> verify_clifford(Representation rep);

/// JSON array-of-rows dump: each entry "a/b+c/d i".
std::string dump_json(const MatrixOperator& op);
std::string dump_json(const BlockOperator& op);

}  // namespace rcqm::clifford
