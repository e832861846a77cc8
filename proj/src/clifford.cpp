#include "rcqm/clifford.hpp"

#include "json.hpp"

namespace rcqm::clifford {

ComplexRational::ComplexRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

ComplexRational::ComplexRational(long re_num, long re_den, long im_num, long im_den) {
  if (re_den == 0 || im_den == 0) throw std::invalid_argument("ComplexRational: zero denominator");
  re_ = mpq_class(re_num, re_den);
  im_ = mpq_class(im_num, im_den);
  re_.canonicalize();
  im_.canonicalize();
}

std::string ComplexRational::to_string() const {
  std::string out = re_num().get_str() + "/" + re_den().get_str();
  mpz_class inum = im_num();
  out += (sgn(inum) < 0) ? "-" : "+";
  inum = abs(inum);
  out += inum.get_str() + "/" + im_den().get_str() + " i";
  return out;
}

ComplexRational& ComplexRational::operator+=(const ComplexRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

ComplexRational& ComplexRational::operator-=(const ComplexRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

ComplexRational& ComplexRational::operator*=(const ComplexRational& o) {
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

BlockOperator::BlockOperator(const MatrixOperator& op) {
  if (op.antilinear)
    antilinear = op.matrix;
  else
    linear = op.matrix;
}

MatrixOperator BlockOperator::to_matrix_operator() const {
  if (antilinear.is_zero()) return {linear, false};
  if (linear.is_zero()) return {antilinear, true};
  throw std::logic_error("BlockOperator has both linear and antilinear parts");
}

std::string to_string(Representation rep) {
  return rep == Representation::PauliDirac ? "PauliDirac" : "QuantumMechanical";
}

int metric(int mu, int nu) {
  if (mu < 0 || mu > 4 || nu < 0 || nu > 4) throw std::out_of_range("metric index out of range");
  if (mu != nu) return 0;
  return mu == 0 ? 1 : -1;
}

Matrix2 pauli(int j) {
  Matrix2 s;
  switch (j) {
    case 1:
      s(0, 1) = 1;
      s(1, 0) = 1;
      break;
    case 2:
      s(0, 1) = -ComplexRational::i();
      s(1, 0) = ComplexRational::i();
      break;
    case 3:
      s(0, 0) = 1;
      s(1, 1) = -1;
      break;
    default:
      throw std::out_of_range("pauli index must be 1..3");
  }
  return s;
}

Matrix4 embed_upper(const Matrix2& m) {
  Matrix4 out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out(r, c) = m(r, c);
  return out;
}

Matrix4 embed_lower(const Matrix2& m) {
  Matrix4 out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out(r + 2, c + 2) = m(r, c);
  return out;
}

namespace {

Matrix4 off_diagonal(const Matrix2& upper_right, const Matrix2& lower_left) {
  Matrix4 out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      out(r, c + 2) = upper_right(r, c);
      out(r + 2, c) = lower_left(r, c);
    }
  return out;
}

MatrixOperator pauli_dirac_gamma(int mu) {
  switch (mu) {
    case 0:
      return {Matrix4::diagonal({1, 1, -1, -1}), false};
    case 1:
    case 2:
    case 3:
      return {off_diagonal(pauli(mu), -pauli(mu)), false};
    case 4: {
      MatrixOperator g = pauli_dirac_gamma(0);
      for (int k = 1; k <= 3; ++k) g = compose(g, pauli_dirac_gamma(k));
      return g;
    }
    default:
      throw std::out_of_range("gamma index must be 0..4");
  }
}

// Explicit barred forms: gamma^1 C, gamma^0 gamma^2 C, gamma^3 C, gamma^0 gamma^4 C.
MatrixOperator quantum_mechanical_gamma(int mu) {
  const MatrixOperator c = MatrixOperator::conjugation();
  switch (mu) {
    case 0:
      return pauli_dirac_gamma(0);
    case 1:
    case 3:
      return compose(pauli_dirac_gamma(mu), c);
    case 2:
    case 4:
      return compose(compose(pauli_dirac_gamma(0), pauli_dirac_gamma(mu)), c);
    default:
      throw std::out_of_range("gamma index must be 0..4");
  }
}

}  // namespace

MatrixOperator gamma(int mu, Representation rep) {
  return rep == Representation::PauliDirac ? pauli_dirac_gamma(mu) : quantum_mechanical_gamma(mu);
}

std::array<MatrixOperator, 5> gamma_set(Representation rep) {
  return {gamma(0, rep), gamma(1, rep), gamma(2, rep), gamma(3, rep), gamma(4, rep)};
}

MatrixOperator spin_tensor(int mu, int nu) {
  const MatrixOperator a = scale(metric(mu, mu), pauli_dirac_gamma(mu));
  const MatrixOperator b = scale(metric(nu, nu), pauli_dirac_gamma(nu));
  return scale(ComplexRational(1, 4, 0, 1), commutator(a, b));
}

std::array<MatrixOperator, 3> spin(Representation rep) {
  std::array<MatrixOperator, 3> s;
  if (rep == Representation::QuantumMechanical) {
    const ComplexRational half(1, 2, 0, 1);
    for (int j = 1; j <= 3; ++j) {
      Matrix4 m = embed_upper(pauli(j)) - embed_lower(pauli(j).conj());
      s[j - 1] = {half * m, false};
    }
  } else {
    // s^j = (i/2) eps^{jln} shat_{ln} = i shat_{ln} for cyclic (j, l, n).
    constexpr int pairs[3][2] = {{2, 3}, {3, 1}, {1, 2}};
    for (int j = 0; j < 3; ++j)
      s[j] = scale(ComplexRational::i(), spin_tensor(pairs[j][0], pairs[j][1]));
  }
  return s;
}

MatrixOperator charge_sign() { return scale(-1, pauli_dirac_gamma(0)); }

BlockOperator involution_v() {
  return {embed_upper(Matrix2::identity()), embed_lower(Matrix2::identity())};
}

MatrixOperator compose(const MatrixOperator& a, const MatrixOperator& b) {
  return {a.matrix * (a.antilinear ? b.matrix.conj() : b.matrix), a.antilinear != b.antilinear};
}

BlockOperator compose(const BlockOperator& a, const BlockOperator& b) {
  return {a.linear * b.linear + a.antilinear * b.antilinear.conj(),
          a.linear * b.antilinear + a.antilinear * b.linear.conj()};
}

MatrixOperator add(const MatrixOperator& a, const MatrixOperator& b) {
  if (a.antilinear != b.antilinear)
    throw std::invalid_argument("add: mixed antilinearity needs a BlockOperator");
  return {a.matrix + b.matrix, a.antilinear};
}

MatrixOperator scale(const ComplexRational& s, const MatrixOperator& a) { return {s * a.matrix, a.antilinear}; }

MatrixOperator commutator(const MatrixOperator& a, const MatrixOperator& b) {
  const MatrixOperator ab = compose(a, b);
  const MatrixOperator ba = compose(b, a);
  return {ab.matrix - ba.matrix, ab.antilinear};
}

MatrixOperator anticommutator(const MatrixOperator& a, const MatrixOperator& b) {
  const MatrixOperator ab = compose(a, b);
  const MatrixOperator ba = compose(b, a);
  return {ab.matrix + ba.matrix, ab.antilinear};
}

BlockOperator commutator(const BlockOperator& a, const BlockOperator& b) {
  const BlockOperator ab = compose(a, b);
  const BlockOperator ba = compose(b, a);
  return {ab.linear - ba.linear, ab.antilinear - ba.antilinear};
}

BlockOperator anticommutator(const BlockOperator& a, const BlockOperator& b) {
  const BlockOperator ab = compose(a, b);
  const BlockOperator ba = compose(b, a);
  return {ab.linear + ba.linear, ab.antilinear + ba.antilinear};
}

namespace {

Vector4 multiply(const Matrix4& m, const Vector4& v) {
  Vector4 out{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out[r] += m(r, c) * v[c];
  return out;
}

Vector4 conj(const Vector4& v) {
  Vector4 out;
  for (int i = 0; i < 4; ++i) out[i] = v[i].conj();
  return out;
}

}  // namespace

Vector4 apply(const MatrixOperator& op, const Vector4& v) {
  return multiply(op.matrix, op.antilinear ? conj(v) : v);
}

Vector4 apply(const BlockOperator& op, const Vector4& v) {
  Vector4 lin = multiply(op.linear, v);
  const Vector4 anti = multiply(op.antilinear, conj(v));
  for (int i = 0; i < 4; ++i) lin[i] += anti[i];
  return lin;
}

std::array<std::complex<double>, 16> to_complex(const MatrixOperator& op) {
  if (op.antilinear) throw std::invalid_argument("to_complex: operator is antilinear");
  return op.matrix.to_complex();
}

std::vector<CliffordViolation> verify_clifford(const std::array<MatrixOperator, 5>& gammas) {
  std::vector<CliffordViolation> violations;
  for (int mu = 0; mu <= 4; ++mu) {
    for (int nu = 0; nu <= 4; ++nu) {
      const MatrixOperator ac = anticommutator(gammas[mu], gammas[nu]);
      const Matrix4 expected = ComplexRational(2 * metric(mu, nu)) * Matrix4::identity();
      if (!(ac.matrix == expected) || (ac.antilinear && !expected.is_zero())) {
        violations.push_back({mu, nu,
                              ac.antilinear ? "anticommutator is antilinear"
                                            : "anticommutator differs from 2 g^{mu nu} I"});
      }
    }
  }
  return violations;
}

std::vector<CliffordViolation> verify_clifford(Representation rep) { return verify_clifford(gamma_set(rep)); }

namespace {

nlohmann::json matrix_json(const Matrix4& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < 4; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < 4; ++c) row.push_back(m(r, c).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string dump_json(const MatrixOperator& op) {
  return nlohmann::json{{"antilinear", op.antilinear}, {"matrix", matrix_json(op.matrix)}}.dump();
}

std::string dump_json(const BlockOperator& op) {
  return nlohmann::json{{"linear", matrix_json(op.linear)}, {"antilinear", matrix_json(op.antilinear)}}.dump();
}

}  // namespace rcqm::clifford
