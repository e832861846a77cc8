#include "rcqm/field_ops.hpp"

#include <array>

#include "rcqm/errors.hpp"
#include "rcqm/parallel.hpp"

namespace rcqm {

Mat4 to_eigen(const clifford::MatrixOperator& op) {
  const auto entries = clifford::to_complex(op);
  Mat4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = entries[r * 4 + c];
  return m;
}

const Mat4& dirac_gamma(int mu) {
  static const std::array<Mat4, 5> table = [] {
    std::array<Mat4, 5> g;
    for (int i = 0; i < 5; ++i) g[i] = to_eigen(clifford::gamma(i, clifford::Representation::PauliDirac));
    return g;
  }();
  if (mu < 0 || mu > 4) throw std::out_of_range("gamma index must be 0..4");
  return table[mu];
}

namespace {

State in_realization(const State& f, Realization r) {
  return r == Realization::Momentum ? to_momentum(f) : to_position(f);
}

}  // namespace

State multiply_k(const State& f, const std::function<cplx(std::size_t)>& factor) {
  State k = to_momentum(f);
  const std::size_t n = k.grid->size();
  parallel_for(n, [&](std::size_t b, std::size_t e) {
    for (std::size_t s = b; s < e; ++s) {
      const cplx w = factor(s);
      for (int c = 0; c < kComponents; ++c) k.at(c, s) *= w;
    }
  });
  return in_realization(k, f.realization);
}

State multiply_x(const State& f, int axis) {
  if (axis < 0 || axis >= f.grid->dim()) throw std::out_of_range("coordinate axis outside the grid dimension");
  State x = to_position(f);
  const auto& g = *x.grid;
  for (std::size_t s = 0; s < g.size(); ++s) {
    const double xs = g.x(s, axis);
    for (int c = 0; c < kComponents; ++c) x.at(c, s) *= xs;
  }
  return in_realization(x, f.realization);
}

State apply_pointwise(const State& f, const Mat4& m) {
  State out = f;
  const std::size_t n = f.grid->size();
  parallel_for(n, [&](std::size_t b, std::size_t e) {
    for (std::size_t s = b; s < e; ++s) {
      Eigen::Vector4cd v;
      for (int c = 0; c < kComponents; ++c) v[c] = f.at(c, s);
      const Eigen::Vector4cd w = m * v;
      for (int c = 0; c < kComponents; ++c) out.at(c, s) = w[c];
    }
  });
  return out;
}

State apply_modes(const State& f, const std::function<Mat4(std::size_t)>& mode) {
  const State k = to_momentum(f);
  State out = k;
  const std::size_t n = k.grid->size();
  parallel_for(n, [&](std::size_t b, std::size_t e) {
    for (std::size_t s = b; s < e; ++s) {
      Eigen::Vector4cd v;
      for (int c = 0; c < kComponents; ++c) v[c] = k.at(c, s);
      const Eigen::Vector4cd w = mode(s) * v;
      for (int c = 0; c < kComponents; ++c) out.at(c, s) = w[c];
    }
  });
  return in_realization(out, f.realization);
}

State conjugate_lower(const State& f) {
  State out = f;
  const auto& g = *f.grid;
  for (int c = 2; c < kComponents; ++c) {
    for (std::size_t s = 0; s < g.size(); ++s) {
      const std::size_t src = f.realization == Realization::Momentum ? g.negated(s) : s;
      out.at(c, s) = std::conj(f.at(c, src));
    }
  }
  return out;
}

}  // namespace rcqm
