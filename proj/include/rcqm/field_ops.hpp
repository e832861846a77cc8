#pragma once

// Pointwise and per-mode building blocks shared by the evolution, transform
// and generator code. Every function returns its result in the realization
// of its input.

#include <functional>

#include <Eigen/Dense>

#include "rcqm/clifford.hpp"
#include "rcqm/state.hpp"

namespace rcqm {

using Mat4 = Eigen::Matrix4cd;

Mat4 to_eigen(const clifford::MatrixOperator& op);

/// Floating-point Pauli-Dirac gamma^mu, mu in 0..4.
const Mat4& dirac_gamma(int mu);

/// Multiplies every component at momentum site s by factor(s).
State multiply_k(const State& f, const std::function<cplx(std::size_t)>& factor);

/// Multiplies by the coordinate x^axis of the centered fundamental domain.
State multiply_x(const State& f, int axis);

/// Same 4x4 matrix at every site. Valid in either realization.
State apply_pointwise(const State& f, const Mat4& m);

/// Per-mode matrix mode(s) on the momentum lattice.
State apply_modes(const State& f, const std::function<Mat4(std::size_t)>& mode);

/// Complex conjugation on the lower two components. In the momentum
/// realization this conjugates and maps k to -k.
State conjugate_lower(const State& f);

}  // namespace rcqm
