#pragma once

// Free evolution in the three pictures. Every law is diagonal or 4x4 block
// diagonal in momentum, so each evolution is applied exactly per mode for
// any duration.

#include <array>

#include "rcqm/field_ops.hpp"
#include "rcqm/state.hpp"

namespace rcqm {

/// sqrt(m^2 - Laplacian) via multiplication by omega(k).
State apply_omega(const State& f);

/// exp(-i omega dt). RCQM picture.
State evolve_sf(const State& f, double dt);

/// exp(-i gamma^0 omega dt): electron block e^{-i omega dt}, positron block
/// e^{+i omega dt}. FW picture.
State evolve_fw(const State& phi, double dt);

/// H_D(k) = alpha.k + beta m with alpha^j = gamma^0 gamma^j, beta = gamma^0.
Mat4 dirac_hamiltonian_mode(const std::array<double, 3>& k, double mass);

/// cos(omega dt) I - i sin(omega dt) H_D(k) / omega.
Mat4 dirac_propagator_mode(const std::array<double, 3>& k, double mass, double dt);

State apply_dirac_hamiltonian(const State& psi);

/// exp(-i H_D dt). Dirac picture.
State evolve_dirac(const State& psi, double dt);

/// d/dt of the Dirac solution through psi at psi.t, obtained by
/// differentiating the closed-form propagator from the t = 0 data.
State dirac_time_derivative(const State& psi);

/// Dispatches on the state's picture.
State evolve(const State& f, double dt);

struct EvolutionKernel {
  GridPtr grid;
  Picture picture = Picture::RCQM;
  double duration = 0.0;

  Mat4 mode(std::size_t site) const;
  State apply(const State& f) const;
  /// Largest deviation of mode(s)^dagger mode(s) from the identity.
  double unitarity_defect() const;
};

EvolutionKernel make_kernel(const GridPtr& grid, Picture picture, double duration);

}  // namespace rcqm
