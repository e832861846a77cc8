#include "rcqm/dynamics.hpp"

#include <cmath>

#include "rcqm/errors.hpp"

namespace rcqm {

namespace {

void require_picture(const State& f, Picture p, const char* op) {
  if (f.picture != p)
    throw PictureMismatch(std::string(op) + " expects a " + to_string(p) + " state, got " + to_string(f.picture));
}

}  // namespace

State apply_omega(const State& f) {
  const auto& g = *f.grid;
  return multiply_k(f, [&g](std::size_t s) { return cplx(g.omega(s)); });
}

State evolve_sf(const State& f, double dt) {
  require_picture(f, Picture::RCQM, "evolve_sf");
  const auto& g = *f.grid;
  State out = multiply_k(f, [&g, dt](std::size_t s) { return std::polar(1.0, -g.omega(s) * dt); });
  out.t = f.t + dt;
  return out;
}

State evolve_fw(const State& phi, double dt) {
  require_picture(phi, Picture::FW, "evolve_fw");
  State k = to_momentum(phi);
  const auto& g = *k.grid;
  for (std::size_t s = 0; s < g.size(); ++s) {
    const cplx down = std::polar(1.0, -g.omega(s) * dt);
    k.at(0, s) *= down;
    k.at(1, s) *= down;
    k.at(2, s) *= std::conj(down);
    k.at(3, s) *= std::conj(down);
  }
  k.t = phi.t + dt;
  return phi.realization == Realization::Momentum ? k : to_position(k);
}

Mat4 dirac_hamiltonian_mode(const std::array<double, 3>& k, double mass) {
  const Mat4& beta = dirac_gamma(0);
  Mat4 h = mass * beta;
  for (int j = 0; j < 3; ++j)
    if (k[j] != 0.0) h += k[j] * (beta * dirac_gamma(j + 1));
  return h;
}

Mat4 dirac_propagator_mode(const std::array<double, 3>& k, double mass, double dt) {
  const double w = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2] + mass * mass);
  return std::cos(w * dt) * Mat4::Identity() - cplx(0, std::sin(w * dt) / w) * dirac_hamiltonian_mode(k, mass);
}

State apply_dirac_hamiltonian(const State& psi) {
  const auto& g = *psi.grid;
  return apply_modes(psi, [&g](std::size_t s) { return dirac_hamiltonian_mode(g.k_vector(s), g.mass()); });
}

State evolve_dirac(const State& psi, double dt) {
  require_picture(psi, Picture::Dirac, "evolve_dirac");
  const auto& g = *psi.grid;
  State out = apply_modes(psi, [&g, dt](std::size_t s) { return dirac_propagator_mode(g.k_vector(s), g.mass(), dt); });
  out.t = psi.t + dt;
  return out;
}

State dirac_time_derivative(const State& psi) {
  require_picture(psi, Picture::Dirac, "dirac_time_derivative");
  const auto& g = *psi.grid;
  const double t = psi.t;
  const State initial = evolve_dirac(psi, -t);
  State out = apply_modes(initial, [&g, t](std::size_t s) {
    const double w = g.omega(s);
    return Mat4(-w * std::sin(w * t) * Mat4::Identity() -
                cplx(0, std::cos(w * t)) * dirac_hamiltonian_mode(g.k_vector(s), g.mass()));
  });
  out.t = t;
  return out;
}

State evolve(const State& f, double dt) {
  switch (f.picture) {
    case Picture::RCQM:
      return evolve_sf(f, dt);
    case Picture::FW:
      return evolve_fw(f, dt);
    case Picture::Dirac:
      return evolve_dirac(f, dt);
  }
  throw PictureMismatch("unknown picture");
}

Mat4 EvolutionKernel::mode(std::size_t site) const {
  const double w = grid->omega(site);
  const cplx down = std::polar(1.0, -w * duration);
  switch (picture) {
    case Picture::RCQM:
      return down * Mat4::Identity();
    case Picture::FW: {
      Mat4 m = Mat4::Zero();
      m.diagonal() << down, down, std::conj(down), std::conj(down);
      return m;
    }
    case Picture::Dirac:
      return dirac_propagator_mode(grid->k_vector(site), grid->mass(), duration);
  }
  return Mat4::Identity();
}

State EvolutionKernel::apply(const State& f) const {
  require_same_grid(f, State{grid, Realization::Position, picture, 0.0, {}});
  if (f.picture != picture) throw PictureMismatch("kernel picture does not match state picture");
  State out = apply_modes(f, [this](std::size_t s) { return mode(s); });
  out.t = f.t + duration;
  return out;
}

double EvolutionKernel::unitarity_defect() const {
  double worst = 0;
  for (std::size_t s = 0; s < grid->size(); ++s) {
    const Mat4 u = mode(s);
    worst = std::max(worst, (u.adjoint() * u - Mat4::Identity()).cwiseAbs().maxCoeff());
  }
  return worst;
}

EvolutionKernel make_kernel(const GridPtr& grid, Picture picture, double duration) {
  return EvolutionKernel{grid, picture, duration};
}

}  // namespace rcqm
