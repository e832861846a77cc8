#include "rcqm/transforms.hpp"

#include <cmath>

#include "rcqm/dynamics.hpp"
#include "rcqm/errors.hpp"

namespace rcqm {

State apply_v(const State& f) {
  if (f.picture != Picture::RCQM) throw PictureMismatch("apply_v expects an RCQM state");
  State out = conjugate_lower(f);
  out.picture = Picture::FW;
  return out;
}

State apply_v_inv(const State& phi) {
  if (phi.picture != Picture::FW) throw PictureMismatch("apply_v_inv expects an FW state");
  State out = conjugate_lower(phi);
  out.picture = Picture::RCQM;
  return out;
}

Mat4 transition_mode(const std::array<double, 3>& k, double mass, int sign, int branch) {
  const double w = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2] + mass * mass);
  Mat4 gk = Mat4::Zero();
  for (int j = 0; j < 3; ++j)
    if (k[j] != 0.0) gk += k[j] * dirac_gamma(j + 1);
  const Mat4 m = (w + mass) * Mat4::Identity() - double(sign * branch) * gk;
  return m / std::sqrt(2.0 * w * (w + mass));
}

int select_vpm_branch(const GridPtr& grid) {
  const double m = grid->mass();
  const double dk = grid->dk();
  const std::array<std::array<double, 3>, 3> probes{{{dk, 0, 0}, {0.3, -1.1, 0.7}, {-2.0, 0.5, 1.5}}};
  for (int branch : {1, -1}) {
    bool ok = true;
    for (auto k : probes) {
      if (grid->dim() == 1) k[1] = k[2] = 0;
      const double w = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2] + m * m);
      const Mat4 lhs = transition_mode(k, m, 1, branch) * (w * dirac_gamma(0)) * transition_mode(k, m, -1, branch);
      if ((lhs - dirac_hamiltonian_mode(k, m)).cwiseAbs().maxCoeff() > 1e-10) ok = false;
    }
    if (ok) return branch;
  }
  throw std::logic_error("no transition-operator branch reproduces the Dirac Hamiltonian");
}

TransitionPair build_Vpm(const GridPtr& grid, const VpmOptions& options) {
  TransitionPair pair;
  pair.branch = options.branch == 0 ? select_vpm_branch(grid) : (options.branch > 0 ? 1 : -1);
  pair.plus = ModeTransform{grid, {}, Picture::FW, Picture::Dirac};
  pair.minus = ModeTransform{grid, {}, Picture::Dirac, Picture::FW};
  pair.plus.modes.reserve(grid->size());
  pair.minus.modes.reserve(grid->size());
  const int minus_sign = options.flip_vminus ? 1 : -1;
  for (std::size_t s = 0; s < grid->size(); ++s) {
    const auto k = grid->k_vector(s);
    pair.plus.modes.push_back(transition_mode(k, grid->mass(), 1, pair.branch));
    pair.minus.modes.push_back(transition_mode(k, grid->mass(), minus_sign, pair.branch));
  }
  return pair;
}

State ModeTransform::apply(const State& f) const {
  if (f.picture != from)
    throw PictureMismatch("transform expects a " + to_string(from) + " state, got " + to_string(f.picture));
  if (!(f.grid->spec() == grid->spec())) throw GridMismatch("transform built for a different grid");
  State out = apply_modes(f, [this](std::size_t s) { return modes[s]; });
  out.picture = to;
  return out;
}

State apply_Vplus(const State& phi, const TransitionPair& vpm) { return vpm.plus.apply(phi); }
State apply_Vminus(const State& psi, const TransitionPair& vpm) { return vpm.minus.apply(psi); }

State apply_W(const State& f, const TransitionPair& vpm) { return apply_Vplus(apply_v(f), vpm); }
State apply_W_inv(const State& psi, const TransitionPair& vpm) { return apply_v_inv(apply_Vminus(psi, vpm)); }

State apply_W(const State& f) { return apply_W(f, build_Vpm(f.grid)); }
State apply_W_inv(const State& psi) { return apply_W_inv(psi, build_Vpm(psi.grid)); }

IntertwiningReport check_intertwinings(const State& packet, std::span<const double> times,
                                       const TransitionPair& vpm) {
  const double scale = norm(packet);
  const State phi0 = apply_v(packet);
  const State psi0 = apply_W(packet, vpm);
  IntertwiningReport report;
  for (double t : times) {
    const State f_t = evolve_sf(packet, t);
    const State psi_t = evolve_dirac(psi0, t);
    IntertwiningRow row;
    row.t = t;
    row.fw = distance(evolve_fw(phi0, t), apply_v(f_t)) / scale;
    row.dirac = distance(psi_t, apply_W(f_t, vpm)) / scale;
    row.dirac_inverse = distance(apply_W_inv(psi_t, vpm), f_t) / scale;
    report.max_fw = std::max(report.max_fw, row.fw);
    report.max_dirac = std::max({report.max_dirac, row.dirac, row.dirac_inverse});
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace rcqm
