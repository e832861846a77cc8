#pragma once

// Maps between the three pictures:
//   v      RCQM <-> FW      (identity on the electron block, conjugation on
//                            the positron block; its own inverse)
//   V+/V-  FW   <-> Dirac   (unitary per momentum mode)
//   W      RCQM  -> Dirac   W = V+ v, W^{-1} = v V-

#include <span>
#include <vector>

#include "rcqm/field_ops.hpp"
#include "rcqm/state.hpp"

namespace rcqm {

State apply_v(const State& f);
State apply_v_inv(const State& phi);

struct VpmOptions {
  /// Sign s in V+/-(k) = (-/+ s gamma^l k_l + omega + m) / sqrt(2 omega (omega + m)).
  /// Zero lets build_Vpm choose the branch for which V+ gamma^0 omega V- = H_D.
  int branch = 0;
  /// Debug: builds V- with the sign of V+, breaking V+ V- = I.
  bool flip_vminus = false;
};

struct ModeTransform {
  GridPtr grid;
  std::vector<Mat4> modes;
  Picture from = Picture::FW;
  Picture to = Picture::Dirac;

  State apply(const State& f) const;
};

struct TransitionPair {
  ModeTransform plus;   // FW -> Dirac
  ModeTransform minus;  // Dirac -> FW
  int branch = 1;
};

/// Per-mode V+ and V- for one branch sign.
Mat4 transition_mode(const std::array<double, 3>& k, double mass, int sign, int branch);

/// Branch for which V+ (gamma^0 omega) V- = H_D holds on probe modes of this
/// grid; throws when neither branch does.
int select_vpm_branch(const GridPtr& grid);

TransitionPair build_Vpm(const GridPtr& grid, const VpmOptions& options = {});

State apply_Vplus(const State& phi, const TransitionPair& vpm);
State apply_Vminus(const State& psi, const TransitionPair& vpm);

State apply_W(const State& f, const TransitionPair& vpm);
State apply_W_inv(const State& psi, const TransitionPair& vpm);
State apply_W(const State& f);
State apply_W_inv(const State& psi);

struct IntertwiningRow {
  double t = 0;
  /// ||evolve_fw(v f, t) - v evolve_sf(f, t)|| / ||f||
  double fw = 0;
  /// ||evolve_dirac(W f, t) - W evolve_sf(f, t)|| / ||f||
  double dirac = 0;
  /// ||W^{-1} evolve_dirac(W f, t) - evolve_sf(f, t)|| / ||f||
  double dirac_inverse = 0;
};

struct IntertwiningReport {
  std::vector<IntertwiningRow> rows;
  double max_fw = 0;
  double max_dirac = 0;
};

IntertwiningReport check_intertwinings(const State& packet, std::span<const double> times,
                                       const TransitionPair& vpm);

}  // namespace rcqm
