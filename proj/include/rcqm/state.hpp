#pragma once

// Four-component doublet states on a Grid. The upper two components carry the
// particle (electron) block, the lower two the antiparticle (positron) block.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rcqm/grid.hpp"

namespace rcqm {

enum class Realization { Position, Momentum };
enum class Picture { RCQM, FW, Dirac };

std::string to_string(Realization r);
std::string to_string(Picture p);
Picture picture_from_string(const std::string& name);

struct State {
  GridPtr grid;
  Realization realization = Realization::Position;
  Picture picture = Picture::RCQM;
  double t = 0.0;
  /// Component-major: data[c * grid->size() + site].
  std::vector<cplx> data;

  cplx& at(int component, std::size_t site) { return data[component * grid->size() + site]; }
  const cplx& at(int component, std::size_t site) const { return data[component * grid->size() + site]; }

  State& operator+=(const State& other);
  State& operator-=(const State& other);
  State& operator*=(cplx s);
};

State operator+(State a, const State& b);
State operator-(State a, const State& b);
State operator*(cplx s, State a);

State zero_state(const GridPtr& grid, Realization r, Picture p, double t = 0.0);

/// Same grid spec, else GridMismatch.
void require_same_grid(const State& f, const State& g);

/// sum f^dagger g weighted by dx^d or dk^d. Same grid and realization required.
cplx inner_product(const State& f, const State& g);
double norm(const State& f);

/// ||f - g|| with g brought into f's realization.
double distance(const State& f, const State& g);

/// Cartesian ort D_alpha, alpha in 1..4.
std::array<cplx, 4> basis_ort(int alpha);

/// Lattice-normalized de Broglie wave L^{-d/2} exp(-i omega t + i k.x) D_alpha in
/// the position realization. k_offsets are integer lattice offsets.
State plane_wave(const GridPtr& grid, const std::array<int, 3>& k_offsets, int alpha, double t = 0.0);
/// Same, with k given as a momentum vector that must lie on the lattice.
State plane_wave(const GridPtr& grid, const std::array<double, 3>& k, int alpha, double t = 0.0);

struct PacketSpec {
  std::array<double, 3> center_x{0, 0, 0};
  std::array<double, 3> center_k{0, 0, 0};
  /// Standard deviation of |f|^2 along each axis.
  double width = 2.0;
  std::array<cplx, 4> polarization{1, 0, 0, 0};
};

/// Admissible width range [1.5 dx, L / 16] for truncation error near 1e-10.
std::pair<double, double> packet_width_bounds(const GridSpec& spec);

/// Normalized Gaussian exp(-|x - x0|^2 / (4 w^2) + i k0.x) times the
/// normalized polarization, position realization, RCQM picture, t = 0.
State gaussian_packet(const GridPtr& grid, const PacketSpec& spec);

/// Complex normal samples on every component from mt19937_64(seed),
/// normalized to unit norm.
State random_state(const GridPtr& grid, std::uint64_t seed, Picture picture = Picture::RCQM);

/// Quantum-mechanical amplitudes over the momentum lattice, time independent.
struct AmplitudeSet {
  GridPtr grid;
  /// a-_r, r = 1, 2; component-major 2 * size().
  std::vector<cplx> a_minus;
  /// a+_r', r' = 3, 4; component-major 2 * size().
  std::vector<cplx> a_plus;

  /// Column (a-_1, a-_2, a+_3, a+_4) as a momentum-realization field at t = 0.
  State as_field() const;
  static AmplitudeSet from_field(const State& field);
};

/// Sum over k of |a-|^2 + |a+|^2 weighted by dk^d.
double total_probability(const AmplitudeSet& a);

/// f~(t, k) = exp(-i omega t) A(k). RCQM picture only.
AmplitudeSet decompose(const State& f);
/// Momentum realization, RCQM picture, time t.
State reconstruct(const AmplitudeSet& a, double t);

/// FW picture: upper block exp(-i omega t) a-(k); lower block at momentum k is
/// exp(+i omega t) conj(a+(-k)).
AmplitudeSet decompose_fw(const State& phi);
State reconstruct_fw(const AmplitudeSet& a, double t);

/// Portable snapshot: one JSON document with the grid spec, tags and the
/// interleaved re/im samples.
void write_snapshot(std::ostream& out, const State& f);
State read_snapshot(std::istream& in);

/// CSV of |f|^2 marginals along each axis in the position realization:
/// axis,coordinate,density.
void write_marginals_csv(std::ostream& out, const State& f);

}  // namespace rcqm
