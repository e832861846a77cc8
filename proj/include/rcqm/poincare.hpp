#pragma once

// Poincare generators of the free doublet in every realization, their
// commutator algebra, conserved quantities and the exactly representable
// finite transformations.
//
// Index conventions: x_l is the Cartesian coordinate x^l, p_l acts as k_l on
// exp(i k.x), and the structure constants are those of the covariant algebra
//   [p_mu, j_rs]   = i g_mr p_s - i g_ms p_r
//   [j_mn, j_rs]   = -i (g_mr j_ns + g_rn j_sm + g_ns j_mr + g_sm j_rn)
// with g = diag(1, -1, -1, -1). Prime generators are -i times Hermitian ones.

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rcqm/state.hpp"
#include "rcqm/transforms.hpp"

namespace rcqm {

enum class Generator { P0, P1, P2, P3, J23, J31, J12, J01, J02, J03 };
inline constexpr std::array<Generator, 10> kAllGenerators{Generator::P0,  Generator::P1,  Generator::P2,  Generator::P3,
                                                          Generator::J23, Generator::J31, Generator::J12, Generator::J01,
                                                          Generator::J02, Generator::J03};

enum class GeneratorRealization { RcqmX, RcqmK, Amplitude, FW, DiracInduced, DiracLocal };
enum class Convention { Hermitian, Prime };

struct GeneratorLabel {
  GeneratorRealization realization = GeneratorRealization::RcqmX;
  Generator index = Generator::P0;
  Convention convention = Convention::Hermitian;

  friend bool operator==(const GeneratorLabel&, const GeneratorLabel&) = default;
};

std::string to_string(Generator g);
std::string to_string(GeneratorRealization r);
std::string to_string(Convention c);
GeneratorRealization realization_from_string(const std::string& name);

/// Picture of the states a realization acts on. Amplitude generators act on
/// AmplitudeSet::as_field() (RCQM picture, momentum realization).
Picture picture_of(GeneratorRealization r);

/// Right-hand side of [a, b] as a linear combination of generators.
using LinearCombination = std::vector<std::pair<Generator, cplx>>;

/// Hermitian table from the covariant relations above.
LinearCombination structure_constants(Generator a, Generator b, Convention convention);
/// The anti-Hermitian relations written out directly, independent of the
/// Hermitian table:
///   [p'_mu, j'_rs] = g_mr p'_s - g_ms p'_r
///   [j'_mn, j'_rs] = -(g_mr j'_ns + g_rn j'_sm + g_ns j'_mr + g_sm j'_rn)
LinearCombination prime_structure_constants(Generator a, Generator b);
std::string describe(const LinearCombination& rhs);

struct GeneratorOptions {
  /// Debug: omit the spin matrix from this rotation generator.
  std::optional<Generator> drop_spin;
  /// Amplitude boosts carry the t k_l term unless this is false, which gives
  /// the t = 0 form.
  bool amplitude_time_term = true;
};

/// Image of f under the generator. Boosts use f.t as the explicit time.
/// The result is in f's realization.
State apply_generator(const GeneratorLabel& label, const State& f, const GeneratorOptions& options = {});

/// Hermitian coordinate and momentum operators of the realization family.
State apply_position(const State& f, int axis);
State apply_momentum(const State& f, int axis);

struct CommutatorResult {
  Generator a;
  Generator b;
  double residual = 0;
  std::string expected;
};

/// ||([A, B] - RHS) f|| / ||f||.
CommutatorResult commutator_residual(const GeneratorLabel& a, const GeneratorLabel& b, const State& f,
                                     const GeneratorOptions& options = {});

/// Every unordered pair of distinct generators from `subset` (all 45 pairs by
/// default); reuses B f across pairs.
std::vector<CommutatorResult> commutator_sweep(GeneratorRealization realization, Convention convention,
                                               const State& f, const GeneratorOptions& options = {},
                                               std::span<const Generator> subset = kAllGenerators);

// Conserved quantities --------------------------------------------------------

/// The 10 generators followed by the 12 additional observables: spin s_j,
/// spin boost term s_ln p_n / (omega + m), orbital m_ln and orbital boost
/// m_0l = t p_l - {x_l, omega} / 2.
enum class Quantity {
  P0, P1, P2, P3, J23, J31, J12, J01, J02, J03,
  S1, S2, S3, SB01, SB02, SB03, M23, M31, M12, M01, M02, M03
};
inline constexpr std::size_t kQuantityCount = 22;
inline constexpr std::size_t kMainQuantityCount = 10;

std::string to_string(Quantity q);
Quantity quantity_at(std::size_t i);

/// Main quantities that keep their meaning on a grid of this dimension. For
/// d = 1 the transverse rotations and boosts do not survive the reduction and
/// only p0, p1, j23 and j01 remain.
std::vector<std::size_t> comparable_quantities(int dim);

/// Hermitian observable image. For FW and Dirac realizations this is i times
/// the anti-Hermitian form. Dirac additional observables are V+ q V- with q
/// the FW form.
State apply_observable(Quantity q, GeneratorRealization realization, const State& f, const TransitionPair* vpm = nullptr);

struct ConservedReport {
  Picture picture = Picture::RCQM;
  double t = 0;
  std::array<double, kQuantityCount> values{};
  /// Largest |Im <f, Q f>| across quantities.
  double max_imaginary = 0;
};

/// Expectations <f, Q f> in the natural realization of f.picture
/// (RcqmX, FW, DiracInduced).
ConservedReport conserved_quantities(const State& f, const TransitionPair* vpm = nullptr);

/// <A, Q A> with the amplitude generators, A = decompose(f).
std::array<double, kMainQuantityCount> amplitude_quantities(const AmplitudeSet& a);

/// FW quantities written in the amplitudes B = (a-, conj a+):
/// p0 = gamma^0 omega, p_l = gamma^0 k_l, j_ln = orbital + Sigma_ln / 2,
/// j_0l = -{x_l, omega} / 2 - Sigma_ln k_n / (2 (omega + m)).
std::array<double, kMainQuantityCount> fw_amplitude_quantities(const AmplitudeSet& a);

struct ConservationRun {
  Picture picture = Picture::RCQM;
  std::vector<ConservedReport> checkpoints;
  /// max_t |Q(t) - Q(0)| per quantity.
  std::array<double, kQuantityCount> drift{};
  double max_drift() const;
};

/// Evolves f to each of `checkpoints` equally spaced times in [0, horizon]
/// (both ends included) and evaluates all quantities there.
ConservationRun run_conservation(const State& f, double horizon, int checkpoints, const TransitionPair* vpm = nullptr);

/// Long CSV: checkpoint,t,quantity,value,drift.
void write_conservation_csv(std::ostream& out, const ConservationRun& run);
void write_conservation_json(std::ostream& out, const ConservationRun& run);

double energy_rcqm(const AmplitudeSet& a);
double energy_fw(const AmplitudeSet& a);

// Finite transformations -----------------------------------------------------

enum class FiniteKind { TimeShift, SpaceShift, RotationZ };

/// TimeShift: parameter[0] is the time step. SpaceShift: displacement vector.
/// RotationZ: parameter[0] is the angle; only multiples of pi/2 are exact on a
/// Cartesian lattice, other angles throw Unsupported. RCQM picture only.
State finite_transform(const State& f, FiniteKind kind, const std::array<double, 3>& parameter);

}  // namespace rcqm
