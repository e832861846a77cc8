#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "rcqm/dynamics.hpp"
#include "rcqm/errors.hpp"
#include "rcqm/poincare.hpp"

using namespace rcqm;
using GR = GeneratorRealization;

namespace {

constexpr cplx I{0, 1};

GridPtr wide1() { return make_grid({1, 101, 80.0, 1.0}); }

State packet1(std::array<cplx, 4> pol = {1, 0, 0.5, cplx(0, 0.5)}) {
  PacketSpec p;
  p.center_k = {0.5, 0, 0};
  p.width = 2;
  p.polarization = pol;
  return gaussian_packet(wide1(), p);
}

State in_picture(const State& f, Picture p, const TransitionPair& vpm) {
  if (p == Picture::FW) return apply_v(f);
  if (p == Picture::Dirac) return apply_W(f, vpm);
  return f;
}

double max_diff(const State& a, const State& b) {
  const State bb = a.realization == Realization::Momentum ? to_momentum(b) : to_position(b);
  double d = 0;
  for (std::size_t i = 0; i < a.data.size(); ++i) d = std::max(d, std::abs(a.data[i] - bb.data[i]));
  return d;
}

// Linear combinations as dense coefficient vectors over the 10 generators.
using Vec = std::array<cplx, 10>;

Vec bracket(const Vec& a, const Vec& b) {
  Vec out{};
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      if (a[i] == 0.0 || b[j] == 0.0) continue;
      for (const auto& [g, c] : structure_constants(kAllGenerators[i], kAllGenerators[j], Convention::Hermitian))
        out[static_cast<int>(g)] += a[i] * b[j] * c;
    }
  return out;
}

Vec unit(int i) {
  Vec v{};
  v[i] = 1;
  return v;
}

}  // namespace

TEST(StructureConstants, AntisymmetricAndPrimeScaled) {
  for (Generator a : kAllGenerators)
    for (Generator b : kAllGenerators) {
      const auto ab = structure_constants(a, b, Convention::Hermitian);
      const auto ba = structure_constants(b, a, Convention::Hermitian);
      std::map<int, cplx> sum;
      for (const auto& [g, c] : ab) sum[static_cast<int>(g)] += c;
      for (const auto& [g, c] : ba) sum[static_cast<int>(g)] += c;
      for (const auto& [g, c] : sum) EXPECT_EQ(c, cplx(0)) << to_string(a) << to_string(b);

      const auto prime = structure_constants(a, b, Convention::Prime);
      const auto literal = prime_structure_constants(a, b);
      ASSERT_EQ(prime.size(), ab.size());
      ASSERT_EQ(literal.size(), ab.size());
      for (std::size_t i = 0; i < ab.size(); ++i) {
        EXPECT_EQ(prime[i].first, ab[i].first);
        EXPECT_EQ(prime[i].second, -I * ab[i].second);
        EXPECT_EQ(literal[i].first, prime[i].first);
        EXPECT_EQ(literal[i].second, prime[i].second);
      }
    }
}

TEST(StructureConstants, JacobiIdentity) {
  for (int a = 0; a < 10; ++a)
    for (int b = 0; b < 10; ++b)
      for (int c = 0; c < 10; ++c) {
        const Vec x = bracket(bracket(unit(a), unit(b)), unit(c));
        const Vec y = bracket(bracket(unit(b), unit(c)), unit(a));
        const Vec z = bracket(bracket(unit(c), unit(a)), unit(b));
        for (int i = 0; i < 10; ++i) ASSERT_LT(std::abs(x[i] + y[i] + z[i]), 1e-15) << a << b << c;
      }
}

TEST(StructureConstants, SelectedEntries) {
  using G = Generator;
  EXPECT_EQ(describe(structure_constants(G::P1, G::J01, Convention::Hermitian)), "i*p0");
  EXPECT_EQ(describe(structure_constants(G::P0, G::J01, Convention::Hermitian)), "i*p1");
  EXPECT_EQ(describe(structure_constants(G::J01, G::J02, Convention::Hermitian)), "-i*j12");
  EXPECT_EQ(describe(structure_constants(G::P0, G::P1, Convention::Hermitian)), "0");
  EXPECT_EQ(describe(structure_constants(G::P1, G::J01, Convention::Prime)), "p0");
}

TEST(Generators, OneDimensionalAlgebraAllRealizations) {
  const State f = packet1();
  const std::array<Generator, 3> subset{Generator::P0, Generator::P1, Generator::J01};
  const TransitionPair vpm = build_Vpm(f.grid);
  for (GR r : {GR::RcqmX, GR::RcqmK, GR::Amplitude, GR::FW, GR::DiracInduced, GR::DiracLocal}) {
    State base = r == GR::Amplitude ? decompose(f).as_field() : in_picture(f, picture_of(r), vpm);
    for (Convention c : {Convention::Hermitian, Convention::Prime})
      for (double t : {0.0, 1.0}) {
        State at = r == GR::Amplitude ? base : evolve(base, t);
        at.t = t;
        for (const auto& res : commutator_sweep(r, c, at, {}, subset))
          EXPECT_LT(res.residual, 1e-11) << to_string(r) << " " << to_string(res.a) << "," << to_string(res.b);
      }
  }
}

TEST(Generators, ThreeDimensionalSpinDropIsDetected) {
  const auto g = make_grid({3, 25, 20.0, 1.0});
  PacketSpec p;
  p.width = 1.25;
  const State f = gaussian_packet(g, p);
  const GeneratorLabel a{GR::RcqmX, Generator::J23}, b{GR::RcqmX, Generator::J31};
  const double clean = commutator_residual(a, b, f).residual;
  GeneratorOptions broken;
  broken.drop_spin = Generator::J12;
  const double dropped = commutator_residual(a, b, f, broken).residual;
  EXPECT_LT(clean, 1e-6);
  EXPECT_GT(dropped, 0.1);
}

TEST(Generators, MixedLabelsRejected) {
  const State f = packet1();
  EXPECT_THROW(commutator_residual({GR::RcqmX, Generator::P0, Convention::Hermitian},
                                   {GR::RcqmX, Generator::P1, Convention::Prime}, f),
               std::invalid_argument);
  EXPECT_THROW(commutator_residual({GR::RcqmX, Generator::P0}, {GR::RcqmK, Generator::P1}, f), std::invalid_argument);
  EXPECT_THROW(apply_generator({GR::FW, Generator::P0}, f), PictureMismatch);
}

TEST(Generators, PrimeIsMinusITimesHermitian) {
  const State f = packet1();
  const State phi = apply_v(f);
  for (Generator g : {Generator::P0, Generator::P1, Generator::J01}) {
    for (const auto& [r, s] : {std::pair{GR::RcqmX, f}, std::pair{GR::FW, phi}}) {
      const State h = apply_generator({r, g, Convention::Hermitian}, s);
      const State p = apply_generator({r, g, Convention::Prime}, s);
      EXPECT_LT(max_diff(p, -I * h), 1e-14);
    }
  }
}

TEST(Generators, PositionAndMomentumCanonical) {
  const State f = packet1();
  const State lhs = apply_position(apply_momentum(f, 1), 1) - apply_momentum(apply_position(f, 1), 1);
  EXPECT_LT(max_diff(lhs, I * f), 1e-10);
}

TEST(Generators, RealizationsAgree) {
  State f = evolve_sf(packet1(), 0.8);
  for (Generator g : kAllGenerators) {
    const State x = apply_generator({GR::RcqmX, g}, f);
    const State k = apply_generator({GR::RcqmK, g}, to_momentum(f));
    EXPECT_LT(max_diff(x, k), 1e-12) << to_string(g);
  }
}

TEST(Generators, DiracLocalMatchesInduced) {
  const State f = packet1();
  const State psi = evolve_dirac(apply_W(f), 1.3);
  const State p0l = apply_generator({GR::DiracLocal, Generator::P0}, psi);
  const State p0i = apply_generator({GR::DiracInduced, Generator::P0}, psi);
  EXPECT_LT(distance(p0l, p0i), 1e-9);
  const State j0l = apply_generator({GR::DiracLocal, Generator::J01}, psi);
  const State j0i = apply_generator({GR::DiracInduced, Generator::J01}, psi);
  EXPECT_LT(distance(j0l, j0i), 1e-7);
}

TEST(Generators, TransportedFromFwToDirac) {
  // V+ q_FW V- = q_Dirac for every generator.
  const State f = packet1();
  const TransitionPair vpm = build_Vpm(f.grid);
  const State psi = evolve_dirac(apply_W(f, vpm), 0.6);
  const State phi = apply_Vminus(psi, vpm);
  for (Generator g : {Generator::P0, Generator::P1, Generator::J01}) {
    const State direct = apply_generator({GR::DiracInduced, g}, psi);
    const State moved = apply_Vplus(apply_generator({GR::FW, g}, phi), vpm);
    EXPECT_LT(distance(direct, moved), 1e-10) << to_string(g);
  }
}

TEST(Generators, SolutionSetInvariance) {
  // G(t) evolve(f, t) = evolve(G(0) f, t).
  const State f = packet1();
  const TransitionPair vpm = build_Vpm(f.grid);
  for (Picture pic : {Picture::RCQM, Picture::FW, Picture::Dirac}) {
    const State s = in_picture(f, pic, vpm);
    const GR r = pic == Picture::RCQM ? GR::RcqmX : pic == Picture::FW ? GR::FW : GR::DiracInduced;
    for (Generator g : {Generator::P0, Generator::P1, Generator::J01}) {
      const State a = apply_generator({r, g}, evolve(s, 4.0));
      const State b = evolve(apply_generator({r, g}, s), 4.0);
      EXPECT_LT(distance(a, b), 1e-8) << to_string(pic) << " " << to_string(g);
    }
  }
}

TEST(Quantities, ConservedInEveryPictureOneDimension) {
  const State f = packet1();
  const TransitionPair vpm = build_Vpm(f.grid);
  for (Picture pic : {Picture::RCQM, Picture::FW, Picture::Dirac}) {
    const ConservationRun run = run_conservation(in_picture(f, pic, vpm), 20.0, 11, &vpm);
    ASSERT_EQ(run.checkpoints.size(), 11u);
    EXPECT_DOUBLE_EQ(run.checkpoints.back().t, 20.0);
    EXPECT_LT(run.max_drift(), 1e-9) << to_string(pic);
    for (const auto& cp : run.checkpoints) EXPECT_LT(cp.max_imaginary, 1e-10);
  }
}

TEST(Generators, AmplitudeBoostTimeTermFlag) {
  State a = decompose(packet1()).as_field();
  a.t = 1.5;
  GeneratorOptions bare;
  bare.amplitude_time_term = false;
  const State with = apply_generator({GR::Amplitude, Generator::J01}, a);
  const State without = apply_generator({GR::Amplitude, Generator::J01}, a, bare);
  EXPECT_LT(max_diff(with - without, 1.5 * apply_momentum(a, 1)), 1e-12);
  a.t = 0;
  EXPECT_LT(max_diff(apply_generator({GR::Amplitude, Generator::J01}, a),
                     apply_generator({GR::Amplitude, Generator::J01}, a, bare)),
            1e-15);
}

TEST(Quantities, AmplitudeFormMatchesRcqm) {
  const State f = evolve_sf(packet1(), 2.0);
  const auto direct = conserved_quantities(f).values;
  const auto amp = amplitude_quantities(decompose(f));
  for (std::size_t i = 0; i < kMainQuantityCount; ++i) EXPECT_NEAR(direct[i], amp[i], 1e-10) << i;
}

TEST(Quantities, FwDiracAndFwAmplitudeAgree) {
  const State f = packet1();
  const TransitionPair vpm = build_Vpm(f.grid);
  const auto fw = conserved_quantities(apply_v(f), &vpm).values;
  const auto dirac = conserved_quantities(apply_W(f, vpm), &vpm).values;
  const auto fwa = fw_amplitude_quantities(decompose(f));
  for (std::size_t i : comparable_quantities(1)) {
    EXPECT_NEAR(fw[i], dirac[i], 1e-10) << to_string(quantity_at(i));
    EXPECT_NEAR(fw[i], fwa[i], 1e-10) << to_string(quantity_at(i));
  }
  for (std::size_t i = kMainQuantityCount; i < kQuantityCount; ++i)
    EXPECT_NEAR(fw[i], dirac[i], 1e-10) << to_string(quantity_at(i));
}

TEST(Quantities, FwDiracAndFwAmplitudeAgreeThreeDimensions) {
  const auto g = make_grid({3, 25, 20.0, 1.0});
  PacketSpec p;
  p.width = 1.25;
  p.center_k = {0.3, -0.2, 0.1};
  p.polarization = {1, 0, 0.5, cplx(0, 0.5)};
  const State f = gaussian_packet(g, p);
  const TransitionPair vpm = build_Vpm(g);
  ASSERT_EQ(comparable_quantities(3).size(), kMainQuantityCount);
  const auto fw = conserved_quantities(apply_v(f), &vpm).values;
  const auto dirac = conserved_quantities(apply_W(f, vpm), &vpm).values;
  const auto fwa = fw_amplitude_quantities(decompose(f));
  for (std::size_t i = 0; i < kQuantityCount; ++i) EXPECT_NEAR(fw[i], dirac[i], 1e-8) << to_string(quantity_at(i));
  for (std::size_t i = 0; i < kMainQuantityCount; ++i) EXPECT_NEAR(fw[i], fwa[i], 1e-8) << to_string(quantity_at(i));
}

TEST(Quantities, ElectronOnlyStatesAgreeAcrossAllForms) {
  const State f = packet1({1, cplx(0, 1), 0, 0});
  const auto fw = conserved_quantities(apply_v(f)).values;
  const auto amp = amplitude_quantities(decompose(f));
  for (std::size_t i = 0; i < kMainQuantityCount; ++i) EXPECT_NEAR(fw[i], amp[i], 1e-10) << i;
}

TEST(Quantities, PositronEnergyFlipsSignInFw) {
  const State f = packet1({0, 0, 1, 0});
  const auto rcqm = conserved_quantities(f).values;
  const auto fw = conserved_quantities(apply_v(f)).values;
  EXPECT_GT(rcqm[0], 1.0);
  EXPECT_NEAR(fw[0], -rcqm[0], 1e-10);
}

TEST(Quantities, ReportsSerialize) {
  const State f = packet1();
  const ConservationRun run = run_conservation(f, 1.0, 3);
  std::stringstream csv, js;
  write_conservation_csv(csv, run);
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "checkpoint,t,quantity,value,drift");
  int rows = 0;
  for (std::string line; std::getline(csv, line);) ++rows;
  EXPECT_EQ(rows, 3 * 22);
  write_conservation_json(js, run);
  EXPECT_NE(js.str().find("\"max_drift\""), std::string::npos);
  EXPECT_THROW(run_conservation(f, 1.0, 1), std::invalid_argument);
}

TEST(Energy, RcqmBoundedBelowByMass) {
  const auto g = make_grid({3, 9, 12.0, 1.5});
  for (unsigned seed = 0; seed < 20; ++seed) EXPECT_GE(energy_rcqm(decompose(random_state(g, seed))), 1.5 - 1e-10);
}

TEST(Energy, FwNegativeForPositrons) {
  const State f = packet1({0, 0, 0.6, cplx(0, 0.8)});
  EXPECT_LT(energy_fw(decompose(f)), 0);
  EXPECT_NEAR(energy_fw(decompose(f)), -energy_rcqm(decompose(f)), 1e-12);
  EXPECT_NEAR(energy_rcqm(decompose(f)), conserved_quantities(f).values[0], 1e-10);
}

TEST(Finite, TimeShiftIsEvolution) {
  const State f = packet1();
  EXPECT_LT(max_diff(finite_transform(f, FiniteKind::TimeShift, {1.7, 0, 0}), evolve_sf(f, 1.7)), 1e-15);
}

TEST(Finite, SpaceShiftByOneSpacingIsCyclic) {
  const auto g = make_grid({3, 7, 7.0, 1.0});
  const State f = random_state(g, 3);
  const State out = to_position(finite_transform(f, FiniteKind::SpaceShift, {0, g->dx(), 0}));
  for (std::size_t s = 0; s < g->size(); ++s) {
    auto off = g->offsets(s);
    off[1] = (off[1] + 3 - 1 + 7) % 7 - 3;
    for (int c = 0; c < 4; ++c) ASSERT_LT(std::abs(out.at(c, s) - f.at(c, g->site(off))), 1e-13);
  }
}

TEST(Finite, QuarterTurnOfSymmetricPacket) {
  const auto g = make_grid({3, 25, 20.0, 1.0});
  PacketSpec p;
  p.width = 1.25;
  const State f = gaussian_packet(g, p);
  const State r = finite_transform(f, FiniteKind::RotationZ, {std::numbers::pi / 2, 0, 0});
  EXPECT_LT(max_diff(r, std::polar(1.0, -std::numbers::pi / 4) * f), 1e-14);
}

TEST(Finite, FullTurnIsMinusOne) {
  const auto g = make_grid({3, 7, 7.0, 1.0});
  const State f = random_state(g, 4);
  EXPECT_LT(max_diff(finite_transform(f, FiniteKind::RotationZ, {2 * std::numbers::pi, 0, 0}), -1.0 * f), 1e-14);
}

TEST(Finite, QuarterTurnMovesOffCenterPacket) {
  const auto g = make_grid({3, 25, 20.0, 1.0});
  PacketSpec p;
  p.width = 1.25;
  p.center_x = {4 * g->dx(), 0, 0};
  PacketSpec q = p;
  q.center_x = {0, 4 * g->dx(), 0};
  const State r = finite_transform(gaussian_packet(g, p), FiniteKind::RotationZ, {std::numbers::pi / 2, 0, 0});
  EXPECT_LT(max_diff(r, std::polar(1.0, -std::numbers::pi / 4) * gaussian_packet(g, q)), 1e-14);
}

TEST(Finite, UnsupportedCases) {
  const auto g = make_grid({3, 7, 7.0, 1.0});
  EXPECT_THROW(finite_transform(random_state(g, 1), FiniteKind::RotationZ, {0.3, 0, 0}), Unsupported);
  EXPECT_THROW(finite_transform(packet1(), FiniteKind::RotationZ, {std::numbers::pi / 2, 0, 0}), Unsupported);
  EXPECT_THROW(finite_transform(apply_v(packet1()), FiniteKind::TimeShift, {1, 0, 0}), PictureMismatch);
}
