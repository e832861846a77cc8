#include "rcqm/poincare.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "rcqm/clifford.hpp"
#include "rcqm/dynamics.hpp"
#include "rcqm/errors.hpp"

namespace rcqm {

namespace {

constexpr cplx I{0, 1};

struct Slot {
  int mu = 0;
  int nu = -1;  // -1 for translations
};

Slot slot(Generator g) {
  switch (g) {
    case Generator::P0: return {0, -1};
    case Generator::P1: return {1, -1};
    case Generator::P2: return {2, -1};
    case Generator::P3: return {3, -1};
    case Generator::J23: return {2, 3};
    case Generator::J31: return {3, 1};
    case Generator::J12: return {1, 2};
    case Generator::J01: return {0, 1};
    case Generator::J02: return {0, 2};
    case Generator::J03: return {0, 3};
  }
  return {};
}

Generator translation(int mu) { return kAllGenerators[mu]; }

// j_{mu nu} as (generator, sign); nullopt when mu == nu.
std::optional<std::pair<Generator, int>> rotation(int mu, int nu) {
  if (mu == nu) return std::nullopt;
  for (Generator g : kAllGenerators) {
    const Slot s = slot(g);
    if (s.nu < 0) continue;
    if (s.mu == mu && s.nu == nu) return std::make_pair(g, 1);
    if (s.mu == nu && s.nu == mu) return std::make_pair(g, -1);
  }
  return std::nullopt;
}

double g(int a, int b) { return a != b ? 0.0 : (a == 0 ? 1.0 : -1.0); }

class Accumulator {
public:
  void p(int mu, cplx c) {
    if (c != 0.0) terms_[translation(mu)] += c;
  }
  void j(int mu, int nu, cplx c) {
    if (c == 0.0) return;
    if (auto r = rotation(mu, nu)) terms_[r->first] += c * double(r->second);
  }
  LinearCombination result() const {
    LinearCombination out;
    for (Generator gen : kAllGenerators) {
      auto it = terms_.find(gen);
      if (it != terms_.end() && std::abs(it->second) > 0) out.emplace_back(gen, it->second);
    }
    return out;
  }

private:
  std::map<Generator, cplx> terms_;
};

// Commutator table for generators obeying
//   [p_m, j_rs] = k (g_mr p_s - g_ms p_r)
//   [j_mn, j_rs] = -k (g_mr j_ns + g_rn j_sm + g_ns j_mr + g_sm j_rn)
LinearCombination covariant_table(Generator a, Generator b, cplx k) {
  const Slot sa = slot(a), sb = slot(b);
  Accumulator acc;
  const bool pa = sa.nu < 0, pb = sb.nu < 0;
  if (pa && pb) return {};
  if (pa || pb) {
    const int m = pa ? sa.mu : sb.mu;
    const Slot j = pa ? sb : sa;
    const double sign = pa ? 1.0 : -1.0;
    acc.p(j.nu, sign * k * g(m, j.mu));
    acc.p(j.mu, -sign * k * g(m, j.nu));
    return acc.result();
  }
  const int m = sa.mu, n = sa.nu, r = sb.mu, s = sb.nu;
  acc.j(n, s, -k * g(m, r));
  acc.j(s, m, -k * g(r, n));
  acc.j(m, r, -k * g(n, s));
  acc.j(r, n, -k * g(s, m));
  return acc.result();
}

// ---------------------------------------------------------------------------
// Operator building blocks

bool has_axis(const State& f, int l) { return l >= 1 && l <= f.grid->dim(); }

State zero_like(const State& f) {
  State z = f;
  std::fill(z.data.begin(), z.data.end(), cplx(0));
  return z;
}

State X(const State& f, int l) { return has_axis(f, l) ? multiply_x(f, l - 1) : zero_like(f); }

State P(const State& f, int l) {
  if (!has_axis(f, l)) return zero_like(f);
  const auto& grid = *f.grid;
  return multiply_k(f, [&grid, l](std::size_t s) { return cplx(grid.k(s, l - 1)); });
}

State anti_x_omega(const State& f, int l) {
  if (!has_axis(f, l)) return zero_like(f);
  return X(apply_omega(f), l) + apply_omega(X(f, l));
}

State anti_x_dirac(const State& f, int l) {
  if (!has_axis(f, l)) return zero_like(f);
  return X(apply_dirac_hamiltonian(f), l) + apply_dirac_hamiltonian(X(f, l));
}

State orbital(const State& f, int l, int n) { return X(P(f, n), l) - X(P(f, l), n); }

int epsilon_index(int l, int n) {
  // (2,3) -> 1, (3,1) -> 2, (1,2) -> 3; sign handled by caller.
  return 6 - l - n;
}

// Hermitian RCQM spin tensor: s_23 = s^1, s_31 = s^2, s_12 = s^3.
Mat4 rcqm_spin(int l, int n) {
  static const std::array<Mat4, 3> s = [] {
    const auto sp = clifford::spin(clifford::Representation::QuantumMechanical);
    return std::array<Mat4, 3>{to_eigen(sp[0]), to_eigen(sp[1]), to_eigen(sp[2])};
  }();
  if (l == n) return Mat4::Zero();
  const int j = epsilon_index(l, n);
  const bool cyclic = (l % 3) + 1 == n;
  return cyclic ? s[j - 1] : Mat4(-s[j - 1]);
}

// 1/4 [gamma_mu, gamma_nu] in the Pauli-Dirac representation.
Mat4 pd_spin(int mu, int nu) {
  static const std::array<std::array<Mat4, 4>, 4> table = [] {
    std::array<std::array<Mat4, 4>, 4> t;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) t[a][b] = to_eigen(clifford::spin_tensor(a, b));
    return t;
  }();
  return table[mu][nu];
}

// sum_n S_ln k_n / (omega + m) per mode.
State spin_boost(const State& f, int l, Mat4 (*spin)(int, int), const Mat4& left = Mat4::Identity()) {
  const auto& grid = *f.grid;
  std::array<Mat4, 3> coeff;
  for (int n = 1; n <= 3; ++n) coeff[n - 1] = left * spin(l, n);
  return apply_modes(f, [&grid, &coeff](std::size_t s) {
    const auto k = grid.k_vector(s);
    const double denom = grid.omega(s) + grid.mass();
    return Mat4((k[0] * coeff[0] + k[1] * coeff[1] + k[2] * coeff[2]) / denom);
  });
}

Realization working_realization(GeneratorRealization r) {
  return r == GeneratorRealization::RcqmX ? Realization::Position : Realization::Momentum;
}

bool canonical_is_prime(GeneratorRealization r) {
  return r == GeneratorRealization::FW || r == GeneratorRealization::DiracInduced ||
         r == GeneratorRealization::DiracLocal;
}

bool drop(const GeneratorOptions& o, Generator g) { return o.drop_spin && *o.drop_spin == g; }

// Hermitian generators on RCQM states and amplitudes.
State rcqm_generator(Generator gen, const State& f, bool time_term, const GeneratorOptions& opt) {
  const Slot s = slot(gen);
  if (s.nu < 0) return s.mu == 0 ? apply_omega(f) : P(f, s.mu);
  if (s.mu != 0) {
    State out = orbital(f, s.mu, s.nu);
    if (!drop(opt, gen)) out += apply_pointwise(f, rcqm_spin(s.mu, s.nu));
    return out;
  }
  const int l = s.nu;
  State out = -0.5 * anti_x_omega(f, l);
  if (time_term) out += f.t * P(f, l);
  out -= spin_boost(f, l, rcqm_spin);
  return out;
}

// Anti-Hermitian generators on FW and Dirac states.
State spinor_generator(GeneratorRealization r, Generator gen, const State& f, const GeneratorOptions& opt) {
  const Slot s = slot(gen);
  const Mat4& g0 = dirac_gamma(0);
  if (s.nu < 0) {
    if (s.mu != 0) return -I * P(f, s.mu);
    switch (r) {
      case GeneratorRealization::FW:
        return apply_pointwise(-I * apply_omega(f), g0);
      case GeneratorRealization::DiracInduced:
        return -I * apply_dirac_hamiltonian(f);
      default:
        return dirac_time_derivative(f);
    }
  }
  if (s.mu != 0) {
    State out = -I * orbital(f, s.mu, s.nu);
    if (!drop(opt, gen)) out += apply_pointwise(f, pd_spin(s.mu, s.nu));
    return out;
  }
  const int l = s.nu;
  State out = (-I * f.t) * P(f, l);
  switch (r) {
    case GeneratorRealization::FW:
      out += apply_pointwise((0.5 * I) * anti_x_omega(f, l), g0);
      out -= spin_boost(f, l, pd_spin, g0);
      break;
    case GeneratorRealization::DiracInduced:
      out += (0.5 * I) * anti_x_dirac(f, l);
      break;
    default:
      // Local form: the coordinate times the time derivative, plus the
      // boost part of the spin tensor with the sign fixed by x_l = x^l.
      out -= X(dirac_time_derivative(f), l);
      if (has_axis(f, l)) out -= apply_pointwise(f, pd_spin(0, l));
      break;
  }
  return out;
}

void require_picture(GeneratorRealization r, const State& f) {
  if (f.picture != picture_of(r))
    throw PictureMismatch(to_string(r) + " generators act on " + to_string(picture_of(r)) + " states, got " +
                          to_string(f.picture));
  if (r == GeneratorRealization::Amplitude && f.realization != Realization::Momentum)
    throw RealizationMismatch("amplitude generators act on momentum-realization amplitude fields");
}

State in_realization(const State& f, Realization r) {
  return r == Realization::Momentum ? to_momentum(f) : to_position(f);
}

}  // namespace

// ---------------------------------------------------------------------------

std::string to_string(Generator g) {
  static const char* names[] = {"p0", "p1", "p2", "p3", "j23", "j31", "j12", "j01", "j02", "j03"};
  return names[static_cast<int>(g)];
}

std::string to_string(GeneratorRealization r) {
  switch (r) {
    case GeneratorRealization::RcqmX: return "RCQM_X";
    case GeneratorRealization::RcqmK: return "RCQM_K";
    case GeneratorRealization::Amplitude: return "Amplitude";
    case GeneratorRealization::FW: return "FW";
    case GeneratorRealization::DiracInduced: return "DiracInduced";
    case GeneratorRealization::DiracLocal: return "DiracLocal";
  }
  return "?";
}

std::string to_string(Convention c) { return c == Convention::Hermitian ? "Hermitian" : "Prime"; }

GeneratorRealization realization_from_string(const std::string& name) {
  for (auto r : {GeneratorRealization::RcqmX, GeneratorRealization::RcqmK, GeneratorRealization::Amplitude,
                 GeneratorRealization::FW, GeneratorRealization::DiracInduced, GeneratorRealization::DiracLocal})
    if (to_string(r) == name) return r;
  throw std::invalid_argument("unknown generator realization '" + name + "'");
}

Picture picture_of(GeneratorRealization r) {
  switch (r) {
    case GeneratorRealization::FW: return Picture::FW;
    case GeneratorRealization::DiracInduced:
    case GeneratorRealization::DiracLocal: return Picture::Dirac;
    default: return Picture::RCQM;
  }
}

LinearCombination structure_constants(Generator a, Generator b, Convention convention) {
  LinearCombination rhs = covariant_table(a, b, I);
  if (convention == Convention::Prime)
    for (auto& [gen, c] : rhs) c *= -I;
  return rhs;
}

LinearCombination prime_structure_constants(Generator a, Generator b) { return covariant_table(a, b, 1.0); }

std::string describe(const LinearCombination& rhs) {
  if (rhs.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [gen, c] : rhs) {
    auto coeff = [](double v) {
      std::ostringstream s;
      s << v;
      return s.str();
    };
    std::string term;
    if (c.imag() == 0) term = c.real() == 1 ? "" : c.real() == -1 ? "-" : coeff(c.real()) + "*";
    else if (c.real() == 0) term = c.imag() == 1 ? "i*" : c.imag() == -1 ? "-i*" : coeff(c.imag()) + "i*";
    else term = "(" + coeff(c.real()) + (c.imag() < 0 ? "" : "+") + coeff(c.imag()) + "i)*";
    if (!first && (term.empty() || term[0] != '-')) out << '+';
    out << term << to_string(gen);
    first = false;
  }
  return out.str();
}

State apply_generator(const GeneratorLabel& label, const State& f, const GeneratorOptions& options) {
  require_picture(label.realization, f);
  const State w = in_realization(f, working_realization(label.realization));
  State out;
  switch (label.realization) {
    case GeneratorRealization::RcqmX:
    case GeneratorRealization::RcqmK:
      out = rcqm_generator(label.index, w, true, options);
      break;
    case GeneratorRealization::Amplitude:
      out = rcqm_generator(label.index, w, options.amplitude_time_term, options);
      break;
    default:
      out = spinor_generator(label.realization, label.index, w, options);
      break;
  }
  const bool prime = canonical_is_prime(label.realization);
  if (prime && label.convention == Convention::Hermitian) out *= I;
  if (!prime && label.convention == Convention::Prime) out *= -I;
  out.t = f.t;
  return in_realization(out, f.realization);
}

State apply_position(const State& f, int axis) { return X(f, axis); }
State apply_momentum(const State& f, int axis) { return P(f, axis); }

namespace {

State combine(const LinearCombination& rhs, const std::array<std::optional<State>, 10>& images, const State& like) {
  State out = zero_like(like);
  for (const auto& [gen, c] : rhs) out += c * *images[static_cast<int>(gen)];
  return out;
}

void check_labels(const GeneratorLabel& a, const GeneratorLabel& b) {
  if (a.convention != b.convention) throw std::invalid_argument("commutator of generators in mixed conventions");
  if (a.realization != b.realization) throw std::invalid_argument("commutator of generators in mixed realizations");
}

}  // namespace

CommutatorResult commutator_residual(const GeneratorLabel& a, const GeneratorLabel& b, const State& f,
                                     const GeneratorOptions& options) {
  check_labels(a, b);
  const LinearCombination rhs = structure_constants(a.index, b.index, a.convention);
  std::array<std::optional<State>, 10> images;
  for (const auto& [gen, c] : rhs)
    images[static_cast<int>(gen)] = apply_generator({a.realization, gen, a.convention}, f, options);
  const State bf = apply_generator(b, f, options);
  const State af = apply_generator(a, f, options);
  const State lhs = apply_generator(a, bf, options) - apply_generator(b, af, options);
  const double residual = distance(lhs, combine(rhs, images, f)) / norm(f);
  return {a.index, b.index, residual, describe(rhs)};
}

std::vector<CommutatorResult> commutator_sweep(GeneratorRealization realization, Convention convention,
                                               const State& f, const GeneratorOptions& options,
                                               std::span<const Generator> subset) {
  std::array<std::optional<State>, 10> images;
  for (Generator gen : kAllGenerators)
    images[static_cast<int>(gen)] = apply_generator({realization, gen, convention}, f, options);
  const double scale = norm(f);
  std::vector<CommutatorResult> out;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    for (std::size_t j = i + 1; j < subset.size(); ++j) {
      const Generator a = subset[i], b = subset[j];
      const LinearCombination rhs = structure_constants(a, b, convention);
      const State lhs = apply_generator({realization, a, convention}, *images[static_cast<int>(b)], options) -
                        apply_generator({realization, b, convention}, *images[static_cast<int>(a)], options);
      out.push_back({a, b, distance(lhs, combine(rhs, images, f)) / scale, describe(rhs)});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Observables

std::string to_string(Quantity q) {
  static const char* names[] = {"P0",  "P1",   "P2",   "P3",   "J23", "J31", "J12", "J01", "J02", "J03", "S1",
                                "S2",  "S3",   "SB01", "SB02", "SB03", "M23", "M31", "M12", "M01", "M02", "M03"};
  return names[static_cast<int>(q)];
}

Quantity quantity_at(std::size_t i) {
  if (i >= kQuantityCount) throw std::out_of_range("quantity index");
  return static_cast<Quantity>(i);
}

std::vector<std::size_t> comparable_quantities(int dim) {
  if (dim == 1) return {0, 1, 4, 7};
  std::vector<std::size_t> all(kMainQuantityCount);
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return all;
}

namespace {

struct AdditionalSlot {
  enum Kind { Spin, SpinBoost, Orbital, OrbitalBoost } kind;
  int l;
  int n;
};

AdditionalSlot additional(Quantity q) {
  const int i = static_cast<int>(q) - static_cast<int>(Quantity::S1);
  static const std::array<std::pair<int, int>, 3> rot{{{2, 3}, {3, 1}, {1, 2}}};
  switch (i / 3) {
    case 0: return {AdditionalSlot::Spin, rot[i % 3].first, rot[i % 3].second};
    case 1: return {AdditionalSlot::SpinBoost, 0, i % 3 + 1};
    case 2: return {AdditionalSlot::Orbital, rot[i % 3].first, rot[i % 3].second};
    default: return {AdditionalSlot::OrbitalBoost, 0, i % 3 + 1};
  }
}

State rcqm_additional(const AdditionalSlot& a, const State& f, bool time_term) {
  switch (a.kind) {
    case AdditionalSlot::Spin:
      return apply_pointwise(f, rcqm_spin(a.l, a.n));
    case AdditionalSlot::SpinBoost:
      return spin_boost(f, a.n, rcqm_spin);
    case AdditionalSlot::Orbital:
      return orbital(f, a.l, a.n);
    case AdditionalSlot::OrbitalBoost: {
      State out = -0.5 * anti_x_omega(f, a.n);
      if (time_term) out += f.t * P(f, a.n);
      return out;
    }
  }
  return f;
}

// Anti-Hermitian FW form.
State fw_additional(const AdditionalSlot& a, const State& f) {
  const Mat4& g0 = dirac_gamma(0);
  switch (a.kind) {
    case AdditionalSlot::Spin:
      return apply_pointwise(f, pd_spin(a.l, a.n));
    case AdditionalSlot::SpinBoost:
      return spin_boost(f, a.n, pd_spin, g0);
    case AdditionalSlot::Orbital:
      return -I * orbital(f, a.l, a.n);
    case AdditionalSlot::OrbitalBoost:
      return (-I * f.t) * P(f, a.n) + apply_pointwise((0.5 * I) * anti_x_omega(f, a.n), g0);
  }
  return f;
}

}  // namespace

State apply_observable(Quantity q, GeneratorRealization realization, const State& f, const TransitionPair* vpm) {
  const auto idx = static_cast<std::size_t>(q);
  if (idx < kMainQuantityCount)
    return apply_generator({realization, kAllGenerators[idx], Convention::Hermitian}, f);
  require_picture(realization, f);
  const AdditionalSlot a = additional(q);
  const State w = in_realization(f, working_realization(realization));
  State out;
  switch (realization) {
    case GeneratorRealization::RcqmX:
    case GeneratorRealization::RcqmK:
      out = rcqm_additional(a, w, true);
      break;
    case GeneratorRealization::Amplitude:
      out = rcqm_additional(a, w, false);
      break;
    case GeneratorRealization::FW:
      out = I * fw_additional(a, w);
      break;
    default: {
      std::optional<TransitionPair> local;
      if (!vpm) vpm = &local.emplace(build_Vpm(f.grid));
      State phi = apply_Vminus(w, *vpm);
      State image = I * fw_additional(a, phi);
      out = apply_Vplus(image, *vpm);
      break;
    }
  }
  out.t = f.t;
  return in_realization(out, f.realization);
}

namespace {

cplx expectation(const State& f, const State& qf) {
  return inner_product(f, in_realization(qf, f.realization));
}

GeneratorRealization natural_realization(Picture p) {
  switch (p) {
    case Picture::FW: return GeneratorRealization::FW;
    case Picture::Dirac: return GeneratorRealization::DiracInduced;
    default: return GeneratorRealization::RcqmX;
  }
}

}  // namespace

ConservedReport conserved_quantities(const State& f, const TransitionPair* vpm) {
  ConservedReport report;
  report.picture = f.picture;
  report.t = f.t;
  const GeneratorRealization r = natural_realization(f.picture);
  std::optional<TransitionPair> local;
  if (f.picture == Picture::Dirac && !vpm) vpm = &local.emplace(build_Vpm(f.grid));
  for (std::size_t i = 0; i < kQuantityCount; ++i) {
    const cplx v = expectation(f, apply_observable(quantity_at(i), r, f, vpm));
    report.values[i] = v.real();
    report.max_imaginary = std::max(report.max_imaginary, std::abs(v.imag()));
  }
  return report;
}

std::array<double, kMainQuantityCount> amplitude_quantities(const AmplitudeSet& a) {
  const State field = a.as_field();
  std::array<double, kMainQuantityCount> out{};
  for (std::size_t i = 0; i < kMainQuantityCount; ++i)
    out[i] = expectation(field, apply_generator({GeneratorRealization::Amplitude, kAllGenerators[i]}, field)).real();
  return out;
}

std::array<double, kMainQuantityCount> fw_amplitude_quantities(const AmplitudeSet& a) {
  State b = a.as_field();
  b.picture = Picture::FW;
  const std::size_t n = a.grid->size();
  for (std::size_t i = 2 * n; i < 4 * n; ++i) b.data[i] = std::conj(b.data[i]);

  const auto& grid = *a.grid;
  const Mat4& g0 = dirac_gamma(0);
  auto half_sigma = [](int l, int n) { return Mat4(I * pd_spin(l, n)); };
  std::array<double, kMainQuantityCount> out{};
  for (std::size_t i = 0; i < kMainQuantityCount; ++i) {
    const Slot s = slot(kAllGenerators[i]);
    State q;
    if (s.nu < 0) {
      q = apply_pointwise(s.mu == 0 ? apply_omega(b) : P(b, s.mu), g0);
    } else if (s.mu != 0) {
      q = orbital(b, s.mu, s.nu) + apply_pointwise(b, half_sigma(s.mu, s.nu));
    } else {
      const int l = s.nu;
      q = -0.5 * anti_x_omega(b, l);
      q -= apply_modes(b, [&grid, l, &half_sigma](std::size_t site) {
        const auto k = grid.k_vector(site);
        Mat4 m = Mat4::Zero();
        for (int nn = 1; nn <= 3; ++nn) m += k[nn - 1] * half_sigma(l, nn);
        return Mat4(m / (grid.omega(site) + grid.mass()));
      });
    }
    out[i] = expectation(b, q).real();
  }
  return out;
}

double ConservationRun::max_drift() const { return *std::max_element(drift.begin(), drift.end()); }

ConservationRun run_conservation(const State& f, double horizon, int checkpoints, const TransitionPair* vpm) {
  if (checkpoints < 2) throw std::invalid_argument("conservation run needs at least two checkpoints");
  ConservationRun run;
  run.picture = f.picture;
  std::optional<TransitionPair> local;
  if (f.picture == Picture::Dirac && !vpm) vpm = &local.emplace(build_Vpm(f.grid));
  for (int c = 0; c < checkpoints; ++c) {
    const double t = horizon * c / (checkpoints - 1);
    run.checkpoints.push_back(conserved_quantities(evolve(f, t), vpm));
  }
  const auto& first = run.checkpoints.front().values;
  for (const auto& cp : run.checkpoints)
    for (std::size_t i = 0; i < kQuantityCount; ++i)
      run.drift[i] = std::max(run.drift[i], std::abs(cp.values[i] - first[i]));
  return run;
}

void write_conservation_csv(std::ostream& out, const ConservationRun& run) {
  const auto old = out.precision(17);
  out << "checkpoint,t,quantity,value,drift\n";
  const auto& first = run.checkpoints.front().values;
  for (std::size_t c = 0; c < run.checkpoints.size(); ++c) {
    const auto& cp = run.checkpoints[c];
    for (std::size_t i = 0; i < kQuantityCount; ++i)
      out << c << ',' << cp.t << ',' << to_string(quantity_at(i)) << ',' << cp.values[i] << ','
          << std::abs(cp.values[i] - first[i]) << '\n';
  }
  out.precision(old);
}

void write_conservation_json(std::ostream& out, const ConservationRun& run) {
  nlohmann::ordered_json j;
  j["picture"] = to_string(run.picture);
  j["checkpoints"] = nlohmann::ordered_json::array();
  for (const auto& cp : run.checkpoints) {
    nlohmann::ordered_json row;
    row["t"] = cp.t;
    for (std::size_t i = 0; i < kQuantityCount; ++i) row["values"][to_string(quantity_at(i))] = cp.values[i];
    row["max_imaginary"] = cp.max_imaginary;
    j["checkpoints"].push_back(row);
  }
  for (std::size_t i = 0; i < kQuantityCount; ++i) j["drift"][to_string(quantity_at(i))] = run.drift[i];
  j["max_drift"] = run.max_drift();
  out << j.dump(2) << '\n';
}

double energy_rcqm(const AmplitudeSet& a) {
  const auto& grid = *a.grid;
  const std::size_t n = grid.size();
  double sum = 0;
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t s = 0; s < n; ++s)
      sum += grid.omega(s) * (std::norm(a.a_minus[r * n + s]) + std::norm(a.a_plus[r * n + s]));
  return sum * grid.k_measure();
}

double energy_fw(const AmplitudeSet& a) {
  const auto& grid = *a.grid;
  const std::size_t n = grid.size();
  double sum = 0;
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t s = 0; s < n; ++s)
      sum += grid.omega(s) * (std::norm(a.a_minus[r * n + s]) - std::norm(a.a_plus[r * n + s]));
  return sum * grid.k_measure();
}

// ---------------------------------------------------------------------------

State finite_transform(const State& f, FiniteKind kind, const std::array<double, 3>& parameter) {
  if (f.picture != Picture::RCQM) throw PictureMismatch("finite transformations act on RCQM states");
  switch (kind) {
    case FiniteKind::TimeShift:
      return evolve_sf(f, parameter[0]);
    case FiniteKind::SpaceShift: {
      const auto& grid = *f.grid;
      return multiply_k(f, [&grid, &parameter](std::size_t s) {
        const auto k = grid.k_vector(s);
        return std::polar(1.0, -(k[0] * parameter[0] + k[1] * parameter[1] + k[2] * parameter[2]));
      });
    }
    case FiniteKind::RotationZ:
      break;
  }
  const double angle = parameter[0];
  if (f.grid->dim() != 3) throw Unsupported("rotations need a three-dimensional grid");
  const double quarters = angle / (std::numbers::pi / 2);
  const double rounded = std::round(quarters);
  if (std::abs(quarters - rounded) > 1e-12)
    throw Unsupported("rotation angle is not a multiple of pi/2; the orbital part has no exact lattice form");
  const int turns = ((static_cast<long>(rounded) % 4) + 4) % 4;

  const State x = to_position(f);
  const auto& grid = *x.grid;
  State out = x;
  const Mat4 spin3 = rcqm_spin(1, 2);
  for (std::size_t s = 0; s < grid.size(); ++s) {
    auto off = grid.offsets(s);
    // Source point R^{-1} x; a quarter turn maps (x, y) to (y, -x).
    for (int q = 0; q < turns; ++q) off = {off[1], -off[0], off[2]};
    const std::size_t src = grid.site(off);
    for (int c = 0; c < kComponents; ++c) out.at(c, s) = std::polar(1.0, -angle * spin3(c, c).real()) * x.at(c, src);
  }
  return in_realization(out, f.realization);
}

}  // namespace rcqm
