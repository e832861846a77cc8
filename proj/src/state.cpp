#include "rcqm/state.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <random>

#include "json.hpp"
#include "rcqm/errors.hpp"

namespace rcqm {

std::string to_string(Realization r) { return r == Realization::Position ? "position" : "momentum"; }

std::string to_string(Picture p) {
  switch (p) {
    case Picture::RCQM:
      return "RCQM";
    case Picture::FW:
      return "FW";
    case Picture::Dirac:
      return "Dirac";
  }
  return "?";
}

Picture picture_from_string(const std::string& name) {
  if (name == "RCQM") return Picture::RCQM;
  if (name == "FW") return Picture::FW;
  if (name == "Dirac") return Picture::Dirac;
  throw std::invalid_argument("unknown picture '" + name + "'");
}

void require_same_grid(const State& f, const State& g) {
  if (f.grid != g.grid && !(f.grid->spec() == g.grid->spec()))
    throw GridMismatch("states live on different grids");
}

State& State::operator+=(const State& other) {
  require_same_grid(*this, other);
  if (other.realization != realization) {
    const State conv = realization == Realization::Momentum ? to_momentum(other) : to_position(other);
    for (std::size_t i = 0; i < data.size(); ++i) data[i] += conv.data[i];
  } else {
    for (std::size_t i = 0; i < data.size(); ++i) data[i] += other.data[i];
  }
  return *this;
}

State& State::operator-=(const State& other) {
  require_same_grid(*this, other);
  if (other.realization != realization) {
    const State conv = realization == Realization::Momentum ? to_momentum(other) : to_position(other);
    for (std::size_t i = 0; i < data.size(); ++i) data[i] -= conv.data[i];
  } else {
    for (std::size_t i = 0; i < data.size(); ++i) data[i] -= other.data[i];
  }
  return *this;
}

State& State::operator*=(cplx s) {
  for (auto& x : data) x *= s;
  return *this;
}

State operator+(State a, const State& b) { return a += b; }
State operator-(State a, const State& b) { return a -= b; }
State operator*(cplx s, State a) { return a *= s; }

State zero_state(const GridPtr& grid, Realization r, Picture p, double t) {
  return State{grid, r, p, t, std::vector<cplx>(kComponents * grid->size())};
}

cplx inner_product(const State& f, const State& g) {
  require_same_grid(f, g);
  if (f.realization != g.realization) throw RealizationMismatch("inner_product: realizations differ");
  cplx sum = 0;
  for (std::size_t i = 0; i < f.data.size(); ++i) sum += std::conj(f.data[i]) * g.data[i];
  const double w = f.realization == Realization::Position ? f.grid->x_measure() : f.grid->k_measure();
  return sum * w;
}

double norm(const State& f) { return std::sqrt(inner_product(f, f).real()); }

double distance(const State& f, const State& g) { return norm(f - g); }

std::array<cplx, 4> basis_ort(int alpha) {
  if (alpha < 1 || alpha > 4) throw std::out_of_range("basis ort index must be 1..4");
  std::array<cplx, 4> d{0, 0, 0, 0};
  d[alpha - 1] = 1;
  return d;
}

State plane_wave(const GridPtr& grid, const std::array<int, 3>& k_offsets, int alpha, double t) {
  const auto d = basis_ort(alpha);
  const std::size_t k_site = grid->site(k_offsets);
  const auto kv = grid->k_vector(k_site);
  const double w = grid->omega(k_site);
  const double amp = std::pow(grid->spec().box_length, -0.5 * grid->dim());
  State f = zero_state(grid, Realization::Position, Picture::RCQM, t);
  for (std::size_t s = 0; s < grid->size(); ++s) {
    double phase = -w * t;
    for (int a = 0; a < grid->dim(); ++a) phase += kv[a] * grid->x(s, a);
    const cplx val = amp * std::polar(1.0, phase);
    for (int c = 0; c < kComponents; ++c) f.at(c, s) = val * d[c];
  }
  return f;
}

State plane_wave(const GridPtr& grid, const std::array<double, 3>& k, int alpha, double t) {
  std::array<int, 3> off{0, 0, 0};
  for (int a = 0; a < 3; ++a) {
    const double q = k[a] / grid->dk();
    const double r = std::round(q);
    if (std::abs(q - r) > 1e-9 || (a >= grid->dim() && k[a] != 0.0))
      throw std::out_of_range("plane_wave: momentum is not a lattice point");
    off[a] = static_cast<int>(r);
  }
  return plane_wave(grid, off, alpha, t);
}

std::pair<double, double> packet_width_bounds(const GridSpec& spec) {
  const double dx = spec.box_length / spec.n_per_axis;
  return {1.5 * dx, spec.box_length / 16.0};
}

State gaussian_packet(const GridPtr& grid, const PacketSpec& spec) {
  const auto [lo, hi] = packet_width_bounds(grid->spec());
  if (!(spec.width >= lo && spec.width <= hi))
    throw std::invalid_argument("packet width " + std::to_string(spec.width) + " outside [" + std::to_string(lo) +
                                ", " + std::to_string(hi) + "]");
  double pol_norm = 0;
  for (const auto& p : spec.polarization) pol_norm += std::norm(p);
  if (pol_norm == 0) throw std::invalid_argument("packet polarization is zero");

  State f = zero_state(grid, Realization::Position, Picture::RCQM, 0.0);
  const double inv = 1.0 / (4.0 * spec.width * spec.width);
  for (std::size_t s = 0; s < grid->size(); ++s) {
    double r2 = 0, phase = 0;
    for (int a = 0; a < grid->dim(); ++a) {
      const double dxa = grid->x(s, a) - spec.center_x[a];
      r2 += dxa * dxa;
      phase += spec.center_k[a] * grid->x(s, a);
    }
    const cplx val = std::exp(-r2 * inv) * std::polar(1.0, phase);
    for (int c = 0; c < kComponents; ++c) f.at(c, s) = val * spec.polarization[c];
  }
  f *= 1.0 / norm(f);
  return f;
}

State random_state(const GridPtr& grid, std::uint64_t seed, Picture picture) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  State f = zero_state(grid, Realization::Position, picture, 0.0);
  for (auto& x : f.data) {
    const double re = normal(rng);
    const double im = normal(rng);
    x = {re, im};
  }
  f *= 1.0 / norm(f);
  return f;
}

State AmplitudeSet::as_field() const {
  State f = zero_state(grid, Realization::Momentum, Picture::RCQM, 0.0);
  const std::size_t n = grid->size();
  std::copy(a_minus.begin(), a_minus.end(), f.data.begin());
  std::copy(a_plus.begin(), a_plus.end(), f.data.begin() + 2 * n);
  return f;
}

AmplitudeSet AmplitudeSet::from_field(const State& field) {
  const State k = to_momentum(field);
  const std::size_t n = k.grid->size();
  AmplitudeSet a{k.grid, {}, {}};
  a.a_minus.assign(k.data.begin(), k.data.begin() + 2 * n);
  a.a_plus.assign(k.data.begin() + 2 * n, k.data.end());
  return a;
}

double total_probability(const AmplitudeSet& a) {
  double sum = 0;
  for (const auto& x : a.a_minus) sum += std::norm(x);
  for (const auto& x : a.a_plus) sum += std::norm(x);
  return sum * a.grid->k_measure();
}

AmplitudeSet decompose(const State& f) {
  if (f.picture != Picture::RCQM) throw PictureMismatch("decompose requires an RCQM state (use decompose_fw for FW)");
  State k = to_momentum(f);
  const std::size_t n = k.grid->size();
  for (int c = 0; c < kComponents; ++c)
    for (std::size_t s = 0; s < n; ++s) k.at(c, s) *= std::polar(1.0, k.grid->omega(s) * f.t);
  return AmplitudeSet::from_field(k);
}

State reconstruct(const AmplitudeSet& a, double t) {
  State f = a.as_field();
  const std::size_t n = a.grid->size();
  for (int c = 0; c < kComponents; ++c)
    for (std::size_t s = 0; s < n; ++s) f.at(c, s) *= std::polar(1.0, -a.grid->omega(s) * t);
  f.t = t;
  return f;
}

AmplitudeSet decompose_fw(const State& phi) {
  if (phi.picture != Picture::FW) throw PictureMismatch("decompose_fw requires an FW state");
  const State k = to_momentum(phi);
  const auto& g = *k.grid;
  const std::size_t n = g.size();
  AmplitudeSet a{k.grid, std::vector<cplx>(2 * n), std::vector<cplx>(2 * n)};
  for (std::size_t s = 0; s < n; ++s) {
    const cplx phase = std::polar(1.0, g.omega(s) * phi.t);
    for (int r = 0; r < 2; ++r) {
      a.a_minus[r * n + s] = phase * k.at(r, s);
      a.a_plus[r * n + s] = phase * std::conj(k.at(r + 2, g.negated(s)));
    }
  }
  return a;
}

State reconstruct_fw(const AmplitudeSet& a, double t) {
  const auto& g = *a.grid;
  const std::size_t n = g.size();
  State f = zero_state(a.grid, Realization::Momentum, Picture::FW, t);
  for (std::size_t s = 0; s < n; ++s) {
    const cplx down = std::polar(1.0, -g.omega(s) * t);
    for (int r = 0; r < 2; ++r) {
      f.at(r, s) = down * a.a_minus[r * n + s];
      f.at(r + 2, s) = std::conj(down) * std::conj(a.a_plus[r * n + g.negated(s)]);
    }
  }
  return f;
}

void write_snapshot(std::ostream& out, const State& f) {
  const auto& spec = f.grid->spec();
  nlohmann::json j;
  j["format"] = "rcqm-state";
  j["version"] = 1;
  j["grid"] = {{"dim", spec.dim}, {"n", spec.n_per_axis}, {"box_length", spec.box_length}, {"mass", spec.mass}};
  j["picture"] = to_string(f.picture);
  j["realization"] = to_string(f.realization);
  j["t"] = f.t;
  std::vector<double> interleaved;
  interleaved.reserve(2 * f.data.size());
  for (const auto& x : f.data) {
    interleaved.push_back(x.real());
    interleaved.push_back(x.imag());
  }
  j["data"] = std::move(interleaved);
  out << j.dump() << '\n';
}

State read_snapshot(std::istream& in) {
  const nlohmann::json j = nlohmann::json::parse(in);
  if (j.at("format") != "rcqm-state" || j.at("version") != 1) throw std::invalid_argument("not an rcqm-state v1 snapshot");
  GridSpec spec;
  spec.dim = j.at("grid").at("dim");
  spec.n_per_axis = j.at("grid").at("n");
  spec.box_length = j.at("grid").at("box_length");
  spec.mass = j.at("grid").at("mass");
  const std::string real = j.at("realization");
  if (real != "position" && real != "momentum") throw std::invalid_argument("unknown realization '" + real + "'");
  State f = zero_state(make_grid(spec), real == "position" ? Realization::Position : Realization::Momentum,
                       picture_from_string(j.at("picture")), j.at("t").get<double>());
  const auto& data = j.at("data");
  if (data.size() != 2 * f.data.size()) throw std::invalid_argument("snapshot data length does not match grid");
  for (std::size_t i = 0; i < f.data.size(); ++i) f.data[i] = {data[2 * i].get<double>(), data[2 * i + 1].get<double>()};
  return f;
}

void write_marginals_csv(std::ostream& out, const State& f) {
  const State x = to_position(f);
  const auto& g = *x.grid;
  const int n = g.n();
  const int half = (n - 1) / 2;
  const double w = g.x_measure() / g.dx();
  out << "axis,coordinate,density\n";
  out.precision(17);
  for (int axis = 0; axis < g.dim(); ++axis) {
    std::vector<double> density(n, 0.0);
    for (std::size_t s = 0; s < g.size(); ++s) {
      double p = 0;
      for (int c = 0; c < kComponents; ++c) p += std::norm(x.at(c, s));
      density[g.offsets(s)[axis] + half] += p * w;
    }
    for (int i = 0; i < n; ++i) out << axis + 1 << ',' << g.x_axis()[i] << ',' << density[i] << '\n';
  }
}

}  // namespace rcqm
