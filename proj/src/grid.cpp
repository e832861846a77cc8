#include "rcqm/grid.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <fftw3.h>

#include "rcqm/errors.hpp"
#include "rcqm/state.hpp"

namespace rcqm {

namespace {

// FFTW planning is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

void validate(const GridSpec& spec) {
  if (spec.dim != 1 && spec.dim != 3) throw std::invalid_argument("grid dim must be 1 or 3");
  if (spec.n_per_axis <= 0 || spec.n_per_axis % 2 == 0)
    throw std::invalid_argument("grid n_per_axis must be a positive odd integer, got " +
                                std::to_string(spec.n_per_axis));
  if (!(spec.box_length > 0) || !std::isfinite(spec.box_length))
    throw std::invalid_argument("grid box_length must be positive");
  if (!(spec.mass > 0) || !std::isfinite(spec.mass)) throw std::invalid_argument("grid mass must be positive");
}

Grid::Grid(const GridSpec& spec) : spec_(spec) {
  validate(spec);
  const int n = spec.n_per_axis;
  const int half = (n - 1) / 2;
  size_ = 1;
  for (int a = 0; a < spec.dim; ++a) size_ *= static_cast<std::size_t>(n);

  dx_ = spec.box_length / n;
  dk_ = 2.0 * std::numbers::pi / spec.box_length;
  x_measure_ = std::pow(dx_, spec.dim);
  k_measure_ = std::pow(dk_, spec.dim);

  x_axis_.resize(n);
  k_axis_.resize(n);
  for (int i = 0; i < n; ++i) {
    x_axis_[i] = (i - half) * dx_;
    k_axis_[i] = (i - half) * dk_;
  }

  omega_.resize(size_);
  negated_.resize(size_);
  fft_order_.resize(size_);
  const double m2 = spec.mass * spec.mass;
  for (std::size_t s = 0; s < size_; ++s) {
    const auto off = offsets(s);
    double k2 = 0;
    std::array<int, 3> neg{}, wrapped{};
    for (int a = 0; a < spec.dim; ++a) {
      const double ka = k_axis_[off[a] + half];
      k2 += ka * ka;
      neg[a] = -off[a];
      wrapped[a] = (off[a] + n) % n;
    }
    omega_[s] = std::sqrt(k2 + m2);
    negated_[s] = site(neg);
    std::size_t f = 0;
    for (int a = 0; a < spec.dim; ++a) f = f * n + wrapped[a];
    fft_order_[s] = f;
  }

  std::array<int, 3> dims{n, n, n};
  std::vector<cplx> a(kComponents * size_), b(kComponents * size_);
  auto* pa = reinterpret_cast<fftw_complex*>(a.data());
  auto* pb = reinterpret_cast<fftw_complex*>(b.data());
  const int dist = static_cast<int>(size_);
  std::lock_guard<std::mutex> lock(planner_mutex());
  forward_plan_ = fftw_plan_many_dft(spec.dim, dims.data(), kComponents, pa, nullptr, 1, dist, pb, nullptr, 1, dist,
                                     FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  inverse_plan_ = fftw_plan_many_dft(spec.dim, dims.data(), kComponents, pa, nullptr, 1, dist, pb, nullptr, 1, dist,
                                     FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!forward_plan_ || !inverse_plan_) throw std::runtime_error("FFTW planning failed");
}

Grid::~Grid() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (forward_plan_) fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  if (inverse_plan_) fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

std::array<int, 3> Grid::offsets(std::size_t s) const {
  const int n = spec_.n_per_axis;
  const int half = (n - 1) / 2;
  std::array<int, 3> off{0, 0, 0};
  for (int a = spec_.dim - 1; a >= 0; --a) {
    off[a] = static_cast<int>(s % n) - half;
    s /= n;
  }
  return off;
}

std::size_t Grid::site(const std::array<int, 3>& off) const {
  const int n = spec_.n_per_axis;
  const int half = (n - 1) / 2;
  std::size_t s = 0;
  for (int a = 0; a < spec_.dim; ++a) {
    if (off[a] < -half || off[a] > half) throw std::out_of_range("lattice offset outside the grid");
    s = s * n + static_cast<std::size_t>(off[a] + half);
  }
  return s;
}

double Grid::x(std::size_t s, int axis) const {
  if (axis >= spec_.dim) return 0.0;
  return offsets(s)[axis] * dx_;
}

double Grid::k(std::size_t s, int axis) const {
  if (axis >= spec_.dim) return 0.0;
  return k_axis_[offsets(s)[axis] + (spec_.n_per_axis - 1) / 2];
}

std::array<double, 3> Grid::k_vector(std::size_t s) const {
  const auto off = offsets(s);
  const int half = (spec_.n_per_axis - 1) / 2;
  std::array<double, 3> kv{0, 0, 0};
  for (int a = 0; a < spec_.dim; ++a) kv[a] = k_axis_[off[a] + half];
  return kv;
}

void Grid::execute(void* plan, std::span<const cplx> in, std::span<cplx> out, double scale) const {
  if (in.size() != kComponents * size_ || out.size() != kComponents * size_)
    throw GridMismatch("transform buffer does not match grid size");
  std::vector<cplx> src(kComponents * size_), dst(kComponents * size_);
  for (int c = 0; c < kComponents; ++c) {
    const std::size_t base = c * size_;
    for (std::size_t s = 0; s < size_; ++s) src[base + fft_order_[s]] = in[base + s];
  }
  fftw_execute_dft(static_cast<fftw_plan>(plan), reinterpret_cast<fftw_complex*>(src.data()),
                   reinterpret_cast<fftw_complex*>(dst.data()));
  for (int c = 0; c < kComponents; ++c) {
    const std::size_t base = c * size_;
    for (std::size_t s = 0; s < size_; ++s) out[base + s] = scale * dst[base + fft_order_[s]];
  }
}

void Grid::forward(std::span<const cplx> position, std::span<cplx> momentum) const {
  execute(forward_plan_, position, momentum, std::pow(dx_ / std::sqrt(2.0 * std::numbers::pi), spec_.dim));
}

void Grid::inverse(std::span<const cplx> momentum, std::span<cplx> position) const {
  execute(inverse_plan_, momentum, position, std::pow(dk_ / std::sqrt(2.0 * std::numbers::pi), spec_.dim));
}

GridPtr make_grid(const GridSpec& spec) { return std::make_shared<const Grid>(spec); }

State to_momentum(const State& f) {
  if (f.realization == Realization::Momentum) return f;
  State out = f;
  out.realization = Realization::Momentum;
  f.grid->forward(f.data, out.data);
  return out;
}

State to_position(const State& f) {
  if (f.realization == Realization::Position) return f;
  State out = f;
  out.realization = Realization::Position;
  f.grid->inverse(f.data, out.data);
  return out;
}

State negate_k(const State& f) {
  if (f.realization != Realization::Momentum) throw RealizationMismatch("negate_k requires the momentum realization");
  State out = f;
  const std::size_t n = f.grid->size();
  for (int c = 0; c < kComponents; ++c)
    for (std::size_t s = 0; s < n; ++s) out.data[c * n + f.grid->negated(s)] = f.data[c * n + s];
  return out;
}

}  // namespace rcqm
