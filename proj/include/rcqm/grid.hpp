#pragma once

// Periodic position box and its dual momentum lattice.
//
// Both lattices are centered on zero with an odd number of points per axis, so
// every momentum k has an exact partner -k. Fourier transforms carry the
// symmetric normalization
//   f~(k) = (dx / sqrt(2 pi))^d  sum_x exp(-i k.x) f(x)
//   f(x)  = (dk / sqrt(2 pi))^d  sum_k exp(+i k.x) f~(k)
// which is unitary with respect to the inner products weighted by dx^d and
// dk^d respectively.

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace rcqm {

using cplx = std::complex<double>;

inline constexpr int kComponents = 4;

struct GridSpec {
  int dim = 3;
  int n_per_axis = 31;
  double box_length = 40.0;
  double mass = 1.0;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Throws std::invalid_argument naming the first violated constraint.
void validate(const GridSpec& spec);

class Grid {
public:
  explicit Grid(const GridSpec& spec);
  ~Grid();
  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;

  const GridSpec& spec() const { return spec_; }
  int dim() const { return spec_.dim; }
  int n() const { return spec_.n_per_axis; }
  double mass() const { return spec_.mass; }
  /// Number of lattice sites.
  std::size_t size() const { return size_; }

  double dx() const { return dx_; }
  double dk() const { return dk_; }
  /// dx^d and dk^d.
  double x_measure() const { return x_measure_; }
  double k_measure() const { return k_measure_; }

  std::span<const double> x_axis() const { return x_axis_; }
  std::span<const double> k_axis() const { return k_axis_; }

  /// Per-axis integer offsets of a site, each in [-(n-1)/2, (n-1)/2]. Unused
  /// axes (d = 1) report 0.
  std::array<int, 3> offsets(std::size_t site) const;
  std::size_t site(const std::array<int, 3>& offsets) const;

  double x(std::size_t site, int axis) const;
  double k(std::size_t site, int axis) const;
  std::array<double, 3> k_vector(std::size_t site) const;

  std::span<const double> omega() const { return omega_; }
  double omega(std::size_t site) const { return omega_[site]; }

  /// Site of -k (equivalently -x). An involution.
  std::size_t negated(std::size_t site) const { return negated_[site]; }

  /// Transforms all four components (component-major, 4 * size() values).
  void forward(std::span<const cplx> position, std::span<cplx> momentum) const;
  void inverse(std::span<const cplx> momentum, std::span<cplx> position) const;

private:
  void execute(void* plan, std::span<const cplx> in, std::span<cplx> out, double scale) const;

  GridSpec spec_;
  std::size_t size_ = 0;
  double dx_ = 0, dk_ = 0, x_measure_ = 0, k_measure_ = 0;
  std::vector<double> x_axis_, k_axis_, omega_;
  std::vector<std::size_t> negated_;
  std::vector<std::size_t> fft_order_;
  void* forward_plan_ = nullptr;
  void* inverse_plan_ = nullptr;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(const GridSpec& spec);

struct State;

/// Realization changes; states already in the target realization are copied.
State to_momentum(const State& f);
State to_position(const State& f);

/// Re-indexes every component by k -> -k. Momentum realization only.
State negate_k(const State& f);

}  // namespace rcqm
