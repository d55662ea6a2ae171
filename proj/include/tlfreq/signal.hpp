#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace tlfreq {

/// Uniformly sampled real signal. Sample k holds x(t0 + k*dt).
class Signal {
 public:
  Signal(double t0, double dt, std::vector<double> samples);

  double t0() const noexcept { return t0_; }
  double dt() const noexcept { return dt_; }
  std::size_t size() const noexcept { return samples_.size(); }
  std::span<const double> samples() const noexcept { return samples_; }
  double operator[](std::size_t k) const { return samples_[k]; }

  double time(std::size_t k) const noexcept { return t0_ + static_cast<double>(k) * dt_; }
  double end() const noexcept { return time(size() - 1); }
  double duration() const noexcept { return end() - t0_; }

  /// Grid index of t, if t lies on the grid (within 1e-6 of a step) and inside the domain.
  std::optional<std::size_t> index_of(double t) const;

  /// Samples [first, last] as a new signal on the same grid.
  Signal slice(std::size_t first, std::size_t last) const;

 private:
  double t0_;
  double dt_;
  std::vector<double> samples_;
};

/// True when both signals share t0, dt and length (t0/dt within 1e-9 relative to dt).
bool same_grid(const Signal& a, const Signal& b);

/// a*x + b*y on a shared grid; throws DomainMismatch otherwise.
Signal linear_combination(double a, const Signal& x, double b, const Signal& y);

Signal operator-(const Signal& x, const Signal& y);
Signal operator+(const Signal& x, const Signal& y);
Signal operator*(double a, const Signal& x);

double rms(std::span<const double> v);
double max_abs(std::span<const double> v);

}  // namespace tlfreq
