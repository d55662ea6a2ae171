#pragma once

#include <complex>
#include <span>
#include <variant>
#include <vector>

namespace tlfreq {

struct GaussianShape {
  double mean = 0.0;
  double std = 0.0;
  double truncation_radius = 0.0;
};

/// Sampled kernel given explicitly; t0 is the offset of the first tap
/// relative to the measurement time.
struct TableShape {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<double> samples;
};

/// Measurement filter f with ||f||_1 <= 1, sampled on a fixed step.
///
/// The measurement at time t is dt * sum_k taps[k] * x(t + (first_offset + k) * dt),
/// the discrete form of <f(. - t), x>.
class Kernel {
 public:
  static constexpr double kDefaultTruncation = 5.0;  // in standard deviations
  static constexpr double kL1Tolerance = 1e-9;

  /// Gaussian sampled on the dt grid and rescaled to discrete L1 norm 1.
  static Kernel gaussian(double mean, double std, double truncation_radius, double dt);
  static Kernel table(double t0, double dt, std::vector<double> samples);

  const std::variant<GaussianShape, TableShape>& shape() const noexcept { return shape_; }
  bool is_gaussian() const noexcept { return std::holds_alternative<GaussianShape>(shape_); }

  double dt() const noexcept { return dt_; }
  std::span<const double> taps() const noexcept { return taps_; }
  long first_offset() const noexcept { return first_offset_; }
  long last_offset() const noexcept { return first_offset_ + static_cast<long>(taps_.size()) - 1; }

  /// Samples needed before / after the measurement time (never negative).
  std::size_t left_reach() const noexcept;
  std::size_t right_reach() const noexcept;

  double l1_norm() const noexcept { return l1_norm_; }

  /// F{f}(omega). Gaussians use the analytic exp(-i mean omega - std^2 omega^2 / 2);
  /// tables use the dt-weighted discrete-time transform of their taps.
  std::complex<double> transfer(double omega) const;

  /// Transfer function of the measurement operator x -> <f(. - t), x>, i.e. F{f}(-omega).
  std::complex<double> atom_transfer(double omega) const { return transfer(-omega); }

  /// Same kernel shape sampled at another step (tables must already match).
  Kernel resampled(double dt) const;

 private:
  Kernel(std::variant<GaussianShape, TableShape> shape, double dt, long first_offset,
         std::vector<double> taps);

  std::variant<GaussianShape, TableShape> shape_;
  double dt_;
  long first_offset_;
  std::vector<double> taps_;
  double l1_norm_;
};

}  // namespace tlfreq
