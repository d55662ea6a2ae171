#include "tlfreq/kernel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tlfreq/error.hpp"

namespace tlfreq {

namespace {

double discrete_l1(const std::vector<double>& taps, double dt) {
  double acc = 0.0;
  for (double v : taps) acc += std::abs(v);
  return dt * acc;
}

}  // namespace

Kernel::Kernel(std::variant<GaussianShape, TableShape> shape, double dt, long first_offset,
               std::vector<double> taps)
    : shape_(std::move(shape)),
      dt_(dt),
      first_offset_(first_offset),
      taps_(std::move(taps)),
      l1_norm_(discrete_l1(taps_, dt_)) {}

Kernel Kernel::gaussian(double mean, double std, double truncation_radius, double dt) {
  if (!(std > 0.0)) {
    throw Error("NonPositiveStd", "gaussian kernel std must be positive");
  }
  if (!(dt > 0.0)) {
    throw Error("NonPositiveDt", "kernel step must be positive");
  }
  if (truncation_radius < 4.0 * std * (1.0 - 1e-12)) {
    throw Error("TruncationTooNarrow", "truncation radius " + std::to_string(truncation_radius) +
                                           " is below 4 std (" + std::to_string(4.0 * std) + ")");
  }
  const auto first = static_cast<long>(std::ceil((mean - truncation_radius) / dt - 1e-9));
  const auto last = static_cast<long>(std::floor((mean + truncation_radius) / dt + 1e-9));
  std::vector<double> taps;
  taps.reserve(static_cast<std::size_t>(last - first + 1));
  double mass = 0.0;
  for (long k = first; k <= last; ++k) {
    const double z = (static_cast<double>(k) * dt - mean) / std;
    const double v = std::exp(-0.5 * z * z);
    taps.push_back(v);
    mass += v;
  }
  const double scale = 1.0 / (dt * mass);
  for (auto& v : taps) v *= scale;
  return Kernel(GaussianShape{mean, std, truncation_radius}, dt, first, std::move(taps));
}

Kernel Kernel::table(double t0, double dt, std::vector<double> samples) {
  if (!(dt > 0.0)) {
    throw Error("NonPositiveDt", "kernel step must be positive");
  }
  if (samples.empty()) {
    throw Error("EmptyKernel", "table kernel has no samples");
  }
  const double offset = t0 / dt;
  const double rounded = std::round(offset);
  if (std::abs(offset - rounded) > 1e-6) {
    throw Error("KernelOffGrid", "table kernel start is not a multiple of its step");
  }
  const double l1 = discrete_l1(samples, dt);
  if (l1 > 1.0 + kL1Tolerance) {
    throw Error("KernelNotNormalized", "table kernel L1 norm " + std::to_string(l1) + " exceeds 1");
  }
  auto first = static_cast<long>(rounded);
  TableShape shape{t0, dt, samples};
  return Kernel(std::move(shape), dt, first, std::move(samples));
}

std::size_t Kernel::left_reach() const noexcept {
  return first_offset_ < 0 ? static_cast<std::size_t>(-first_offset_) : 0;
}

std::size_t Kernel::right_reach() const noexcept {
  const long last = last_offset();
  return last > 0 ? static_cast<std::size_t>(last) : 0;
}

std::complex<double> Kernel::transfer(double omega) const {
  if (const auto* g = std::get_if<GaussianShape>(&shape_)) {
    return std::exp(std::complex<double>(-0.5 * g->std * g->std * omega * omega, -g->mean * omega));
  }
  std::complex<double> acc = 0.0;
  for (std::size_t k = 0; k < taps_.size(); ++k) {
    const double tau = static_cast<double>(first_offset_ + static_cast<long>(k)) * dt_;
    acc += taps_[k] * std::polar(1.0, -omega * tau);
  }
  return dt_ * acc;
}

Kernel Kernel::resampled(double dt) const {
  if (const auto* g = std::get_if<GaussianShape>(&shape_)) {
    return gaussian(g->mean, g->std, g->truncation_radius, dt);
  }
  if (std::abs(dt - dt_) > 1e-9 * dt) {
    throw Error("DtMismatch", "table kernel sampled at " + std::to_string(dt_) +
                                  " cannot be used on step " + std::to_string(dt));
  }
  return *this;
}

}  // namespace tlfreq
