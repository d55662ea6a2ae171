#include "tlfreq/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tlfreq/error.hpp"
#include "tlfreq/window.hpp"

namespace tlfreq {

Signal::Signal(double t0, double dt, std::vector<double> samples)
    : t0_(t0), dt_(dt), samples_(std::move(samples)) {
  if (!(dt_ > 0.0) || !std::isfinite(dt_)) {
    throw Error("NonPositiveDt", "signal step must be positive, got " + std::to_string(dt_));
  }
  if (samples_.empty()) {
    throw Error("EmptySignal", "a signal needs at least one sample");
  }
}

std::optional<std::size_t> Signal::index_of(double t) const {
  const double pos = (t - t0_) / dt_;
  const double k = std::round(pos);
  if (std::abs(pos - k) > 1e-6 || k < 0.0 || k > static_cast<double>(size() - 1)) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(k);
}

Signal Signal::slice(std::size_t first, std::size_t last) const {
  if (first > last || last >= size()) {
    throw Error("WindowOutOfDomain", "slice outside signal");
  }
  return Signal(time(first), dt_,
                std::vector<double>(samples_.begin() + static_cast<long>(first),
                                    samples_.begin() + static_cast<long>(last) + 1));
}

bool same_grid(const Signal& a, const Signal& b) {
  const double tol = 1e-9 * a.dt();
  return a.size() == b.size() && std::abs(a.dt() - b.dt()) <= tol && std::abs(a.t0() - b.t0()) <= tol;
}

Signal linear_combination(double a, const Signal& x, double b, const Signal& y) {
  if (!same_grid(x, y)) {
    throw Error("DomainMismatch", "signals do not share a sampling grid");
  }
  std::vector<double> out(x.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = a * x[k] + b * y[k];
  }
  return Signal(x.t0(), x.dt(), std::move(out));
}

Signal operator-(const Signal& x, const Signal& y) {
  if (!same_grid(x, y)) {
    throw Error("DomainMismatch", "signals do not share a sampling grid");
  }
  std::vector<double> out(x.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = x[k] - y[k];
  return Signal(x.t0(), x.dt(), std::move(out));
}

Signal operator+(const Signal& x, const Signal& y) {
  if (!same_grid(x, y)) {
    throw Error("DomainMismatch", "signals do not share a sampling grid");
  }
  std::vector<double> out(x.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = x[k] + y[k];
  return Signal(x.t0(), x.dt(), std::move(out));
}

Signal operator*(double a, const Signal& x) {
  std::vector<double> out(x.samples().begin(), x.samples().end());
  for (auto& v : out) v *= a;
  return Signal(x.t0(), x.dt(), std::move(out));
}

double rms(std::span<const double> v) {
  if (v.empty()) return 0.0;
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc / static_cast<double>(v.size()));
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Interval <-> lag conversion lives here since every module samples on the same grid.

namespace {
constexpr double kGridSlack = 1e-9;
}

Lags to_lags(const Interval& interval, double dt) {
  const double lo = interval.lo / dt;
  const double hi = interval.hi / dt;
  auto min_lag = static_cast<long>(std::ceil(lo - kGridSlack));
  auto max_lag = static_cast<long>(std::floor(hi + kGridSlack));
  if (min_lag > max_lag) {
    const auto mid = static_cast<long>(std::llround(0.5 * (lo + hi)));
    min_lag = max_lag = mid;
  }
  return Lags{static_cast<std::size_t>(std::max(0L, min_lag)),
              static_cast<std::size_t>(std::max(0L, max_lag))};
}

std::size_t delay_lag(double delay, double dt) {
  return static_cast<std::size_t>(std::max(0LL, std::llround(delay / dt)));
}

}  // namespace tlfreq
