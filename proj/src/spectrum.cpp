#include "tlfreq/spectrum.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "tlfreq/error.hpp"

namespace tlfreq {

namespace {

std::mutex planner_mutex;  // FFTW planning is not thread safe

enum class Direction { Forward, Backward };

std::vector<std::complex<double>> dft(std::vector<std::complex<double>> data, Direction dir) {
  const int n = static_cast<int>(data.size());
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex);
    plan = fftw_plan_dft_1d(n, buf, buf, dir == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD,
                            FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex);
    fftw_destroy_plan(plan);
  }
  return data;
}

}  // namespace

std::size_t Spectrum::zero_bin() const noexcept { return bins.size() / 2; }

double Spectrum::sample_step() const noexcept {
  return 2.0 * std::numbers::pi / (static_cast<double>(bins.size()) * domega);
}

double nyquist(double dt) { return std::numbers::pi / dt; }

Spectrum fft(const Signal& x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> data(x.samples().begin(), x.samples().end());
  data = dft(std::move(data), Direction::Forward);

  Spectrum s;
  s.domega = 2.0 * std::numbers::pi / (static_cast<double>(n) * x.dt());
  const long half = static_cast<long>(n / 2);
  s.omega0 = -static_cast<double>(half) * s.domega;
  s.time_origin = x.t0();
  s.bins.resize(n);
  for (std::size_t m = 0; m < n; ++m) {
    const long q = static_cast<long>(m) - half;
    const auto z = static_cast<std::size_t>((q % static_cast<long>(n) + static_cast<long>(n)) %
                                            static_cast<long>(n));
    s.bins[m] = x.dt() * std::polar(1.0, -s.omega(m) * x.t0()) * data[z];
  }
  return s;
}

Signal ifft(const Spectrum& spectrum) {
  const std::size_t n = spectrum.size();
  const long half = static_cast<long>(n / 2);
  const double dt = spectrum.sample_step();
  std::vector<std::complex<double>> data(n);
  for (std::size_t m = 0; m < n; ++m) {
    const long q = static_cast<long>(m) - half;
    const auto z = static_cast<std::size_t>((q % static_cast<long>(n) + static_cast<long>(n)) %
                                            static_cast<long>(n));
    data[z] = spectrum.bins[m] * std::polar(1.0, spectrum.omega(m) * spectrum.time_origin) / dt;
  }
  data = dft(std::move(data), Direction::Backward);
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = data[k].real() / static_cast<double>(n);
  return Signal(spectrum.time_origin, dt, std::move(out));
}

Signal lowpass(const Signal& x, double cutoff) {
  if (!(cutoff > 0.0) || !std::isfinite(cutoff)) {
    throw Error("InvalidCutoff", "cutoff must be positive, got " + std::to_string(cutoff));
  }
  if (cutoff >= nyquist(x.dt())) {
    throw Error("CutoffAboveNyquist", "cutoff " + std::to_string(cutoff) +
                                          " rad/s is not below the Nyquist frequency " +
                                          std::to_string(nyquist(x.dt())));
  }
  Spectrum s = fft(x);
  for (std::size_t m = 0; m < s.size(); ++m) {
    if (std::abs(s.omega(m)) > cutoff) s.bins[m] = 0.0;
  }
  Signal y = ifft(s);
  return Signal(x.t0(), x.dt(), std::vector<double>(y.samples().begin(), y.samples().end()));
}

}  // namespace tlfreq
