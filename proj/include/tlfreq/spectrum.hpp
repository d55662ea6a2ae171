#pragma once

#include <complex>
#include <vector>

#include "tlfreq/signal.hpp"

namespace tlfreq {

/// Two-sided spectrum on the grid omega0 + m * domega, m = 0..bins-1, ascending.
///
/// Bins approximate the continuous transform X(w) = int x(t) exp(-i w t) dt:
/// the forward transform is dt-weighted and includes the phase of the
/// signal's start time, the inverse is weighted by domega / (2 pi).
struct Spectrum {
  double omega0 = 0.0;
  double domega = 0.0;
  double time_origin = 0.0;  // t0 of the originating grid, needed to invert
  std::vector<std::complex<double>> bins;

  double omega(std::size_t m) const noexcept { return omega0 + static_cast<double>(m) * domega; }
  std::size_t size() const noexcept { return bins.size(); }
  /// Index of the zero-frequency bin.
  std::size_t zero_bin() const noexcept;
  /// Sample step of the signal this spectrum inverts to.
  double sample_step() const noexcept;
};

Spectrum fft(const Signal& x);
Signal ifft(const Spectrum& spectrum);

/// Ideal low-pass: zero every bin with |omega| > cutoff. Requires 0 < cutoff < pi/dt.
Signal lowpass(const Signal& x, double cutoff);

double nyquist(double dt);

}  // namespace tlfreq
