#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "tlfreq/analysis.hpp"
#include "tlfreq/compose.hpp"
#include "tlfreq/formula_gfrf.hpp"
#include "tlfreq/generator.hpp"
#include "tlfreq/measure.hpp"
#include "tlfreq/parser.hpp"
#include "tlfreq/poly_delay.hpp"
#include "tlfreq/separable.hpp"
#include "tlfreq/spectrum.hpp"

using namespace tlfreq;
using namespace testing;

namespace {

using cplx = std::complex<double>;

constexpr double kPeriod = 2.0;
constexpr double kDt = 0.01;

// Three periods of an exactly periodic signal; one period of it is a
// circular segment, so spectra on its FFT grid are exact line spectra.
Signal periodic(std::uint64_t seed, int max_harmonic) {
  return periodic_sum_of_sinusoids(seed, 4, max_harmonic, kPeriod, 1.0, {0.0, 3.0 * kPeriod}, kDt);
}

// The period that starts at t = kPeriod.
Signal middle_period(const Signal& y) {
  const auto n = static_cast<std::size_t>(std::llround(kPeriod / kDt));
  const auto first = static_cast<std::size_t>(std::llround((kPeriod - y.t0()) / y.dt()));
  return y.slice(first, first + n - 1);
}

double rel_rms(const Spectrum& a, const Spectrum& b) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) {
    num += std::norm(a.bins[m] - b.bins[m]);
    den += std::norm(b.bins[m]);
  }
  return std::sqrt(num / den);
}

Signal multiband_signal() {
  std::vector<Sinusoid> parts = {
      {1.0, 2.0 * kPi * 0.25, 0.3},
      {0.6, 2.0 * kPi * 1.0, 1.1},
      {0.8, 2.0 * kPi * 20.0, 0.7},
      {0.5, 2.0 * kPi * 30.0, 2.0},
  };
  return render_sinusoids(parts, {0.0, 19.99}, 0.01);
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("output spectrum of a linear gfrf is H X") {
  const Kernel f = Kernel::gaussian(0.03, 0.04, 0.2, kDt);
  const Gfrf g = atom_gfrf("f", f);
  for (std::uint64_t s = 0; s < 4; ++s) {
    const Signal x = periodic(10 + s, 12);
    const Spectrum X = fft(middle_period(x));
    const Spectrum Y = output_spectrum(g, X, {1});
    const Spectrum ref = fft(middle_period(correlate(f, x)));
    CHECK(rel_rms(Y, ref) < 1e-6);
    for (std::size_t m = 0; m < X.size(); ++m) CHECK(Y.bins[m] == X.bins[m] * f.atom_transfer(X.omega(m)));
  }
}

TEST_CASE("output spectrum of a memoryless square") {
  const double a2 = -0.8;
  const Gfrf g = memoryless_poly_gfrf({{0.0, 0.0, a2}});
  for (std::uint64_t s = 0; s < 3; ++s) {
    const Signal x = middle_period(periodic(20 + s, 6));
    std::vector<double> sq(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) sq[k] = a2 * x[k] * x[k];
    const Spectrum ref = fft(Signal(x.t0(), x.dt(), sq));
    const Spectrum Y = output_spectrum(g, fft(x), {2});
    CHECK(rel_rms(Y, ref) < 0.05);
    CHECK(rel_rms(Y, ref) < 1e-9);  // band-limited on the grid: the Riemann sum is exact
  }
}

TEST_CASE("output spectrum of a delay polynomial matches the time domain") {
  PolyDelayOperator p;
  p.delays = {0.0, 0.1, 0.25};
  p.exponents = {{1, 0, 0}, {0, 0, 1}, {1, 1, 0}, {0, 0, 2}, {1, 1, 1}, {2, 0, 1}};
  p.coefficients = {0.7, 0.2, -0.3, 0.1, 0.25, -0.15};
  const Gfrf g = poly_delay_to_gfrf(p);
  for (std::uint64_t s = 0; s < 3; ++s) {
    const Signal x = periodic(30 + s, 5);
    const Spectrum ref = fft(middle_period(p.apply(x)));
    OutputSpectrumOptions opt;
    opt.max_order = 3;
    const Spectrum Y = output_spectrum(g, fft(middle_period(x)), opt);
    CHECK(rel_rms(Y, ref) < 1e-6);
  }
}

TEST_CASE("output spectrum edge cases") {
  const Gfrf g = memoryless_poly_gfrf({{0.5, 1.0, 1.0}});
  const Spectrum zero = fft(constant(0.0, 0.0, 1.99, kDt));
  const Spectrum Y = output_spectrum(g, zero, {2});
  for (std::size_t m = 0; m < Y.size(); ++m) {
    if (m == Y.zero_bin()) continue;
    CHECK(Y.bins[m] == cplx(0.0));
  }
  // H_0 is a constant output: its line sits in the zero bin.
  CHECK(ifft(Y)[17] == doctest::Approx(0.5));
  const Spectrum Y1 = output_spectrum(memoryless_poly_gfrf({{0.0, 1.0, 1.0}}), zero, {2});
  for (const cplx& b : Y1.bins) CHECK(b == cplx(0.0));
  OutputSpectrumOptions five;
  five.max_order = 5;
  CHECK(error_code([&] { output_spectrum(g, zero, five); }) == "OrderTooHigh");
  OutputSpectrumOptions tiny;
  tiny.budget = 10.0;
  CHECK(error_code([&] { output_spectrum(g, fft(periodic(1, 6)), tiny); }) == "ComputeBudgetExceeded");
}

TEST_CASE("gfrf grids") {
  const GfrfGrid neg = gfrf_grid(negation_gfrf(), 1, 50.0, 101);
  CHECK(neg.values.size() == 101);
  for (const cplx& v : neg.values) CHECK(v == cplx(-1.0));
  CHECK(neg.omega(100) == doctest::Approx(50.0));

  const GfrfGrid wide = gfrf_grid(atom_gfrf("w", Kernel::gaussian(0.0, 0.3, 1.5, kDt)), 1, 60.0, 121);
  const GfrfGrid narrow = gfrf_grid(atom_gfrf("n", Kernel::gaussian(0.0, 0.04, 0.2, kDt)), 1, 60.0, 121);
  for (std::size_t i = 1; i < wide.values.size(); ++i) {
    CHECK(std::abs(wide.values[i]) <= std::abs(wide.values[i - 1]));
    CHECK(std::abs(wide.values[i]) < std::abs(narrow.values[i]));
  }

  const KernelTable kt = single_atom("p", 0.0, 0.04, kDt);
  FitConfig cfg;
  cfg.dt = kDt;
  cfg.duration = 6.0;
  cfg.num_delays = 3;
  const Gfrf g = formula_to_gfrf(parse_formula("hist[0.1,0.3] p"), kt, cfg).gfrf;
  for (std::size_t n = 1; n <= 3; ++n) {
    const GfrfGrid grid = gfrf_grid(g, n, 30.0, 13);
    for (std::size_t flat = 0; flat < grid.values.size(); flat += 7) {
      std::vector<std::size_t> idx(n);
      std::vector<double> w(n);
      std::size_t rest = flat;
      for (std::size_t j = n; j-- > 0;) {
        idx[j] = rest % 13;
        w[j] = grid.omega(idx[j]);
        rest /= 13;
      }
      CHECK(grid.at(idx) == evaluate_gfrf(g, n, w));
      CHECK(grid.values[flat] == evaluate_gfrf(g, n, w));
    }
  }
  CHECK(error_code([&] { gfrf_grid(g, 3, 30.0, 1000); }) == "GridTooLarge");

  std::ostringstream csv;
  write_grid_csv(csv, gfrf_grid(g, 2, 30.0, 3));
  const std::string text = csv.str();
  CHECK(text.rfind("omega1,omega2,re,im,abs\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 10);
}

TEST_CASE("cutoff of the documented once example") {
  // Default fit configuration, atom G(0,0.04), 1 rad/s grid up to 40 rad/s.
  const FitConfig cfg;
  const KernelTable kt = single_atom("p", 0.0, 0.04, cfg.dt);
  const Gfrf g = formula_to_gfrf(parse_formula("once[0.2,0.4] p"), kt, cfg).gfrf;
  const CutoffResult linear = cutoff_frequency(g, 0.6, 40.0, 41, 1);
  REQUIRE(linear.found);
  CHECK(std::abs(linear.omega - 3.0 * kPi) <= 1.0);

  // Higher orders only raise the profile.
  const CutoffResult second = cutoff_frequency(g, 0.6, 40.0, 41, 2);
  for (std::size_t i = 0; i < linear.profile.size(); ++i) CHECK(second.profile[i] >= linear.profile[i]);
  CHECK((!second.found || second.omega >= linear.omega));
}

TEST_CASE("cutoff search") {
  const CutoffResult delay = cutoff_frequency(delay_gfrf(0.3), 0.5, 20.0, 21, 1);
  CHECK_FALSE(delay.found);
  CHECK(delay.omega == 20.0);
  CHECK(delay.diagnostic == "NoFrequencyBelowThreshold");

  const Gfrf atom = atom_gfrf("p", Kernel::gaussian(0.0, 0.1, 0.5, kDt));
  const CutoffResult all = cutoff_frequency(atom, 1.5, 60.0, 61, 1);
  CHECK(all.found);
  CHECK(all.omega == 0.0);

  // exp(-0.005 w^2) < 0.1  <=>  w > 21.46
  const CutoffResult edge = cutoff_frequency(atom, 0.1, 60.0, 61, 1);
  CHECK(edge.omega == 22.0);

  const KernelTable kt = single_atom("p", 0.0, 0.04, kDt);
  FitConfig cfg;
  cfg.dt = kDt;
  cfg.duration = 6.0;
  cfg.num_delays = 3;
  const Gfrf g = formula_to_gfrf(parse_formula("once[0,0.3] p"), kt, cfg).gfrf;
  double previous = std::numeric_limits<double>::infinity();
  for (double thr : {0.05, 0.1, 0.2, 0.4, 0.8, 1.6, 3.2}) {
    const CutoffResult r = cutoff_frequency(g, thr, 40.0, 21, 2);
    CHECK(r.omega <= previous);
    previous = r.omega;
  }
  CHECK(error_code([&] { cutoff_frequency(g, 0.0, 40.0, 21, 2); }) == "BadThreshold");
  CHECK(error_code([&] { cutoff_frequency(g, 0.1, 40.0, 201, 4, 1e6); }) == "ComputeBudgetExceeded");
}

TEST_CASE("compression safety") {
  const KernelTable kt = single_atom("p", 0.0, 0.04, 0.01);
  const Formula f = parse_formula("once[0.2,0.4] p");
  const Signal x = multiband_signal();

  const SafetyReport hi = compression_safety_report(f, x, 2.0 * kPi * 1.5, kt);
  CHECK(hi.safe);
  CHECK(hi.rho_rel_diff <= 0.05);
  CHECK(hi.truth_flip_count == 0);
  CHECK(hi.signal_rel_diff > 0.5);  // the compressed signal differs markedly

  const SafetyReport lo = compression_safety_report(f, x, 2.0 * kPi * 0.5, kt);
  CHECK_FALSE(lo.safe);
  CHECK(lo.truth_flip_count > 0);

  const SafetyReport same = compression_safety_report(f, x, nyquist(0.01), kt);
  CHECK(same.safe);
  CHECK(same.rho_rel_diff == 0.0);
  CHECK(same.signal_rel_diff == 0.0);
  CHECK(max_abs_diff(same.compressed, x) == 0.0);

  const SafetyReport again = compression_safety_report(f, x, 2.0 * kPi * 1.5, kt);
  CHECK(safety_report_to_json(again, f).dump() == safety_report_to_json(hi, f).dump());

  double previous = std::numeric_limits<double>::infinity();
  for (double hz : {0.3, 0.5, 1.0, 1.5, 5.0, 20.5, 25.0, 40.0}) {
    const double d = compression_safety_report(f, x, 2.0 * kPi * hz, kt).signal_rel_diff;
    CHECK(d <= previous + 1e-12);  // equal bin sets differ only in rounding
    previous = d;
  }
}

}  // TEST_SUITE
