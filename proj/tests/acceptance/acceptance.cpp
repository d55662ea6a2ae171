// Acceptance checks, one line per criterion. Usage: acceptance [N ...]
// runs the listed criteria (all when none are given); exit status is the
// number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "tlfreq/analysis.hpp"
#include "tlfreq/compose.hpp"
#include "tlfreq/formula_gfrf.hpp"
#include "tlfreq/generator.hpp"
#include "tlfreq/metric.hpp"
#include "tlfreq/monitor.hpp"
#include "tlfreq/parser.hpp"
#include "tlfreq/semantics.hpp"
#include "tlfreq/spectrum.hpp"

using namespace tlfreq;

namespace {

constexpr double kPi = std::numbers::pi;

// Pinned tolerances.
constexpr double kC1TrainRms = 1e-6;
constexpr double kC1HeldOutRel = 5e-2;
constexpr double kC1Seconds = 30.0;
constexpr double kC2Tie = 1e-12;
constexpr double kC4MaxAbs = 1e-10;
constexpr double kC5RelRms = 5e-2;
constexpr double kC6RhoRel = 5e-2;
constexpr double kC6Seconds = 10.0;
constexpr double kC8TransferAbs = 1e-6;
constexpr double kC8RoundTrip = 1e-9;
constexpr double kC8MetricSlack = 1e-12;
constexpr double kC9Slack = 1e-12;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Kernel gauss(double mean, double s, double dt) {
  return Kernel::gaussian(mean, s, Kernel::kDefaultTruncation * s, dt);
}

// Relative RMS of prediction against reference.
double rel_rms(std::span<const double> pred, std::span<const double> ref) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < ref.size(); ++k) {
    num += (pred[k] - ref[k]) * (pred[k] - ref[k]);
    den += ref[k] * ref[k];
  }
  return std::sqrt(num / den);
}

// Fit of once[0,0.5]: degree 4, six delays, thirty training signals drawn
// with frequencies in [0.1, 1.5] rad/s. Held-out error grows with the band
// edge and crosses 5% near 2 rad/s.
FitConfig criterion1_config() {
  FitConfig cfg;
  cfg.num_delays = 6;
  cfg.degree = 4;
  cfg.num_signals = 30;
  cfg.freq_range = {0.1, 1.5};
  cfg.ridge = 1e-10;
  cfg.dt = 0.01;
  cfg.duration = 20.0;
  return cfg;
}

Outcome criterion1() {
  const auto start = std::chrono::steady_clock::now();
  const FitConfig cfg = criterion1_config();
  const Interval window{0.0, 0.5};
  const PolyDelayOperator op = fit_poly_delay(TemporalOp::Once, window, cfg);

  double num = 0.0;
  double den = 0.0;
  std::mt19937_64 seeds(cfg.seed + 1000);
  for (int l = 0; l < cfg.num_signals; ++l) {
    const Signal u = sum_of_sinusoids(seeds(), cfg.num_terms, cfg.freq_range, cfg.amp_bound,
                                      TimeDomain{0.0, cfg.duration}, cfg.dt);
    const Signal truth = sliding_extremum(u, window, Extremum::Max);
    const Signal pred = op.apply(u);
    const std::size_t off = truth.size() - pred.size();
    for (std::size_t k = 0; k < pred.size(); ++k) {
      const double e = pred[k] - truth[k + off];
      num += e * e;
      den += truth[k + off] * truth[k + off];
    }
  }
  const double held_out = std::sqrt(num / den);
  const double secs = seconds_since(start);
  const bool pass = op.report.train_rms <= kC1TrainRms && held_out <= kC1HeldOutRel && secs <= kC1Seconds;
  return {pass, "train_rms=" + fmt("%.3e", op.report.train_rms) + " (<= 1e-6) held_out_rel=" +
                    fmt("%.4f", held_out) + " (<= 0.05) time=" + fmt("%.1fs", secs)};
}

KernelTable corpus_kernels(double dt) {
  KernelTable kt(dt);
  kt.add("p", gauss(0.0, 0.04, dt));
  kt.add("q", gauss(-0.05, 0.03, dt));
  kt.add("r", gauss(0.02, 0.08, dt));
  return kt;
}

const std::vector<std::string>& formula_corpus() {
  static const std::vector<std::string> corpus = {
      "p",
      "not q",
      "p and r",
      "p or not q",
      "once[0.1,0.3] p",
      "hist[0,0.2] r",
      "once[0,0.3] (p and hist[0.1,0.2] q)",
      "p since[0.05,0.4] q",
  };
  return corpus;
}

Outcome criterion2() {
  const double dt = 0.01;
  const KernelTable kt = corpus_kernels(dt);
  std::size_t checked = 0;
  std::size_t violations = 0;
  for (int s = 0; s < 100; ++s) {
    const Signal x = sum_of_sinusoids(2000 + s, 5, {0.5, 12.0}, 1.0, {0.0, 4.0}, dt);
    for (const auto& text : formula_corpus()) {
      const Formula f = parse_formula(text);
      const auto rho = robustness(f, x, kt);
      const Signal sat = boolean_trace(f, x, kt);
      for (std::size_t k = 0; k < sat.size(); ++k) {
        const double r = rho.values[k];
        if (std::abs(r) <= kC2Tie) continue;
        ++checked;
        if ((r > 0.0) != (sat[k] != 0.0)) ++violations;
      }
    }
  }
  return {violations == 0, "violations=" + std::to_string(violations) + " of " + std::to_string(checked) +
                               " checked points (100 signals x 8 formulas)"};
}

Outcome criterion3() {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::size_t mismatches = 0;
  const double dt = 0.01;
  for (int c = 0; c < 50; ++c) {
    const std::size_t n = 200 + static_cast<std::size_t>(rng() % 300);
    std::vector<double> v(n);
    for (auto& e : v) e = unit(rng);
    if (c % 5 == 0) {
      for (std::size_t k = 0; k < n; k += 7) v[k] = v[(k + 3) % n];  // ties
    }
    const Signal u(0.0, dt, v);
    const double lo = static_cast<double>(rng() % 40) * dt;
    const double hi = c % 4 == 0 ? lo : lo + static_cast<double>(rng() % 60) * dt;  // singletons
    const Interval iv{lo, hi};
    const Lags lags = to_lags(iv, dt);
    for (Extremum mode : {Extremum::Min, Extremum::Max}) {
      const Signal fast = sliding_extremum(u, iv, mode);
      for (std::size_t k = 0; k < fast.size(); ++k) {
        const std::size_t i = k + lags.max;
        double ref = v[i - lags.max];
        for (std::size_t j = i - lags.max; j <= i - lags.min; ++j) {
          ref = mode == Extremum::Max ? std::max(ref, v[j]) : std::min(ref, v[j]);
        }
        if (fast[k] != ref) ++mismatches;
      }
    }
  }
  return {mismatches == 0, "bitwise mismatches=" + std::to_string(mismatches) + " over 50 cases x {min,max}"};
}

Gfrf random_delta_train(std::mt19937_64& rng, std::size_t max_order, bool with_atom) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::uniform_real_distribution<double> delay(0.0, 0.5);
  Gfrf g;
  int atom = kUnity;
  if (with_atom) atom = g.atom_index("a", Kernel::gaussian(0.01, 0.05, 0.25, 0.01));
  for (std::size_t n = 1; n <= max_order; ++n) {
    const int terms = 1 + static_cast<int>(rng() % 3);
    for (int t = 0; t < terms; ++t) {
      Term term{coeff(rng), {}, {}};
      for (std::size_t j = 0; j < n; ++j) {
        term.delays.push_back(delay(rng));
        term.factors.push_back(with_atom && rng() % 2 == 0 ? atom : kUnity);
      }
      g.add_term(std::move(term));
    }
  }
  return g;
}

// Direct evaluation of the composition sum: for every k and every positive
// k-part split of the frequency vector into contiguous blocks, the outer
// response at the block sums times the inner responses on the blocks.
std::complex<double> composition_sum(const Gfrf& outer, const Gfrf& inner, const std::vector<double>& w) {
  const std::size_t n = w.size();
  std::complex<double> total = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::size_t> m(k, 1);
    const std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t left) {
      if (pos + 1 == k) {
        m[pos] = left;
        // mixing matrix S (k x n)
        std::vector<std::vector<double>> s(k, std::vector<double>(n, 0.0));
        std::size_t col = 0;
        for (std::size_t j = 0; j < k; ++j) {
          for (std::size_t p = 0; p < m[j]; ++p) s[j][col++] = 1.0;
        }
        std::vector<double> mixed(k, 0.0);
        for (std::size_t j = 0; j < k; ++j) {
          for (std::size_t c = 0; c < n; ++c) mixed[j] += s[j][c] * w[c];
        }
        std::complex<double> term = evaluate_gfrf(outer, k, mixed);
        std::size_t first = 0;
        for (std::size_t j = 0; j < k; ++j) {
          std::vector<double> theta(w.begin() + static_cast<long>(first), w.begin() + static_cast<long>(first + m[j]));
          term *= evaluate_gfrf(inner, m[j], theta);
          first += m[j];
        }
        total += term;
        return;
      }
      for (std::size_t v = 1; v + (k - pos - 1) <= left; ++v) {
        m[pos] = v;
        rec(pos + 1, left - v);
      }
    };
    rec(0, n);
  }
  return total;
}

Outcome criterion4() {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> freq(-30.0, 30.0);
  double worst = 0.0;
  int evaluated = 0;
  for (int pair = 0; pair < 10; ++pair) {
    const Gfrf outer = random_delta_train(rng, 3, false);
    const Gfrf inner = random_delta_train(rng, 3, pair % 2 == 1);
    const Gfrf composed = compose_gfrf(outer, inner, 3);
    for (int s = 0; s < 20; ++s) {
      const std::size_t n = 1 + static_cast<std::size_t>(rng() % 3);
      std::vector<double> w(n);
      for (auto& e : w) e = freq(rng);
      const auto closed = evaluate_gfrf(composed, n, w);
      const auto direct = composition_sum(outer, inner, w);
      worst = std::max(worst, std::abs(closed - direct));
      ++evaluated;
    }
  }
  return {worst <= kC4MaxAbs, "max_abs_err=" + fmt("%.3e", worst) + " over " + std::to_string(evaluated) +
                                  " random tuples (orders 1-3)"};
}

Outcome criterion5() {
  const double dt = 0.002;
  KernelTable kt(dt);
  kt.add("p", gauss(0.0, 0.04, dt));
  FitConfig cfg;
  cfg.dt = dt;
  const FormulaGfrf fg = formula_to_gfrf(parse_formula("once[0.2,0.4] p"), kt, cfg);

  const double period = 2.0;
  const int max_harmonic = 6;
  const double w_in = 2.0 * kPi * max_harmonic / period;
  double worst = 0.0;
  for (int s = 0; s < 10; ++s) {
    const Signal x = periodic_sum_of_sinusoids(500 + s, 5, max_harmonic, period, 1.0, {0.0, 3.0 * period}, dt);
    const Signal y = apply_pipeline(fg.pipeline, x);
    const auto n = static_cast<std::size_t>(std::llround(period / dt));
    const auto first_y = static_cast<std::size_t>(std::llround((period - y.t0()) / dt));
    const auto first_x = static_cast<std::size_t>(std::llround(period / dt));
    const Spectrum yf = fft(y.slice(first_y, first_y + n - 1));
    const Spectrum xf = fft(x.slice(first_x, first_x + n - 1));
    OutputSpectrumOptions opt;
    opt.max_order = 4;
    const Spectrum yp = output_spectrum(fg.gfrf, xf, opt);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t m = 0; m < yf.size(); ++m) {
      if (std::abs(yf.omega(m)) > 4.0 * w_in + 1e-9) continue;
      num += std::norm(yp.bins[m] - yf.bins[m]);
      den += std::norm(yf.bins[m]);
    }
    worst = std::max(worst, std::sqrt(num / den));
  }
  return {worst <= kC5RelRms, "worst_rel_rms=" + fmt("%.3e", worst) + " over 10 periodic signals (orders <= 4)"};
}

// Documented multi-band test signal: 0.25 Hz (amplitude 1) and 1 Hz (0.6)
// carry the monitored content, 20 Hz (0.8) and 30 Hz (0.5) are bands the
// atom kernel barely passes. 20 s at 100 Hz, all frequencies on the FFT grid.
Signal multiband_signal() {
  std::vector<Sinusoid> parts = {
      {1.0, 2.0 * kPi * 0.25, 0.3},
      {0.6, 2.0 * kPi * 1.0, 1.1},
      {0.8, 2.0 * kPi * 20.0, 0.7},
      {0.5, 2.0 * kPi * 30.0, 2.0},
  };
  return render_sinusoids(parts, {0.0, 19.99}, 0.01);
}

Outcome criterion6() {
  const auto start = std::chrono::steady_clock::now();
  const double dt = 0.01;
  KernelTable kt(dt);
  kt.add("p", gauss(0.0, 0.04, dt));
  const Formula f = parse_formula("once[0.2,0.4] p");
  const Signal x = multiband_signal();
  const SafetyReport hi = compression_safety_report(f, x, 2.0 * kPi * 1.5, kt);
  const SafetyReport lo = compression_safety_report(f, x, 2.0 * kPi * 0.5, kt);
  const double secs = seconds_since(start);
  const bool pass = hi.rho_rel_diff <= kC6RhoRel && hi.truth_flip_count == 0 && lo.truth_flip_count > 0 &&
                    secs <= kC6Seconds;
  return {pass, "1.5Hz: rho_rel=" + fmt("%.4f", hi.rho_rel_diff) + " flips=" + std::to_string(hi.truth_flip_count) +
                    "; 0.5Hz: flips=" + std::to_string(lo.truth_flip_count) + " (> 0); signal_rel_diff=" +
                    fmt("%.3f", hi.signal_rel_diff) + " time=" + fmt("%.2fs", secs)};
}

double half_magnitude_edge(const Gfrf& g) {
  const GfrfGrid grid = gfrf_grid(g, 1, 60.0, 601);
  const double ref = std::abs(grid.values[0]);
  std::size_t edge = 0;
  for (std::size_t i = 0; i < grid.num_points; ++i) {
    if (std::abs(grid.values[i]) >= 0.5 * ref) edge = i + 1;
  }
  return edge < grid.num_points ? grid.omega(edge) : grid.omega_max;
}

Outcome criterion7() {
  const double dt = 0.002;
  FitConfig cfg;
  cfg.dt = dt;
  KernelTable kt(dt);
  kt.add("p", gauss(0.0, 0.04, dt));
  std::vector<double> edges;
  for (double t : {1.04, 1.1, 1.14, 1.2}) {
    const Formula f = Formula::once({1.0, t}, Formula::atom("p"));
    edges.push_back(half_magnitude_edge(formula_to_gfrf(f, kt, cfg).gfrf));
  }
  bool a_ok = true;
  for (std::size_t k = 1; k < edges.size(); ++k) a_ok = a_ok && edges[k] <= edges[k - 1];

  std::vector<double> gains;
  for (double s : {0.3, 0.5, 0.8}) {
    KernelTable ks(dt);
    ks.add("p", gauss(0.0, s, dt));
    const FormulaGfrf fg = formula_to_gfrf(parse_formula("hist[0,0.5] p"), ks, cfg);
    const double w = 5.0;
    gains.push_back(std::abs(evaluate_gfrf(fg.gfrf, 1, std::span<const double>(&w, 1))));
  }
  bool b_ok = true;
  for (std::size_t k = 1; k < gains.size(); ++k) b_ok = b_ok && gains[k] <= gains[k - 1];

  std::string detail = "(a) edges=";
  for (double e : edges) detail += fmt("%.1f ", e);
  detail += "rad/s; (b) |H1(5)|=";
  for (double g : gains) detail += fmt("%.4g ", g);
  return {a_ok && b_ok, detail};
}

Outcome criterion8() {
  const double dt = 0.002;
  const double s = 0.04;
  const Kernel g = gauss(0.0, s, dt);
  // Zero-padded so the bins are fine enough to cover the band densely.
  std::vector<double> taps(4096, 0.0);
  std::copy(g.taps().begin(), g.taps().end(), taps.begin());
  const Spectrum sp = fft(Signal(static_cast<double>(g.first_offset()) * dt, dt, taps));
  double transfer_err = 0.0;
  for (std::size_t m = 0; m < sp.size(); ++m) {
    const double w = sp.omega(m);
    if (std::abs(w) > 0.5 * nyquist(dt)) continue;
    transfer_err = std::max(transfer_err, std::abs(sp.bins[m] - std::exp(-0.5 * s * s * w * w)));
  }

  double roundtrip = 0.0;
  for (int k = 0; k < 10; ++k) {
    const Signal x = sum_of_sinusoids(80 + k, 7, {0.1, 200.0}, 1.0, {0.3, 4.3 + 0.01 * k}, dt);
    const Signal back = ifft(fft(x));
    for (std::size_t i = 0; i < x.size(); ++i) roundtrip = std::max(roundtrip, std::abs(back[i] - x[i]));
  }

  const double mdt = 0.01;
  const auto dict = default_metric_dictionary(mdt);
  double asym = 0.0;
  std::size_t triangle_fail = 0;
  for (int k = 0; k < 100; ++k) {
    const TimeDomain dom{0.0, 3.0};
    const Signal x = sum_of_sinusoids(9000 + 3 * k, 4, {0.5, 30.0}, 1.0, dom, mdt);
    const Signal y = sum_of_sinusoids(9001 + 3 * k, 4, {0.5, 30.0}, 1.0, dom, mdt);
    const Signal z = sum_of_sinusoids(9002 + 3 * k, 4, {0.5, 30.0}, 1.0, dom, mdt);
    const auto shifts = all_valid_shifts(x, dict);
    const double xy = metric_d(x, y, dict, shifts);
    const double yx = metric_d(y, x, dict, shifts);
    const double yz = metric_d(y, z, dict, shifts);
    const double xz = metric_d(x, z, dict, shifts);
    asym = std::max(asym, std::abs(xy - yx));
    if (xz > xy + yz + kC8MetricSlack) ++triangle_fail;
  }
  const bool pass = transfer_err <= kC8TransferAbs && roundtrip <= kC8RoundTrip && asym <= kC8MetricSlack &&
                    triangle_fail == 0;
  return {pass, "transfer_err=" + fmt("%.2e", transfer_err) + " roundtrip=" + fmt("%.2e", roundtrip) +
                    " asym=" + fmt("%.1e", asym) + " triangle_fail=" + std::to_string(triangle_fail)};
}

Outcome criterion9() {
  const double dt = 0.002;
  KernelTable kt(dt);
  kt.add("p", gauss(0.0, 0.04, dt));
  kt.add("q", gauss(-0.02, 0.05, dt));
  FitConfig cfg;
  cfg.dt = dt;
  const Formula lhs = Formula::atom("p");
  const Formula rhs = Formula::atom("q");
  const Interval iv{0.1, 0.3};
  const Formula exact = Formula::since(iv, lhs, rhs);

  std::vector<Signal> tests;
  for (int s = 0; s < 10; ++s) {
    tests.push_back(sum_of_sinusoids(700 + s, cfg.num_terms, cfg.freq_range, cfg.amp_bound, {0.0, 6.0}, dt));
  }
  std::vector<double> errors;
  for (std::size_t n : {1u, 2u, 4u, 8u}) {
    const auto samples = since_sampled_gfrf(lhs, rhs, iv, n, kt, cfg, true);
    double sq = 0.0;
    std::size_t count = 0;
    for (const auto& x : tests) {
      const Signal env = sampled_since_envelope(samples, x);
      const Signal ref = robustness(exact, x, kt).values;
      const double begin = std::max(env.t0(), ref.t0());
      const auto e0 = static_cast<std::size_t>(std::llround((begin - env.t0()) / dt));
      const auto r0 = static_cast<std::size_t>(std::llround((begin - ref.t0()) / dt));
      const std::size_t len = std::min(env.size() - e0, ref.size() - r0);
      for (std::size_t k = 0; k < len; ++k) {
        const double e = env[e0 + k] - ref[r0 + k];
        sq += e * e;
        ++count;
      }
    }
    errors.push_back(std::sqrt(sq / static_cast<double>(count)));
  }
  bool ok = true;
  for (std::size_t k = 1; k < errors.size(); ++k) ok = ok && errors[k] <= errors[k - 1] + kC9Slack;
  std::string detail = "envelope rms err for eta grids {1,2,4,8}: ";
  for (double e : errors) detail += fmt("%.4g ", e);
  return {ok, detail};
}

struct Criterion {
  int id;
  const char* name;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "fit quality once[0,0.5]", criterion1},
    {2, "soundness of robustness signs", criterion2},
    {3, "sliding extrema vs brute force", criterion3},
    {4, "composition closed form vs direct sum", criterion4},
    {5, "time-frequency consistency", criterion5},
    {6, "compression reproduction", criterion6},
    {7, "spectral trends", criterion7},
    {8, "gaussian transfer, fft, metric", criterion8},
    {9, "sampled since envelope", criterion9},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
  int failures = 0;
  for (const auto& c : kCriteria) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %d [%s] %s: %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures;
}
