#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "tlfreq/generator.hpp"
#include "tlfreq/measure.hpp"
#include "tlfreq/metric.hpp"
#include "tlfreq/monitor.hpp"
#include "tlfreq/parser.hpp"
#include "tlfreq/semantics.hpp"

using namespace tlfreq;
using namespace testing;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTie = 1e-12;

Signal random_signal(std::uint64_t seed, double begin, double end, double dt) {
  return sum_of_sinusoids(seed, 5, {0.5, 12.0}, 1.0, {begin, end}, dt);
}

// Direct O(N W) definitions in input-index space; out index k is input index k + lags.max.
std::vector<double> brute_extremum(const Signal& u, Lags lags, Extremum mode) {
  std::vector<double> out;
  for (std::size_t i = lags.max; i < u.size(); ++i) {
    double v = mode == Extremum::Max ? -kInf : kInf;
    for (std::size_t l = lags.min; l <= lags.max; ++l) {
      v = mode == Extremum::Max ? std::max(v, u[i - l]) : std::min(v, u[i - l]);
    }
    out.push_back(v);
  }
  return out;
}

std::vector<double> brute_since(const Signal& r1, const Signal& r2, Lags lags) {
  std::vector<double> out;
  for (std::size_t i = lags.max; i < r1.size(); ++i) {
    double best = -kInf;
    for (std::size_t l = lags.min; l <= lags.max; ++l) {
      double inner = kInf;
      for (std::size_t m = i - l + 1; m <= i; ++m) inner = std::min(inner, r1[m]);
      best = std::max(best, std::min(r2[i - l], inner));
    }
    out.push_back(best);
  }
  return out;
}

KernelTable corpus_kernels(double dt) {
  KernelTable kt(dt);
  kt.add("p", gauss(0.0, 0.04, dt));
  kt.add("q", gauss(-0.05, 0.03, dt));
  return kt;
}

const std::vector<std::string>& corpus() {
  static const std::vector<std::string> c = {
      "p", "not p", "p or q", "p and not q", "once[0.1,0.3] p", "hist[0,0.2] q",
      "q since[0.05,0.3] p", "once[0,0.2] (p and hist[0.1,0.15] not q)", "not (p since[0,0.25] (q or p))",
  };
  return c;
}

}  // namespace

TEST_SUITE("monitor") {

TEST_CASE("valid domain examples") {
  const double dt = 0.01;
  const KernelTable kt = single_atom("p", 0.0, 0.04, dt);
  const Grid grid{0.0, dt, 1001};
  const ValidDomain atom = valid_domain(parse_formula("p"), kt, grid);
  CHECK(atom.begin == doctest::Approx(0.2));
  CHECK(atom.end == doctest::Approx(9.8));
  const ValidDomain once = valid_domain(parse_formula("once[0.2,0.4] p"), kt, grid);
  CHECK(once.begin == doctest::Approx(0.6));
  CHECK(once.end == doctest::Approx(9.8));
  const ValidDomain truth = valid_domain(parse_formula("true"), kt, grid);
  CHECK(truth.first == 0);
  CHECK(truth.last == 1000);

  CHECK(temporal_depth(parse_formula("once[0,0.3] (p and once[0,0.3] p)"), dt) == 60);
  CHECK(temporal_depth(parse_formula("p since[0.1,0.5] (hist[0,0.2] p)"), dt) == 70);

  // The first computable sample is exactly the domain start.
  const Signal x = random_signal(1, 0.0, 10.0, dt);
  const RobustnessSignal rho = robustness(parse_formula("once[0.2,0.4] p"), x, kt);
  CHECK(rho.values.t0() == doctest::Approx(0.6));
  CHECK(rho.values.size() == once.size());
  CHECK(error_code([&] { measure(kt.at("p"), x, 0.6 - 0.4 - dt); }) == "WindowOutOfDomain");
}

TEST_CASE("short signal error names the depth") {
  const double dt = 0.01;
  const KernelTable kt = single_atom("p", 0.0, 0.04, dt);
  try {
    robustness(parse_formula("hist[1,1.2] p"), constant(0.5, 0.0, 1.0, dt), kt);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == "SignalTooShortForFormula");
    const std::string msg = e.what();
    CHECK(msg.find("120 samples") != std::string::npos);
    CHECK(msg.find("hist[1,1.2]") != std::string::npos);
  }
}

TEST_CASE("robustness examples") {
  const double dt = 0.01;
  const KernelTable kt = single_atom("p", 0.0, 0.04, dt);
  const Signal c = constant(0.7, 0.0, 10.0, dt);
  const RobustnessSignal pos = robustness(parse_formula("p"), c, kt);
  const RobustnessSignal neg = robustness(parse_formula("not p"), c, kt);
  const RobustnessSignal top = robustness(parse_formula("true"), c, kt);
  for (double v : pos.values.samples()) CHECK(v == doctest::Approx(0.7).epsilon(1e-12));
  for (double v : neg.values.samples()) CHECK(v == doctest::Approx(-0.7).epsilon(1e-12));
  for (double v : top.values.samples()) CHECK(v == kInf);

  const Signal x = sampled([](double t) { return std::sin(2.0 * kPi * t); }, -1.0, 3.0, dt);
  const RobustnessSignal rho = robustness(parse_formula("once[0.2,0.4] p"), x, kt);
  const Signal y = correlate(kt.at("p"), x);
  double brute = -kInf;
  for (std::size_t k = 0; k < y.size(); ++k) {
    if (y.time(k) >= 0.1 - 1e-9 && y.time(k) <= 0.3 + 1e-9) brute = std::max(brute, y[k]);
  }
  const auto k = rho.values.index_of(0.5);
  REQUIRE(k.has_value());
  CHECK(rho.values[*k] == brute);
}

TEST_CASE("sliding extremum") {
  const double dt = 0.01;
  const Signal c = constant(-2.5, 0.0, 3.0, dt);
  const Signal flat = sliding_extremum(c, {0.2, 0.4}, Extremum::Max);
  for (double v : flat.samples()) CHECK(v == -2.5);

  const Signal u = random_signal(5, 0.0, 3.0, dt);
  const Signal shifted = sliding_extremum(u, {0.3, 0.3}, Extremum::Min);
  CHECK(shifted.t0() == doctest::Approx(0.3));
  for (std::size_t k = 0; k < shifted.size(); ++k) CHECK(shifted[k] == u[k]);

  for (const Interval iv : {Interval{0.2, 0.4}, Interval{0.0, 0.0}, Interval{0.0, 1.0}, Interval{0.013, 0.057}}) {
    for (const Extremum mode : {Extremum::Min, Extremum::Max}) {
      const Signal fast = sliding_extremum(u, iv, mode);
      const auto slow = brute_extremum(u, to_lags(iv, dt), mode);
      REQUIRE(fast.size() == slow.size());
      for (std::size_t k = 0; k < slow.size(); ++k) CHECK(fast[k] == slow[k]);
    }
    const Signal lo = sliding_extremum(u, iv, Extremum::Min);
    const Signal hi = sliding_extremum(-1.0 * u, iv, Extremum::Max);
    for (std::size_t k = 0; k < lo.size(); ++k) CHECK(lo[k] == -hi[k]);
  }
  CHECK(error_code([&] { sliding_extremum(u, {0.0, 5.0}, Extremum::Max); }) == "WindowLargerThanSignal");
}

TEST_CASE("since robustness") {
  const double dt = 0.01;
  const Signal r1 = random_signal(21, 0.0, 3.0, dt);
  const Signal r2 = random_signal(22, 0.0, 3.0, dt);
  const Signal big = constant(1e6, 0.0, 3.0, dt);
  const Interval iv{0.1, 0.4};

  const Signal a = since_robustness(big, r2, iv);
  const Signal b = sliding_extremum(r2, iv, Extremum::Max);
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == b[k]);

  const Signal c = since_robustness(r1, big, iv);
  const auto c_ref = brute_since(r1, big, to_lags(iv, dt));
  for (std::size_t k = 0; k < c.size(); ++k) CHECK(c[k] == c_ref[k]);

  for (const Interval j : {Interval{0.0, 0.3}, Interval{0.1, 0.4}, Interval{0.25, 0.25}, Interval{0.0, 1.5}}) {
    const Signal s = since_robustness(r1, r2, j);
    const auto ref = brute_since(r1, r2, to_lags(j, dt));
    REQUIRE(s.size() == ref.size());
    for (std::size_t k = 0; k < ref.size(); ++k) CHECK(s[k] == ref[k]);
  }

  // [0,0]: the inner minimum ranges over no sample, so only rho2 counts.
  const Signal z = since_robustness(r1, r2, {0.0, 0.0});
  REQUIRE(z.size() == r2.size());
  for (std::size_t k = 0; k < z.size(); ++k) CHECK(z[k] == r2[k]);
}

TEST_CASE("soundness: robustness sign matches boolean semantics") {
  const double dt = 0.01;
  const KernelTable kt = corpus_kernels(dt);
  std::size_t compared = 0;
  for (const auto& text : corpus()) {
    const Formula f = parse_formula(text);
    for (std::uint64_t s = 0; s < 12; ++s) {
      const Signal x = random_signal(100 + s, 0.0, 3.0, dt);
      const RobustnessSignal rho = robustness(f, x, kt);
      const Signal sat = boolean_trace(f, x, kt);
      REQUIRE(sat.size() == rho.values.size());
      for (std::size_t k = 0; k < sat.size(); ++k) {
        if (std::abs(rho.values[k]) <= kTie) continue;
        ++compared;
        if ((rho.values[k] > 0.0) != (sat[k] == 1.0)) {
          FAIL_CHECK(text << " seed " << s << " t=" << sat.time(k));
        }
      }
    }
  }
  CHECK(compared > 10000);
}

TEST_CASE("robustness tube under the dictionary metric") {
  const double dt = 0.01;
  const KernelTable kt = corpus_kernels(dt);
  std::vector<Kernel> atoms;
  for (const auto& [name, k] : kt.entries()) atoms.push_back(k);
  const std::vector<Kernel> dict = negation_closed(atoms);
  std::size_t protected_points = 0;
  for (const auto& text : corpus()) {
    const Formula f = parse_formula(text);
    for (std::uint64_t s = 0; s < 4; ++s) {
      const Signal x = random_signal(300 + s, 0.0, 3.0, dt);
      const Signal noise = sum_of_sinusoids(400 + s, 8, {0.5, 40.0}, 0.15, {0.0, 3.0}, dt);
      const Signal y = x + noise;
      const double d = metric_d(x, y, dict, all_valid_shifts(x, dict));
      const RobustnessSignal rho = robustness(f, x, kt);
      const Signal sat_y = boolean_trace(f, y, kt);
      for (std::size_t k = 0; k < sat_y.size(); ++k) {
        if (std::abs(rho.values[k]) <= d) continue;
        ++protected_points;
        CHECK((sat_y[k] == 1.0) == (rho.values[k] > 0.0));
      }
    }
  }
  CHECK(protected_points > 1000);
}

TEST_CASE("monotonicity for negation-free formulas with nonnegative kernels") {
  const double dt = 0.01;
  const KernelTable kt = corpus_kernels(dt);
  const std::vector<std::string> positive = {"p", "p or q", "once[0.1,0.3] p", "hist[0,0.2] (p and q)",
                                             "q since[0.05,0.3] p"};
  for (const auto& text : positive) {
    const Formula f = parse_formula(text);
    for (std::uint64_t s = 0; s < 4; ++s) {
      const Signal x = random_signal(500 + s, 0.0, 3.0, dt);
      const Signal bump = sampled([](double t) { return 0.4 * std::exp(-std::pow((t - 1.5) / 0.3, 2)); }, 0.0, 3.0, dt);
      const Signal lo = robustness(f, x, kt).values;
      const Signal hi = robustness(f, x + bump, kt).values;
      for (std::size_t k = 0; k < lo.size(); ++k) CHECK(lo[k] <= hi[k] + 1e-12);
    }
  }
}

TEST_CASE("disjunction is idempotent") {
  const double dt = 0.01;
  const KernelTable kt = corpus_kernels(dt);
  for (const auto& text : corpus()) {
    const Formula f = parse_formula(text);
    const Signal x = random_signal(600, 0.0, 3.0, dt);
    const Signal a = robustness(f, x, kt).values;
    const Signal b = robustness(Formula::disjunction(f, f), x, kt).values;
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == b[k]);
  }
}

}  // TEST_SUITE
