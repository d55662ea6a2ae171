#include "tlfreq/monitor.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "tlfreq/error.hpp"
#include "tlfreq/kernels.hpp"

namespace tlfreq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// out[k] = extremum of u[k .. k + width - 1], for every k where the window fits.
std::vector<double> sliding(std::span<const double> u, std::size_t width, Extremum mode) {
  const std::size_t n = u.size() - width + 1;
  std::vector<double> out(n);
  std::deque<std::size_t> dq;
  const auto better = [mode](double a, double b) { return mode == Extremum::Max ? a >= b : a <= b; };
  std::size_t next = 0;
  for (std::size_t k = 0; k < n; ++k) {
    for (; next < k + width; ++next) {
      while (!dq.empty() && better(u[next], u[dq.back()])) dq.pop_back();
      dq.push_back(next);
    }
    while (dq.front() < k) dq.pop_front();
    out[k] = u[dq.front()];
  }
  return out;
}

class Evaluator {
 public:
  Evaluator(const Signal& x, const KernelTable& kernels) : x_(x), kernels_(kernels) {}

  // Robustness of f at input indices [lo, hi].
  std::vector<double> eval(const Formula& f, std::size_t lo, std::size_t hi) const {
    const std::size_t n = hi - lo + 1;
    switch (f.op()) {
      case Op::True: return std::vector<double>(n, kInf);
      case Op::Atom: {
        const Kernel& k = kernels_.at(f.atom_name());
        std::vector<double> out(n);
        kernels::parallel::correlate(x_.samples(), k.taps(), k.first_offset(), x_.dt(), lo, out);
        return out;
      }
      case Op::Not: {
        auto v = eval(f.lhs(), lo, hi);
        for (auto& e : v) e = -e;
        return v;
      }
      case Op::Or:
      case Op::And: {
        auto a = eval(f.lhs(), lo, hi);
        const auto b = eval(f.rhs(), lo, hi);
        for (std::size_t j = 0; j < n; ++j) {
          a[j] = f.op() == Op::Or ? std::max(a[j], b[j]) : std::min(a[j], b[j]);
        }
        return a;
      }
      case Op::Once:
      case Op::Hist: {
        const Lags lags = to_lags(f.interval(), x_.dt());
        const auto u = eval(f.lhs(), lo - lags.max, hi - lags.min);
        return sliding(u, lags.width(), f.op() == Op::Once ? Extremum::Max : Extremum::Min);
      }
      case Op::Since: {
        const Lags lags = to_lags(f.interval(), x_.dt());
        const auto r1 = eval(f.lhs(), lo - lags.max, hi);
        const auto r2 = eval(f.rhs(), lo - lags.max, hi);
        std::vector<double> out(n);
        kernels::parallel::since(r1, r2, lags.min, lags.max, lags.max, out);
        return out;
      }
    }
    return {};
  }

 private:
  const Signal& x_;
  const KernelTable& kernels_;
};

}  // namespace

RobustnessSignal robustness(const Formula& formula, const Signal& x, const KernelTable& kernels) {
  for (const auto& name : atom_names(formula)) kernels.at(name);
  const ValidDomain dom = valid_domain(formula, kernels, Grid{x.t0(), x.dt(), x.size()});
  auto values = Evaluator(x, kernels).eval(formula, dom.first, dom.last);
  return RobustnessSignal{Signal(dom.begin, x.dt(), std::move(values)), dom};
}

Signal sliding_extremum(const Signal& u, const Interval& interval, Extremum mode) {
  check_interval(interval);
  const Lags lags = to_lags(interval, u.dt());
  if (lags.max >= u.size()) {
    throw Error("WindowLargerThanSignal", "window does not fit inside the signal");
  }
  return Signal(u.time(lags.max), u.dt(),
                sliding(u.samples().first(u.size() - lags.min), lags.width(), mode));
}

Signal since_robustness(const Signal& rho1, const Signal& rho2, const Interval& interval) {
  check_interval(interval);
  if (!same_grid(rho1, rho2)) {
    throw Error("GridMismatch", "since operands are not on the same grid");
  }
  const Lags lags = to_lags(interval, rho1.dt());
  if (lags.max >= rho1.size()) {
    throw Error("WindowLargerThanSignal", "window does not fit inside the signal");
  }
  std::vector<double> out(rho1.size() - lags.max);
  kernels::parallel::since(rho1.samples(), rho2.samples(), lags.min, lags.max, lags.max, out);
  return Signal(rho1.time(lags.max), rho1.dt(), std::move(out));
}

}  // namespace tlfreq
