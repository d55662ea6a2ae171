#include "tlfreq/semantics.hpp"

#include <cmath>

#include "tlfreq/domain.hpp"
#include "tlfreq/error.hpp"
#include "tlfreq/measure.hpp"

namespace tlfreq {

namespace {

void walk(const Formula& f, const KernelTable& kernels, std::vector<Diagnostic>& out) {
  switch (f.op()) {
    case Op::True:
      out.push_back({Severity::Warning, "TrueNotApproximable",
                     "explicit true has infinite robustness and no Volterra approximation"});
      return;
    case Op::Atom:
      if (!kernels.contains(f.atom_name())) {
        out.push_back({Severity::Error, "UnknownAtom", "unknown atom '" + f.atom_name() + "'"});
      }
      return;
    case Op::Since:
      out.push_back({Severity::Warning, "SinceNotGfrfSupported",
                     "since is monitored exactly but has no frequency-response approximation"});
      break;
    default: break;
  }
  if (f.is_temporal()) {
    try {
      check_interval(f.interval());
    } catch (const Error& e) {
      out.push_back({Severity::Error, e.code(), e.what()});
    }
  }
  if (f.arity() >= 1) walk(f.lhs(), kernels, out);
  if (f.arity() >= 2) walk(f.rhs(), kernels, out);
}

bool sat_at(const Formula& f, const Signal& x, std::size_t i, const KernelTable& kernels) {
  switch (f.op()) {
    case Op::True: return true;
    case Op::Atom: return measure(kernels.at(f.atom_name()), x, x.time(i)) >= 0.0;
    case Op::Not: return !sat_at(f.lhs(), x, i, kernels);
    case Op::Or: return sat_at(f.lhs(), x, i, kernels) || sat_at(f.rhs(), x, i, kernels);
    case Op::And: return sat_at(f.lhs(), x, i, kernels) && sat_at(f.rhs(), x, i, kernels);
    case Op::Once: {
      const Lags lags = to_lags(f.interval(), x.dt());
      for (std::size_t l = lags.min; l <= lags.max; ++l) {
        if (sat_at(f.lhs(), x, i - l, kernels)) return true;
      }
      return false;
    }
    case Op::Hist: {
      const Lags lags = to_lags(f.interval(), x.dt());
      for (std::size_t l = lags.min; l <= lags.max; ++l) {
        if (!sat_at(f.lhs(), x, i - l, kernels)) return false;
      }
      return true;
    }
    case Op::Since: {
      const Lags lags = to_lags(f.interval(), x.dt());
      for (std::size_t l = lags.min; l <= lags.max; ++l) {
        if (!sat_at(f.rhs(), x, i - l, kernels)) continue;
        bool held = true;
        for (std::size_t m = 0; m < l && held; ++m) held = sat_at(f.lhs(), x, i - m, kernels);
        if (held) return true;
      }
      return false;
    }
  }
  return false;
}

// 0/1 trace of f on input indices [lo, hi].
std::vector<char> trace(const Formula& f, const Signal& x, std::size_t lo, std::size_t hi,
                        const KernelTable& kernels) {
  const std::size_t n = hi - lo + 1;
  std::vector<char> out(n, 0);
  switch (f.op()) {
    case Op::True: std::fill(out.begin(), out.end(), 1); break;
    case Op::Atom: {
      const Kernel& k = kernels.at(f.atom_name());
      for (std::size_t j = 0; j < n; ++j) out[j] = measure(k, x, x.time(lo + j)) >= 0.0 ? 1 : 0;
      break;
    }
    case Op::Not: {
      const auto a = trace(f.lhs(), x, lo, hi, kernels);
      for (std::size_t j = 0; j < n; ++j) out[j] = a[j] != 0 ? 0 : 1;
      break;
    }
    case Op::Or:
    case Op::And: {
      const auto a = trace(f.lhs(), x, lo, hi, kernels);
      const auto b = trace(f.rhs(), x, lo, hi, kernels);
      for (std::size_t j = 0; j < n; ++j) {
        out[j] = f.op() == Op::Or ? (a[j] | b[j]) : (a[j] & b[j]);
      }
      break;
    }
    case Op::Once:
    case Op::Hist: {
      const Lags lags = to_lags(f.interval(), x.dt());
      const std::size_t base = lo - lags.max;
      const auto a = trace(f.lhs(), x, base, hi - lags.min, kernels);
      const bool once = f.op() == Op::Once;
      for (std::size_t j = 0; j < n; ++j) {
        bool acc = !once;
        for (std::size_t l = lags.min; l <= lags.max; ++l) {
          const bool v = a[lo + j - l - base] != 0;
          acc = once ? (acc || v) : (acc && v);
        }
        out[j] = acc ? 1 : 0;
      }
      break;
    }
    case Op::Since: {
      const Lags lags = to_lags(f.interval(), x.dt());
      const std::size_t base = lo - lags.max;
      const auto a = trace(f.lhs(), x, base, hi, kernels);
      const auto b = trace(f.rhs(), x, base, hi, kernels);
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t i = lo + j - base;
        bool found = false;
        for (std::size_t l = lags.min; l <= lags.max && !found; ++l) {
          if (b[i - l] == 0) continue;
          bool held = true;
          for (std::size_t m = 0; m < l && held; ++m) held = a[i - m] != 0;
          found = held;
        }
        out[j] = found ? 1 : 0;
      }
      break;
    }
  }
  return out;
}

}  // namespace

std::vector<Diagnostic> validate(const Formula& formula, const KernelTable& kernels) {
  std::vector<Diagnostic> out;
  walk(formula, kernels, out);
  return out;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  for (const auto& d : diagnostics) {
    if (d.severity == Severity::Error) return true;
  }
  return false;
}

bool boolean_sat(const Formula& formula, const Signal& x, double t, const KernelTable& kernels) {
  const ValidDomain dom = valid_domain(formula, kernels, Grid{x.t0(), x.dt(), x.size()});
  const auto idx = x.index_of(t);
  const double pos = std::round((t - x.t0()) / x.dt());
  if (pos < static_cast<double>(dom.first) || pos > static_cast<double>(dom.last)) {
    throw Error("TimeOutOfValidDomain", "t is outside the valid domain of the formula");
  }
  return sat_at(formula, x, idx.value_or(static_cast<std::size_t>(pos)), kernels);
}

Signal boolean_trace(const Formula& formula, const Signal& x, const KernelTable& kernels) {
  const ValidDomain dom = valid_domain(formula, kernels, Grid{x.t0(), x.dt(), x.size()});
  const auto bits = trace(formula, x, dom.first, dom.last, kernels);
  std::vector<double> v(bits.begin(), bits.end());
  return Signal(dom.begin, x.dt(), std::move(v));
}

}  // namespace tlfreq
