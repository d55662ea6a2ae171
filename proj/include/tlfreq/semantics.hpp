#pragma once

#include <string>
#include <vector>

#include "tlfreq/formula.hpp"
#include "tlfreq/kernel_table.hpp"
#include "tlfreq/signal.hpp"

namespace tlfreq {

enum class Severity { Warning, Error };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Errors: UnknownAtom, NegativeBound, EmptyInterval.
/// Warnings: SinceNotGfrfSupported, TrueNotApproximable (constructs the
/// frequency-response pipeline cannot handle).
std::vector<Diagnostic> validate(const Formula& formula, const KernelTable& kernels);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

/// Qualitative satisfaction (x, t) |= formula, evaluated by direct recursion.
/// Atoms hold when the measurement is >= 0; temporal quantifiers range over
/// the grid points of t - I. t must lie in the formula's valid domain.
bool boolean_sat(const Formula& formula, const Signal& x, double t, const KernelTable& kernels);

/// boolean_sat at every grid point of the valid domain, computed bottom-up
/// with brute-force window scans. Returned samples are 0/1.
Signal boolean_trace(const Formula& formula, const Signal& x, const KernelTable& kernels);

}  // namespace tlfreq
