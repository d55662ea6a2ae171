#pragma once

#include <span>
#include <vector>

#include "tlfreq/kernel.hpp"
#include "tlfreq/signal.hpp"

namespace tlfreq {

/// max over (f, t) of <x - y, f(. - t)>: a lower bound on the distance
/// sup_{||f||_1 <= 1} <x - y, f>, restricted to a finite dictionary.
/// Symmetric whenever the dictionary is closed under negation.
double metric_d(const Signal& x, const Signal& y, std::span<const Kernel> dictionary,
                std::span<const double> shifts);

/// Gaussians with std 0.02, 0.04, 0.08, 0.16 and their negations.
std::vector<Kernel> default_metric_dictionary(double dt);

/// Negation-closed copy of the given kernels.
std::vector<Kernel> negation_closed(std::span<const Kernel> kernels);

/// Every grid time of x where all dictionary windows fit.
std::vector<double> all_valid_shifts(const Signal& x, std::span<const Kernel> dictionary);

}  // namespace tlfreq
