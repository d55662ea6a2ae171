#include "tlfreq/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tlfreq/error.hpp"
#include "tlfreq/measure.hpp"

namespace tlfreq {

double metric_d(const Signal& x, const Signal& y, std::span<const Kernel> dictionary,
                std::span<const double> shifts) {
  const Signal diff = x - y;
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& f : dictionary) {
    for (double t : shifts) best = std::max(best, measure(f, diff, t));
  }
  return best;
}

std::vector<Kernel> default_metric_dictionary(double dt) {
  std::vector<Kernel> base;
  for (double s : {0.02, 0.04, 0.08, 0.16}) {
    base.push_back(Kernel::gaussian(0.0, s, Kernel::kDefaultTruncation * s, dt));
  }
  return negation_closed(base);
}

std::vector<Kernel> negation_closed(std::span<const Kernel> kernels) {
  std::vector<Kernel> out(kernels.begin(), kernels.end());
  for (const auto& f : kernels) {
    std::vector<double> neg(f.taps().begin(), f.taps().end());
    for (auto& v : neg) v = -v;
    out.push_back(Kernel::table(static_cast<double>(f.first_offset()) * f.dt(), f.dt(), std::move(neg)));
  }
  return out;
}

std::vector<double> all_valid_shifts(const Signal& x, std::span<const Kernel> dictionary) {
  std::size_t left = 0;
  std::size_t right = 0;
  for (const auto& f : dictionary) {
    left = std::max(left, f.left_reach());
    right = std::max(right, f.right_reach());
  }
  std::vector<double> out;
  if (left + right >= x.size()) return out;
  for (std::size_t k = left; k + right < x.size(); ++k) out.push_back(x.time(k));
  return out;
}

}  // namespace tlfreq
