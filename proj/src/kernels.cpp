#include "tlfreq/kernels.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

namespace tlfreq::kernels {

namespace {

inline double correlate_at(std::span<const double> x, std::span<const double> taps, long base) {
  double acc = 0.0;
  for (std::size_t j = 0; j < taps.size(); ++j) {
    acc += taps[j] * x[static_cast<std::size_t>(base) + j];
  }
  return acc;
}

// max over lags L in [lag_min, lag_max] of min(rho2[i-L], min rho1[i-L+1 .. i]).
inline double since_at(std::span<const double> rho1, std::span<const double> rho2,
                       std::size_t lag_min, std::size_t lag_max, std::size_t i) {
  double inner = std::numeric_limits<double>::infinity();
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t lag = 0; lag <= lag_max; ++lag) {
    if (lag > 0) inner = std::min(inner, rho1[i - lag + 1]);
    if (lag >= lag_min) best = std::max(best, std::min(rho2[i - lag], inner));
  }
  return best;
}

inline void monomial_row(const MonomialBasis& basis, const double* vars, double* out) {
  const std::size_t nv = basis.num_vars;
  const std::size_t nm = basis.size();
  for (std::size_t m = 0; m < nm; ++m) {
    double v = 1.0;
    for (std::size_t k = 0; k < nv; ++k) {
      for (int e = 0; e < basis.exponents[m * nv + k]; ++e) v *= vars[k];
    }
    out[m] = v;
  }
}

inline void decode(std::size_t flat, std::size_t points, std::size_t slots, std::size_t* index) {
  for (std::size_t j = slots; j-- > 0;) {
    index[j] = flat % points;
    flat /= points;
  }
}

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t k = 0; k < exp; ++k) r *= base;
  return r;
}

struct BinLookup {
  std::unordered_map<long, std::vector<std::size_t>> points_at;
};

BinLookup make_lookup(std::span<const long> bin_of) {
  BinLookup lut;
  for (std::size_t i = 0; i < bin_of.size(); ++i) lut.points_at[bin_of[i]].push_back(i);
  return lut;
}

// Every tuple whose bins sum to `target`, in a fixed enumeration order: the
// first slots-1 indices run odometer style, the last is looked up.
cplx hyperplane_at(const FactorTable& table, std::span<const long> bin_of, const BinLookup& lut,
                   long target) {
  const std::size_t n = table.slots;
  const std::size_t p = table.points;
  std::vector<std::size_t> index(n, 0);
  cplx acc = 0.0;
  const std::size_t head = ipow(p, n - 1);
  for (std::size_t flat = 0; flat < head; ++flat) {
    decode(flat, p, n - 1, index.data());
    long partial = 0;
    for (std::size_t j = 0; j + 1 < n; ++j) partial += bin_of[index[j]];
    const auto it = lut.points_at.find(target - partial);
    if (it == lut.points_at.end()) continue;
    for (std::size_t last : it->second) {
      index[n - 1] = last;
      acc += evaluate_tuple(table, index);
    }
  }
  return acc;
}

}  // namespace

cplx evaluate_tuple(const FactorTable& table, std::span<const std::size_t> index) {
  cplx acc = 0.0;
  for (std::size_t t = 0; t < table.terms; ++t) {
    cplx v = table.coeffs[t];
    for (std::size_t j = 0; j < table.slots; ++j) v *= table.factor(t, j, index[j]);
    acc += v;
  }
  return acc;
}

namespace serial {

void correlate(std::span<const double> x, std::span<const double> taps, long offset, double dt,
               std::size_t first, std::span<double> out) {
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = dt * correlate_at(x, taps, static_cast<long>(first + k) + offset);
  }
}

void since(std::span<const double> rho1, std::span<const double> rho2, std::size_t lag_min,
           std::size_t lag_max, std::size_t first, std::span<double> out) {
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = since_at(rho1, rho2, lag_min, lag_max, first + k);
  }
}

void monomial_rows(const MonomialBasis& basis, std::span<const double> samples, std::size_t rows,
                   std::span<double> out) {
  for (std::size_t r = 0; r < rows; ++r) {
    monomial_row(basis, samples.data() + r * basis.num_vars, out.data() + r * basis.size());
  }
}

void evaluate_grid(const FactorTable& table, std::span<cplx> out) {
  std::vector<std::size_t> index(table.slots);
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    decode(flat, table.points, table.slots, index.data());
    out[flat] = evaluate_tuple(table, index);
  }
}

void slot_profile(const FactorTable& table, std::span<double> profile) {
  std::fill(profile.begin(), profile.end(), 0.0);
  std::vector<std::size_t> index(table.slots);
  const std::size_t total = ipow(table.points, table.slots);
  for (std::size_t flat = 0; flat < total; ++flat) {
    decode(flat, table.points, table.slots, index.data());
    const double mag = std::abs(evaluate_tuple(table, index));
    for (std::size_t j = 0; j < table.slots; ++j) {
      profile[index[j]] = std::max(profile[index[j]], mag);
    }
  }
}

void hyperplane_sum(const FactorTable& table, std::span<const long> bin_of, long out_first,
                    std::span<cplx> out) {
  const BinLookup lut = make_lookup(bin_of);
  for (std::size_t b = 0; b < out.size(); ++b) {
    out[b] += hyperplane_at(table, bin_of, lut, out_first + static_cast<long>(b));
  }
}

}  // namespace serial

namespace parallel {

void correlate(std::span<const double> x, std::span<const double> taps, long offset, double dt,
               std::size_t first, std::span<double> out) {
  const long n = static_cast<long>(out.size());
#pragma omp parallel for schedule(static)
  for (long k = 0; k < n; ++k) {
    out[static_cast<std::size_t>(k)] = dt * correlate_at(x, taps, static_cast<long>(first) + k + offset);
  }
}

void since(std::span<const double> rho1, std::span<const double> rho2, std::size_t lag_min,
           std::size_t lag_max, std::size_t first, std::span<double> out) {
  const long n = static_cast<long>(out.size());
#pragma omp parallel for schedule(static)
  for (long k = 0; k < n; ++k) {
    out[static_cast<std::size_t>(k)] =
        since_at(rho1, rho2, lag_min, lag_max, first + static_cast<std::size_t>(k));
  }
}

void monomial_rows(const MonomialBasis& basis, std::span<const double> samples, std::size_t rows,
                   std::span<double> out) {
  const long n = static_cast<long>(rows);
#pragma omp parallel for schedule(static)
  for (long r = 0; r < n; ++r) {
    const auto row = static_cast<std::size_t>(r);
    monomial_row(basis, samples.data() + row * basis.num_vars, out.data() + row * basis.size());
  }
}

void evaluate_grid(const FactorTable& table, std::span<cplx> out) {
  const long n = static_cast<long>(out.size());
#pragma omp parallel
  {
    std::vector<std::size_t> index(table.slots);
#pragma omp for schedule(static)
    for (long flat = 0; flat < n; ++flat) {
      decode(static_cast<std::size_t>(flat), table.points, table.slots, index.data());
      out[static_cast<std::size_t>(flat)] = evaluate_tuple(table, index);
    }
  }
}

void slot_profile(const FactorTable& table, std::span<double> profile) {
  std::fill(profile.begin(), profile.end(), 0.0);
  const long total = static_cast<long>(ipow(table.points, table.slots));
#pragma omp parallel
  {
    std::vector<double> local(profile.size(), 0.0);
    std::vector<std::size_t> index(table.slots);
#pragma omp for schedule(static)
    for (long flat = 0; flat < total; ++flat) {
      decode(static_cast<std::size_t>(flat), table.points, table.slots, index.data());
      const double mag = std::abs(evaluate_tuple(table, index));
      for (std::size_t j = 0; j < table.slots; ++j) {
        local[index[j]] = std::max(local[index[j]], mag);
      }
    }
    // max is order independent, so the merge order does not matter
#pragma omp critical
    for (std::size_t i = 0; i < profile.size(); ++i) profile[i] = std::max(profile[i], local[i]);
  }
}

void hyperplane_sum(const FactorTable& table, std::span<const long> bin_of, long out_first,
                    std::span<cplx> out) {
  const BinLookup lut = make_lookup(bin_of);
  const long n = static_cast<long>(out.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long b = 0; b < n; ++b) {
    out[static_cast<std::size_t>(b)] += hyperplane_at(table, bin_of, lut, out_first + b);
  }
}

}  // namespace parallel

}  // namespace tlfreq::kernels
