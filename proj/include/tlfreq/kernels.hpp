#pragma once

// Data-parallel inner loops. Each kernel exists twice: a plain serial
// reference and an OpenMP version that computes every output element with
// the same arithmetic sequence, so the two agree bit for bit. The library
// calls the parallel versions; tests and benchmarks compare both.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace tlfreq::kernels {

using cplx = std::complex<double>;

/// Separable term table: value of term t at a tuple (i_0..i_{n-1}) of point
/// indices is coeffs[t] * prod_j factor(t, j, i_j).
struct FactorTable {
  std::size_t terms = 0;
  std::size_t slots = 0;
  std::size_t points = 0;
  std::vector<double> coeffs;
  std::vector<cplx> factors;  // [term][slot][point]

  cplx factor(std::size_t t, std::size_t j, std::size_t i) const {
    return factors[(t * slots + j) * points + i];
  }
};

/// Sum over terms at one index tuple.
cplx evaluate_tuple(const FactorTable& table, std::span<const std::size_t> index);

/// Rows of the delay-polynomial regression: for row r, lag sample values are
/// samples[r * num_vars + v]; output row r holds prod_v value_v^exponents[m * num_vars + v]
/// for every monomial m.
struct MonomialBasis {
  std::size_t num_vars = 0;
  std::vector<int> exponents;  // [monomial][var]
  std::size_t size() const noexcept { return num_vars == 0 ? 0 : exponents.size() / num_vars; }
};

namespace serial {

/// out[k] = dt * sum_j taps[j] * x[first + k + offset + j] for k < out.size().
void correlate(std::span<const double> x, std::span<const double> taps, long offset, double dt,
               std::size_t first, std::span<double> out);

/// Since recursion for outputs at indices first..first+out.size()-1 of the
/// shared rho1/rho2 grid, window lags [lag_min, lag_max].
void since(std::span<const double> rho1, std::span<const double> rho2, std::size_t lag_min,
           std::size_t lag_max, std::size_t first, std::span<double> out);

/// Row-major design matrix (rows x basis.size()).
void monomial_rows(const MonomialBasis& basis, std::span<const double> samples, std::size_t rows,
                   std::span<double> out);

/// Dense evaluation over points^slots, last slot fastest.
void evaluate_grid(const FactorTable& table, std::span<cplx> out);

/// profile[i] = max over slots s and all tuples with slot s at point i of |value|.
void slot_profile(const FactorTable& table, std::span<double> profile);

/// Discrete hyperplane sum: points carry integer bin indices bin_of[i]; for
/// every tuple with sum of bins b in [out_first, out_first + out.size()),
/// out[b - out_first] += value(tuple).
void hyperplane_sum(const FactorTable& table, std::span<const long> bin_of, long out_first,
                    std::span<cplx> out);

}  // namespace serial

namespace parallel {

void correlate(std::span<const double> x, std::span<const double> taps, long offset, double dt,
               std::size_t first, std::span<double> out);
void since(std::span<const double> rho1, std::span<const double> rho2, std::size_t lag_min,
           std::size_t lag_max, std::size_t first, std::span<double> out);
void monomial_rows(const MonomialBasis& basis, std::span<const double> samples, std::size_t rows,
                   std::span<double> out);
void evaluate_grid(const FactorTable& table, std::span<cplx> out);
void slot_profile(const FactorTable& table, std::span<double> profile);
void hyperplane_sum(const FactorTable& table, std::span<const long> bin_of, long out_first,
                    std::span<cplx> out);

}  // namespace parallel

}  // namespace tlfreq::kernels
