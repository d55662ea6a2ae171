#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "tlfreq/kernel.hpp"
#include "tlfreq/kernel_table.hpp"

namespace tlfreq {

/// Factor index meaning "no atom transfer" in Term::factors.
inline constexpr int kUnity = -1;

/// coeff * exp(-i sum_j delays[j] w_j) * prod_j A_{factors[j]}(w_j)
struct Term {
  double coeff = 0.0;
  std::vector<double> delays;
  std::vector<int> factors;  // kUnity or an index into Gfrf::atoms()

  std::size_t order() const noexcept { return delays.size(); }
};

/// Generalised frequency response in exponential-sum form. Order n is a list
/// of separable terms; atoms referenced by factors carry their kernels so the
/// object evaluates on its own.
class Gfrf {
 public:
  Gfrf() = default;

  double h0() const noexcept { return h0_; }
  void set_h0(double h0) noexcept { h0_ = h0; }

  const std::map<std::size_t, std::vector<Term>>& orders() const noexcept { return orders_; }
  const std::vector<Term>& terms(std::size_t n) const;
  std::size_t max_order() const noexcept;
  std::size_t term_count() const noexcept;

  /// Registers (or finds) an atom and returns its factor index.
  int atom_index(const std::string& name, const Kernel& kernel);
  const std::vector<std::pair<std::string, Kernel>>& atoms() const noexcept { return atoms_; }

  void add_term(Term term);
  void set_terms(std::size_t n, std::vector<Term> terms);

  /// Unity factors everywhere (delta-train kernel).
  bool unity_only() const noexcept;

 private:
  double h0_ = 0.0;
  std::map<std::size_t, std::vector<Term>> orders_;
  std::vector<std::pair<std::string, Kernel>> atoms_;
};

/// Slot j of a term at frequency w: exp(-i delays[j] w) times the atom transfer
/// if the slot has one. Terms evaluate as coeff times the product of these.
std::complex<double> slot_factor(const Gfrf& gfrf, const Term& term, std::size_t j, double omega);

/// H_n at the given frequencies (0 when order n is absent; H_0 for n == 0).
std::complex<double> evaluate_gfrf(const Gfrf& gfrf, std::size_t n, std::span<const double> omegas);

/// Single order-1 term whose factor is the atom transfer F{f}(-w).
Gfrf atom_gfrf(const std::string& name, const Kernel& kernel);

/// H_1 = -1.
Gfrf negation_gfrf();

/// Pure delay: H_1(w) = exp(-i delay w).
Gfrf delay_gfrf(double delay);

/// Averages every term over all permutations of its frequency slots.
Gfrf symmetrize(const Gfrf& gfrf);

/// {"h0": .., "orders": {"1": [{"coeff": .., "delays": [..], "factors": ["unity" | "atom:<name>"]}]}}
nlohmann::json gfrf_to_json(const Gfrf& gfrf);
/// Atom factors are resolved against the kernel table.
Gfrf gfrf_from_json(const nlohmann::json& doc, const KernelTable& kernels);

}  // namespace tlfreq
