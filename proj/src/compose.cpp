#include "tlfreq/compose.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "tlfreq/error.hpp"

namespace tlfreq {

namespace {

// Composed delays are sums of stored delays; snapping them to 1e-14 s lets
// terms that differ only by summation order merge. A zero outer delay leaves
// the inner delay untouched.
double shifted(double c, double a) { return c == 0.0 ? a : std::round((c + a) * 1e14) / 1e14; }

bool term_less(const Term& a, const Term& b) {
  if (a.delays != b.delays) return a.delays < b.delays;
  return a.factors < b.factors;
}

bool same_key(const Term& a, const Term& b) { return a.delays == b.delays && a.factors == b.factors; }

// Stable sort then sum runs of identical keys in their original order.
std::vector<Term> merge_terms(std::vector<Term> terms, std::size_t& merged) {
  std::stable_sort(terms.begin(), terms.end(), term_less);
  std::vector<Term> out;
  for (auto& t : terms) {
    if (!out.empty() && same_key(out.back(), t)) {
      out.back().coeff += t.coeff;
      ++merged;
    } else {
      out.push_back(std::move(t));
    }
  }
  return out;
}

Gfrf with_atoms_of(const Gfrf& src) {
  Gfrf g;
  for (const auto& [name, kernel] : src.atoms()) g.atom_index(name, kernel);
  return g;
}

void compositions_rec(std::size_t n, std::size_t k, std::vector<std::size_t>& cur,
                      std::vector<std::vector<std::size_t>>& out) {
  if (k == 1) {
    cur.push_back(n);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (std::size_t first = 1; first + (k - 1) <= n; ++first) {
    cur.push_back(first);
    compositions_rec(n - first, k - 1, cur, out);
    cur.pop_back();
  }
}

// Emits every product of one inner term per block for a fixed outer term and m.
void emit_blocks(const Term& outer, const std::vector<std::size_t>& m, const Gfrf& inner,
                 std::size_t block, Term& partial, std::vector<Term>& out) {
  if (block == m.size()) {
    out.push_back(partial);
    return;
  }
  const double c = outer.delays[block];
  for (const auto& t : inner.terms(m[block])) {
    const double saved = partial.coeff;
    partial.coeff *= t.coeff;
    for (std::size_t p = 0; p < t.order(); ++p) {
      partial.delays.push_back(shifted(c, t.delays[p]));
      partial.factors.push_back(t.factors[p]);
    }
    emit_blocks(outer, m, inner, block + 1, partial, out);
    partial.delays.resize(partial.delays.size() - t.order());
    partial.factors.resize(partial.factors.size() - t.order());
    partial.coeff = saved;
  }
}

}  // namespace

std::vector<std::vector<std::size_t>> compositions(std::size_t n, std::size_t k) {
  if (k < 1 || k > n) {
    throw Error("BadArity", "compositions need 1 <= k <= n, got n=" + std::to_string(n) +
                                " k=" + std::to_string(k));
  }
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  compositions_rec(n, k, cur, out);
  return out;
}

Gfrf sum_gfrf(const Gfrf& a, const Gfrf& b) {
  Gfrf out = with_atoms_of(a);
  out.set_h0(a.h0() + b.h0());
  std::vector<int> remap;
  for (const auto& [name, kernel] : b.atoms()) remap.push_back(out.atom_index(name, kernel));
  for (const auto& [n, terms] : a.orders()) {
    for (const auto& t : terms) out.add_term(t);
  }
  for (const auto& [n, terms] : b.orders()) {
    for (auto t : terms) {
      for (auto& f : t.factors) {
        if (f != kUnity) f = remap[static_cast<std::size_t>(f)];
      }
      out.add_term(std::move(t));
    }
  }
  return out;
}

Gfrf compose_gfrf(const Gfrf& outer, const Gfrf& inner, std::size_t max_order) {
  if (!outer.unity_only()) {
    throw Error("OuterHasAtomFactors", "the outer operator of a composition must be a delta train");
  }
  if (inner.h0() != 0.0) {
    throw Error("InnerHasNonzeroH0", "the inner operator of a composition must map 0 to 0");
  }
  Gfrf out = with_atoms_of(inner);
  out.set_h0(outer.h0());
  const std::size_t inner_max = inner.max_order();
  if (inner_max == 0) return out;

  // Flatten outer terms so the enumeration can run in parallel with a fixed
  // result order.
  std::vector<const Term*> outer_terms;
  for (const auto& [k, terms] : outer.orders()) {
    for (const auto& t : terms) outer_terms.push_back(&t);
  }
  std::vector<std::vector<Term>> produced(outer_terms.size());
  const long count = static_cast<long>(outer_terms.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < count; ++i) {
    const Term& ot = *outer_terms[static_cast<std::size_t>(i)];
    const std::size_t k = ot.order();
    std::size_t top = k * inner_max;
    if (max_order != 0) top = std::min(top, max_order);
    for (std::size_t n = k; n <= top; ++n) {
      for (const auto& m : compositions(n, k)) {
        Term partial{ot.coeff, {}, {}};
        partial.delays.reserve(n);
        partial.factors.reserve(n);
        emit_blocks(ot, m, inner, 0, partial, produced[static_cast<std::size_t>(i)]);
      }
    }
  }

  std::map<std::size_t, std::vector<Term>> by_order;
  for (auto& list : produced) {
    for (auto& t : list) by_order[t.order()].push_back(std::move(t));
  }
  std::size_t merged = 0;
  for (auto& [n, terms] : by_order) out.set_terms(n, merge_terms(std::move(terms), merged));
  return out;
}

PruneResult prune_gfrf(const Gfrf& gfrf, double threshold) {
  if (threshold < 0.0) throw Error("BadThreshold", "prune threshold must be non-negative");
  PruneResult r;
  r.gfrf = with_atoms_of(gfrf);
  r.gfrf.set_h0(gfrf.h0());
  for (const auto& [n, terms] : gfrf.orders()) {
    std::vector<Term> kept;
    for (auto& t : merge_terms(terms, r.merged)) {
      if (std::abs(t.coeff) < threshold || t.coeff == 0.0) {
        r.dropped_mass += std::abs(t.coeff);
        ++r.dropped;
      } else {
        kept.push_back(std::move(t));
      }
    }
    r.gfrf.set_terms(n, std::move(kept));
  }
  return r;
}

}  // namespace tlfreq
