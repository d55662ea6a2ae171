#include "tlfreq/gfrf.hpp"

#include <algorithm>
#include <numeric>

#include "tlfreq/error.hpp"

namespace tlfreq {

namespace {
const std::vector<Term> kNoTerms;
}

const std::vector<Term>& Gfrf::terms(std::size_t n) const {
  const auto it = orders_.find(n);
  return it == orders_.end() ? kNoTerms : it->second;
}

std::size_t Gfrf::max_order() const noexcept {
  for (auto it = orders_.rbegin(); it != orders_.rend(); ++it) {
    if (!it->second.empty()) return it->first;
  }
  return 0;
}

std::size_t Gfrf::term_count() const noexcept {
  std::size_t n = 0;
  for (const auto& [order, terms] : orders_) n += terms.size();
  return n;
}

int Gfrf::atom_index(const std::string& name, const Kernel& kernel) {
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    if (atoms_[k].first == name) return static_cast<int>(k);
  }
  atoms_.emplace_back(name, kernel);
  return static_cast<int>(atoms_.size() - 1);
}

void Gfrf::add_term(Term term) {
  if (term.order() == 0 || term.factors.size() != term.delays.size()) {
    throw Error("MalformedTerm", "term needs matching, non-empty delay and factor lists");
  }
  for (int f : term.factors) {
    if (f != kUnity && (f < 0 || f >= static_cast<int>(atoms_.size()))) {
      throw Error("MalformedTerm", "term references an unregistered atom");
    }
  }
  orders_[term.order()].push_back(std::move(term));
}

void Gfrf::set_terms(std::size_t n, std::vector<Term> terms) {
  if (terms.empty()) {
    orders_.erase(n);
    return;
  }
  orders_[n] = std::move(terms);
}

bool Gfrf::unity_only() const noexcept {
  for (const auto& [order, terms] : orders_) {
    for (const auto& t : terms) {
      if (std::any_of(t.factors.begin(), t.factors.end(), [](int f) { return f != kUnity; })) return false;
    }
  }
  return true;
}

std::complex<double> slot_factor(const Gfrf& gfrf, const Term& term, std::size_t j, double omega) {
  const std::complex<double> phase = std::polar(1.0, -term.delays[j] * omega);
  if (term.factors[j] == kUnity) return phase;
  return phase * gfrf.atoms()[static_cast<std::size_t>(term.factors[j])].second.atom_transfer(omega);
}

std::complex<double> evaluate_gfrf(const Gfrf& gfrf, std::size_t n, std::span<const double> omegas) {
  if (n == 0) return gfrf.h0();
  if (omegas.size() != n) {
    throw Error("BadArity", "order " + std::to_string(n) + " needs " + std::to_string(n) + " frequencies");
  }
  std::complex<double> acc = 0.0;
  for (const auto& t : gfrf.terms(n)) {
    std::complex<double> v = t.coeff;
    for (std::size_t j = 0; j < n; ++j) v *= slot_factor(gfrf, t, j, omegas[j]);
    acc += v;
  }
  return acc;
}

Gfrf atom_gfrf(const std::string& name, const Kernel& kernel) {
  Gfrf g;
  const int idx = g.atom_index(name, kernel);
  g.add_term(Term{1.0, {0.0}, {idx}});
  return g;
}

Gfrf negation_gfrf() {
  Gfrf g;
  g.add_term(Term{-1.0, {0.0}, {kUnity}});
  return g;
}

Gfrf delay_gfrf(double delay) {
  Gfrf g;
  g.add_term(Term{1.0, {delay}, {kUnity}});
  return g;
}

Gfrf symmetrize(const Gfrf& gfrf) {
  Gfrf out;
  out.set_h0(gfrf.h0());
  for (const auto& [name, kernel] : gfrf.atoms()) out.atom_index(name, kernel);
  for (const auto& [n, terms] : gfrf.orders()) {
    std::vector<std::size_t> perm(n);
    double count = 0.0;
    std::iota(perm.begin(), perm.end(), 0);
    do count += 1.0; while (std::next_permutation(perm.begin(), perm.end()));
    for (const auto& t : terms) {
      std::iota(perm.begin(), perm.end(), 0);
      do {
        Term p{t.coeff / count, std::vector<double>(n), std::vector<int>(n)};
        for (std::size_t j = 0; j < n; ++j) {
          p.delays[j] = t.delays[perm[j]];
          p.factors[j] = t.factors[perm[j]];
        }
        out.add_term(std::move(p));
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
  return out;
}

nlohmann::json gfrf_to_json(const Gfrf& gfrf) {
  nlohmann::json orders = nlohmann::json::object();
  for (const auto& [n, terms] : gfrf.orders()) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& t : terms) {
      nlohmann::json factors = nlohmann::json::array();
      for (int f : t.factors) {
        factors.push_back(f == kUnity ? std::string("unity")
                                      : "atom:" + gfrf.atoms()[static_cast<std::size_t>(f)].first);
      }
      list.push_back({{"coeff", t.coeff}, {"delays", t.delays}, {"factors", factors}});
    }
    orders[std::to_string(n)] = std::move(list);
  }
  return {{"h0", gfrf.h0()}, {"orders", orders}};
}

Gfrf gfrf_from_json(const nlohmann::json& doc, const KernelTable& kernels) {
  Gfrf g;
  try {
    g.set_h0(doc.value("h0", 0.0));
    if (!doc.contains("orders")) return g;
    for (const auto& [key, list] : doc.at("orders").items()) {
      const auto n = static_cast<std::size_t>(std::stoul(key));
      for (const auto& entry : list) {
        Term t;
        t.coeff = entry.at("coeff").get<double>();
        t.delays = entry.at("delays").get<std::vector<double>>();
        for (const auto& f : entry.at("factors")) {
          const auto s = f.get<std::string>();
          if (s == "unity") {
            t.factors.push_back(kUnity);
          } else if (s.rfind("atom:", 0) == 0) {
            const std::string name = s.substr(5);
            t.factors.push_back(g.atom_index(name, kernels.at(name)));
          } else {
            throw Error("BadGfrfJson", "unknown factor '" + s + "'");
          }
        }
        if (t.order() != n) throw Error("BadGfrfJson", "term order does not match its key " + key);
        g.add_term(std::move(t));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error("BadGfrfJson", std::string("malformed GFRF JSON: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw Error("BadGfrfJson", "order keys must be integers");
  }
  return g;
}

}  // namespace tlfreq
