#include "prefrev/oracle.hpp"

#include <algorithm>

#include "prefrev/encoder.hpp"
#include "prefrev/error.hpp"

namespace prefrev {

std::size_t PreferenceAssignment::true_count() const {
  return static_cast<std::size_t>(std::count(holds.begin(), holds.end(), 1));
}

bool canonical_less(const PreferenceAssignment& a, const PreferenceAssignment& b) {
  const std::size_t ca = a.true_count(), cb = b.true_count();
  if (ca != cb) return ca < cb;
  return a.holds < b.holds;
}

bool is_consistent(std::span<const Formula> formulas, const BackgroundAxioms& axioms, const Limits& limits) {
  Encoder enc(axioms, limits.max_decisions);
  for (const auto& f : formulas) enc.assert_formula(f);
  return enc.solve();
}

bool entails(std::span<const Formula> formulas, const BackgroundAxioms& axioms, const Formula& query,
             const Limits& limits) {
  Encoder enc(axioms, limits.max_decisions);
  for (const auto& f : formulas) enc.assert_formula(f);
  enc.assert_formula(query.complement());
  return !enc.solve();
}

std::vector<PreferenceAssignment> enumerate_preference_models(std::span<const Formula> formulas,
                                                              const BackgroundAxioms& axioms,
                                                              const std::vector<Term>& names, std::size_t cap,
                                                              const Limits& limits) {
  Encoder enc(axioms, limits.max_decisions);
  for (const auto& f : formulas) enc.assert_formula(f);
  const std::size_t n = names.size();
  std::vector<sat::Lit> atoms(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) atoms[i * n + j] = enc.preference(names[i], names[j]);
  }

  std::vector<PreferenceAssignment> found;
  while (enc.solve()) {
    PreferenceAssignment pa{names, std::vector<char>(n * n, 0)};
    std::vector<sat::Lit> block;
    for (std::size_t k = 0; k < n * n; ++k) {
      if (k / n == k % n) continue;
      const bool v = enc.value(atoms[k]);
      pa.holds[k] = v ? 1 : 0;
      block.push_back(v ? ~atoms[k] : atoms[k]);
    }
    if (found.size() == cap) {
      std::sort(found.begin(), found.end(), canonical_less);
      throw Overflow<PreferenceAssignment>(ErrorCode::kModelCap,
                                           "more than " + std::to_string(cap) + " preference models", std::move(found));
    }
    found.push_back(std::move(pa));
    if (block.empty()) break;  // a single name: only the empty assignment exists
    enc.add_clause(std::move(block));
  }
  std::sort(found.begin(), found.end(), canonical_less);
  return found;
}

}  // namespace prefrev
