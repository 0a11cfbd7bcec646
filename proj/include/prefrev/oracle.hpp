// Consistency, entailment and preference-model enumeration modulo the background axioms.
#pragma once

#include <span>
#include <vector>

#include "prefrev/background.hpp"
#include "prefrev/formula.hpp"
#include "prefrev/limits.hpp"

namespace prefrev {

/// Truth values of every atom n < n' (n != n') over a name universe.
struct PreferenceAssignment {
  std::vector<Term> names;
  std::vector<char> holds;  // row-major |names| x |names|; the diagonal is always 0

  bool operator()(std::size_t i, std::size_t j) const { return holds[i * names.size() + j] != 0; }
  std::size_t true_count() const;

  friend bool operator==(const PreferenceAssignment& a, const PreferenceAssignment& b) {
    return a.names == b.names && a.holds == b.holds;
  }
};

/// Canonical order: fewer true pairs first, then lexicographic on the row-major matrix.
bool canonical_less(const PreferenceAssignment& a, const PreferenceAssignment& b);

/// Throws Error(kDecisionCap) when the solver runs out of decisions.
bool is_consistent(std::span<const Formula> formulas, const BackgroundAxioms& axioms, const Limits& limits = {});

bool entails(std::span<const Formula> formulas, const BackgroundAxioms& axioms, const Formula& query,
             const Limits& limits = {});

/// Distinct projections onto the preference atoms over `names` of the models of the formulas, in
/// canonical order. Throws Overflow<PreferenceAssignment>(kModelCap) with the assignments found so
/// far (canonically sorted) when more than `cap` exist.
std::vector<PreferenceAssignment> enumerate_preference_models(std::span<const Formula> formulas,
                                                              const BackgroundAxioms& axioms,
                                                              const std::vector<Term>& names, std::size_t cap,
                                                              const Limits& limits = {});

}  // namespace prefrev
