// The background axioms every consistency check is relative to.
#pragma once

#include <cstddef>
#include <vector>

#include "prefrev/formula.hpp"
#include "prefrev/theory.hpp"

namespace prefrev {

/// The universe the axioms range over. Axiom instances are produced on demand: the encoder
/// instantiates them incrementally, and materialize() writes them out as formulas.
class BackgroundAxioms {
 public:
  BackgroundAxioms() = default;
  explicit BackgroundAxioms(const GroundTheory& theory);

  /// Name universe in canonical order.
  const std::vector<Term>& names() const noexcept { return names_; }
  const std::vector<Term>& object_terms() const noexcept { return object_terms_; }
  const std::vector<Term>& int_terms() const noexcept { return int_terms_; }
  const std::vector<std::vector<Term>>& distinct() const noexcept { return distinct_; }
  /// Predicate atoms occurring in the theory (congruence instances range over these).
  const std::vector<Formula>& predicate_atoms() const noexcept { return predicate_atoms_; }

  /// Widens the universe by the terms and predicate atoms of `f`.
  void include(const Formula& f);

  /// Every axiom instance over the universe as a ground formula: strict partial order on names,
  /// equality and congruence, integer order facts, and unique-name axioms.
  /// Throws Error(kSizeGuard) when more than `max_formulas` would be produced.
  std::vector<Formula> materialize(std::size_t max_formulas = 200000) const;

 private:
  void add_term(const Term& t);

  std::vector<Term> names_;
  std::vector<Term> object_terms_;
  std::vector<Term> int_terms_;
  std::vector<std::vector<Term>> distinct_;
  std::vector<Formula> predicate_atoms_;
};

BackgroundAxioms background_axioms(const GroundTheory& theory);

}  // namespace prefrev
