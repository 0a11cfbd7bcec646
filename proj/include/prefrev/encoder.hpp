// CNF encoding of ground formulas modulo the background axioms.
//
// Equality and integer-order axioms are instantiated as terms are first seen (Ackermann style).
// The strict-partial-order axioms over name atoms are checked on complete assignments and only
// the violated transitivity or irreflexivity instances are added.
#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "prefrev/background.hpp"
#include "prefrev/formula.hpp"
#include "prefrev/sat.hpp"

namespace prefrev {

class Encoder : private sat::FinalCheck {
 public:
  explicit Encoder(const BackgroundAxioms& axioms, std::uint64_t max_decisions = 10000000);
  Encoder(const Encoder&) = delete;
  Encoder& operator=(const Encoder&) = delete;

  /// A literal equivalent to `f` in every model.
  sat::Lit encode(const Formula& f);
  void assert_formula(const Formula& f);
  void add_clause(std::vector<sat::Lit> lits) { solver_.add_clause(std::move(lits)); }
  sat::Lit fresh() { return sat::Lit(solver_.new_var(), false); }
  sat::Lit true_lit() const { return truth_; }
  sat::Lit false_lit() const { return ~truth_; }

  /// The atom `a < b` between two names.
  sat::Lit preference(const Term& a, const Term& b);

  bool solve(std::span<const sat::Lit> assumptions = {});
  /// Value in the model of the last satisfiable solve().
  bool value(sat::Lit l) const { return solver_.value(l); }
  /// Name pairs whose preference atom exists and is true in the last model.
  std::vector<std::pair<Term, Term>> true_preferences() const;

  sat::Solver& solver() { return solver_; }

 private:
  struct Group {
    std::vector<Term> terms;
  };

  void check(const sat::Solver& solver, std::vector<std::vector<sat::Lit>>& violated) override;
  void check_preferences(const sat::Solver& solver, std::vector<std::vector<sat::Lit>>& violated);
  void check_integer_gaps(const sat::Solver& solver, std::vector<std::vector<sat::Lit>>& violated);

  sat::Lit encode_atom(const Formula& atom);
  void register_term(const Term& t);
  sat::Lit equality(const Term& a, const Term& b);
  sat::Lit int_less(const Term& a, const Term& b);
  std::size_t name_index(const Term& name);
  bool holds(const sat::Solver& solver, sat::Lit l) const;
  /// Literals asserting that the non-name arguments of two applications are pairwise equal, or
  /// false if that can never happen (different name arguments or distinct literals).
  bool argument_equalities(std::span<const Term> a, std::span<const Term> b, std::vector<sat::Lit>& out);

  sat::Solver solver_;
  sat::Lit truth_;
  std::map<const void*, std::pair<Formula, sat::Lit>> cache_;
  std::map<std::string, sat::Lit> atoms_;
  std::map<std::string, std::vector<Formula>> predicate_atoms_;  // by symbol/arity

  std::map<std::string, std::size_t> term_ids_;
  std::vector<Term> terms_;
  std::map<std::pair<std::size_t, std::size_t>, sat::Lit> equalities_;
  std::map<std::pair<std::size_t, std::size_t>, sat::Lit> int_less_;
  std::vector<std::size_t> object_group_;
  std::vector<std::size_t> int_group_;

  std::map<std::string, std::size_t> name_ids_;
  std::vector<Term> names_;
  std::vector<std::map<std::size_t, sat::Lit>> preference_out_;  // by source name
};

}  // namespace prefrev
