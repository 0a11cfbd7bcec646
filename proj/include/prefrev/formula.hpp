// Formula syntax trees. Formulas are immutable and share structure; copying a Formula is cheap.
#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "prefrev/term.hpp"

namespace prefrev {

class Formula {
 public:
  enum class Kind : std::uint8_t {
    kTrue,
    kFalse,
    kPredicate,  // P(t1..tk), k >= 0
    kEqual,      // t1 = t2
    kLess,       // t1 < t2: preference over names or comparison over integers, decided by sort
    kNot,
    kAnd,
    kOr,
    kImplies,
    kIff,
    kForall,
    kExists,
  };

  /// Default-constructed formulas are `true`.
  Formula();

  static Formula top();
  static Formula bottom();
  static Formula predicate(std::string symbol, std::vector<Term> args = {});
  static Formula equal(Term lhs, Term rhs);
  static Formula less(Term lhs, Term rhs);
  static Formula negation(Formula f);
  /// Empty conjunction is `true`, a single conjunct is returned unchanged.
  static Formula conjunction(std::vector<Formula> fs);
  /// Empty disjunction is `false`, a single disjunct is returned unchanged.
  static Formula disjunction(std::vector<Formula> fs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula equivalence(Formula lhs, Formula rhs);
  static Formula forall(std::string var, std::string sort, Formula body);
  static Formula exists(std::string var, std::string sort, Formula body);

  Kind kind() const noexcept;
  bool is_atom() const noexcept;
  bool is_quantifier() const noexcept;

  /// Predicate symbol, or bound variable for quantifiers.
  const std::string& symbol() const noexcept;
  /// Binder sort id for quantifiers.
  const std::string& sort_id() const noexcept;
  /// Predicate arguments, or {lhs, rhs} for = and <.
  std::span<const Term> terms() const noexcept;
  std::span<const Formula> children() const noexcept;

  /// Negation that strips one leading ~ instead of stacking a second one.
  Formula complement() const;

  bool is_ground() const;
  std::string to_string() const;

  Formula substitute(std::string_view var, const Term& value) const;
  /// Rebuilds the tree bottom-up, replacing every atom by `f(atom)`.
  Formula map_atoms(const std::function<Formula(const Formula&)>& f) const;
  void for_each_atom(const std::function<void(const Formula&)>& f) const;
  void for_each_term(const std::function<void(const Term&)>& f) const;

  /// Identity of the underlying node; equal ids imply equal formulas.
  const void* id() const noexcept { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);

  struct Node;  // defined in formula.cpp

 private:
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace prefrev
