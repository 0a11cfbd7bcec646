// Strict partial orders over formula names, their linear extensions, and compatibility.
#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "prefrev/background.hpp"
#include "prefrev/limits.hpp"
#include "prefrev/oracle.hpp"
#include "prefrev/theory.hpp"

namespace prefrev {

/// a ≺ b reads "a is preferred to b", the relation the atom a < b states.
class StrictPartialOrder {
 public:
  StrictPartialOrder() = default;
  /// The empty order over `carrier`. The carrier is sorted canonically.
  explicit StrictPartialOrder(std::vector<Term> carrier);
  /// Transitive closure of `pairs`. Throws Error(kInternal) if the closure is not irreflexive.
  static StrictPartialOrder closure(std::vector<Term> carrier, const std::vector<std::pair<Term, Term>>& pairs);
  static StrictPartialOrder from_assignment(const PreferenceAssignment& assignment);

  const std::vector<Term>& carrier() const noexcept { return carrier_; }
  std::size_t size() const noexcept { return carrier_.size(); }
  bool less(std::size_t i, std::size_t j) const { return rel_[i * carrier_.size() + j] != 0; }
  bool less(const Term& a, const Term& b) const;
  std::optional<std::size_t> index_of(const Term& t) const;

  /// Related pairs in canonical (row-major) order.
  std::vector<std::pair<Term, Term>> pairs() const;
  std::size_t pair_count() const;
  bool is_valid() const;
  /// True iff every pair of `other` is a pair of this order (same carrier).
  bool includes(const StrictPartialOrder& other) const;
  bool is_total() const;
  std::string to_string() const;

  friend bool operator==(const StrictPartialOrder& a, const StrictPartialOrder& b) {
    return a.carrier_ == b.carrier_ && a.rel_ == b.rel_;
  }
  friend bool operator<(const StrictPartialOrder& a, const StrictPartialOrder& b);

 private:
  std::vector<Term> carrier_;
  std::vector<char> rel_;
};

/// A permutation of the carrier; earlier elements are preferred and processed first.
class TotalOrder {
 public:
  TotalOrder() = default;
  explicit TotalOrder(std::vector<Term> sequence) : sequence_(std::move(sequence)) {}

  const std::vector<Term>& sequence() const noexcept { return sequence_; }
  std::size_t size() const noexcept { return sequence_.size(); }
  StrictPartialOrder as_partial_order() const;
  std::string to_string() const;

  friend bool operator==(const TotalOrder& a, const TotalOrder& b) { return a.sequence_ == b.sequence_; }

 private:
  std::vector<Term> sequence_;
};

/// {a < b | a ≺ b} ∪ {¬(a < b) | a ≠ b, not a ≺ b}.
std::vector<Formula> diagram(const StrictPartialOrder& order);

/// True iff S ∪ diagram(P) is consistent modulo the axioms.
bool is_compatible(const StrictPartialOrder& order, std::span<const Formula> s, const BackgroundAxioms& axioms,
                   const Limits& limits = {});

/// Lazily enumerates the linear extensions of a partial order in lexicographic order of the
/// carrier's canonical indices.
class LinearizationStream {
 public:
  explicit LinearizationStream(const StrictPartialOrder& order);
  std::optional<TotalOrder> next();

 private:
  bool place_smallest_from(std::size_t start);
  void place(std::size_t v);
  void unplace(std::size_t v);
  TotalOrder current() const;

  const StrictPartialOrder& order_;
  std::size_t n_;
  std::vector<std::size_t> sequence_;
  std::vector<char> placed_;
  std::vector<std::size_t> pending_;  // unplaced predecessors of each element
  bool started_ = false;
  bool done_ = false;
};

/// All linear extensions. Throws Overflow<TotalOrder>(kLinearizationCap) beyond `cap`.
std::vector<TotalOrder> linearizations(const StrictPartialOrder& order, std::size_t cap);

/// The strict partial orders on the theory's names whose diagram is consistent with S.
/// Throws Overflow<StrictPartialOrder>(kModelCap) beyond limits.max_models.
std::vector<StrictPartialOrder> compatible_orders(const GroundTheory& theory, std::span<const Formula> s,
                                                  const Limits& limits = {});

/// Every irreflexive transitive relation on `names`, found by exhaustive search. Test oracle;
/// throws Error(kSizeGuard) for more than 6 names.
std::vector<StrictPartialOrder> brute_force_partial_orders(const std::vector<Term>& names);

}  // namespace prefrev
