// Extension bases, the extensions of a partial order, Ext^S, and finite belief representations.
#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "prefrev/background.hpp"
#include "prefrev/limits.hpp"
#include "prefrev/order.hpp"
#include "prefrev/theory.hpp"

namespace prefrev {

/// A subset of a theory's members. Compared by member names only.
class ExtensionBase {
 public:
  ExtensionBase() = default;
  /// `member_mask` is indexed like theory.members().
  ExtensionBase(const GroundTheory& theory, const std::vector<char>& member_mask,
                std::optional<TotalOrder> generating_order = std::nullopt);

  /// Members in canonical name order.
  const std::vector<NamedFormula>& members() const noexcept { return members_; }
  std::vector<Term> names() const;
  bool contains(const Term& name) const;
  std::size_t size() const noexcept { return members_.size(); }

  std::vector<Formula> formulas() const;
  std::vector<Formula> premise_formulas() const;
  const std::optional<TotalOrder>& generating_order() const noexcept { return generating_order_; }
  ExtensionBase with_generating_order(std::optional<TotalOrder> order) const {
    ExtensionBase out = *this;
    out.generating_order_ = std::move(order);
    return out;
  }
  /// Inclusion flags over the theory's canonical name order.
  const std::vector<char>& key() const noexcept { return key_; }

  /// "{d1, d2(a)}"
  std::string to_string() const;

  friend bool operator==(const ExtensionBase& a, const ExtensionBase& b) { return a.key_ == b.key_; }
  /// Canonical order: the first name (canonically) on which two bases differ is absent from the smaller.
  friend bool operator<(const ExtensionBase& a, const ExtensionBase& b);

 private:
  std::vector<NamedFormula> members_;
  std::vector<char> key_;
  std::optional<TotalOrder> generating_order_;
};

/// Sorts canonically and removes duplicates.
void canonicalize(std::vector<ExtensionBase>& bases);

/// The intersection of the deductive closures of finitely many bases, kept as the bases
/// themselves. Default-constructed, it is the set of tautologies (S = ∅).
class BeliefRepresentation {
 public:
  BeliefRepresentation() = default;

  const std::vector<ExtensionBase>& bases() const noexcept { return bases_; }
  /// Disjunction over bases of the conjunction of all their formulas, constraints included; true
  /// for the tautologies. This is what compatibility is checked against.
  const Formula& guidance() const noexcept { return guidance_; }
  /// Formulas conjoined by expansion.
  const std::vector<Formula>& added() const noexcept { return added_; }
  bool is_tautologies() const noexcept { return bases_.empty() && added_.empty(); }

  /// q is believed iff every base's premises, together with the added formulas, entail q.
  bool entails(const Formula& query, const BackgroundAxioms& axioms, const Limits& limits = {}) const;
  bool is_consistent(const BackgroundAxioms& axioms, const Limits& limits = {}) const;

  /// The expansion by `a`: Th(K ∪ {a}).
  BeliefRepresentation expanded(const Formula& a) const;

 private:
  friend BeliefRepresentation intersect(std::vector<ExtensionBase> bases);
  /// Disjunction over bases of their premise conjunctions (true without bases).
  Formula premise_disjunction() const;

  std::vector<ExtensionBase> bases_;
  Formula guidance_ = Formula::top();
  std::vector<Formula> added_;
};

/// Throws Error(kEmptyIntersection) on an empty input.
BeliefRepresentation intersect(std::vector<ExtensionBase> bases);

/// The greedy construction along a total order of all the theory's names.
ExtensionBase extension_base(const GroundTheory& theory, const TotalOrder& order, const Limits& limits = {});

/// The maximal consistent subsets of the members, their union of complements, and the minimal
/// inconsistent subsets among them. Indices refer to theory.members().
struct ConflictStructure {
  std::vector<std::vector<char>> maximal_consistent;
  std::vector<std::size_t> relevant;
  std::vector<std::vector<std::size_t>> minimal_inconsistent;
};

/// Throws Error(kBaseCap) beyond limits.max_bases maximal consistent subsets.
ConflictStructure conflict_structure(const GroundTheory& theory, const Limits& limits = {});

/// Decides membership in Ext^S for candidate bases of one theory. Computes the conflict
/// structure once and answers each query with one satisfiability check per candidate.
class ExtensionEngine {
 public:
  explicit ExtensionEngine(const GroundTheory& theory, Limits limits = {});

  const GroundTheory& theory() const noexcept { return theory_; }
  const BackgroundAxioms& axioms() const noexcept { return axioms_; }
  const Limits& limits() const noexcept { return limits_; }
  const ConflictStructure& conflicts();

  /// Every base any total order generates (Ext^∅), canonically sorted.
  const std::vector<ExtensionBase>& all_bases();

  /// Ext^S restricted to `candidates`. Each result carries a generating order.
  std::vector<ExtensionBase> compatible(const BeliefRepresentation& s, std::span<const ExtensionBase> candidates);
  std::vector<ExtensionBase> compatible(const BeliefRepresentation& s) { return compatible(s, all_bases()); }

  /// Candidates generated by a linearization of some strict partial order whose diagram is
  /// consistent with `guidance`.
  std::vector<ExtensionBase> generated_under(const Formula& guidance, std::span<const ExtensionBase> candidates);

  /// B ∈ Ext^B: some order compatible with B's own formulas generates B.
  bool is_preferred(const ExtensionBase& base);

 private:
  const GroundTheory& theory_;
  BackgroundAxioms axioms_;
  Limits limits_;
  std::optional<ConflictStructure> conflicts_;
  std::optional<std::vector<ExtensionBase>> all_bases_;
};

enum class ExtensionStrategy {
  kSolver,     // per-base satisfiability over the conflict structure
  kEnumerate,  // compatible orders, then every linearization (small theories only)
};

/// Distinct bases generated by the linearizations of `order`, canonically sorted. The
/// enumerative strategy walks every linearization and throws Overflow<ExtensionBase>
/// (kLinearizationCap) beyond limits.max_linearizations.
std::vector<ExtensionBase> extensions_for_partial_order(const GroundTheory& theory, const StrictPartialOrder& order,
                                                        const Limits& limits = {},
                                                        ExtensionStrategy strategy = ExtensionStrategy::kSolver);

/// Ext^S: bases generated by a linearization of some order compatible with S.
std::vector<ExtensionBase> extensions_compatible(const GroundTheory& theory, const BeliefRepresentation& s,
                                                 const Limits& limits = {},
                                                 ExtensionStrategy strategy = ExtensionStrategy::kSolver);

}  // namespace prefrev
