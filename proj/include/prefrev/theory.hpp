// Theories: source-level specifications, named formulas and grounding.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prefrev/error.hpp"
#include "prefrev/formula.hpp"
#include "prefrev/term.hpp"

namespace prefrev {

enum class Role : std::uint8_t { kPremise, kConstraint };

std::string_view role_name(Role role);

// ---------------------------------------------------------------------------
// Source level

struct SortDecl {
  std::string id;
  std::vector<Term> members;
  SourceLocation where;
};

struct DistinctDecl {
  std::vector<Term> terms;
  SourceLocation where;
};

struct SchemaParam {
  std::string var;
  std::string sort;
};

/// One `premise`, `constraint` or `schema` declaration.
struct TheoryItem {
  enum class Kind : std::uint8_t { kPremise, kConstraint, kSchema };

  Kind kind = Kind::kPremise;
  Term name;                         // for schemas: the bare head symbol
  std::vector<SchemaParam> params;   // schemas only
  Formula body;
  SourceLocation where;

  friend bool operator==(const TheoryItem& a, const TheoryItem& b) {
    return a.kind == b.kind && a.name == b.name && a.body == b.body && params_equal(a, b);
  }

 private:
  static bool params_equal(const TheoryItem& a, const TheoryItem& b) {
    if (a.params.size() != b.params.size()) return false;
    for (std::size_t i = 0; i < a.params.size(); ++i) {
      if (a.params[i].var != b.params[i].var || a.params[i].sort != b.params[i].sort) return false;
    }
    return true;
  }
};

/// A parsed theory file before grounding.
struct TheorySpec {
  std::vector<SortDecl> sorts;
  std::vector<DistinctDecl> distinct;
  std::vector<TheoryItem> items;

  friend bool operator==(const TheorySpec& a, const TheorySpec& b);
};

// ---------------------------------------------------------------------------
// Ground level

struct NamedFormula {
  Term name;
  Formula body;
  Role role = Role::kPremise;
  /// Head symbol of the schema this formula instantiates, if any.
  std::optional<std::string> schema;

  friend bool operator==(const NamedFormula& a, const NamedFormula& b) {
    return a.name == b.name && a.body == b.body && a.role == b.role;
  }
};

struct ResolvedSort {
  SortKind kind = SortKind::kObject;
  std::vector<Term> members;
};

/// Resolved sorts of every non-logical symbol, keyed by (symbol, arity).
struct Signature {
  using Key = std::pair<std::string, std::size_t>;
  std::map<Key, SortKind> function_result;
  std::map<Key, std::vector<SortKind>> function_args;
  std::map<Key, std::vector<SortKind>> predicate_args;
  std::map<Key, std::vector<SortKind>> name_heads;

  bool is_name_head(const std::string& symbol, std::size_t arity) const {
    return name_heads.contains({symbol, arity});
  }
  /// Sort of a ground term under this signature (kUnknown for symbols it has never seen).
  SortKind sort_of(const Term& t) const;
  /// Copy of `t` with every subterm annotated.
  Term annotate(const Term& t) const;
};

class GroundTheory {
 public:
  GroundTheory() = default;

  const std::vector<NamedFormula>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  const NamedFormula& member(std::size_t i) const { return members_.at(i); }

  /// Member names in canonical order.
  const std::vector<Term>& names() const noexcept { return canonical_names_; }
  std::optional<std::size_t> index_of(const Term& name) const;
  bool has_constraints() const;

  const std::map<std::string, ResolvedSort>& sorts() const noexcept { return sorts_; }
  const std::vector<std::vector<Term>>& distinct() const noexcept { return distinct_; }
  const Signature& signature() const noexcept { return signature_; }
  /// The specification this theory was grounded from.
  const TheorySpec& spec() const noexcept { return spec_; }

  /// Every ground term occurring in a member (including subterms and names), canonical order.
  std::vector<Term> term_universe() const;

  /// The same theory written back as a specification of ground premises and constraints.
  TheorySpec to_spec() const;

  friend bool operator==(const GroundTheory& a, const GroundTheory& b) {
    return a.members_ == b.members_ && a.distinct_ == b.distinct_;
  }

 private:
  friend GroundTheory ground_theory(const TheorySpec& spec);

  TheorySpec spec_;
  std::vector<NamedFormula> members_;
  std::vector<Term> canonical_names_;
  std::map<std::string, std::size_t> index_;
  std::map<std::string, ResolvedSort> sorts_;
  std::vector<std::vector<Term>> distinct_;
  Signature signature_;
};

/// Expands schemata and quantifiers over their finite sorts and checks sorts and name injectivity.
/// Throws Error with kSort, kUnknownSort, kUnknownName or kDuplicateName.
GroundTheory ground_theory(const TheorySpec& spec);

/// Grounds a standalone formula (a query or a revision) against a theory's sorts and signature.
/// Symbols the theory has not seen are sorted by inference over the formula itself.
Formula ground_formula(const GroundTheory& theory, const Formula& formula);

/// The name d_{j+1} a revision receives, j being the number of non-schema members; the smallest
/// index above j whose symbol occurs nowhere in the theory.
Term fresh_name(const GroundTheory& theory);

/// Same rule for contractions, over the c_j sequence and the number of constraints.
Term fresh_constraint_name(const GroundTheory& theory);

}  // namespace prefrev
