// Terms of the sorted ground language: names, object terms and integer literals.
#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace prefrev {

/// The three sorts of the language. kUnknown only appears before sort inference has run.
enum class SortKind : std::uint8_t { kUnknown, kName, kObject, kInt };

std::string_view sort_kind_name(SortKind kind);

class Term {
 public:
  enum class Kind : std::uint8_t { kVariable, kApply, kInteger };

  Term() = default;

  static Term variable(std::string name);
  static Term apply(std::string head, std::vector<Term> args = {});
  static Term constant(std::string head) { return apply(std::move(head)); }
  static Term integer(std::int64_t value);

  Kind kind() const noexcept { return kind_; }
  bool is_variable() const noexcept { return kind_ == Kind::kVariable; }
  bool is_integer() const noexcept { return kind_ == Kind::kInteger; }
  bool is_apply() const noexcept { return kind_ == Kind::kApply; }

  /// Variable name or function head; empty for integers.
  const std::string& symbol() const noexcept { return symbol_; }
  std::span<const Term> args() const noexcept { return args_; }
  std::size_t arity() const noexcept { return args_.size(); }
  std::int64_t value() const noexcept { return value_; }

  /// Sort annotation set by grounding. Not part of term identity.
  SortKind sort() const noexcept { return sort_; }
  Term with_sort(SortKind sort) const;

  bool is_ground() const;
  std::string to_string() const;

  /// Replaces every occurrence of variable `var` by `value`.
  Term substitute(std::string_view var, const Term& value) const;

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  Kind kind_ = Kind::kApply;
  SortKind sort_ = SortKind::kUnknown;
  std::string symbol_;
  std::vector<Term> args_;
  std::int64_t value_ = 0;
};

/// Compares rendered strings treating digit runs numerically, so d2 sorts before d10.
bool natural_less(std::string_view a, std::string_view b);

/// Canonical order on terms used for every enumeration: natural order of the rendered text.
struct CanonicalTermLess {
  bool operator()(const Term& a, const Term& b) const;
};

}  // namespace prefrev
