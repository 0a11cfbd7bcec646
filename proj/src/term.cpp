#include "prefrev/term.hpp"

#include <algorithm>
#include <cctype>

namespace prefrev {

std::string_view sort_kind_name(SortKind kind) {
  switch (kind) {
    case SortKind::kUnknown: return "unknown";
    case SortKind::kName: return "name";
    case SortKind::kObject: return "object";
    case SortKind::kInt: return "int";
  }
  return "unknown";
}

Term Term::variable(std::string name) {
  Term t;
  t.kind_ = Kind::kVariable;
  t.symbol_ = std::move(name);
  return t;
}

Term Term::apply(std::string head, std::vector<Term> args) {
  Term t;
  t.kind_ = Kind::kApply;
  t.symbol_ = std::move(head);
  t.args_ = std::move(args);
  return t;
}

Term Term::integer(std::int64_t value) {
  Term t;
  t.kind_ = Kind::kInteger;
  t.value_ = value;
  t.sort_ = SortKind::kInt;
  return t;
}

Term Term::with_sort(SortKind sort) const {
  Term t = *this;
  t.sort_ = sort;
  return t;
}

bool Term::is_ground() const {
  if (kind_ == Kind::kVariable) return false;
  return std::all_of(args_.begin(), args_.end(), [](const Term& a) { return a.is_ground(); });
}

std::string Term::to_string() const {
  switch (kind_) {
    case Kind::kInteger: return std::to_string(value_);
    case Kind::kVariable: return symbol_;
    case Kind::kApply: break;
  }
  if (args_.empty()) return symbol_;
  std::string out = symbol_ + "(";
  for (std::size_t i = 0; i < args_.size(); ++i) {
    if (i > 0) out += ", ";
    out += args_[i].to_string();
  }
  out += ")";
  return out;
}

Term Term::substitute(std::string_view var, const Term& value) const {
  if (kind_ == Kind::kVariable) return symbol_ == var ? value : *this;
  if (args_.empty()) return *this;
  Term t = *this;
  for (auto& a : t.args_) a = a.substitute(var, value);
  return t;
}

bool operator==(const Term& a, const Term& b) {
  return a.kind_ == b.kind_ && a.value_ == b.value_ && a.symbol_ == b.symbol_ && a.args_ == b.args_;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (auto c = a.value_ <=> b.value_; c != 0) return c;
  if (auto c = a.symbol_.compare(b.symbol_); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  return std::lexicographical_compare_three_way(a.args_.begin(), a.args_.end(), b.args_.begin(), b.args_.end());
}

bool natural_less(std::string_view a, std::string_view b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
    const bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
    if (da && db) {
      std::size_t ie = i, je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      std::string_view na = a.substr(i, ie - i), nb = b.substr(j, je - j);
      while (na.size() > 1 && na.front() == '0') na.remove_prefix(1);
      while (nb.size() > 1 && nb.front() == '0') nb.remove_prefix(1);
      if (na.size() != nb.size()) return na.size() < nb.size();
      if (na != nb) return na < nb;
      i = ie;
      j = je;
      continue;
    }
    if (a[i] != b[j]) return a[i] < b[j];
    ++i;
    ++j;
  }
  if (a.size() - i != b.size() - j) return a.size() - i < b.size() - j;
  return a < b;
}

bool CanonicalTermLess::operator()(const Term& a, const Term& b) const {
  const std::string sa = a.to_string(), sb = b.to_string();
  if (sa != sb) return natural_less(sa, sb);
  return a < b;
}

}  // namespace prefrev
