#include "prefrev/background.hpp"

#include <algorithm>

#include "prefrev/error.hpp"

namespace prefrev {

BackgroundAxioms::BackgroundAxioms(const GroundTheory& theory) : names_(theory.names()), distinct_(theory.distinct()) {
  for (const auto& t : theory.term_universe()) add_term(t);
  for (const auto& d : distinct_) {
    for (const auto& t : d) add_term(t);
  }
  for (const auto& m : theory.members()) include(m.body);
}

void BackgroundAxioms::add_term(const Term& t) {
  if (t.sort() == SortKind::kName) {
    if (std::find(names_.begin(), names_.end(), t) == names_.end()) {
      names_.push_back(t);
      std::sort(names_.begin(), names_.end(), CanonicalTermLess{});
    }
    return;
  }
  for (const auto& a : t.args()) add_term(a);
  auto& group = t.sort() == SortKind::kInt || t.is_integer() ? int_terms_ : object_terms_;
  if (std::find(group.begin(), group.end(), t) != group.end()) return;
  group.push_back(t);
  std::sort(group.begin(), group.end(), CanonicalTermLess{});
}

void BackgroundAxioms::include(const Formula& f) {
  f.for_each_term([&](const Term& t) { add_term(t); });
  f.for_each_atom([&](const Formula& a) {
    if (a.kind() != Formula::Kind::kPredicate) return;
    if (std::find(predicate_atoms_.begin(), predicate_atoms_.end(), a) == predicate_atoms_.end()) {
      predicate_atoms_.push_back(a);
    }
  });
}

BackgroundAxioms background_axioms(const GroundTheory& theory) { return BackgroundAxioms(theory); }

namespace {

class Sink {
 public:
  explicit Sink(std::size_t cap) : cap_(cap) {}
  void add(Formula f) {
    if (out_.size() >= cap_) {
      throw Error(ErrorCode::kSizeGuard, "background axioms exceed " + std::to_string(cap_) + " formulas");
    }
    out_.push_back(std::move(f));
  }
  std::vector<Formula> take() { return std::move(out_); }

 private:
  std::size_t cap_;
  std::vector<Formula> out_;
};

using F = Formula;

// Equalities between the non-name arguments; false when a name argument differs.
bool argument_equalities(std::span<const Term> a, std::span<const Term> b, std::vector<Formula>& out) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].sort() == SortKind::kName) {
      if (!(a[i] == b[i])) return false;
    } else if (!(a[i] == b[i])) {
      out.push_back(F::equal(a[i], b[i]));
    }
  }
  return true;
}

void equality_axioms(const std::vector<Term>& group, Sink& sink) {
  for (const auto& a : group) sink.add(F::equal(a, a));
  for (const auto& a : group) {
    for (const auto& b : group) {
      if (a == b) continue;
      sink.add(F::implication(F::equal(a, b), F::equal(b, a)));
      for (const auto& c : group) {
        if (c == a || c == b) continue;
        sink.add(F::implication(F::conjunction({F::equal(a, b), F::equal(b, c)}), F::equal(a, c)));
      }
    }
  }
  for (std::size_t i = 0; i < group.size(); ++i) {
    for (std::size_t j = i + 1; j < group.size(); ++j) {
      const Term& s = group[i];
      const Term& t = group[j];
      if (!s.is_apply() || !t.is_apply() || s.symbol() != t.symbol() || s.arity() != t.arity() || s.arity() == 0) {
        continue;
      }
      std::vector<Formula> eqs;
      if (!argument_equalities(s.args(), t.args(), eqs)) continue;
      sink.add(F::implication(F::conjunction(std::move(eqs)), F::equal(s, t)));
    }
  }
}

}  // namespace

std::vector<Formula> BackgroundAxioms::materialize(std::size_t max_formulas) const {
  Sink sink(max_formulas);

  for (const auto& a : names_) sink.add(F::negation(F::less(a, a)));
  for (const auto& a : names_) {
    for (const auto& b : names_) {
      for (const auto& c : names_) {
        sink.add(F::implication(F::conjunction({F::less(a, b), F::less(b, c)}), F::less(a, c)));
      }
    }
  }

  equality_axioms(object_terms_, sink);
  equality_axioms(int_terms_, sink);

  for (std::size_t i = 0; i < predicate_atoms_.size(); ++i) {
    for (std::size_t j = i + 1; j < predicate_atoms_.size(); ++j) {
      const Formula& p = predicate_atoms_[i];
      const Formula& q = predicate_atoms_[j];
      if (p.symbol() != q.symbol() || p.terms().size() != q.terms().size()) continue;
      std::vector<Formula> eqs;
      if (!argument_equalities(p.terms(), q.terms(), eqs)) continue;
      sink.add(F::implication(F::conjunction(std::move(eqs)), F::equivalence(p, q)));
    }
  }

  // Integer order: strict, total up to equality, compatible with equality, and agreeing with the
  // literals. Between two literals there is only room for as many values as integers fit.
  std::vector<Term> literals, others;
  for (const auto& t : int_terms_) (t.is_integer() ? literals : others).push_back(t);
  std::sort(literals.begin(), literals.end(), [](const Term& a, const Term& b) { return a.value() < b.value(); });
  for (const auto& a : int_terms_) {
    sink.add(F::negation(F::less(a, a)));
    for (const auto& b : int_terms_) {
      if (a == b) continue;
      sink.add(F::disjunction({F::less(a, b), F::less(b, a), F::equal(a, b)}));
      for (const auto& c : int_terms_) {
        if (c == a || c == b) continue;
        sink.add(F::implication(F::conjunction({F::less(a, b), F::less(b, c)}), F::less(a, c)));
      }
      for (const auto& c : int_terms_) {
        for (const auto& d : int_terms_) {
          if (a == c && b == d) continue;
          sink.add(F::implication(F::conjunction({F::equal(a, c), F::equal(b, d)}),
                                  F::equivalence(F::less(a, b), F::less(c, d))));
        }
      }
    }
  }
  for (std::size_t i = 0; i < literals.size(); ++i) {
    for (std::size_t j = i + 1; j < literals.size(); ++j) {
      sink.add(F::less(literals[i], literals[j]));
      sink.add(F::negation(F::less(literals[j], literals[i])));
      sink.add(F::negation(F::equal(literals[i], literals[j])));
    }
  }
  for (std::size_t i = 0; i + 1 < literals.size(); ++i) {
    const std::int64_t room = literals[i + 1].value() - literals[i].value() - 1;
    if (room >= static_cast<std::int64_t>(others.size())) continue;
    // Every room+1 terms strictly between the two literals must contain an equal pair.
    const std::size_t k = static_cast<std::size_t>(room) + 1;
    std::vector<std::size_t> pick(k);
    for (std::size_t m = 0; m < k; ++m) pick[m] = m;
    while (true) {
      std::vector<Formula> between, equal_pairs;
      for (std::size_t m = 0; m < k; ++m) {
        between.push_back(F::less(literals[i], others[pick[m]]));
        between.push_back(F::less(others[pick[m]], literals[i + 1]));
        for (std::size_t n = m + 1; n < k; ++n) equal_pairs.push_back(F::equal(others[pick[m]], others[pick[n]]));
      }
      sink.add(F::implication(F::conjunction(std::move(between)), F::disjunction(std::move(equal_pairs))));
      std::size_t m = k;
      while (m > 0 && pick[m - 1] == others.size() - k + m - 1) --m;
      if (m == 0) break;
      ++pick[m - 1];
      for (std::size_t n = m; n < k; ++n) pick[n] = pick[n - 1] + 1;
    }
  }

  for (const auto& d : distinct_) {
    for (std::size_t i = 0; i < d.size(); ++i) {
      for (std::size_t j = i + 1; j < d.size(); ++j) sink.add(F::negation(F::equal(d[i], d[j])));
    }
  }
  return sink.take();
}

}  // namespace prefrev
