#include "prefrev/encoder.hpp"

#include <algorithm>
#include <deque>

#include "prefrev/error.hpp"

namespace prefrev {

using sat::Lit;

namespace {

constexpr std::size_t kMaxTheoryClausesPerRound = 256;

std::string predicate_key(const Formula& atom) { return atom.symbol() + "/" + std::to_string(atom.terms().size()); }

}  // namespace

Encoder::Encoder(const BackgroundAxioms& axioms, std::uint64_t max_decisions) : solver_(max_decisions) {
  truth_ = Lit(solver_.new_var(), false);
  solver_.add_clause({truth_});
  solver_.set_final_check(this);
  for (const auto& n : axioms.names()) name_index(n);
  for (const auto& t : axioms.object_terms()) register_term(t);
  for (const auto& t : axioms.int_terms()) register_term(t);
  for (const auto& d : axioms.distinct()) {
    for (std::size_t i = 0; i < d.size(); ++i) {
      for (std::size_t j = i + 1; j < d.size(); ++j) solver_.add_clause({~equality(d[i], d[j])});
    }
  }
}

bool Encoder::solve(std::span<const Lit> assumptions) { return solver_.solve(assumptions); }

std::size_t Encoder::name_index(const Term& name) {
  const std::string key = name.to_string();
  auto [it, inserted] = name_ids_.try_emplace(key, names_.size());
  if (inserted) {
    names_.push_back(name);
    preference_out_.emplace_back();
  }
  return it->second;
}

Lit Encoder::preference(const Term& a, const Term& b) {
  const std::size_t ia = name_index(a);
  const std::size_t ib = name_index(b);
  if (ia == ib) return ~truth_;
  auto [it, inserted] = preference_out_[ia].try_emplace(ib, truth_);
  if (inserted) it->second = fresh();
  return it->second;
}

std::vector<std::pair<Term, Term>> Encoder::true_preferences() const {
  std::vector<std::pair<Term, Term>> out;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    for (const auto& [j, lit] : preference_out_[i]) {
      if (solver_.value(lit)) out.emplace_back(names_[i], names_[j]);
    }
  }
  return out;
}

bool Encoder::argument_equalities(std::span<const Term> a, std::span<const Term> b, std::vector<Lit>& out) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    if (a[i].sort() == SortKind::kName || b[i].sort() == SortKind::kName) return false;
    const Lit eq = equality(a[i], b[i]);
    if (eq == ~truth_) return false;
    if (eq != truth_) out.push_back(eq);
  }
  return true;
}

void Encoder::register_term(const Term& t) {
  if (t.sort() == SortKind::kName || name_ids_.contains(t.to_string())) return;
  const std::string key = t.to_string();
  if (term_ids_.contains(key)) return;
  for (const auto& a : t.args()) register_term(a);

  const std::size_t id = terms_.size();
  const bool is_int = t.sort() == SortKind::kInt || t.is_integer();
  terms_.push_back(is_int && t.sort() != SortKind::kInt ? t.with_sort(SortKind::kInt) : t);
  term_ids_[key] = id;
  auto& group = is_int ? int_group_ : object_group_;

  for (std::size_t u : group) {
    const bool constant = terms_[u].is_integer() && t.is_integer();
    equalities_[{u, id}] = constant ? ~truth_ : fresh();
  }
  auto eq = [&](std::size_t a, std::size_t b) { return equalities_.at({std::min(a, b), std::max(a, b)}); };

  for (std::size_t i = 0; i < group.size(); ++i) {
    for (std::size_t j = i + 1; j < group.size(); ++j) {
      const Lit uv = eq(group[i], group[j]), ut = eq(group[i], id), vt = eq(group[j], id);
      solver_.add_clause({~uv, ~ut, vt});
      solver_.add_clause({~uv, ~vt, ut});
      solver_.add_clause({~ut, ~vt, uv});
    }
  }
  if (t.is_apply() && t.arity() > 0) {
    for (std::size_t u : group) {
      const Term& other = terms_[u];
      if (!other.is_apply() || other.symbol() != t.symbol() || other.arity() != t.arity()) continue;
      std::vector<Lit> antecedent;
      if (!argument_equalities(other.args(), t.args(), antecedent)) continue;
      std::vector<Lit> clause;
      for (Lit l : antecedent) clause.push_back(~l);
      clause.push_back(eq(u, id));
      solver_.add_clause(std::move(clause));
    }
  }

  if (is_int) {
    for (std::size_t u : group) {
      if (terms_[u].is_integer() && t.is_integer()) {
        const bool less = terms_[u].value() < t.value();
        int_less_[{u, id}] = less ? truth_ : ~truth_;
        int_less_[{id, u}] = less ? ~truth_ : truth_;
      } else {
        int_less_[{u, id}] = fresh();
        int_less_[{id, u}] = fresh();
      }
      const Lit ut = int_less_.at({u, id}), tu = int_less_.at({id, u}), e = eq(u, id);
      solver_.add_clause({ut, tu, e});
      solver_.add_clause({~ut, ~tu});
      solver_.add_clause({~e, ~ut});
      solver_.add_clause({~e, ~tu});
    }
    for (std::size_t u : group) {
      for (std::size_t v : group) {
        if (u == v) continue;
        const Lit uv = int_less_.at({u, v});
        const Lit ut = int_less_.at({u, id}), tu = int_less_.at({id, u});
        const Lit vt = int_less_.at({v, id}), tv = int_less_.at({id, v});
        solver_.add_clause({~uv, ~vt, ut});
        solver_.add_clause({~ut, ~tv, uv});
        solver_.add_clause({~tu, ~uv, tv});
      }
    }
  }
  group.push_back(id);
}

Lit Encoder::equality(const Term& a, const Term& b) {
  if (a == b) return truth_;
  register_term(a);
  register_term(b);
  auto ia = term_ids_.find(a.to_string());
  auto ib = term_ids_.find(b.to_string());
  if (ia == term_ids_.end() || ib == term_ids_.end()) return ~truth_;  // names: syntactically different
  const auto key = std::make_pair(std::min(ia->second, ib->second), std::max(ia->second, ib->second));
  auto it = equalities_.find(key);
  return it == equalities_.end() ? ~truth_ : it->second;  // different sort groups never coincide
}

Lit Encoder::int_less(const Term& a, const Term& b) {
  if (a == b) return ~truth_;
  register_term(a);
  register_term(b);
  auto it = int_less_.find({term_ids_.at(a.to_string()), term_ids_.at(b.to_string())});
  if (it == int_less_.end()) throw Error(ErrorCode::kSort, "'<' between non-integer terms " + a.to_string() + ", " + b.to_string());
  return it->second;
}

Lit Encoder::encode_atom(const Formula& atom) {
  using K = Formula::Kind;
  const Term* lhs = atom.terms().empty() ? nullptr : &atom.terms()[0];
  auto is_name = [&](const Term& t) { return t.sort() == SortKind::kName || name_ids_.contains(t.to_string()); };
  switch (atom.kind()) {
    case K::kEqual:
      if (is_name(*lhs) || is_name(atom.terms()[1])) return *lhs == atom.terms()[1] ? truth_ : ~truth_;
      return equality(*lhs, atom.terms()[1]);
    case K::kLess:
      if (is_name(*lhs) || is_name(atom.terms()[1])) return preference(*lhs, atom.terms()[1]);
      return int_less(*lhs, atom.terms()[1]);
    default:
      break;
  }
  const std::string key = atom.to_string();
  if (auto it = atoms_.find(key); it != atoms_.end()) return it->second;
  for (const auto& t : atom.terms()) register_term(t);
  const Lit p = fresh();
  atoms_[key] = p;
  auto& same = predicate_atoms_[predicate_key(atom)];
  for (const auto& other : same) {
    std::vector<Lit> antecedent;
    if (!argument_equalities(other.terms(), atom.terms(), antecedent)) continue;
    const Lit q = atoms_.at(other.to_string());
    std::vector<Lit> forward, backward;
    for (Lit l : antecedent) {
      forward.push_back(~l);
      backward.push_back(~l);
    }
    forward.push_back(~q);
    forward.push_back(p);
    backward.push_back(q);
    backward.push_back(~p);
    solver_.add_clause(std::move(forward));
    solver_.add_clause(std::move(backward));
  }
  same.push_back(atom);
  return p;
}

Lit Encoder::encode(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kTrue: return truth_;
    case K::kFalse: return ~truth_;
    case K::kPredicate:
    case K::kEqual:
    case K::kLess: return encode_atom(f);
    case K::kNot: return ~encode(f.children()[0]);
    case K::kForall:
    case K::kExists: throw Error(ErrorCode::kInternal, "cannot encode a quantified formula: " + f.to_string());
    default: break;
  }
  if (auto it = cache_.find(f.id()); it != cache_.end()) return it->second.second;

  std::vector<Lit> kids;
  for (const auto& c : f.children()) kids.push_back(encode(c));
  const Lit x = fresh();
  switch (f.kind()) {
    case K::kAnd: {
      std::vector<Lit> back{x};
      for (Lit k : kids) {
        solver_.add_clause({~x, k});
        back.push_back(~k);
      }
      solver_.add_clause(std::move(back));
      break;
    }
    case K::kOr: {
      std::vector<Lit> fwd{~x};
      for (Lit k : kids) {
        solver_.add_clause({x, ~k});
        fwd.push_back(k);
      }
      solver_.add_clause(std::move(fwd));
      break;
    }
    case K::kImplies:
      solver_.add_clause({~x, ~kids[0], kids[1]});
      solver_.add_clause({x, kids[0]});
      solver_.add_clause({x, ~kids[1]});
      break;
    case K::kIff:
      solver_.add_clause({~x, ~kids[0], kids[1]});
      solver_.add_clause({~x, kids[0], ~kids[1]});
      solver_.add_clause({x, kids[0], kids[1]});
      solver_.add_clause({x, ~kids[0], ~kids[1]});
      break;
    default: break;
  }
  cache_.emplace(f.id(), std::make_pair(f, x));
  return x;
}

void Encoder::assert_formula(const Formula& f) {
  if (f.kind() == Formula::Kind::kAnd) {
    for (const auto& c : f.children()) assert_formula(c);
    return;
  }
  if (f.kind() == Formula::Kind::kOr) {
    std::vector<Lit> clause;
    for (const auto& c : f.children()) clause.push_back(encode(c));
    solver_.add_clause(std::move(clause));
    return;
  }
  solver_.add_clause({encode(f)});
}

bool Encoder::holds(const sat::Solver& solver, Lit l) const {
  const int v = solver.current(l.var());
  return l.negative() ? v < 0 : v > 0;
}

void Encoder::check(const sat::Solver& solver, std::vector<std::vector<Lit>>& violated) {
  check_preferences(solver, violated);
  if (violated.empty()) check_integer_gaps(solver, violated);
}

void Encoder::check_preferences(const sat::Solver& solver, std::vector<std::vector<Lit>>& violated) {
  const std::size_t n = names_.size();
  std::vector<std::vector<std::pair<std::size_t, Lit>>> out(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (const auto& [b, lit] : preference_out_[a]) {
      if (holds(solver, lit)) out[a].emplace_back(b, lit);
    }
  }
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent(n);
  std::vector<Lit> via(n);
  auto path_to = [&](std::size_t s, std::size_t t, std::vector<Lit>& clause) {
    for (std::size_t x = t; x != s; x = parent[x]) clause.push_back(~via[x]);
  };
  for (std::size_t s = 0; s < n && violated.size() < kMaxTheoryClausesPerRound; ++s) {
    if (out[s].empty()) continue;
    std::fill(parent.begin(), parent.end(), kNone);
    std::deque<std::size_t> queue{s};
    bool cycle = false;
    while (!queue.empty() && !cycle) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (const auto& [t, lit] : out[u]) {
        if (t == s) {
          std::vector<Lit> clause{~lit};
          path_to(s, u, clause);
          violated.push_back(std::move(clause));
          cycle = true;
          break;
        }
        if (parent[t] != kNone) continue;
        parent[t] = u;
        via[t] = lit;
        queue.push_back(t);
        if (u == s) continue;
        auto direct = preference_out_[s].find(t);
        if (direct != preference_out_[s].end() && !holds(solver, direct->second)) {
          std::vector<Lit> clause{direct->second};
          path_to(s, t, clause);
          violated.push_back(std::move(clause));
        }
      }
    }
  }
}

void Encoder::check_integer_gaps(const sat::Solver& solver, std::vector<std::vector<Lit>>& violated) {
  std::vector<std::size_t> literals, others;
  for (std::size_t id : int_group_) (terms_[id].is_integer() ? literals : others).push_back(id);
  if (literals.size() < 2 || others.empty()) return;
  std::sort(literals.begin(), literals.end(),
            [&](std::size_t a, std::size_t b) { return terms_[a].value() < terms_[b].value(); });
  auto eq = [&](std::size_t a, std::size_t b) { return equalities_.at({std::min(a, b), std::max(a, b)}); };
  for (std::size_t i = 0; i + 1 < literals.size(); ++i) {
    const std::size_t lo = literals[i], hi = literals[i + 1];
    const std::int64_t room = terms_[hi].value() - terms_[lo].value() - 1;
    if (room >= static_cast<std::int64_t>(others.size())) continue;
    std::vector<std::size_t> representatives;
    for (std::size_t x : others) {
      if (!holds(solver, int_less_.at({lo, x})) || !holds(solver, int_less_.at({x, hi}))) continue;
      const bool fresh_class = std::none_of(representatives.begin(), representatives.end(),
                                            [&](std::size_t r) { return holds(solver, eq(r, x)); });
      if (fresh_class) representatives.push_back(x);
    }
    if (static_cast<std::int64_t>(representatives.size()) <= room) continue;
    representatives.resize(static_cast<std::size_t>(room) + 1);
    std::vector<Lit> clause;
    for (std::size_t a = 0; a < representatives.size(); ++a) {
      clause.push_back(~int_less_.at({lo, representatives[a]}));
      clause.push_back(~int_less_.at({representatives[a], hi}));
      for (std::size_t b = a + 1; b < representatives.size(); ++b) clause.push_back(eq(representatives[a], representatives[b]));
    }
    violated.push_back(std::move(clause));
  }
}

}  // namespace prefrev
