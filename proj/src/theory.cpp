#include "prefrev/theory.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace prefrev {

std::string_view role_name(Role role) { return role == Role::kPremise ? "premise" : "constraint"; }

bool operator==(const TheorySpec& a, const TheorySpec& b) {
  if (a.sorts.size() != b.sorts.size() || a.distinct.size() != b.distinct.size()) return false;
  for (std::size_t i = 0; i < a.sorts.size(); ++i) {
    if (a.sorts[i].id != b.sorts[i].id || a.sorts[i].members != b.sorts[i].members) return false;
  }
  for (std::size_t i = 0; i < a.distinct.size(); ++i) {
    if (a.distinct[i].terms != b.distinct[i].terms) return false;
  }
  return a.items == b.items;
}

SortKind Signature::sort_of(const Term& t) const {
  if (t.is_integer()) return SortKind::kInt;
  if (t.is_variable()) return SortKind::kUnknown;
  const Key key{t.symbol(), t.arity()};
  if (name_heads.contains(key)) return SortKind::kName;
  auto it = function_result.find(key);
  return it == function_result.end() ? SortKind::kUnknown : it->second;
}

Term Signature::annotate(const Term& t) const {
  if (!t.is_apply()) return t.with_sort(sort_of(t));
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const auto& a : t.args()) args.push_back(annotate(a));
  SortKind kind = sort_of(t);
  if (kind == SortKind::kUnknown) kind = SortKind::kObject;
  return Term::apply(t.symbol(), std::move(args)).with_sort(kind);
}

namespace {

using Key = Signature::Key;
constexpr const char* kBuiltinName = "name";
constexpr const char* kBuiltinInt = "int";

std::string describe(SortKind kind) { return std::string(sort_kind_name(kind)); }

// Union-find over sort slots. Every function result, function argument position and predicate
// argument position owns a slot; occurrences unify slots.
class SortInference {
 public:
  SortInference(const std::map<std::string, ResolvedSort>& sorts, const std::map<Key, std::vector<SortKind>>& name_heads)
      : sorts_(sorts) {
    for (const auto& [key, kinds] : name_heads) {
      auto& slots = name_args_[key];
      for (SortKind k : kinds) slots.push_back(new_slot(k));
    }
  }

  void seed(const Signature& sig) {
    for (const auto& [key, kind] : sig.function_result) fn_result_[key] = new_slot(kind);
    for (const auto& [key, kinds] : sig.function_args) {
      auto& slots = fn_args_[key];
      for (SortKind k : kinds) slots.push_back(new_slot(k));
    }
    for (const auto& [key, kinds] : sig.predicate_args) {
      auto& slots = pred_args_[key];
      for (SortKind k : kinds) slots.push_back(new_slot(k));
    }
  }

  using Scope = std::vector<std::pair<std::string, SortKind>>;

  void visit(const Formula& f, Scope& scope, SourceLocation where) {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::kTrue:
      case K::kFalse:
        return;
      case K::kPredicate: {
        auto& slots = arg_slots(pred_args_, {f.symbol(), f.terms().size()});
        for (std::size_t i = 0; i < f.terms().size(); ++i) {
          unify(slots[i], term_slot(f.terms()[i], scope, where), f, where);
        }
        return;
      }
      case K::kEqual:
        unify(term_slot(f.terms()[0], scope, where), term_slot(f.terms()[1], scope, where), f, where);
        return;
      case K::kLess: {
        const int a = term_slot(f.terms()[0], scope, where);
        unify(a, term_slot(f.terms()[1], scope, where), f, where);
        less_checks_.push_back({a, f.to_string(), where});
        return;
      }
      case K::kForall:
      case K::kExists: {
        scope.emplace_back(f.symbol(), binder_kind(f.sort_id(), where));
        visit(f.children()[0], scope, where);
        scope.pop_back();
        return;
      }
      default:
        for (const auto& c : f.children()) visit(c, scope, where);
    }
  }

  void constrain(const Term& t, SortKind kind, SourceLocation where, const std::string& context) {
    Scope empty;
    const int s = term_slot(t, empty, where);
    if (!unify_kind(s, kind)) {
      throw Error(ErrorCode::kSort,
                  "sort mismatch in " + context + ": " + t.to_string() + " cannot be " + describe(kind), where);
    }
  }

  void unify_terms(const Term& a, const Term& b, SourceLocation where, const std::string& context) {
    Scope empty;
    if (!merge(term_slot(a, empty, where), term_slot(b, empty, where))) {
      throw Error(ErrorCode::kSort, "sort mismatch in " + context + " between " + a.to_string() + " and " + b.to_string(),
                  where);
    }
  }

  SortKind binder_kind(const std::string& sort, SourceLocation where) const {
    if (sort == kBuiltinInt) throw Error(ErrorCode::kSort, "cannot quantify over the infinite sort int", where);
    auto it = sorts_.find(sort);
    if (it == sorts_.end()) throw Error(ErrorCode::kUnknownSort, "undeclared sort '" + sort + "'", where);
    return it->second.kind;
  }

  Signature result() {
    for (const auto& check : less_checks_) {
      const SortKind k = slots_[find(check.slot)].kind;
      if (k != SortKind::kName && k != SortKind::kInt) {
        throw Error(ErrorCode::kSort,
                    "'<' needs two names or two integers, got " + describe(k == SortKind::kUnknown ? SortKind::kObject : k) +
                        " terms in " + check.text,
                    check.where);
      }
    }
    Signature sig;
    auto resolve = [&](int slot) {
      const SortKind k = slots_[find(slot)].kind;
      return k == SortKind::kUnknown ? SortKind::kObject : k;
    };
    auto resolve_all = [&](const std::vector<int>& slots) {
      std::vector<SortKind> out;
      for (int s : slots) out.push_back(resolve(s));
      return out;
    };
    for (const auto& [key, slot] : fn_result_) sig.function_result[key] = resolve(slot);
    for (const auto& [key, slots] : fn_args_) sig.function_args[key] = resolve_all(slots);
    for (const auto& [key, slots] : pred_args_) sig.predicate_args[key] = resolve_all(slots);
    for (const auto& [key, slots] : name_args_) sig.name_heads[key] = resolve_all(slots);
    return sig;
  }

 private:
  struct Slot {
    int parent;
    SortKind kind;
  };
  struct LessCheck {
    int slot;
    std::string text;
    SourceLocation where;
  };

  int new_slot(SortKind kind = SortKind::kUnknown) {
    slots_.push_back({static_cast<int>(slots_.size()), kind});
    return static_cast<int>(slots_.size()) - 1;
  }

  int find(int s) {
    while (slots_[s].parent != s) {
      slots_[s].parent = slots_[slots_[s].parent].parent;
      s = slots_[s].parent;
    }
    return s;
  }

  bool unify_kind(int s, SortKind kind) {
    const int r = find(s);
    if (slots_[r].kind == SortKind::kUnknown) {
      slots_[r].kind = kind;
      return true;
    }
    return slots_[r].kind == kind;
  }

  bool merge(int a, int b) {
    const int ra = find(a), rb = find(b);
    if (ra == rb) return true;
    const SortKind ka = slots_[ra].kind, kb = slots_[rb].kind;
    if (ka != SortKind::kUnknown && kb != SortKind::kUnknown && ka != kb) return false;
    slots_[rb].parent = ra;
    if (ka == SortKind::kUnknown) slots_[ra].kind = kb;
    return true;
  }

  void unify(int a, int b, const Formula& f, SourceLocation where) {
    if (!merge(a, b)) {
      throw Error(ErrorCode::kSort,
                  "sort mismatch in " + f.to_string() + ": " + describe(slots_[find(a)].kind) + " vs " +
                      describe(slots_[find(b)].kind),
                  where);
    }
  }

  std::vector<int>& arg_slots(std::map<Key, std::vector<int>>& table, const Key& key) {
    auto& slots = table[key];
    while (slots.size() < key.second) slots.push_back(new_slot());
    return slots;
  }

  int term_slot(const Term& t, const Scope& scope, SourceLocation where) {
    if (t.is_integer()) return new_slot(SortKind::kInt);
    if (t.is_variable()) {
      for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
        if (it->first == t.symbol()) return new_slot(it->second);
      }
      throw Error(ErrorCode::kSyntax, "unbound variable '" + t.symbol() + "'", where);
    }
    const Key key{t.symbol(), t.arity()};
    if (auto it = name_args_.find(key); it != name_args_.end()) {
      for (std::size_t i = 0; i < t.arity(); ++i) {
        const int arg = term_slot(t.args()[i], scope, where);
        if (!merge(it->second[i], arg)) {
          throw Error(ErrorCode::kSort,
                      "improper name " + t.to_string() + ": argument " + t.args()[i].to_string() + " has the wrong sort",
                      where);
        }
      }
      return new_slot(SortKind::kName);
    }
    auto& args = arg_slots(fn_args_, key);
    for (std::size_t i = 0; i < t.arity(); ++i) {
      const int arg = term_slot(t.args()[i], scope, where);
      if (!merge(args[i], arg)) {
        throw Error(ErrorCode::kSort,
                    "sort mismatch: argument " + std::to_string(i + 1) + " of " + t.to_string() + " is " +
                        describe(slots_[find(arg)].kind) + " but " + describe(slots_[find(args[i])].kind) +
                        " elsewhere",
                    where);
      }
    }
    auto [it, inserted] = fn_result_.try_emplace(key, 0);
    if (inserted) it->second = new_slot();
    return it->second;
  }

  const std::map<std::string, ResolvedSort>& sorts_;
  std::vector<Slot> slots_;
  std::map<Key, int> fn_result_;
  std::map<Key, std::vector<int>> fn_args_;
  std::map<Key, std::vector<int>> pred_args_;
  std::map<Key, std::vector<int>> name_args_;
  std::vector<LessCheck> less_checks_;
};

Formula expand_quantifiers(const Formula& f, const std::map<std::string, ResolvedSort>& sorts, SourceLocation where) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kForall:
    case K::kExists: {
      auto it = sorts.find(f.sort_id());
      if (it == sorts.end()) throw Error(ErrorCode::kUnknownSort, "undeclared sort '" + f.sort_id() + "'", where);
      if (it->second.members.empty()) {
        throw Error(ErrorCode::kSort, "quantifier over empty sort '" + f.sort_id() + "'", where);
      }
      std::vector<Formula> parts;
      parts.reserve(it->second.members.size());
      for (const auto& m : it->second.members) {
        parts.push_back(expand_quantifiers(f.children()[0].substitute(f.symbol(), m), sorts, where));
      }
      return f.kind() == K::kForall ? Formula::conjunction(std::move(parts)) : Formula::disjunction(std::move(parts));
    }
    case K::kNot:
      return Formula::negation(expand_quantifiers(f.children()[0], sorts, where));
    case K::kAnd:
    case K::kOr: {
      std::vector<Formula> parts;
      for (const auto& c : f.children()) parts.push_back(expand_quantifiers(c, sorts, where));
      return f.kind() == K::kAnd ? Formula::conjunction(std::move(parts)) : Formula::disjunction(std::move(parts));
    }
    case K::kImplies:
      return Formula::implication(expand_quantifiers(f.children()[0], sorts, where),
                                  expand_quantifiers(f.children()[1], sorts, where));
    case K::kIff:
      return Formula::equivalence(expand_quantifiers(f.children()[0], sorts, where),
                                  expand_quantifiers(f.children()[1], sorts, where));
    default:
      return f;
  }
}

// Annotates sorts, evaluates equality between names, and rejects name terms that name no member.
Formula finish_ground(const Formula& f, const Signature& sig, const std::set<Term>& names, SourceLocation where) {
  std::function<void(const Term&)> check = [&](const Term& t) {
    if (t.sort() == SortKind::kName && !names.contains(t)) {
      throw Error(ErrorCode::kUnknownName, "unknown name " + t.to_string(), where);
    }
    for (const auto& a : t.args()) check(a);
  };
  return f.map_atoms([&](const Formula& atom) {
    std::vector<Term> terms;
    for (const auto& t : atom.terms()) {
      terms.push_back(sig.annotate(t));
      check(terms.back());
    }
    switch (atom.kind()) {
      case Formula::Kind::kPredicate: return Formula::predicate(atom.symbol(), std::move(terms));
      case Formula::Kind::kEqual:
        if (terms[0].sort() == SortKind::kName) return terms[0] == terms[1] ? Formula::top() : Formula::bottom();
        return Formula::equal(std::move(terms[0]), std::move(terms[1]));
      default: return Formula::less(std::move(terms[0]), std::move(terms[1]));
    }
  });
}

SortKind classify_members(const SortDecl& decl, const std::map<Key, std::vector<SortKind>>& name_heads) {
  bool any_name = false, any_int = false, any_object = false;
  for (const auto& m : decl.members) {
    if (!m.is_ground()) throw Error(ErrorCode::kSyntax, "sort members must be ground terms", decl.where);
    if (m.is_integer()) {
      any_int = true;
    } else if (name_heads.contains({m.symbol(), m.arity()})) {
      any_name = true;
    } else {
      any_object = true;
    }
  }
  if (static_cast<int>(any_name) + static_cast<int>(any_int) + static_cast<int>(any_object) > 1) {
    throw Error(ErrorCode::kSort, "sort '" + decl.id + "' mixes names, integers and object terms", decl.where);
  }
  if (any_name) return SortKind::kName;
  if (any_int) return SortKind::kInt;
  return SortKind::kObject;
}

void collect_symbols(const Term& t, std::set<std::string>& out) {
  if (t.is_apply()) out.insert(t.symbol());
  for (const auto& a : t.args()) collect_symbols(a, out);
}

Term next_free(const GroundTheory& theory, const std::string& prefix, std::size_t count) {
  std::set<std::string> used;
  for (const auto& m : theory.members()) {
    collect_symbols(m.name, used);
    if (m.schema) used.insert(*m.schema);
    m.body.for_each_term([&](const Term& t) { collect_symbols(t, used); });
    m.body.for_each_atom([&](const Formula& a) {
      if (a.kind() == Formula::Kind::kPredicate) used.insert(a.symbol());
    });
  }
  for (const auto& item : theory.spec().items) {
    if (item.kind == TheoryItem::Kind::kSchema) used.insert(item.name.symbol());
  }
  for (std::size_t j = count + 1;; ++j) {
    std::string candidate = prefix + std::to_string(j);
    if (!used.contains(candidate)) return Term::constant(candidate).with_sort(SortKind::kName);
  }
}

}  // namespace

std::optional<std::size_t> GroundTheory::index_of(const Term& name) const {
  auto it = index_.find(name.to_string());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool GroundTheory::has_constraints() const {
  return std::any_of(members_.begin(), members_.end(), [](const NamedFormula& m) { return m.role == Role::kConstraint; });
}

std::vector<Term> GroundTheory::term_universe() const {
  std::set<Term> seen;
  std::function<void(const Term&)> add = [&](const Term& t) {
    seen.insert(t);
    for (const auto& a : t.args()) add(a);
  };
  for (const auto& m : members_) {
    add(m.name);
    m.body.for_each_term(add);
  }
  std::vector<Term> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), CanonicalTermLess{});
  return out;
}

TheorySpec GroundTheory::to_spec() const {
  TheorySpec out;
  out.sorts = spec_.sorts;
  out.distinct = spec_.distinct;
  for (const auto& m : members_) {
    TheoryItem item;
    item.kind = m.role == Role::kPremise ? TheoryItem::Kind::kPremise : TheoryItem::Kind::kConstraint;
    item.name = m.name;
    item.body = m.body;
    out.items.push_back(std::move(item));
  }
  return out;
}

GroundTheory ground_theory(const TheorySpec& spec) {
  GroundTheory theory;
  theory.spec_ = spec;

  // Name heads first: they decide which terms are names.
  std::map<Key, std::vector<SortKind>> name_heads;
  std::map<Key, std::vector<std::string>> schema_params;
  for (const auto& item : spec.items) {
    if (item.kind == TheoryItem::Kind::kSchema) {
      std::vector<std::string> sorts;
      for (const auto& p : item.params) sorts.push_back(p.sort);
      schema_params[{item.name.symbol(), item.params.size()}] = sorts;
      name_heads[{item.name.symbol(), item.params.size()}];
    } else {
      if (!item.name.is_apply() || !item.name.is_ground()) {
        throw Error(ErrorCode::kSyntax, "formula names must be ground terms", item.where);
      }
      name_heads[{item.name.symbol(), item.name.arity()}];
    }
  }

  // Declared sorts.
  for (const auto& decl : spec.sorts) {
    if (decl.id == kBuiltinName || decl.id == kBuiltinInt) {
      throw Error(ErrorCode::kSort, "sort '" + decl.id + "' is built in", decl.where);
    }
    if (theory.sorts_.contains(decl.id)) throw Error(ErrorCode::kSort, "sort '" + decl.id + "' declared twice", decl.where);
    ResolvedSort rs;
    rs.kind = classify_members(decl, name_heads);
    rs.members = decl.members;
    theory.sorts_[decl.id] = std::move(rs);
  }
  for (auto& [key, kinds] : name_heads) {
    auto it = schema_params.find(key);
    if (it == schema_params.end()) {
      kinds.assign(key.second, SortKind::kUnknown);
      continue;
    }
    for (const auto& s : it->second) {
      if (s == kBuiltinName) {
        throw Error(ErrorCode::kSort, "schema " + key.first + " cannot range over the built-in sort name");
      }
      if (s == kBuiltinInt) throw Error(ErrorCode::kSort, "schema " + key.first + " cannot range over int");
      auto sit = theory.sorts_.find(s);
      if (sit == theory.sorts_.end()) throw Error(ErrorCode::kUnknownSort, "undeclared sort '" + s + "'");
      kinds.push_back(sit->second.kind);
    }
  }

  // Instances: (item index, substitution).
  struct Instance {
    std::size_t item;
    Term name;
    std::vector<std::pair<std::string, Term>> binding;
  };
  std::vector<Instance> instances;
  for (std::size_t i = 0; i < spec.items.size(); ++i) {
    const auto& item = spec.items[i];
    if (item.kind != TheoryItem::Kind::kSchema) {
      instances.push_back({i, item.name, {}});
      continue;
    }
    std::vector<const std::vector<Term>*> domains;
    for (const auto& p : item.params) {
      const auto& members = theory.sorts_.at(p.sort).members;
      if (members.empty()) throw Error(ErrorCode::kSort, "schema parameter over empty sort '" + p.sort + "'", item.where);
      domains.push_back(&members);
    }
    std::vector<std::size_t> pos(domains.size(), 0);
    bool done = false;
    while (!done) {
      Instance inst{i, {}, {}};
      std::vector<Term> args;
      for (std::size_t k = 0; k < domains.size(); ++k) {
        args.push_back((*domains[k])[pos[k]]);
        inst.binding.emplace_back(item.params[k].var, (*domains[k])[pos[k]]);
      }
      inst.name = Term::apply(item.name.symbol(), std::move(args));
      instances.push_back(std::move(inst));
      std::size_t k = domains.size();
      while (true) {
        if (k == 0) {
          done = true;
          break;
        }
        --k;
        if (++pos[k] < domains[k]->size()) break;
        pos[k] = 0;
      }
    }
  }

  // Built-in sort of all member names.
  {
    ResolvedSort all;
    all.kind = SortKind::kName;
    std::set<Term> seen;
    for (const auto& inst : instances) {
      if (seen.insert(inst.name).second) all.members.push_back(inst.name);
    }
    theory.sorts_[kBuiltinName] = std::move(all);
  }

  // Sort inference over the whole specification.
  SortInference inference(theory.sorts_, name_heads);
  for (const auto& decl : spec.sorts) {
    const SortKind k = theory.sorts_.at(decl.id).kind;
    for (const auto& m : decl.members) inference.constrain(m, k, decl.where, "sort " + decl.id);
  }
  for (const auto& d : spec.distinct) {
    for (std::size_t i = 0; i + 1 < d.terms.size(); ++i) {
      if (!d.terms[i].is_ground()) throw Error(ErrorCode::kSyntax, "distinct takes ground terms", d.where);
      inference.unify_terms(d.terms[i], d.terms[i + 1], d.where, "distinct declaration");
    }
  }
  for (const auto& item : spec.items) {
    SortInference::Scope scope;
    for (const auto& p : item.params) scope.emplace_back(p.var, inference.binder_kind(p.sort, item.where));
    if (item.kind != TheoryItem::Kind::kSchema) inference.constrain(item.name, SortKind::kName, item.where, "name");
    inference.visit(item.body, scope, item.where);
  }
  theory.signature_ = inference.result();

  std::set<Term> name_set;
  for (const auto& inst : instances) name_set.insert(inst.name);
  for (const auto& [id, rs] : theory.sorts_) {
    if (rs.kind != SortKind::kName) continue;
    for (const auto& m : rs.members) {
      if (!name_set.contains(m)) throw Error(ErrorCode::kUnknownName, "sort " + id + " lists unknown name " + m.to_string());
    }
  }
  for (const auto& d : spec.distinct) {
    std::vector<Term> terms;
    for (const auto& t : d.terms) terms.push_back(theory.signature_.annotate(t));
    if (!terms.empty() && terms.front().sort() == SortKind::kName) continue;  // names are distinct already
    theory.distinct_.push_back(std::move(terms));
  }

  // Expansion.
  for (const auto& inst : instances) {
    const auto& item = spec.items[inst.item];
    Formula body = item.body;
    for (const auto& [var, value] : inst.binding) body = body.substitute(var, value);
    body = expand_quantifiers(body, theory.sorts_, item.where);
    body = finish_ground(body, theory.signature_, name_set, item.where);

    NamedFormula nf;
    nf.name = theory.signature_.annotate(inst.name);
    nf.body = std::move(body);
    nf.role = item.kind == TheoryItem::Kind::kConstraint ? Role::kConstraint : Role::kPremise;
    if (item.kind == TheoryItem::Kind::kSchema) nf.schema = item.name.symbol();

    const std::string key = nf.name.to_string();
    if (auto it = theory.index_.find(key); it != theory.index_.end()) {
      const auto& prior = theory.members_[it->second];
      if (prior.body == nf.body && prior.role == nf.role) continue;
      throw Error(ErrorCode::kDuplicateName, "name " + key + " is used for two different formulas", item.where);
    }
    theory.index_[key] = theory.members_.size();
    theory.members_.push_back(std::move(nf));
  }

  for (const auto& m : theory.members_) theory.canonical_names_.push_back(m.name);
  std::sort(theory.canonical_names_.begin(), theory.canonical_names_.end(), CanonicalTermLess{});
  return theory;
}

Formula ground_formula(const GroundTheory& theory, const Formula& formula) {
  SortInference inference(theory.sorts(), theory.signature().name_heads);
  inference.seed(theory.signature());
  SortInference::Scope scope;
  inference.visit(formula, scope, {});
  const Signature sig = inference.result();
  std::set<Term> names(theory.names().begin(), theory.names().end());
  return finish_ground(expand_quantifiers(formula, theory.sorts(), {}), sig, names, {});
}

Term fresh_name(const GroundTheory& theory) {
  const auto count = static_cast<std::size_t>(std::count_if(theory.members().begin(), theory.members().end(),
                                                            [](const NamedFormula& m) { return !m.schema; }));
  return next_free(theory, "d", count);
}

Term fresh_constraint_name(const GroundTheory& theory) {
  const auto count = static_cast<std::size_t>(std::count_if(theory.members().begin(), theory.members().end(),
                                                            [](const NamedFormula& m) { return m.role == Role::kConstraint; }));
  return next_free(theory, "c", count);
}

}  // namespace prefrev
