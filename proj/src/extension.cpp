#include "prefrev/extension.hpp"

#include <algorithm>
#include <set>

#include "prefrev/encoder.hpp"
#include "prefrev/error.hpp"
#include "prefrev/oracle.hpp"

namespace prefrev {

using sat::Lit;

ExtensionBase::ExtensionBase(const GroundTheory& theory, const std::vector<char>& member_mask,
                             std::optional<TotalOrder> generating_order)
    : generating_order_(std::move(generating_order)) {
  if (member_mask.size() != theory.size()) throw Error(ErrorCode::kInternal, "base mask does not match the theory");
  key_.reserve(theory.size());
  for (const auto& name : theory.names()) {
    const std::size_t i = *theory.index_of(name);
    key_.push_back(member_mask[i] ? 1 : 0);
    if (member_mask[i]) members_.push_back(theory.member(i));
  }
}

std::vector<Term> ExtensionBase::names() const {
  std::vector<Term> out;
  out.reserve(members_.size());
  for (const auto& m : members_) out.push_back(m.name);
  return out;
}

bool ExtensionBase::contains(const Term& name) const {
  return std::any_of(members_.begin(), members_.end(), [&](const NamedFormula& m) { return m.name == name; });
}

std::vector<Formula> ExtensionBase::formulas() const {
  std::vector<Formula> out;
  for (const auto& m : members_) out.push_back(m.body);
  return out;
}

std::vector<Formula> ExtensionBase::premise_formulas() const {
  std::vector<Formula> out;
  for (const auto& m : members_) {
    if (m.role == Role::kPremise) out.push_back(m.body);
  }
  return out;
}

std::string ExtensionBase::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i > 0) out += ", ";
    out += members_[i].name.to_string();
  }
  return out + "}";
}

bool operator<(const ExtensionBase& a, const ExtensionBase& b) {
  if (a.key_.size() != b.key_.size()) return a.key_.size() < b.key_.size();
  for (std::size_t k = 0; k < a.key_.size(); ++k) {
    if (a.key_[k] != b.key_[k]) return a.key_[k] == 0;
  }
  return false;
}

void canonicalize(std::vector<ExtensionBase>& bases) {
  std::sort(bases.begin(), bases.end());
  bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
}

// ---------------------------------------------------------------------------

BeliefRepresentation intersect(std::vector<ExtensionBase> bases) {
  if (bases.empty()) throw Error(ErrorCode::kEmptyIntersection, "intersection of an empty family of extension bases");
  canonicalize(bases);
  BeliefRepresentation out;
  std::vector<Formula> options;
  for (const auto& b : bases) options.push_back(Formula::conjunction(b.formulas()));
  out.guidance_ = Formula::disjunction(std::move(options));
  out.bases_ = std::move(bases);
  return out;
}

Formula BeliefRepresentation::premise_disjunction() const {
  if (bases_.empty()) return Formula::top();
  std::vector<Formula> options;
  for (const auto& b : bases_) options.push_back(Formula::conjunction(b.premise_formulas()));
  return Formula::disjunction(std::move(options));
}

bool BeliefRepresentation::entails(const Formula& query, const BackgroundAxioms& axioms, const Limits& limits) const {
  std::vector<Formula> premises{premise_disjunction()};
  premises.insert(premises.end(), added_.begin(), added_.end());
  return prefrev::entails(premises, axioms, query, limits);
}

bool BeliefRepresentation::is_consistent(const BackgroundAxioms& axioms, const Limits& limits) const {
  std::vector<Formula> premises{premise_disjunction()};
  premises.insert(premises.end(), added_.begin(), added_.end());
  return prefrev::is_consistent(premises, axioms, limits);
}

BeliefRepresentation BeliefRepresentation::expanded(const Formula& a) const {
  BeliefRepresentation out = *this;
  out.added_.push_back(a);
  out.guidance_ = Formula::conjunction({guidance_, a});
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Greedy construction on one shared encoder; every member body is encoded once.
class Greedy {
 public:
  Greedy(const GroundTheory& theory, const Limits& limits)
      : theory_(theory), axioms_(theory), encoder_(axioms_, limits.max_decisions) {
    for (const auto& m : theory.members()) lits_.push_back(encoder_.encode(m.body));
  }

  ExtensionBase run(const TotalOrder& order) {
    if (order.size() != theory_.size()) {
      throw Error(ErrorCode::kCommand, "order has " + std::to_string(order.size()) + " names, the theory has " +
                                           std::to_string(theory_.size()));
    }
    std::vector<char> mask(theory_.size(), 0);
    std::vector<Lit> accepted;
    for (const auto& name : order.sequence()) {
      const auto i = theory_.index_of(name);
      if (!i) throw Error(ErrorCode::kUnknownName, "order mentions " + name.to_string() + ", which is not a member");
      if (mask[*i]) throw Error(ErrorCode::kCommand, "order repeats " + name.to_string());
      accepted.push_back(lits_[*i]);
      if (encoder_.solve(accepted)) {
        mask[*i] = 1;
      } else {
        accepted.pop_back();
      }
    }
    return ExtensionBase(theory_, mask, order);
  }

 private:
  const GroundTheory& theory_;
  BackgroundAxioms axioms_;
  Encoder encoder_;
  std::vector<Lit> lits_;
};

// Members of the base first, then the rest; greedy along it reproduces a maximal consistent base.
TotalOrder members_first(const GroundTheory& theory, const std::vector<char>& mask) {
  std::vector<Term> seq;
  for (int pass : {1, 0}) {
    for (const auto& name : theory.names()) {
      if ((mask[*theory.index_of(name)] != 0) == (pass == 1)) seq.push_back(name);
    }
  }
  return TotalOrder(std::move(seq));
}

// Minimal hitting sets of a family of sets (Berge's algorithm).
std::vector<std::vector<std::size_t>> minimal_hitting_sets(const std::vector<std::vector<std::size_t>>& family) {
  std::vector<std::set<std::size_t>> current{{}};
  for (const auto& edge : family) {
    std::vector<std::set<std::size_t>> next;
    for (const auto& h : current) {
      const bool hit = std::any_of(edge.begin(), edge.end(), [&](std::size_t e) { return h.contains(e); });
      if (hit) {
        next.push_back(h);
        continue;
      }
      for (std::size_t e : edge) {
        auto grown = h;
        grown.insert(e);
        next.push_back(std::move(grown));
      }
    }
    std::sort(next.begin(), next.end(), [](const auto& a, const auto& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    next.erase(std::unique(next.begin(), next.end()), next.end());
    current.clear();
    for (auto& h : next) {
      const bool dominated = std::any_of(current.begin(), current.end(), [&](const auto& kept) {
        return std::includes(h.begin(), h.end(), kept.begin(), kept.end());
      });
      if (!dominated) current.push_back(std::move(h));
    }
  }
  std::vector<std::vector<std::size_t>> out;
  for (const auto& h : current) out.emplace_back(h.begin(), h.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

ExtensionBase extension_base(const GroundTheory& theory, const TotalOrder& order, const Limits& limits) {
  return Greedy(theory, limits).run(order);
}

std::vector<ExtensionBase> extensions_for_partial_order(const GroundTheory& theory, const StrictPartialOrder& order,
                                                        const Limits& limits, ExtensionStrategy strategy) {
  if (order.carrier() != theory.names()) throw Error(ErrorCode::kCommand, "the order is not over the theory's names");
  if (strategy == ExtensionStrategy::kSolver) {
    // The only order whose diagram is consistent with diagram(P) is P itself.
    ExtensionEngine engine(theory, limits);
    return engine.generated_under(Formula::conjunction(diagram(order)), engine.all_bases());
  }
  Greedy greedy(theory, limits);
  std::vector<ExtensionBase> out;
  std::set<std::vector<char>> seen;
  LinearizationStream stream(order);
  std::uint64_t count = 0;
  while (auto next = stream.next()) {
    if (++count > limits.max_linearizations) {
      canonicalize(out);
      throw Overflow<ExtensionBase>(ErrorCode::kLinearizationCap,
                                    "more than " + std::to_string(limits.max_linearizations) + " linearizations",
                                    std::move(out));
    }
    ExtensionBase b = greedy.run(*next);
    if (seen.insert(b.key()).second) out.push_back(std::move(b));
  }
  canonicalize(out);
  return out;
}

ConflictStructure conflict_structure(const GroundTheory& theory, const Limits& limits) {
  const BackgroundAxioms axioms(theory);
  Encoder encoder(axioms, limits.max_decisions);
  const std::size_t n = theory.size();
  std::vector<Lit> lits;
  for (const auto& m : theory.members()) lits.push_back(encoder.encode(m.body));

  ConflictStructure out;
  while (encoder.solve()) {
    std::vector<char> mask(n);
    for (std::size_t i = 0; i < n; ++i) mask[i] = encoder.value(lits[i]) ? 1 : 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask[i]) continue;
      std::vector<Lit> assumptions;
      for (std::size_t j = 0; j < n; ++j) {
        if (mask[j]) assumptions.push_back(lits[j]);
      }
      assumptions.push_back(lits[i]);
      if (!encoder.solve(assumptions)) continue;
      for (std::size_t j = 0; j < n; ++j) mask[j] = mask[j] || encoder.value(lits[j]);
    }
    if (out.maximal_consistent.size() == limits.max_bases) {
      std::vector<ExtensionBase> partial;
      for (const auto& m : out.maximal_consistent) partial.emplace_back(theory, m);
      canonicalize(partial);
      throw Overflow<ExtensionBase>(ErrorCode::kBaseCap,
                                    "more than " + std::to_string(limits.max_bases) + " maximal consistent subsets",
                                    std::move(partial));
    }
    std::vector<Lit> blocking;
    for (std::size_t i = 0; i < n; ++i) {
      if (!mask[i]) blocking.push_back(lits[i]);
    }
    out.maximal_consistent.push_back(std::move(mask));
    if (blocking.empty()) break;
    encoder.add_clause(std::move(blocking));
  }

  std::vector<std::vector<std::size_t>> complements;
  std::set<std::size_t> relevant;
  for (const auto& mask : out.maximal_consistent) {
    std::vector<std::size_t> c;
    for (std::size_t i = 0; i < n; ++i) {
      if (!mask[i]) c.push_back(i);
    }
    relevant.insert(c.begin(), c.end());
    complements.push_back(std::move(c));
  }
  out.relevant.assign(relevant.begin(), relevant.end());
  out.minimal_inconsistent = minimal_hitting_sets(complements);
  return out;
}

// ---------------------------------------------------------------------------

ExtensionEngine::ExtensionEngine(const GroundTheory& theory, Limits limits)
    : theory_(theory), axioms_(theory), limits_(limits) {}

const ConflictStructure& ExtensionEngine::conflicts() {
  if (!conflicts_) conflicts_ = conflict_structure(theory_, limits_);
  return *conflicts_;
}

const std::vector<ExtensionBase>& ExtensionEngine::all_bases() {
  if (!all_bases_) {
    std::vector<ExtensionBase> out;
    for (const auto& mask : conflicts().maximal_consistent) {
      out.emplace_back(theory_, mask, members_first(theory_, mask));
    }
    canonicalize(out);
    all_bases_ = std::move(out);
  }
  return *all_bases_;
}

namespace {

// B is generated by a linearization of a partial order compatible with the guidance iff the
// guidance has a model M and some total order L on the conflicting members R extends the
// preferences of M on R and, for each f in R \ B, ranks before f every other element of some
// minimal inconsistent U with f ∈ U and U \ {f} ⊆ B. Outside R every member is in every base,
// so transitivity of M's preferences lets L combine with them into one linearization.
class GenerationProblem {
 public:
  GenerationProblem(const GroundTheory& theory, const BackgroundAxioms& axioms, const ConflictStructure& conflicts,
                    const Formula& guidance, const Limits& limits)
      : theory_(theory), conflicts_(conflicts), encoder_(axioms, limits.max_decisions) {
    encoder_.assert_formula(guidance);
    const auto& relevant = conflicts.relevant;
    const std::size_t r = relevant.size();
    for (std::size_t k : relevant) shadows_.push_back(Term::constant("%" + theory.member(k).name.to_string()).with_sort(SortKind::kName));
    ord_.assign(r * r, encoder_.false_lit());
    for (std::size_t a = 0; a < r; ++a) {
      for (std::size_t b = 0; b < r; ++b) {
        if (a != b) ord_[a * r + b] = encoder_.preference(shadows_[a], shadows_[b]);
      }
    }
    for (std::size_t a = 0; a < r; ++a) {
      for (std::size_t b = 0; b < r; ++b) {
        if (a == b) continue;
        if (a < b) encoder_.add_clause({ord_[a * r + b], ord_[b * r + a]});
        const Lit pref = encoder_.preference(theory.member(relevant[a]).name, theory.member(relevant[b]).name);
        encoder_.add_clause({~pref, ord_[a * r + b]});
      }
    }
  }

  bool generates(const ExtensionBase& base, std::optional<TotalOrder>* witness) {
    const auto& relevant = conflicts_.relevant;
    const std::size_t r = relevant.size();
    auto position = [&](std::size_t member) {
      return static_cast<std::size_t>(std::lower_bound(relevant.begin(), relevant.end(), member) - relevant.begin());
    };
    auto in_base = [&](std::size_t member) { return base.contains(theory_.member(member).name); };

    const Lit active = encoder_.fresh();
    for (std::size_t f : relevant) {
      if (in_base(f)) continue;
      std::vector<Lit> clause{~active};
      bool trivially = false;
      for (const auto& u : conflicts_.minimal_inconsistent) {
        if (!std::binary_search(u.begin(), u.end(), f)) continue;
        if (!std::all_of(u.begin(), u.end(), [&](std::size_t c) { return c == f || in_base(c); })) continue;
        if (u.size() == 1) {
          trivially = true;
          break;
        }
        const Lit y = encoder_.fresh();
        for (std::size_t c : u) {
          if (c != f) encoder_.add_clause({~y, ord_[position(c) * r + position(f)]});
        }
        clause.push_back(y);
      }
      if (!trivially) encoder_.add_clause(std::move(clause));
    }
    const Lit assumption[] = {active};
    if (!encoder_.solve(assumption)) return false;
    if (witness) *witness = extract_order(r);
    return true;
  }

 private:
  TotalOrder extract_order(std::size_t r) {
    const auto& relevant = conflicts_.relevant;
    std::vector<std::pair<Term, Term>> pairs;
    for (const auto& [a, b] : encoder_.true_preferences()) {
      if (theory_.index_of(a) && theory_.index_of(b)) pairs.emplace_back(a, b);
    }
    for (std::size_t a = 0; a < r; ++a) {
      for (std::size_t b = 0; b < r; ++b) {
        if (a != b && encoder_.value(ord_[a * r + b])) {
          pairs.emplace_back(theory_.member(relevant[a]).name, theory_.member(relevant[b]).name);
        }
      }
    }
    const StrictPartialOrder order = StrictPartialOrder::closure(theory_.names(), pairs);
    LinearizationStream stream(order);
    return *stream.next();
  }

  const GroundTheory& theory_;
  const ConflictStructure& conflicts_;
  Encoder encoder_;
  std::vector<Term> shadows_;
  std::vector<Lit> ord_;  // row-major over relevant positions
};

}  // namespace

std::vector<ExtensionBase> ExtensionEngine::compatible(const BeliefRepresentation& s,
                                                       std::span<const ExtensionBase> candidates) {
  std::vector<ExtensionBase> out;
  if (s.is_tautologies()) {
    // Every order is compatible with the tautologies.
    const auto& all = all_bases();
    for (const auto& c : candidates) {
      auto it = std::lower_bound(all.begin(), all.end(), c);
      if (it != all.end() && *it == c) out.push_back(*it);
    }
    canonicalize(out);
    return out;
  }
  return generated_under(s.guidance(), candidates);
}

std::vector<ExtensionBase> ExtensionEngine::generated_under(const Formula& guidance,
                                                            std::span<const ExtensionBase> candidates) {
  GenerationProblem problem(theory_, axioms_, conflicts(), guidance, limits_);
  std::vector<ExtensionBase> out;
  for (const auto& c : candidates) {
    std::optional<TotalOrder> witness;
    if (problem.generates(c, &witness)) out.push_back(c.with_generating_order(std::move(witness)));
  }
  canonicalize(out);
  return out;
}

bool ExtensionEngine::is_preferred(const ExtensionBase& base) {
  const ExtensionBase one[] = {base};
  return !generated_under(Formula::conjunction(base.formulas()), one).empty();
}

std::vector<ExtensionBase> extensions_compatible(const GroundTheory& theory, const BeliefRepresentation& s,
                                                 const Limits& limits, ExtensionStrategy strategy) {
  if (strategy == ExtensionStrategy::kSolver) {
    ExtensionEngine engine(theory, limits);
    return engine.compatible(s);
  }
  const Formula guidance[] = {s.guidance()};
  std::vector<ExtensionBase> out;
  for (const auto& order : compatible_orders(theory, guidance, limits)) {
    for (auto& b : extensions_for_partial_order(theory, order, limits, strategy)) out.push_back(std::move(b));
  }
  canonicalize(out);
  return out;
}

}  // namespace prefrev
