#include "prefrev/revision.hpp"

#include <set>

#include "prefrev/error.hpp"
#include "prefrev/oracle.hpp"
#include "prefrev/parser.hpp"

namespace prefrev {

std::string_view operation_name(Operation op) { return op == Operation::kRevise ? "revise" : "contract"; }

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kHolds:
      return "holds-on-instance";
    case Verdict::kFails:
      return "fails-on-instance";
    case Verdict::kNotApplicable:
      return "not-applicable";
  }
  return "?";
}

EpistemicState::EpistemicState() : theory_(std::make_shared<GroundTheory>()) {}

EpistemicState::EpistemicState(TheorySpec initial)
    : initial_(initial), spec_(std::move(initial)), theory_(std::make_shared<GroundTheory>(ground_theory(spec_))) {}

EpistemicState EpistemicState::add(Operation op, const Formula& input) const {
  ground_formula(*theory_, input);  // rejects ill-sorted input and unknown names before anything changes
  TheoryItem item;
  item.kind = op == Operation::kRevise ? TheoryItem::Kind::kPremise : TheoryItem::Kind::kConstraint;
  item.name = op == Operation::kRevise ? fresh_name(*theory_) : fresh_constraint_name(*theory_);
  item.body = op == Operation::kRevise ? input : input.complement();

  EpistemicState next = *this;
  next.spec_.items.push_back(item);
  next.theory_ = std::make_shared<GroundTheory>(ground_theory(next.spec_));
  next.history_.push_back({op, item.name, input.to_string(), history_.size() + 1});
  return next;
}

EpistemicState EpistemicState::revise(const Formula& p) const { return add(Operation::kRevise, p); }

EpistemicState EpistemicState::contract(const Formula& p) const { return add(Operation::kContract, p); }

EpistemicState EpistemicState::replay(TheorySpec initial, const std::vector<HistoryEntry>& history) {
  EpistemicState state(std::move(initial));
  for (const auto& entry : history) {
    state = state.add(entry.op, parse_formula(entry.formula));
    const auto& added = state.history_.back();
    if (!(added.name == entry.name) || added.seq != entry.seq) {
      throw Error(ErrorCode::kSession, "history entry " + std::to_string(entry.seq) + " recorded name " +
                                           entry.name.to_string() + " but replay assigns " + added.name.to_string());
    }
  }
  return state;
}

BeliefRepresentation belief(const EpistemicState& state, const Limits& limits) {
  return least_fixpoint(state.theory(), limits).accepted_belief;
}

BeliefRepresentation expand_belief(const EpistemicState& state, const Formula& a, const Limits& limits) {
  return belief(state, limits).expanded(ground_formula(state.theory(), a));
}

const PostulateResult& PostulateReport::at(std::string_view id) const {
  for (const auto& r : results) {
    if (r.id == id) return r;
  }
  throw Error(ErrorCode::kInternal, "no postulate " + std::string(id));
}

std::string PostulateReport::to_string() const {
  std::string out;
  for (const auto& r : results) {
    out += r.id + " " + std::string(verdict_name(r.verdict));
    if (!r.witness.empty()) out += ": " + r.witness;
    out += "\n";
  }
  return out;
}

namespace {

bool mentions(const Formula& f, const Term& name) {
  bool found = false;
  f.for_each_term([&](const Term& t) { found = found || t == name; });
  return found;
}

}  // namespace

PostulateReport check_postulates(const EpistemicState& state, const Formula& a, const Formula& b,
                                 std::span<const Formula> probes, const Limits& limits) {
  const EpistemicState ta = state.revise(a);
  const EpistemicState tb = state.revise(b);
  const EpistemicState tab = state.revise(Formula::conjunction({a, b}));
  const Formula ga = ground_formula(ta.theory(), a);
  const Formula gb = ground_formula(tb.theory(), b);

  BackgroundAxioms ax(tab.theory());
  const BeliefRepresentation bel = belief(state, limits);
  const BeliefRepresentation bel_a = belief(ta, limits);
  const BeliefRepresentation bel_b = belief(tb, limits);
  const BeliefRepresentation bel_ab = belief(tab, limits);
  const BeliefRepresentation bel_plus_a = bel.expanded(ga);
  const BeliefRepresentation bel_a_plus_b = bel_a.expanded(gb);
  auto in = [&](const BeliefRepresentation& k, const Formula& q) { return k.entails(q, ax, limits); };

  PostulateReport report;
  std::set<std::string> seen;
  auto add = [&](const Formula& f) {
    if (seen.insert(f.to_string()).second) report.panel.push_back(f);
  };
  std::vector<Formula> sources;
  for (const auto& m : state.theory().members()) sources.push_back(m.body);
  sources.push_back(ga);
  sources.push_back(gb);
  for (const auto& f : sources) {
    f.for_each_atom([&](const Formula& atom) {
      if (atom.kind() == Formula::Kind::kTrue || atom.kind() == Formula::Kind::kFalse) return;
      add(atom);
      add(atom.complement());
    });
  }
  add(ga);
  add(gb);
  for (const auto& p : probes) add(ground_formula(tab.theory(), p));
  const auto& panel = report.panel;

  auto result = [&](const char* id, Verdict v, std::string witness = {}) {
    report.results.push_back({id, v, std::move(witness)});
  };
  // First panel formula in `lhs` but not in `rhs`.
  auto counterexample = [&](const BeliefRepresentation& lhs, const BeliefRepresentation& rhs) -> const Formula* {
    for (const auto& q : panel) {
      if (in(lhs, q) && !in(rhs, q)) return &q;
    }
    return nullptr;
  };
  auto containment = [&](const char* id, const BeliefRepresentation& lhs, const char* lhs_name,
                         const BeliefRepresentation& rhs, const char* rhs_name) {
    if (const Formula* q = counterexample(lhs, rhs)) {
      result(id, Verdict::kFails,
             q->to_string() + " in " + lhs_name + ", not in " + rhs_name);
    } else {
      result(id, Verdict::kHolds);
    }
  };

  if (in(bel_a, Formula::bottom())) {
    result("T*1", Verdict::kFails, "Bel(T*A) is inconsistent");
  } else {
    result("T*1", Verdict::kHolds);
  }

  if (in(bel_a, ga)) {
    result("T*2", Verdict::kHolds);
  } else {
    result("T*2", Verdict::kFails, ga.to_string() + " not in Bel(T*A)");
  }

  containment("T*3", bel_a, "Bel(T*A)", bel_plus_a, "Bel(T)+A");

  if (in(bel, ga.complement())) {
    result("T*4", Verdict::kNotApplicable, ga.complement().to_string() + " in Bel(T)");
  } else {
    containment("T*4", bel_plus_a, "Bel(T)+A", bel_a, "Bel(T*A)");
  }

  const bool inconsistent = in(bel_a, Formula::bottom());
  const bool refutable = entails(std::span<const Formula>(), ax, ga.complement(), limits);
  if (inconsistent == refutable) {
    result("T*5", Verdict::kHolds);
  } else if (refutable) {
    result("T*5", Verdict::kFails, ga.complement().to_string() + " is valid, yet Bel(T*A) is consistent");
  } else {
    result("T*5", Verdict::kFails, "Bel(T*A) is inconsistent, yet " + ga.complement().to_string() + " is not valid");
  }

  const Term fresh = fresh_name(state.theory());
  if (!entails(std::span<const Formula>(), ax, Formula::equivalence(ga, gb), limits)) {
    result("T*6", Verdict::kNotApplicable, "A and B are not equivalent");
  } else if (mentions(ga, fresh) || mentions(gb, fresh)) {
    result("T*6", Verdict::kNotApplicable, "A or B mentions the new name " + fresh.to_string());
  } else if (const Formula* q = counterexample(bel_a, bel_b)) {
    result("T*6", Verdict::kFails, q->to_string() + " in Bel(T*A), not in Bel(T*B)");
  } else if (const Formula* q2 = counterexample(bel_b, bel_a)) {
    result("T*6", Verdict::kFails, q2->to_string() + " in Bel(T*B), not in Bel(T*A)");
  } else {
    result("T*6", Verdict::kHolds);
  }

  containment("T*7", bel_ab, "Bel(T*(A&B))", bel_a_plus_b, "Bel(T*A)+B");

  if (in(bel_a, gb.complement())) {
    result("T*8", Verdict::kNotApplicable, gb.complement().to_string() + " in Bel(T*A)");
  } else {
    containment("T*8", bel_a_plus_b, "Bel(T*A)+B", bel_ab, "Bel(T*(A&B))");
  }
  return report;
}

}  // namespace prefrev
