#include "prefrev/fixpoint.hpp"

#include "prefrev/error.hpp"

namespace prefrev {

std::vector<std::size_t> FixpointResult::trace() const {
  std::vector<std::size_t> out;
  for (const auto& it : iterates) out.push_back(it.bases.size());
  return out;
}

BeliefRepresentation c_step(const GroundTheory& theory, const BeliefRepresentation& s, const Limits& limits) {
  ExtensionEngine engine(theory, limits);
  auto bases = engine.compatible(s);
  if (bases.empty()) throw Error(ErrorCode::kInternal, "no extension base is compatible with a consistent input");
  return intersect(std::move(bases));
}

FixpointResult least_fixpoint(const GroundTheory& theory, const Limits& limits) {
  ExtensionEngine engine(theory, limits);
  return least_fixpoint(engine);
}

FixpointResult least_fixpoint(ExtensionEngine& engine) {
  FixpointResult result;
  const std::size_t limit = engine.all_bases().size() + 1;
  BeliefRepresentation s;
  // The iterates grow, so Ext^{S_k+1} ⊆ Ext^{S_k}: only the previous bases can survive.
  std::vector<ExtensionBase> candidates = engine.all_bases();
  while (true) {
    auto bases = engine.compatible(s, candidates);
    if (bases.empty()) throw Error(ErrorCode::kInternal, "no extension base is compatible with a consistent input");
    if (!result.iterates.empty() && bases == result.iterates.back().bases) break;
    if (result.iterates.size() == limit) {
      throw Error(ErrorCode::kIterationLimit, "fixpoint iteration exceeded " + std::to_string(limit) + " steps");
    }
    BeliefRepresentation next = intersect(bases);
    result.iterates.push_back({std::move(s), bases});
    s = std::move(next);
    candidates = std::move(bases);
  }
  result.accepted_bases = result.iterates.back().bases;
  result.accepted_belief = std::move(s);
  return result;
}

bool accepted(const GroundTheory& theory, const Formula& query, const Limits& limits) {
  const FixpointResult lfp = least_fixpoint(theory, limits);
  return lfp.accepted_belief.entails(query, BackgroundAxioms(theory), limits);
}

std::vector<ExtensionBase> preferred_extensions(const GroundTheory& theory, const Limits& limits) {
  ExtensionEngine engine(theory, limits);
  return preferred_extensions(engine);
}

std::vector<ExtensionBase> preferred_extensions(ExtensionEngine& engine) {
  if (engine.theory().has_constraints()) {
    throw Error(ErrorCode::kUndefined, "preferred extensions are not defined for theories with constraints");
  }
  std::vector<ExtensionBase> out;
  for (const auto& b : engine.all_bases()) {
    if (engine.is_preferred(b)) out.push_back(b);
  }
  return out;
}

}  // namespace prefrev
