// The operator C_T, its least fixed point, accepted conclusions and preferred extensions.
#pragma once

#include <vector>

#include "prefrev/extension.hpp"
#include "prefrev/limits.hpp"
#include "prefrev/theory.hpp"

namespace prefrev {

struct FixpointIterate {
  BeliefRepresentation input;        // S_k
  std::vector<ExtensionBase> bases;  // Ext^{S_k}
};

struct FixpointResult {
  /// One entry per productive step; the bases shrink strictly from one entry to the next.
  std::vector<FixpointIterate> iterates;
  std::vector<ExtensionBase> accepted_bases;
  BeliefRepresentation accepted_belief;

  std::size_t steps() const noexcept { return iterates.size(); }
  /// Number of bases at each step.
  std::vector<std::size_t> trace() const;
};

/// C_T(S) = ∩ Ext^S. Throws Error(kInternal) if no base is compatible with S.
BeliefRepresentation c_step(const GroundTheory& theory, const BeliefRepresentation& s, const Limits& limits = {});

/// Iterates C_T from ∅ until the base set repeats. Throws Error(kIterationLimit) after
/// |Ext^∅| + 1 steps, which a correct iteration never reaches.
FixpointResult least_fixpoint(const GroundTheory& theory, const Limits& limits = {});
FixpointResult least_fixpoint(ExtensionEngine& engine);

/// True iff every accepted base's premises entail `query`.
bool accepted(const GroundTheory& theory, const Formula& query, const Limits& limits = {});

/// Bases B with B ∈ Ext^B, canonically sorted. Throws Error(kUndefined) when the theory has
/// constraints, for which preferred extensions are not defined.
std::vector<ExtensionBase> preferred_extensions(const GroundTheory& theory, const Limits& limits = {});
std::vector<ExtensionBase> preferred_extensions(ExtensionEngine& engine);

}  // namespace prefrev
