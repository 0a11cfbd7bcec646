// Ext^S straight from its definition, with the brute-force satisfiability oracle answering
// every consistency question. Exponential; for theories of at most four members.
#pragma once

#include <map>
#include <vector>

#include "brute_force.hpp"
#include "prefrev/extension.hpp"
#include "prefrev/order.hpp"

namespace prefrev::testing {

inline std::vector<ExtensionBase> compatible_by_definition(const GroundTheory& t, const Formula& guidance) {
  const BackgroundAxioms ax(t);
  std::map<std::vector<Term>, ExtensionBase> by_sequence;
  auto greedy = [&](const TotalOrder& order) {
    auto it = by_sequence.find(order.sequence());
    if (it != by_sequence.end()) return it->second;
    std::vector<char> mask(t.size(), 0);
    std::vector<Formula> kept;
    for (const auto& n : order.sequence()) {
      const std::size_t i = *t.index_of(n);
      kept.push_back(t.member(i).body);
      if (BruteForce(kept, ax).satisfiable()) {
        mask[i] = 1;
      } else {
        kept.pop_back();
      }
    }
    return by_sequence.emplace(order.sequence(), ExtensionBase(t, mask)).first->second;
  };
  std::vector<ExtensionBase> out;
  for (const auto& p : brute_force_partial_orders(t.names())) {
    auto fs = diagram(p);
    fs.push_back(guidance);
    if (!BruteForce(fs, ax).satisfiable()) continue;
    LinearizationStream stream(p);
    while (auto l = stream.next()) out.push_back(greedy(*l));
  }
  canonicalize(out);
  return out;
}

}  // namespace prefrev::testing
