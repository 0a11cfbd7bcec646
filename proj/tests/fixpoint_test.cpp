#include <gtest/gtest.h>

#include <algorithm>

#include "definition_oracle.hpp"
#include "prefrev/error.hpp"
#include "prefrev/fixpoint.hpp"
#include "random_theory.hpp"
#include "support.hpp"

namespace prefrev {
namespace {

using testing::corpus;
using testing::formula;
using testing::load;
using testing::name;

TEST(CStep, CycleFromNothing) {
  const auto t = corpus("cycle.th");
  const BackgroundAxioms ax(t);
  const auto s = c_step(t, BeliefRepresentation());
  EXPECT_TRUE(s.entails(formula(t, "d2 < d1 | d1 < d2"), ax));
  EXPECT_FALSE(s.entails(formula(t, "d2 < d1"), ax));
  EXPECT_FALSE(s.entails(formula(t, "d1 < d2"), ax));
}

TEST(CStep, EmptyTheoryGivesTautologies) {
  const GroundTheory t;
  const BackgroundAxioms ax(t);
  const auto s = c_step(t, BeliefRepresentation());
  EXPECT_TRUE(s.entails(Formula::disjunction({Formula::predicate("p"), Formula::negation(Formula::predicate("p"))}), ax));
  EXPECT_FALSE(s.entails(Formula::predicate("p"), ax));
}

TEST(CStep, TypesStrategyRanksTheDefaultLast) {
  const auto t = corpus("strategy_types.th");
  const BackgroundAxioms ax(t);
  const auto s = c_step(t, BeliefRepresentation());
  EXPECT_EQ(s.bases().size(), 4U);
  EXPECT_TRUE(s.entails(formula(t, "d1 < d4(tweety)"), ax));
  EXPECT_TRUE(s.entails(formula(t, "d2 < d1"), ax));
  EXPECT_TRUE(s.entails(formula(t, "d3 < d1"), ax));
  EXPECT_FALSE(s.entails(formula(t, "flies(tweety)"), ax));
}

TEST(Fixpoint, CycleIsFixedAfterOneStep) {
  const auto t = corpus("cycle.th");
  const auto lfp = least_fixpoint(t);
  EXPECT_EQ(lfp.trace(), std::vector<std::size_t>{2});
  EXPECT_EQ(lfp.steps(), 1U);
  EXPECT_TRUE(lfp.accepted_belief.is_consistent(BackgroundAxioms(t)));
  EXPECT_TRUE(preferred_extensions(t).empty());
}

TEST(Fixpoint, TypesStrategy) {
  const auto t = corpus("strategy_types.th");
  const auto lfp = least_fixpoint(t);
  EXPECT_EQ(lfp.trace(), (std::vector<std::size_t>{4, 1}));
  ASSERT_EQ(lfp.accepted_bases.size(), 1U);
  EXPECT_FALSE(lfp.accepted_bases[0].contains(name("d4(tweety)")));
  EXPECT_FALSE(accepted(t, formula(t, "flies(tweety)")));
  EXPECT_TRUE(accepted(t, formula(t, "~flies(tweety)")));
}

TEST(Fixpoint, SourcesStrategy) {
  const auto t = corpus("strategy_sources.th");
  const auto lfp = least_fixpoint(t);
  EXPECT_EQ(lfp.trace(), (std::vector<std::size_t>{14, 2, 1}));
  for (const auto& b : lfp.iterates[1].bases) {
    EXPECT_FALSE(b.contains(name("d9(d1,d2)")));
    EXPECT_TRUE(entails(b.formulas(), BackgroundAxioms(t), formula(t, "d1 < d2")));
  }
  ASSERT_EQ(lfp.accepted_bases.size(), 1U);
  EXPECT_TRUE(lfp.accepted_bases[0].contains(name("d1")));
  EXPECT_FALSE(lfp.accepted_bases[0].contains(name("d2")));
  EXPECT_TRUE(lfp.accepted_belief.entails(formula(t, "p"), BackgroundAxioms(t)));
}

TEST(Fixpoint, Twins) {
  const auto t = corpus("twins.th");
  const auto lfp = least_fixpoint(t);
  EXPECT_EQ(lfp.trace(), (std::vector<std::size_t>{8, 2, 1}));
  EXPECT_TRUE(accepted(t, formula(t, "~date(Anne, John)")));
  EXPECT_FALSE(accepted(t, formula(t, "date(Anne, John)")));
}

TEST(Fixpoint, SingleFormula) {
  const auto t = load("premise d1: p.");
  const auto lfp = least_fixpoint(t);
  EXPECT_EQ(lfp.steps(), 1U);
  EXPECT_TRUE(lfp.accepted_belief.entails(formula(t, "p"), BackgroundAxioms(t)));
  const auto preferred = preferred_extensions(t);
  ASSERT_EQ(preferred.size(), 1U);
  EXPECT_EQ(preferred[0].to_string(), "{d1}");
}

TEST(Fixpoint, ContractionBelievesNeitherWay) {
  const auto t = corpus("contraction.th");
  EXPECT_FALSE(accepted(t, formula(t, "flies(tweety)")));
  EXPECT_FALSE(accepted(t, formula(t, "~flies(tweety)")));
  EXPECT_EQ(least_fixpoint(t).trace(), std::vector<std::size_t>{3});
}

TEST(Fixpoint, HarperCounterexampleBelievesP) {
  const auto t = corpus("harper.th");
  const auto lfp = least_fixpoint(t);
  ASSERT_EQ(lfp.accepted_bases.size(), 1U);
  EXPECT_EQ(lfp.accepted_bases[0].to_string(), "{c1, d1}");
  EXPECT_TRUE(accepted(t, formula(t, "p")));
  EXPECT_FALSE(accepted(t, formula(t, "d1 < d2")));
}

TEST(Accepted, Tweety) {
  const auto t = corpus("tweety.th");
  EXPECT_TRUE(accepted(t, formula(t, "~flies(tweety)")));
  EXPECT_FALSE(accepted(t, formula(t, "flies(tweety)")));
  EXPECT_TRUE(accepted(t, formula(t, "flies(tweety) | ~flies(tweety)")));
}

TEST(Preferred, TweetyHasOne) {
  const auto t = corpus("tweety.th");
  const auto preferred = preferred_extensions(t);
  ASSERT_EQ(preferred.size(), 1U);
  EXPECT_FALSE(preferred[0].contains(name("d1(tweety)")));
}

TEST(Preferred, UndefinedWithConstraints) {
  const auto t = corpus("contraction.th");
  try {
    preferred_extensions(t);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUndefined);
  }
}

// ---------------------------------------------------------------------------
// Properties over small random theories: at most four members over three atoms.

constexpr int kCases = 200;

std::vector<Formula> panel(const GroundTheory& t, testing::RandomTheories& gen) {
  const std::size_t names = t.size() - (t.has_constraints() ? 1 : 0);
  std::vector<Formula> out;
  for (const char* a : {"p", "q", "r", "~p", "~q", "~r"}) out.push_back(formula(t, a));
  for (int i = 0; i < 8; ++i) out.push_back(formula(t, gen.formula(names)));
  return out;
}

// Every panel formula the first belief set holds, the second holds too.
void expect_contained(const BeliefRepresentation& small, const BeliefRepresentation& large, const GroundTheory& t,
                      const std::vector<Formula>& queries, const std::string& context) {
  const BackgroundAxioms ax(t);
  for (const auto& q : queries) {
    if (small.entails(q, ax)) EXPECT_TRUE(large.entails(q, ax)) << context << " query " << q.to_string();
  }
}

TEST(Properties, CStepIsMonotone) {
  testing::RandomTheories gen(8101);
  for (int round = 0; round < kCases; ++round) {
    const auto text = gen.theory(1 + gen.pick(4), gen.coin(0.25));
    const auto t = load(text);
    ExtensionEngine engine(t);
    const auto& all = engine.all_bases();
    std::vector<ExtensionBase> wide, narrow;
    for (const auto& b : all) {
      if (gen.coin(0.7)) wide.push_back(b);
    }
    if (wide.empty()) wide.push_back(all.front());
    for (const auto& b : wide) {
      if (gen.coin()) narrow.push_back(b);
    }
    if (narrow.empty()) narrow.push_back(wide.back());
    const auto s = intersect(wide);
    const auto s2 = intersect(narrow);  // S ⊆ S'
    const auto ext = engine.compatible(s);
    const auto ext2 = engine.compatible(s2);
    for (const auto& b : ext2) {
      ASSERT_TRUE(std::binary_search(ext.begin(), ext.end(), b)) << text << b.to_string();
    }
    const auto c = intersect(ext);
    const auto c2 = intersect(ext2);
    expect_contained(c, c2, t, panel(t, gen), text);
    const BackgroundAxioms ax(t);
    EXPECT_TRUE(entails(std::vector{c2.guidance()}, ax, c.guidance())) << text;
  }
}

TEST(Properties, AcceptedConclusionsHoldInEveryPreferredExtension) {
  testing::RandomTheories gen(8102);
  for (int round = 0; round < kCases; ++round) {
    const auto text = gen.theory(1 + gen.pick(4));
    const auto t = load(text);
    const BackgroundAxioms ax(t);
    ExtensionEngine engine(t);
    const auto lfp = least_fixpoint(engine);
    const auto preferred = preferred_extensions(engine);
    for (const auto& q : panel(t, gen)) {
      if (!lfp.accepted_belief.entails(q, ax)) continue;
      for (const auto& b : preferred) {
        EXPECT_TRUE(entails(b.premise_formulas(), ax, q)) << text << b.to_string() << " " << q.to_string();
      }
    }
  }
}

TEST(Properties, AcceptedConclusionsAreConsistent) {
  testing::RandomTheories gen(8103);
  for (int round = 0; round < kCases; ++round) {
    // Half the theories get an outright contradiction or a preference cycle added.
    auto text = gen.theory(1 + gen.pick(3));
    if (gen.coin()) text += gen.coin() ? "premise x1: p & ~p.\n" : "premise x1: d1 < x1 & x1 < d1.\n";
    const auto t = load(text);
    EXPECT_FALSE(accepted(t, Formula::bottom())) << text;
  }
}

TEST(Properties, IteratesFormAChain) {
  testing::RandomTheories gen(8104);
  for (int round = 0; round < kCases; ++round) {
    const auto text = gen.theory(1 + gen.pick(4), gen.coin(0.25));
    const auto t = load(text);
    ExtensionEngine engine(t);
    const auto lfp = least_fixpoint(engine);
    ASSERT_LE(lfp.steps(), engine.all_bases().size() + 1);
    const auto queries = panel(t, gen);
    for (std::size_t k = 0; k + 1 < lfp.iterates.size(); ++k) {
      const auto& now = lfp.iterates[k];
      const auto& next = lfp.iterates[k + 1];
      ASSERT_LT(next.bases.size(), now.bases.size());
      for (const auto& b : next.bases) ASSERT_TRUE(std::binary_search(now.bases.begin(), now.bases.end(), b));
      expect_contained(now.input, next.input, t, queries, text);
    }
    expect_contained(lfp.iterates.back().input, lfp.accepted_belief, t, queries, text);
    // The result is a fixed point.
    EXPECT_EQ(engine.compatible(lfp.accepted_belief), lfp.accepted_bases) << text;
  }
}

TEST(Properties, FixpointAndPreferredMatchTheDefinition) {
  testing::RandomTheories gen(8105);
  for (int round = 0; round < 60; ++round) {
    const auto text = gen.theory(1 + gen.pick(4));
    const auto t = load(text);
    ExtensionEngine engine(t);

    std::vector<ExtensionBase> expected_preferred;
    for (const auto& b : testing::compatible_by_definition(t, Formula::top())) {
      const auto own = testing::compatible_by_definition(t, Formula::conjunction(b.formulas()));
      if (std::binary_search(own.begin(), own.end(), b)) expected_preferred.push_back(b);
    }
    ASSERT_EQ(preferred_extensions(engine), expected_preferred) << text;

    std::vector<std::size_t> expected_trace;
    Formula guidance = Formula::top();
    std::vector<ExtensionBase> previous;
    while (true) {
      auto bases = testing::compatible_by_definition(t, guidance);
      if (bases == previous) break;
      expected_trace.push_back(bases.size());
      guidance = intersect(bases).guidance();
      previous = std::move(bases);
    }
    const auto lfp = least_fixpoint(engine);
    ASSERT_EQ(lfp.trace(), expected_trace) << text;
    ASSERT_EQ(lfp.accepted_bases, previous) << text;
  }
}

}  // namespace
}  // namespace prefrev
