#include <gtest/gtest.h>

#include "prefrev/parser.hpp"
#include "random_theory.hpp"
#include "support.hpp"

namespace prefrev {
namespace {

using testing::corpus;
using testing::load;

std::vector<std::string> names(const GroundTheory& t) {
  std::vector<std::string> out;
  for (const auto& n : t.names()) out.push_back(n.to_string());
  return out;
}

ErrorCode code_of(const std::string& text) {
  try {
    load(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

TEST(Grounding, Tweety) {
  const auto t = corpus("tweety.th");
  EXPECT_EQ(names(t), (std::vector<std::string>{"d1(tweety)", "d2", "d3", "d4", "d5"}));
  EXPECT_EQ(t.member(*t.index_of(parse_term("d2"))).body.to_string(), "penguin(tweety) -> ~flies(tweety)");
  EXPECT_EQ(t.member(*t.index_of(parse_term("d4"))).body.to_string(), "d3 < d1(tweety)");
}

TEST(Grounding, Empty) { EXPECT_TRUE(ground_theory(TheorySpec{}).empty()); }

TEST(Grounding, SourcesCountMatchesInstantiations) {
  const auto spec = parse_source(testing::corpus_text("strategy_sources.th"));
  // Each plain item is one member; a schema contributes the product of its parameter sorts.
  std::size_t expected = 0;
  for (const auto& item : spec.items) {
    std::size_t instances = 1;
    for (const auto& p : item.params) {
      for (const auto& s : spec.sorts) {
        if (s.id == p.sort) instances *= s.members.size();
      }
    }
    expected += instances;
  }
  EXPECT_EQ(expected, 7U + 49U + 49U + 1U);
  const auto t = ground_theory(spec);
  EXPECT_EQ(t.size(), expected);
  EXPECT_TRUE(t.index_of(parse_term("d8(d1, d2)")).has_value());
  EXPECT_TRUE(t.index_of(parse_term("d9(d7, d7)")).has_value());
  EXPECT_FALSE(t.index_of(parse_term("d8")).has_value());
}

TEST(Grounding, QuantifiedFormulaKeepsOneName) {
  const auto t = load("sort s = {a, b, c}. premise d1: forall x: s. p(x). premise d2: exists x: s. q(x).");
  ASSERT_EQ(t.size(), 2U);
  EXPECT_EQ(t.member(0).body.to_string(), "p(a) & p(b) & p(c)");
  EXPECT_EQ(t.member(1).body.to_string(), "q(a) | q(b) | q(c)");
}

TEST(Grounding, MembersAreGroundAndQuantifierFree) {
  for (const char* file : {"tweety.th", "strategy_types.th", "strategy_sources.th", "twins.th", "contraction.th"}) {
    const auto t = corpus(file);
    for (const auto& m : t.members()) {
      EXPECT_TRUE(m.body.is_ground()) << m.name.to_string();
      std::function<bool(const Formula&)> quantifier_free = [&](const Formula& f) {
        if (f.is_quantifier()) return false;
        for (const auto& c : f.children()) {
          if (!quantifier_free(c)) return false;
        }
        return true;
      };
      EXPECT_TRUE(quantifier_free(m.body)) << m.name.to_string();
    }
  }
}

TEST(Grounding, SortSafetyOnReWalk) {
  for (const char* file : {"tweety.th", "strategy_types.th", "strategy_sources.th", "twins.th"}) {
    const auto t = corpus(file);
    const auto& sig = t.signature();
    for (const auto& m : t.members()) {
      EXPECT_EQ(sig.sort_of(m.name), SortKind::kName);
      m.body.for_each_atom([&](const Formula& a) {
        if (a.kind() == Formula::Kind::kPredicate) {
          const auto it = sig.predicate_args.find({a.symbol(), a.terms().size()});
          ASSERT_NE(it, sig.predicate_args.end()) << a.to_string();
          for (std::size_t i = 0; i < a.terms().size(); ++i) EXPECT_EQ(sig.sort_of(a.terms()[i]), it->second[i]);
        } else if (a.kind() == Formula::Kind::kEqual || a.kind() == Formula::Kind::kLess) {
          EXPECT_EQ(sig.sort_of(a.terms()[0]), sig.sort_of(a.terms()[1])) << a.to_string();
        }
      });
    }
  }
}

TEST(Grounding, Errors) {
  EXPECT_EQ(code_of("premise d1: p. premise d1: q."), ErrorCode::kDuplicateName);
  EXPECT_EQ(code_of("sort s = {a}. schema d1(x: s): p(x). premise d1(a): q."), ErrorCode::kDuplicateName);
  EXPECT_EQ(code_of("schema d1(x: nowhere): p(x)."), ErrorCode::kUnknownSort);
  EXPECT_EQ(code_of("sort object = {tweety}. premise d1: bird(tweety). premise d2: bird(d1)."), ErrorCode::kSort);
  EXPECT_EQ(code_of("premise d1: d1 < 3."), ErrorCode::kSort);
}

TEST(Grounding, IdempotentOnCorpus) {
  for (const char* file : {"tweety.th", "cycle.th", "strategy_types.th", "strategy_sources.th", "twins.th",
                           "contraction.th", "harper.th"}) {
    const auto t = corpus(file);
    const auto again = ground_theory(t.to_spec());
    EXPECT_EQ(again, t) << file;
    EXPECT_EQ(ground_theory(again.to_spec()), again) << file;
  }
}

TEST(Grounding, IdempotentOnRandomTheories) {
  testing::RandomTheories gen(1618);
  for (int round = 0; round < 200; ++round) {
    const auto t = load(gen.theory(1 + gen.pick(4), gen.coin(0.3)));
    EXPECT_EQ(ground_theory(t.to_spec()), t);
  }
}

TEST(FreshName, Cases) {
  EXPECT_EQ(fresh_name(load("premise d1: p. premise d2: q.")).to_string(), "d3");
  EXPECT_EQ(fresh_name(GroundTheory{}).to_string(), "d1");
  EXPECT_EQ(fresh_name(load("premise d1: p. premise d3: q.")).to_string(), "d4");
  // d3 is taken by a schema head, which does not count towards j.
  EXPECT_EQ(fresh_name(load("sort s = {a}. premise d1: p. premise d2: q. schema d3(x: s): r(x).")).to_string(), "d4");
  EXPECT_EQ(fresh_name(corpus("tweety.th")).to_string(), "d6");
  EXPECT_EQ(fresh_constraint_name(load("premise d1: p.")).to_string(), "c1");
  EXPECT_EQ(fresh_constraint_name(corpus("harper.th")).to_string(), "c2");
}

TEST(FreshName, NeverOccursInTheTheory) {
  testing::RandomTheories gen(99);
  for (int round = 0; round < 200; ++round) {
    const auto t = load(gen.theory(1 + gen.pick(4)));
    const Term fresh = fresh_name(t);
    for (const auto& m : t.members()) {
      EXPECT_FALSE(m.name == fresh);
      m.body.for_each_term([&](const Term& term) { EXPECT_FALSE(term == fresh); });
    }
  }
}

}  // namespace
}  // namespace prefrev
