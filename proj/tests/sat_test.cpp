#include <gtest/gtest.h>

#include <random>

#include "prefrev/error.hpp"
#include "prefrev/sat.hpp"

namespace prefrev::sat {
namespace {

using Cnf = std::vector<std::vector<Lit>>;

bool satisfied(const Cnf& cnf, const std::vector<bool>& value) {
  for (const auto& clause : cnf) {
    bool any = false;
    for (const Lit l : clause) any = any || value[l.var()] != l.negative();
    if (!any) return false;
  }
  return true;
}

bool brute_force(const Cnf& cnf, std::size_t vars, const std::vector<Lit>& assumptions = {}) {
  for (std::uint32_t bits = 0; bits < (1U << vars); ++bits) {
    std::vector<bool> value(vars);
    for (std::size_t v = 0; v < vars; ++v) value[v] = ((bits >> v) & 1U) != 0;
    bool ok = true;
    for (const Lit a : assumptions) ok = ok && value[a.var()] != a.negative();
    if (ok && satisfied(cnf, value)) return true;
  }
  return false;
}

Cnf random_cnf(std::mt19937& rng, std::size_t vars, std::size_t clauses) {
  std::uniform_int_distribution<std::size_t> var(0, vars - 1);
  std::uniform_int_distribution<int> width(1, 3);
  std::bernoulli_distribution sign(0.5);
  Cnf cnf(clauses);
  for (auto& c : cnf) {
    const int w = width(rng);
    for (int i = 0; i < w; ++i) c.push_back(Lit(static_cast<Var>(var(rng)), sign(rng)));
  }
  return cnf;
}

std::vector<bool> model(const Solver& s, std::size_t vars) {
  std::vector<bool> out(vars);
  for (std::size_t v = 0; v < vars; ++v) out[v] = s.value(static_cast<Var>(v));
  return out;
}

TEST(Sat, EmptyAndUnit) {
  Solver s;
  EXPECT_TRUE(s.solve());
  const Var x = s.new_var();
  s.add_clause({Lit(x, false)});
  EXPECT_TRUE(s.solve());
  EXPECT_TRUE(s.value(x));
  s.add_clause({Lit(x, true)});
  EXPECT_FALSE(s.solve());
}

TEST(Sat, EmptyClauseIsUnsatisfiable) {
  Solver s;
  s.new_var();
  s.add_clause({});
  EXPECT_FALSE(s.solve());
}

TEST(Sat, Assumptions) {
  Solver s;
  const Var a = s.new_var();
  const Var b = s.new_var();
  s.add_clause({Lit(a, false), Lit(b, false)});
  const Lit not_a[] = {Lit(a, true)};
  EXPECT_TRUE(s.solve(not_a));
  EXPECT_TRUE(s.value(b));
  const Lit neither[] = {Lit(a, true), Lit(b, true)};
  EXPECT_FALSE(s.solve(neither));
  // Assumptions do not stick.
  EXPECT_TRUE(s.solve());
}

TEST(Sat, PigeonholeIsUnsatisfiable) {
  constexpr int kHoles = 5;
  Solver s;
  auto var = [](int pigeon, int hole) { return static_cast<Var>(pigeon * kHoles + hole); };
  for (int i = 0; i < (kHoles + 1) * kHoles; ++i) s.new_var();
  for (int p = 0; p <= kHoles; ++p) {
    std::vector<Lit> somewhere;
    for (int h = 0; h < kHoles; ++h) somewhere.push_back(Lit(var(p, h), false));
    s.add_clause(somewhere);
  }
  for (int h = 0; h < kHoles; ++h) {
    for (int p = 0; p <= kHoles; ++p) {
      for (int q = p + 1; q <= kHoles; ++q) s.add_clause({Lit(var(p, h), true), Lit(var(q, h), true)});
    }
  }
  EXPECT_FALSE(s.solve());
}

TEST(Sat, DecisionCap) {
  constexpr int kHoles = 8;
  Solver s(20);
  auto var = [](int pigeon, int hole) { return static_cast<Var>(pigeon * kHoles + hole); };
  for (int i = 0; i < (kHoles + 1) * kHoles; ++i) s.new_var();
  for (int p = 0; p <= kHoles; ++p) {
    std::vector<Lit> somewhere;
    for (int h = 0; h < kHoles; ++h) somewhere.push_back(Lit(var(p, h), false));
    s.add_clause(somewhere);
  }
  for (int h = 0; h < kHoles; ++h) {
    for (int p = 0; p <= kHoles; ++p) {
      for (int q = p + 1; q <= kHoles; ++q) s.add_clause({Lit(var(p, h), true), Lit(var(q, h), true)});
    }
  }
  try {
    s.solve();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDecisionCap);
  }
}

TEST(Sat, RandomCnfAgreesWithBruteForce) {
  std::mt19937 rng(12345);
  for (int round = 0; round < 300; ++round) {
    const std::size_t vars = 1 + rng() % 10;
    const Cnf cnf = random_cnf(rng, vars, 1 + rng() % (5 * vars));
    Solver s;
    for (std::size_t v = 0; v < vars; ++v) s.new_var();
    for (const auto& c : cnf) s.add_clause(c);
    const bool sat = s.solve();
    ASSERT_EQ(sat, brute_force(cnf, vars)) << "round " << round;
    if (sat) EXPECT_TRUE(satisfied(cnf, model(s, vars)));
  }
}

TEST(Sat, IncrementalSolvingUnderAssumptions) {
  std::mt19937 rng(777);
  for (int round = 0; round < 100; ++round) {
    const std::size_t vars = 4 + rng() % 6;
    Solver s;
    for (std::size_t v = 0; v < vars; ++v) s.new_var();
    Cnf so_far;
    for (int step = 0; step < 6; ++step) {
      for (auto& c : random_cnf(rng, vars, 2)) {
        so_far.push_back(c);
        s.add_clause(c);
      }
      std::vector<Lit> assumptions;
      for (std::size_t v = 0; v < vars; ++v) {
        if (rng() % 4 == 0) assumptions.push_back(Lit(static_cast<Var>(v), rng() % 2 == 0));
      }
      const bool sat = s.solve(assumptions);
      ASSERT_EQ(sat, brute_force(so_far, vars, assumptions));
      if (sat) {
        const auto m = model(s, vars);
        EXPECT_TRUE(satisfied(so_far, m));
        for (const Lit a : assumptions) EXPECT_EQ(m[a.var()], !a.negative());
      }
    }
  }
}

// Lazily enforces "at most one of the first k variables is true".
class AtMostOne : public FinalCheck {
 public:
  explicit AtMostOne(std::size_t k) : k_(k) {}
  void check(const Solver& solver, std::vector<std::vector<Lit>>& violated) override {
    for (Var a = 0; a < k_; ++a) {
      for (Var b = a + 1; b < k_; ++b) {
        if (solver.value(a) && solver.value(b)) violated.push_back({Lit(a, true), Lit(b, true)});
      }
    }
  }

 private:
  std::size_t k_;
};

TEST(Sat, FinalCheckMatchesEagerEncoding) {
  std::mt19937 rng(4711);
  for (int round = 0; round < 200; ++round) {
    const std::size_t vars = 3 + rng() % 6;
    const std::size_t k = 2 + rng() % (vars - 1);
    const Cnf cnf = random_cnf(rng, vars, 1 + rng() % (3 * vars));
    Cnf eager = cnf;
    for (Var a = 0; a < k; ++a) {
      for (Var b = a + 1; b < k; ++b) eager.push_back({Lit(a, true), Lit(b, true)});
    }
    Solver s;
    AtMostOne check(k);
    s.set_final_check(&check);
    for (std::size_t v = 0; v < vars; ++v) s.new_var();
    for (const auto& c : cnf) s.add_clause(c);
    const bool sat = s.solve();
    ASSERT_EQ(sat, brute_force(eager, vars)) << "round " << round;
    if (sat) EXPECT_TRUE(satisfied(eager, model(s, vars)));
  }
}

}  // namespace
}  // namespace prefrev::sat
