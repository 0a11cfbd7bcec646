#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "prefrev/error.hpp"
#include "prefrev/order.hpp"
#include "support.hpp"

namespace prefrev {
namespace {

using testing::formula;
using testing::load;
using testing::name;

std::vector<Term> names(std::size_t n) {
  std::vector<Term> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(name("d" + std::to_string(i)));
  return out;
}

std::string premises(std::size_t n) {
  std::string src;
  for (std::size_t i = 1; i <= n; ++i) src += "premise d" + std::to_string(i) + ": p" + std::to_string(i) + ".\n";
  return src;
}

StrictPartialOrder order(std::size_t n, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<std::pair<Term, Term>> ps;
  for (auto [a, b] : pairs) ps.emplace_back(name("d" + std::to_string(a)), name("d" + std::to_string(b)));
  return StrictPartialOrder::closure(names(n), ps);
}

std::size_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

TEST(Order, DiagramOfEmptyOrder) {
  const auto t = load(premises(2));
  const auto d = diagram(StrictPartialOrder(names(2)));
  ASSERT_EQ(d.size(), 2U);
  EXPECT_EQ(d[0], formula(t, "~(d1 < d2)"));
  EXPECT_EQ(d[1], formula(t, "~(d2 < d1)"));
}

TEST(Order, DiagramOfChain) {
  const auto t = load(premises(2));
  const auto d = diagram(order(2, {{2, 1}}));
  EXPECT_NE(std::find(d.begin(), d.end(), formula(t, "d2 < d1")), d.end());
  EXPECT_NE(std::find(d.begin(), d.end(), formula(t, "~(d1 < d2)")), d.end());
  EXPECT_EQ(d.size(), 2U);
}

TEST(Order, DiagramCoversEveryPairOnce) {
  const auto d = diagram(order(3, {{2, 1}, {3, 1}}));
  ASSERT_EQ(d.size(), 6U);
  EXPECT_EQ(std::count_if(d.begin(), d.end(), [](const Formula& f) { return f.kind() == Formula::Kind::kLess; }), 2);
  std::set<std::string> atoms;
  for (const auto& f : d) f.for_each_atom([&](const Formula& a) { atoms.insert(a.to_string()); });
  EXPECT_EQ(atoms.size(), 6U);
}

TEST(Order, Compatibility) {
  const auto t = load(premises(2));
  const BackgroundAxioms ax(t);
  const std::vector<Formula> empty;
  for (const auto& p : brute_force_partial_orders(names(2))) EXPECT_TRUE(is_compatible(p, empty, ax));

  const std::vector<Formula> forces{formula(t, "d2 < d1")};
  EXPECT_FALSE(is_compatible(StrictPartialOrder(names(2)), forces, ax));
  EXPECT_TRUE(is_compatible(order(2, {{2, 1}}), forces, ax));

  const std::vector<Formula> either{formula(t, "d2 < d1 | d1 < d2")};
  EXPECT_TRUE(is_compatible(order(2, {{2, 1}}), either, ax));
  EXPECT_TRUE(is_compatible(order(2, {{1, 2}}), either, ax));
  EXPECT_FALSE(is_compatible(StrictPartialOrder(names(2)), either, ax));
}

TEST(Order, LinearizationCounts) {
  EXPECT_EQ(linearizations(StrictPartialOrder(names(3)), 100).size(), 6U);
  EXPECT_EQ(linearizations(order(4, {{1, 2}, {2, 3}, {3, 4}}), 100).size(), 1U);
  const auto two = linearizations(order(3, {{2, 1}, {3, 1}}), 100);
  ASSERT_EQ(two.size(), 2U);
  EXPECT_EQ(two[0].to_string(), "d2 < d3 < d1");
  EXPECT_EQ(two[1].to_string(), "d3 < d2 < d1");
  EXPECT_EQ(linearizations(StrictPartialOrder(std::vector<Term>{}), 10).size(), 1U);
}

TEST(Order, LinearizationsAreLexicographicAndExtendTheOrder) {
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto all = linearizations(StrictPartialOrder(names(n)), 1000);
    EXPECT_EQ(all.size(), factorial(n));
    for (std::size_t i = 1; i < all.size(); ++i) {
      EXPECT_TRUE(std::lexicographical_compare(all[i - 1].sequence().begin(), all[i - 1].sequence().end(),
                                               all[i].sequence().begin(), all[i].sequence().end(), CanonicalTermLess{}));
    }
  }
  for (const auto& p : brute_force_partial_orders(names(4))) {
    for (const auto& l : linearizations(p, 100)) EXPECT_TRUE(l.as_partial_order().includes(p)) << p.to_string();
  }
}

TEST(Order, LinearizationCapOverflows) {
  try {
    linearizations(StrictPartialOrder(names(4)), 5);
    FAIL();
  } catch (const Overflow<TotalOrder>& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLinearizationCap);
    EXPECT_EQ(e.partial().size(), 5U);
  }
}

TEST(Order, BruteForceCounts) {
  const std::size_t expected[] = {1, 1, 3, 19, 219, 4231};
  for (std::size_t n = 0; n <= 5; ++n) {
    const auto all = brute_force_partial_orders(names(n));
    EXPECT_EQ(all.size(), expected[n]) << n;
    for (const auto& p : all) EXPECT_TRUE(p.is_valid());
  }
  EXPECT_THROW(brute_force_partial_orders(names(7)), Error);
}

TEST(Order, CompatibleOrdersMatchBruteForce) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto t = load(premises(n));
    EXPECT_EQ(compatible_orders(t, {}), brute_force_partial_orders(t.names())) << n;
  }
}

TEST(Order, CycleTheoryHasThreeCompatibleOrders) {
  const auto t = load("premise d1: d2 < d1. premise d2: d1 < d2.");
  EXPECT_EQ(compatible_orders(t, {}).size(), 3U);
  const std::vector<Formula> bad{formula(t, "p & ~p")};
  EXPECT_TRUE(compatible_orders(t, bad).empty());
}

// For every P and S: P is compatible with S iff it is among the compatible orders.
TEST(Order, CompatibilityAgreesWithEnumeration) {
  std::mt19937 rng(7);
  const auto t = load(premises(3));
  const BackgroundAxioms ax(t);
  const std::vector<std::string> atoms{"d1 < d2", "d2 < d1", "d1 < d3", "d3 < d2", "d2 < d3", "p1"};
  const auto all = brute_force_partial_orders(t.names());
  for (int round = 0; round < 40; ++round) {
    std::string text = "(" + atoms[rng() % atoms.size()] + ")";
    for (int k = 0; k < 2; ++k) {
      const std::string op = rng() % 2 ? " | " : " & ";
      text = "(" + text + op + (rng() % 2 ? "~" : "") + "(" + atoms[rng() % atoms.size()] + "))";
    }
    const std::vector<Formula> s{formula(t, text)};
    const auto compatible = compatible_orders(t, s);
    for (const auto& p : all) {
      const bool listed = std::find(compatible.begin(), compatible.end(), p) != compatible.end();
      ASSERT_EQ(is_compatible(p, s, ax), listed) << text << " " << p.to_string();
    }
  }
}

TEST(Order, MonotoneRestriction) {
  const auto t = load(premises(3));
  const std::vector<Formula> s{formula(t, "d1 < d2 | d2 < d3")};
  const std::vector<Formula> s2{formula(t, "d1 < d2 | d2 < d3"), formula(t, "~(d3 < d1)")};
  const auto wide = compatible_orders(t, s);
  for (const auto& p : compatible_orders(t, s2)) EXPECT_NE(std::find(wide.begin(), wide.end(), p), wide.end());
}

}  // namespace
}  // namespace prefrev
