// Conflict-driven clause-learning SAT solver with two watched literals.
//
// Supports solving under assumptions and a final-check hook through which a lazily axiomatized
// theory (strict orders, see oracle.cpp) adds clauses that a complete assignment violates.
#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace prefrev::sat {

using Var = std::uint32_t;

class Lit {
 public:
  constexpr Lit() = default;
  constexpr Lit(Var v, bool negative) : code_(2 * v + (negative ? 1U : 0U)) {}

  constexpr Var var() const { return code_ >> 1; }
  constexpr bool negative() const { return (code_ & 1U) != 0; }
  constexpr std::uint32_t code() const { return code_; }
  constexpr Lit operator~() const {
    Lit l;
    l.code_ = code_ ^ 1U;
    return l;
  }
  friend constexpr auto operator<=>(Lit, Lit) = default;

 private:
  std::uint32_t code_ = 0;
};

class Solver;

/// Inspects a complete assignment; appends clauses the assignment falsifies, or nothing if it is
/// acceptable. Must never append a clause the assignment satisfies.
class FinalCheck {
 public:
  virtual ~FinalCheck() = default;
  virtual void check(const Solver& solver, std::vector<std::vector<Lit>>& violated) = 0;
};

struct SolverStats {
  std::uint64_t solves = 0;
  std::uint64_t decisions = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t propagations = 0;
  std::uint64_t theory_rounds = 0;
};

class Solver {
 public:
  explicit Solver(std::uint64_t max_decisions = 10000000);

  Var new_var();
  std::size_t num_vars() const noexcept { return assigns_.size(); }
  std::size_t num_clauses() const noexcept { return clauses_.size(); }

  /// Adds a clause to the permanent database. Allowed between solves.
  void add_clause(std::vector<Lit> lits);

  /// True iff the clauses (plus theory clauses) are satisfiable with every assumption true.
  /// Throws Error(kDecisionCap) when the decision budget of this call runs out.
  bool solve(std::span<const Lit> assumptions = {});

  /// Model value after a satisfiable solve(); also valid inside FinalCheck::check.
  bool value(Var v) const { return model_[v] > 0; }
  bool value(Lit l) const { return value(l.var()) != l.negative(); }
  /// Current assignment value during search (for FinalCheck): +1 true, -1 false, 0 unassigned.
  int current(Var v) const { return assigns_[v]; }

  void set_final_check(FinalCheck* check) { final_check_ = check; }
  void set_max_decisions(std::uint64_t n) { max_decisions_ = n; }
  const SolverStats& stats() const noexcept { return stats_; }

 private:
  struct Clause {
    std::vector<Lit> lits;
    bool learnt = false;
  };

  int lit_value(Lit l) const {
    const int v = assigns_[l.var()];
    return l.negative() ? -v : v;
  }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  void enqueue(Lit l, int reason);
  int propagate();
  void analyze(int conflict, std::vector<Lit>& learnt, int& backtrack_level);
  void cancel_until(int level);
  void attach(int clause);
  int add_learnt(std::vector<Lit> lits);
  bool search(std::span<const Lit> assumptions, std::uint64_t conflict_budget, bool& done);
  Lit pick_branch();

  void bump(Var v);
  void decay() { var_inc_ *= 1.0 / 0.95; }
  void heap_insert(Var v);
  void heap_up(std::size_t i);
  void heap_down(std::size_t i);
  Var heap_pop();
  bool heap_less(Var a, Var b) const { return activity_[a] > activity_[b]; }

  std::vector<Clause> clauses_;
  std::vector<std::vector<int>> watches_;  // by literal code: clauses watching that literal
  std::vector<int> assigns_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<bool> phase_;
  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;
  std::vector<int> model_;
  std::vector<char> seen_;

  std::vector<double> activity_;
  double var_inc_ = 1.0;
  std::vector<Var> heap_;
  std::vector<int> heap_index_;  // -1 when absent

  bool ok_ = true;
  FinalCheck* final_check_ = nullptr;
  std::uint64_t max_decisions_;
  std::uint64_t decisions_this_call_ = 0;
  SolverStats stats_;
};

}  // namespace prefrev::sat
