#include "prefrev/sat.hpp"

#include <algorithm>
#include <cmath>

#include "prefrev/error.hpp"

namespace prefrev::sat {

namespace {

constexpr int kNoReason = -1;

// Luby restart sequence 1 1 2 1 1 2 4 ...
double luby(double y, int x) {
  int size = 1, seq = 0;
  while (size < x + 1) {
    seq++;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    seq--;
    x = x % size;
  }
  return std::pow(y, seq);
}

}  // namespace

Solver::Solver(std::uint64_t max_decisions) : max_decisions_(max_decisions) {}

Var Solver::new_var() {
  const Var v = static_cast<Var>(assigns_.size());
  assigns_.push_back(0);
  level_.push_back(0);
  reason_.push_back(kNoReason);
  phase_.push_back(false);
  seen_.push_back(0);
  activity_.push_back(0.0);
  heap_index_.push_back(-1);
  watches_.resize(2 * assigns_.size());
  heap_insert(v);
  return v;
}

void Solver::add_clause(std::vector<Lit> lits) {
  cancel_until(0);
  if (!ok_) return;
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  std::vector<Lit> kept;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i + 1 < lits.size() && lits[i + 1] == ~lits[i]) return;  // tautology
    const int v = lit_value(lits[i]);
    if (v > 0) return;  // satisfied at level 0
    if (v == 0) kept.push_back(lits[i]);
  }
  if (kept.empty()) {
    ok_ = false;
    return;
  }
  if (kept.size() == 1) {
    enqueue(kept[0], kNoReason);
    if (propagate() != kNoReason) ok_ = false;
    return;
  }
  clauses_.push_back({std::move(kept), false});
  attach(static_cast<int>(clauses_.size()) - 1);
}

void Solver::attach(int clause) {
  const auto& c = clauses_[clause];
  watches_[c.lits[0].code()].push_back(clause);
  watches_[c.lits[1].code()].push_back(clause);
}

int Solver::add_learnt(std::vector<Lit> lits) {
  clauses_.push_back({std::move(lits), true});
  const int ci = static_cast<int>(clauses_.size()) - 1;
  attach(ci);
  return ci;
}

void Solver::enqueue(Lit l, int reason) {
  const Var v = l.var();
  assigns_[v] = l.negative() ? -1 : 1;
  level_[v] = decision_level();
  reason_[v] = reason;
  trail_.push_back(l);
}

int Solver::propagate() {
  while (qhead_ < trail_.size()) {
    const Lit falsified = ~trail_[qhead_++];
    ++stats_.propagations;
    auto& ws = watches_[falsified.code()];
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      const int ci = ws[i++];
      auto& lits = clauses_[ci].lits;
      if (lits[0] == falsified) std::swap(lits[0], lits[1]);
      if (lit_value(lits[0]) > 0) {
        ws[j++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < lits.size(); ++k) {
        if (lit_value(lits[k]) >= 0) {
          std::swap(lits[1], lits[k]);
          watches_[lits[1].code()].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = ci;
      if (lit_value(lits[0]) < 0) {
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return ci;
      }
      enqueue(lits[0], ci);
    }
    ws.resize(j);
  }
  return kNoReason;
}

void Solver::analyze(int conflict, std::vector<Lit>& learnt, int& backtrack_level) {
  learnt.clear();
  learnt.emplace_back();
  int pending = 0;
  bool first = true;
  Lit p;
  std::size_t index = trail_.size();
  int confl = conflict;
  std::vector<Var> touched;
  do {
    const auto& lits = clauses_[confl].lits;
    for (std::size_t k = first ? 0 : 1; k < lits.size(); ++k) {
      const Var v = lits[k].var();
      if (seen_[v] || level_[v] == 0) continue;
      seen_[v] = 1;
      touched.push_back(v);
      bump(v);
      if (level_[v] >= decision_level()) {
        ++pending;
      } else {
        learnt.push_back(lits[k]);
      }
    }
    first = false;
    do {
      --index;
    } while (!seen_[trail_[index].var()]);
    p = trail_[index];
    confl = reason_[p.var()];
    seen_[p.var()] = 0;
    --pending;
  } while (pending > 0);
  learnt[0] = ~p;
  for (Var v : touched) seen_[v] = 0;

  backtrack_level = 0;
  if (learnt.size() > 1) {
    std::size_t max_i = 1;
    for (std::size_t k = 2; k < learnt.size(); ++k) {
      if (level_[learnt[k].var()] > level_[learnt[max_i].var()]) max_i = k;
    }
    std::swap(learnt[1], learnt[max_i]);
    backtrack_level = level_[learnt[1].var()];
  }
}

void Solver::cancel_until(int level) {
  if (decision_level() <= level) return;
  for (std::size_t i = trail_.size(); i > trail_lim_[level]; --i) {
    const Var v = trail_[i - 1].var();
    phase_[v] = assigns_[v] > 0;
    assigns_[v] = 0;
    reason_[v] = kNoReason;
    heap_insert(v);
  }
  trail_.resize(trail_lim_[level]);
  trail_lim_.resize(level);
  qhead_ = trail_.size();
}

Lit Solver::pick_branch() {
  while (!heap_.empty()) {
    const Var v = heap_pop();
    if (assigns_[v] == 0) return Lit(v, !phase_[v]);
  }
  return Lit(static_cast<Var>(assigns_.size()), false);  // sentinel: everything assigned
}

// Returns through `done` whether the call reached a verdict; false means restart.
bool Solver::search(std::span<const Lit> assumptions, std::uint64_t conflict_budget, bool& done) {
  std::uint64_t conflicts = 0;
  std::vector<Lit> learnt;
  while (true) {
    const int confl = propagate();
    if (confl != kNoReason) {
      ++stats_.conflicts;
      ++conflicts;
      if (decision_level() == 0) {
        ok_ = false;
        done = true;
        return false;
      }
      int bt = 0;
      analyze(confl, learnt, bt);
      cancel_until(bt);
      if (learnt.size() == 1) {
        enqueue(learnt[0], kNoReason);
      } else {
        const int ci = add_learnt(learnt);
        enqueue(clauses_[ci].lits[0], ci);
      }
      decay();
      continue;
    }
    if (conflicts >= conflict_budget) {
      cancel_until(0);
      return false;
    }
    Lit next;
    bool have_next = false;
    while (static_cast<std::size_t>(decision_level()) < assumptions.size()) {
      const Lit a = assumptions[decision_level()];
      const int v = lit_value(a);
      if (v > 0) {
        trail_lim_.push_back(trail_.size());
        continue;
      }
      if (v < 0) {
        done = true;
        return false;
      }
      next = a;
      have_next = true;
      break;
    }
    if (!have_next) {
      next = pick_branch();
      if (next.var() == assigns_.size()) {
        model_ = assigns_;
        if (final_check_ != nullptr) {
          std::vector<std::vector<Lit>> extra;
          final_check_->check(*this, extra);
          if (!extra.empty()) {
            ++stats_.theory_rounds;
            for (auto& c : extra) add_clause(std::move(c));
            if (!ok_) {
              done = true;
              return false;
            }
            continue;
          }
        }
        done = true;
        return true;
      }
    }
    ++stats_.decisions;
    if (++decisions_this_call_ > max_decisions_) {
      cancel_until(0);
      throw Error(ErrorCode::kDecisionCap,
                  "solver decision cap of " + std::to_string(max_decisions_) + " exceeded");
    }
    trail_lim_.push_back(trail_.size());
    enqueue(next, kNoReason);
  }
}

bool Solver::solve(std::span<const Lit> assumptions) {
  ++stats_.solves;
  decisions_this_call_ = 0;
  cancel_until(0);
  if (!ok_) return false;
  if (propagate() != kNoReason) {
    ok_ = false;
    return false;
  }
  for (int round = 0;; ++round) {
    bool done = false;
    const auto budget = static_cast<std::uint64_t>(luby(2.0, round) * 100.0);
    const bool result = search(assumptions, budget, done);
    if (done) {
      cancel_until(0);
      return result;
    }
  }
}

void Solver::bump(Var v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_index_[v] >= 0) heap_up(static_cast<std::size_t>(heap_index_[v]));
}

void Solver::heap_insert(Var v) {
  if (heap_index_[v] >= 0) return;
  heap_index_[v] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_.size() - 1);
}

void Solver::heap_up(std::size_t i) {
  const Var v = heap_[i];
  while (i > 0) {
    const std::size_t parent = (i - 1) / 2;
    if (!heap_less(v, heap_[parent])) break;
    heap_[i] = heap_[parent];
    heap_index_[heap_[i]] = static_cast<int>(i);
    i = parent;
  }
  heap_[i] = v;
  heap_index_[v] = static_cast<int>(i);
}

void Solver::heap_down(std::size_t i) {
  const Var v = heap_[i];
  while (true) {
    std::size_t child = 2 * i + 1;
    if (child >= heap_.size()) break;
    if (child + 1 < heap_.size() && heap_less(heap_[child + 1], heap_[child])) ++child;
    if (!heap_less(heap_[child], v)) break;
    heap_[i] = heap_[child];
    heap_index_[heap_[i]] = static_cast<int>(i);
    i = child;
  }
  heap_[i] = v;
  heap_index_[v] = static_cast<int>(i);
}

Var Solver::heap_pop() {
  const Var top = heap_.front();
  heap_index_[top] = -1;
  const Var last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_index_[last] = 0;
    heap_down(0);
  }
  return top;
}

}  // namespace prefrev::sat
