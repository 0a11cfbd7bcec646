// Epistemic states: revision, contraction, the induced belief set, and the postulate harness.
#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "prefrev/extension.hpp"
#include "prefrev/fixpoint.hpp"
#include "prefrev/limits.hpp"
#include "prefrev/theory.hpp"

namespace prefrev {

enum class Operation : std::uint8_t { kRevise, kContract };

std::string_view operation_name(Operation op);

struct HistoryEntry {
  Operation op = Operation::kRevise;
  Term name;            // the name the added formula received
  std::string formula;  // the input formula as given (before contraction negates it)
  std::uint64_t seq = 0;

  friend bool operator==(const HistoryEntry& a, const HistoryEntry& b) {
    return a.op == b.op && a.name == b.name && a.formula == b.formula && a.seq == b.seq;
  }
};

/// An immutable theory together with the operations that produced it from an initial one.
class EpistemicState {
 public:
  EpistemicState();
  /// Throws whatever grounding throws.
  explicit EpistemicState(TheorySpec initial);

  const TheorySpec& initial() const noexcept { return initial_; }
  /// The initial specification plus every added premise and constraint.
  const TheorySpec& spec() const noexcept { return spec_; }
  const GroundTheory& theory() const noexcept { return *theory_; }
  const std::vector<HistoryEntry>& history() const noexcept { return history_; }

  /// T * p: adds p as a premise under the next free d-name.
  EpistemicState revise(const Formula& p) const;
  /// "Do not believe p": adds the constraint ~p under the next free c-name.
  EpistemicState contract(const Formula& p) const;

  /// Applies `history` to `initial` again. Throws Error(kSession) if a recorded name differs from
  /// the one the replay assigns.
  static EpistemicState replay(TheorySpec initial, const std::vector<HistoryEntry>& history);

 private:
  EpistemicState add(Operation op, const Formula& input) const;

  TheorySpec initial_;
  TheorySpec spec_;
  std::shared_ptr<const GroundTheory> theory_;
  std::vector<HistoryEntry> history_;
};

/// Bel(T): the accepted belief of the least fixed point.
BeliefRepresentation belief(const EpistemicState& state, const Limits& limits = {});

/// Bel(T) + A. When Bel(T) entails ~A the result is inconsistent and entails everything.
BeliefRepresentation expand_belief(const EpistemicState& state, const Formula& a, const Limits& limits = {});

enum class Verdict : std::uint8_t { kHolds, kFails, kNotApplicable };

std::string_view verdict_name(Verdict v);

struct PostulateResult {
  std::string id;  // "T*1" .. "T*8"
  Verdict verdict = Verdict::kHolds;
  /// For failures, the deciding membership facts; for non-applicability, the reason.
  std::string witness;
};

struct PostulateReport {
  std::vector<PostulateResult> results;
  /// Formulas the containment postulates were tested on.
  std::vector<Formula> panel;

  const PostulateResult& at(std::string_view id) const;
  std::string to_string() const;
};

/// Evaluates the eight reformulated postulates on the instance (state, A, B). Containments are
/// checked on a panel: the atoms of the state, A and B and their negations, A and B themselves,
/// and `probes`. A failure is definitive; a pass only covers the panel.
PostulateReport check_postulates(const EpistemicState& state, const Formula& a, const Formula& b,
                                 std::span<const Formula> probes = {}, const Limits& limits = {});

}  // namespace prefrev
