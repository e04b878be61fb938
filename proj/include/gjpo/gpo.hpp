#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gjpo/feedback.hpp"
#include "gjpo/sequence.hpp"
#include "gjpo/state_graph.hpp"

namespace gjpo {

enum class RunStatus {
  Completed,
  /// The step bound was hit before the initial state came back.
  NonPeriodicGuard,
};

/// Trace of one greedy run. `states` lists every state in visit order,
/// starting with the initial state; the printed bit at each step is the
/// first bit of the state.
struct GpoRun {
  unsigned order = 0;
  RunStatus status = RunStatus::Completed;
  std::vector<StateId> states;
  /// Steps taken through a forced (joining) assignment.
  std::size_t forced_steps = 0;

  std::vector<std::uint8_t> bits() const;
  /// One period of the output; Completed runs only.
  PeriodicSequence sequence() const;
};

/// Generalized Prefer-Opposite: from state c, move to c_1..c_{n-1}, !f(c)
/// unless that state was already visited, else to c_1..c_{n-1}, f(c); stop on
/// returning to the initial state.
///
/// Requires a standard f (LeafInitialState / NonStandardFunction otherwise)
/// and a non-leaf initial state. Under those conditions no state other than
/// the initial one is ever revisited, so the run ends within 2^n steps.
GpoRun gpo_run(const FeedbackFunction& f, const RegisterState& initial);
PeriodicSequence gpo_generate(const FeedbackFunction& f, const RegisterState& initial);

/// Same loop for arbitrary f and initial state, bounded at 2^(n+1) steps.
GpoRun gpo_run_unchecked(const FeedbackFunction& f, const RegisterState& initial);

/// The GPO loop with a set of forced successors: whenever the f-successor of
/// the current state is in `forced`, it is taken and removed from the set.
/// No validity checks; bounded at 2^(n+1) steps.
GpoRun forced_run_unchecked(const FeedbackFunction& f, std::span<const StateId> forced, const RegisterState& initial);

/// A state is a leaf iff neither of its two possible predecessors maps to it.
bool is_leaf(const FeedbackFunction& f, const RegisterState& s);

/// The output is de Bruijn iff the graph has one component and the initial
/// state lies on its cycle.
bool gpo_guarantees_de_bruijn(const StateGraph& g, const RegisterState& initial);
bool gpo_guarantees_de_bruijn(const FeedbackFunction& f, const RegisterState& initial);

struct InputPair {
  FeedbackFunction function;
  RegisterState initial;
};

struct ReverseOptions {
  /// Value given to g on (n-1)-windows that never occur in the sequence.
  bool unseen_value = false;
};

/// Every n-window of s whose (n-1)-prefix occurs twice per period, where
/// n = nonlinear_complexity(s) >= 2. Ascending by state id.
std::vector<RegisterState> initial_state_candidates(const PeriodicSequence& s);

/// Builds a standard f of order n = nonlinear_complexity(s) and an initial
/// state u with gpo_generate(f, u) a rotation of s. u is the first occurrence
/// of the lexicographically smallest (n-1)-window that occurs twice, extended
/// by the bit that follows it there.
InputPair reverse_engineer(const PeriodicSequence& s, const ReverseOptions& options = {});

/// As above with a caller-chosen initial state, which must be one of
/// initial_state_candidates(s).
InputPair reverse_engineer_from(const PeriodicSequence& s, const RegisterState& initial,
                                const ReverseOptions& options = {});

}  // namespace gjpo
