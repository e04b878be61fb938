#include "gjpo/gpo.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "gjpo/error.hpp"
#include "walk.hpp"

namespace gjpo {

namespace detail {

GpoRun greedy_walk(const FeedbackFunction& f, StateId initial, BitArray* forced, std::size_t max_steps,
                   bool strict) {
  const std::size_t size = f.state_count();
  const auto mask = static_cast<StateId>(size - 1);
  GpoRun run;
  run.order = f.order();
  run.states.push_back(initial);
  BitArray visited(size);
  visited.set(initial);
  StateId current = initial;
  for (std::size_t step = 0;; ++step) {
    if (step >= max_steps) {
      run.status = RunStatus::NonPeriodicGuard;
      return run;
    }
    const StateId keep = ((current << 1) & mask) | static_cast<StateId>(f.eval(current));
    StateId next;
    if (forced != nullptr && forced->test(keep)) {
      next = keep;
      forced->reset(keep);
      ++run.forced_steps;
    } else {
      const StateId opposite = keep ^ 1u;
      next = visited.test(opposite) ? keep : opposite;
    }
    if (next == initial) {
      run.status = RunStatus::Completed;
      return run;
    }
    if (strict && visited.test(next)) {
      throw std::logic_error("greedy walk revisited state " + RegisterState(f.order(), next).to_string() +
                             " before returning to the initial state");
    }
    visited.set(next);
    run.states.push_back(next);
    current = next;
  }
}

}  // namespace detail

std::vector<std::uint8_t> GpoRun::bits() const {
  std::vector<std::uint8_t> out;
  out.reserve(states.size());
  for (auto s : states) out.push_back(static_cast<std::uint8_t>((s >> (order - 1)) & 1u));
  return out;
}

PeriodicSequence GpoRun::sequence() const {
  if (status != RunStatus::Completed) {
    fail(ErrorKind::InvalidArgument, "run did not return to its initial state");
  }
  return PeriodicSequence(bits(), order);
}

namespace {

void require_same_order(const FeedbackFunction& f, const RegisterState& s) {
  if (f.order() != s.order()) {
    fail(ErrorKind::Dimension, "initial state has order " + std::to_string(s.order()) + ", function has order " +
                                   std::to_string(f.order()));
  }
}

std::size_t unchecked_bound(const FeedbackFunction& f) { return f.state_count() * 2; }

}  // namespace

bool is_leaf(const FeedbackFunction& f, const RegisterState& s) {
  require_same_order(f, s);
  const unsigned n = s.order();
  const StateId prefix = s.id() >> 1;  // s_0 .. s_{n-2}
  for (StateId a = 0; a < 2; ++a) {
    const StateId pred = (a << (n - 1)) | prefix;
    if (f.eval(pred) == s.last()) return false;
  }
  return true;
}

GpoRun gpo_run(const FeedbackFunction& f, const RegisterState& initial) {
  require_same_order(f, initial);
  if (!f.is_standard()) fail(ErrorKind::NonStandardFunction, "the feedback function depends on x0");
  if (is_leaf(f, initial)) {
    fail(ErrorKind::LeafInitialState,
         "initial state " + initial.to_string() + " is a leaf; the output would only be ultimately periodic");
  }
  return detail::greedy_walk(f, initial.id(), nullptr, f.state_count() + 1, true);
}

PeriodicSequence gpo_generate(const FeedbackFunction& f, const RegisterState& initial) {
  return gpo_run(f, initial).sequence();
}

GpoRun gpo_run_unchecked(const FeedbackFunction& f, const RegisterState& initial) {
  require_same_order(f, initial);
  return detail::greedy_walk(f, initial.id(), nullptr, unchecked_bound(f), false);
}

GpoRun forced_run_unchecked(const FeedbackFunction& f, std::span<const StateId> forced, const RegisterState& initial) {
  require_same_order(f, initial);
  BitArray marks(f.state_count());
  for (auto w : forced) {
    if (w >= f.state_count()) fail(ErrorKind::Dimension, "forced state out of range");
    marks.set(w);
  }
  return detail::greedy_walk(f, initial.id(), &marks, unchecked_bound(f), false);
}

bool gpo_guarantees_de_bruijn(const StateGraph& g, const RegisterState& initial) {
  require_same_order(g.function(), initial);
  return unique_cycle_check(g) && g.on_cycle(initial.id());
}

bool gpo_guarantees_de_bruijn(const FeedbackFunction& f, const RegisterState& initial) {
  return gpo_guarantees_de_bruijn(build_state_graph(f), initial);
}

// ---------------------------------------------------------------------------
// Reverse construction

namespace {

struct WindowCensus {
  unsigned order = 0;  // nonlinear complexity n
  std::vector<std::uint64_t> prefix_ids;  // (n-1)-window at each position
  std::unordered_map<std::uint64_t, unsigned> prefix_count;
};

WindowCensus census(const PeriodicSequence& s) {
  const std::size_t nlc = nonlinear_complexity(s);
  if (nlc < 2) {
    fail(ErrorKind::ComplexityTooLow,
         "nonlinear complexity " + std::to_string(nlc) + " is below 2; no GPO input pair exists");
  }
  if (nlc > kMaxSupportedOrder) {
    fail(ErrorKind::Resource, "nonlinear complexity " + std::to_string(nlc) + " exceeds the supported order");
  }
  WindowCensus c;
  c.order = static_cast<unsigned>(nlc);
  c.prefix_ids = window_ids(s.bits(), nlc - 1);
  for (auto id : c.prefix_ids) ++c.prefix_count[id];
  return c;
}

StateId window_at(const PeriodicSequence& s, std::size_t pos, unsigned length) {
  StateId id = 0;
  for (unsigned j = 0; j < length; ++j) id = (id << 1) | static_cast<StateId>(s.bit(pos + j));
  return id;
}

InputPair build_pair(const PeriodicSequence& s, const WindowCensus& c, std::size_t start, const ReverseOptions& options) {
  const unsigned n = c.order;
  const std::size_t period = s.period();
  const PeriodicSequence r = s.rotated(start);
  const std::size_t g_size = std::size_t{1} << (n - 1);

  // g over (n-1)-windows. The anchor window (the first n-1 bits of u) maps to
  // the last bit of u. Every other window maps to the complement of the bit
  // that follows its first occurrence in positions 1..N-1, and to the bit
  // itself at a second occurrence; the two rules agree because each n-window
  // occurs at most once.
  std::vector<std::int8_t> g(g_size, -1);
  const auto anchor = static_cast<std::size_t>(window_at(r, 0, n - 1));
  g[anchor] = static_cast<std::int8_t>(r.bit(n - 1));
  std::vector<std::uint8_t> seen(g_size, 0);
  for (std::size_t pos = 1; pos < period; ++pos) {
    const auto w = static_cast<std::size_t>(window_at(r, pos, n - 1));
    if (w == anchor) continue;
    const bool next = r.bit(pos + n - 1);
    g[w] = static_cast<std::int8_t>(seen[w] ? next : !next);
    seen[w] = 1;
  }

  const StateId low_mask = static_cast<StateId>(g_size - 1);
  auto f = FeedbackFunction::tabulate(n, [&](StateId v) {
    const auto value = g[v & low_mask];
    return value < 0 ? options.unseen_value : value == 1;
  });
  return InputPair{std::move(f), RegisterState(n, window_at(r, 0, n))};
}

}  // namespace

std::vector<RegisterState> initial_state_candidates(const PeriodicSequence& s) {
  const WindowCensus c = census(s);
  std::vector<StateId> ids;
  for (std::size_t pos = 0; pos < s.period(); ++pos) {
    if (c.prefix_count.at(c.prefix_ids[pos]) >= 2) ids.push_back(window_at(s, pos, c.order));
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::vector<RegisterState> out;
  out.reserve(ids.size());
  for (auto id : ids) out.emplace_back(c.order, id);
  return out;
}

InputPair reverse_engineer(const PeriodicSequence& s, const ReverseOptions& options) {
  const WindowCensus c = census(s);
  // Packed ids order like the windows themselves, so the smallest id is the
  // lexicographically smallest window.
  std::size_t best = s.period();
  for (std::size_t pos = 0; pos < s.period(); ++pos) {
    if (c.prefix_count.at(c.prefix_ids[pos]) < 2) continue;
    if (best == s.period() || c.prefix_ids[pos] < c.prefix_ids[best]) best = pos;
  }
  if (best == s.period()) {
    // Cannot happen for nonlinear complexity >= 2: some (n-1)-window repeats.
    throw std::logic_error("no repeated window in a sequence of complexity >= 2");
  }
  return build_pair(s, c, best, options);
}

InputPair reverse_engineer_from(const PeriodicSequence& s, const RegisterState& initial, const ReverseOptions& options) {
  const WindowCensus c = census(s);
  if (initial.order() != c.order) {
    fail(ErrorKind::Dimension, "initial state must have order " + std::to_string(c.order));
  }
  for (std::size_t pos = 0; pos < s.period(); ++pos) {
    if (window_at(s, pos, c.order) != initial.id()) continue;
    if (c.prefix_count.at(c.prefix_ids[pos]) < 2) break;
    return build_pair(s, c, pos, options);
  }
  fail(ErrorKind::InvalidArgument,
       "state " + initial.to_string() + " is not a window whose prefix occurs twice in the sequence");
}

}  // namespace gjpo
