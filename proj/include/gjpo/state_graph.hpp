#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gjpo/bit_array.hpp"
#include "gjpo/feedback.hpp"

namespace gjpo {

using ComponentId = std::uint32_t;

/// A weakly connected component of a functional graph: exactly one cycle
/// (a loop when the cycle has length 1) with in-trees hanging off it.
struct Component {
  ComponentId id = 0;
  /// Cycle states in edge order, starting from the smallest id:
  /// successor(cycle[k]) == cycle[(k + 1) % cycle.size()].
  std::vector<StateId> cycle;
  std::size_t members = 0;
};

/// Functional state graph of an FSR: one outgoing edge per state.
///
/// Components are numbered by the smallest state id they contain, so
/// component labels are reproducible across builds.
class StateGraph {
 public:
  unsigned order() const noexcept { return function_.order(); }
  const FeedbackFunction& function() const noexcept { return function_; }
  std::size_t state_count() const noexcept { return successor_.size(); }

  StateId successor(StateId v) const noexcept { return successor_[v]; }
  ComponentId component_of(StateId v) const noexcept { return component_id_[v]; }
  unsigned in_degree(StateId v) const noexcept { return in_degree_[v]; }
  bool is_leaf(StateId v) const noexcept { return in_degree_[v] == 0; }
  bool on_cycle(StateId v) const noexcept { return on_cycle_.test(v); }

  std::span<const Component> components() const noexcept { return components_; }
  const Component& component(ComponentId id) const;

  /// Zero in-degree states of one component, ascending. Computed on demand.
  std::vector<StateId> leaves_of(ComponentId id) const;

 private:
  friend StateGraph build_state_graph(const FeedbackFunction& f, unsigned max_order);
  explicit StateGraph(FeedbackFunction f) : function_(std::move(f)) {}

  FeedbackFunction function_;
  std::vector<StateId> successor_;
  std::vector<ComponentId> component_id_;
  std::vector<std::uint8_t> in_degree_;
  BitArray on_cycle_;
  std::vector<Component> components_;
};

/// Builds the graph in one O(2^n) sweep. Orders above `max_order` raise Resource.
StateGraph build_state_graph(const FeedbackFunction& f, unsigned max_order = kDefaultMaxOrder);

std::vector<StateId> leaves_of(const StateGraph& g, ComponentId component);

/// True iff the graph has a single component (hence a single cycle or loop).
bool unique_cycle_check(const StateGraph& g);

struct DotOptions {
  /// Label nodes with bit strings; otherwise with decimal state ids.
  bool bit_labels = true;
  /// Group each component into a cluster subgraph.
  bool clusters = true;
};

/// Byte-deterministic Graphviz rendering. Cycle states are filled.
std::string export_dot(const StateGraph& g, const DotOptions& options = {});

}  // namespace gjpo
