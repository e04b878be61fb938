#include "gjpo/state_graph.hpp"

#include <algorithm>
#include <sstream>

#include "gjpo/error.hpp"

namespace gjpo {

namespace {

enum Color : std::uint8_t { kWhite = 0, kOnPath = 1, kDone = 2 };

std::string node_name(StateId v, unsigned order, bool bit_labels) {
  if (!bit_labels) return std::to_string(v);
  return RegisterState(order, v).to_string();
}

}  // namespace

StateGraph build_state_graph(const FeedbackFunction& f, unsigned max_order) {
  check_order(f.order(), max_order);
  StateGraph g(f);
  const std::size_t size = f.state_count();
  const StateId mask = static_cast<StateId>(size - 1);

  g.successor_.resize(size);
  g.in_degree_.assign(size, 0);
  for (std::size_t v = 0; v < size; ++v) {
    const auto next = static_cast<StateId>(((v << 1) & mask) | static_cast<StateId>(f.eval(static_cast<StateId>(v))));
    g.successor_[v] = next;
    ++g.in_degree_[next];
  }

  // Pointer chasing with three colours. Scanning start states in ascending
  // order means a new component is always entered through its smallest state,
  // so discovery order is the smallest-member order.
  std::vector<std::uint8_t> color(size, kWhite);
  g.component_id_.assign(size, 0);
  g.on_cycle_ = BitArray(size);
  std::vector<StateId> path;
  for (std::size_t start = 0; start < size; ++start) {
    if (color[start] != kWhite) continue;
    path.clear();
    auto x = static_cast<StateId>(start);
    while (color[x] == kWhite) {
      color[x] = kOnPath;
      path.push_back(x);
      x = g.successor_[x];
    }
    ComponentId id;
    if (color[x] == kOnPath) {
      id = static_cast<ComponentId>(g.components_.size());
      const auto entry = std::find(path.rbegin(), path.rend(), x);
      std::vector<StateId> cycle(std::prev(entry.base()), path.end());
      std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
      for (auto c : cycle) g.on_cycle_.set(c);
      g.components_.push_back(Component{id, std::move(cycle), 0});
    } else {
      id = g.component_id_[x];
    }
    for (auto p : path) {
      color[p] = kDone;
      g.component_id_[p] = id;
    }
    g.components_[id].members += path.size();
  }
  return g;
}

const Component& StateGraph::component(ComponentId id) const {
  if (id >= components_.size()) {
    fail(ErrorKind::InvalidArgument, "no component with id " + std::to_string(id));
  }
  return components_[id];
}

std::vector<StateId> StateGraph::leaves_of(ComponentId id) const {
  (void)component(id);
  std::vector<StateId> leaves;
  for (std::size_t v = 0; v < successor_.size(); ++v) {
    if (in_degree_[v] == 0 && component_id_[v] == id) leaves.push_back(static_cast<StateId>(v));
  }
  return leaves;
}

std::vector<StateId> leaves_of(const StateGraph& g, ComponentId component) { return g.leaves_of(component); }

bool unique_cycle_check(const StateGraph& g) { return g.components().size() == 1; }

std::string export_dot(const StateGraph& g, const DotOptions& options) {
  const unsigned n = g.order();
  auto name = [&](StateId v) { return '"' + node_name(v, n, options.bit_labels) + '"'; };
  std::ostringstream out;
  out << "digraph state_graph {\n";
  out << "  node [shape=box, style=rounded];\n";
  auto emit_node = [&](StateId v, const char* indent) {
    out << indent << name(v);
    if (g.on_cycle(v)) out << " [style=\"rounded,filled\", fillcolor=lightgray]";
    out << ";\n";
  };
  if (options.clusters) {
    // Bucket states per component so each cluster is written in one pass.
    std::vector<std::vector<StateId>> members(g.components().size());
    for (std::size_t v = 0; v < g.state_count(); ++v) {
      members[g.component_of(static_cast<StateId>(v))].push_back(static_cast<StateId>(v));
    }
    for (const auto& c : g.components()) {
      out << "  subgraph cluster_" << c.id << " {\n";
      out << "    label=\"G" << c.id << "\";\n";
      for (auto v : members[c.id]) emit_node(v, "    ");
      out << "  }\n";
    }
  } else {
    for (std::size_t v = 0; v < g.state_count(); ++v) emit_node(static_cast<StateId>(v), "  ");
  }
  for (std::size_t v = 0; v < g.state_count(); ++v) {
    out << "  " << name(static_cast<StateId>(v)) << " -> " << name(g.successor(static_cast<StateId>(v))) << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace gjpo
