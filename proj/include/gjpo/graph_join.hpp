#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gjpo/gpo.hpp"
#include "gjpo/sequence.hpp"
#include "gjpo/state_graph.hpp"

namespace gjpo {

/// Preference companion pair (w, ~w)_{from,to}: w lies on the cycle of
/// component `from` and its companion (last bit flipped) is a leaf of
/// component `to`, with from != to. Joining along it forces w as the
/// successor of w's off-cycle child.
struct Pcp {
  StateId w = 0;
  ComponentId from = 0;
  ComponentId to = 0;

  StateId companion() const noexcept { return w ^ 1u; }

  friend bool operator==(const Pcp&, const Pcp&) = default;
  friend auto operator<=>(const Pcp&, const Pcp&) = default;
};

/// Preference adjacency graph: a directed multigraph on components with one
/// edge per PCP. Edges are kept sorted by (from, to, w).
class Pag {
 public:
  Pag() = default;
  Pag(std::size_t component_count, std::vector<Pcp> edges);

  std::size_t component_count() const noexcept { return component_count_; }
  std::span<const Pcp> edges() const noexcept { return edges_; }
  /// K[from][to]: PCPs from `from` into `to`, ascending by w.
  std::span<const Pcp> between(ComponentId from, ComponentId to) const;

 private:
  std::size_t component_count_ = 0;
  std::vector<Pcp> edges_;
  std::vector<std::size_t> offsets_;  // (from * t + to) -> first edge; size t*t + 1
};

/// Scans every cycle state once. Requires a standard feedback function.
Pag find_pcps(const StateGraph& g);

/// Undirected multigraph on vertices 0..vertex_count-1. Parallel edges are
/// distinct entries.
struct UndirectedGraph {
  std::size_t vertex_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// Edge {i, j} (i < j) iff K[i][j] or K[j][i] is nonempty; no multi-edges.
UndirectedGraph simplified_graph(const Pag& pag);

/// All spanning trees, each given as ascending indices into graph.edges.
/// Recursive contraction/deletion on the lowest-index remaining edge, with
/// deletion branches pruned when they would disconnect the graph. Empty
/// iff the graph is disconnected.
std::vector<std::vector<std::size_t>> spanning_trees(const UndirectedGraph& graph);

using IntMatrix = std::vector<std::vector<std::int64_t>>;

IntMatrix laplacian(const UndirectedGraph& graph);

/// Determinant of the matrix with the first row and column removed, computed
/// exactly by fraction-free (Bareiss) elimination. For a Laplacian this is
/// the number of spanning trees. A 1x1 matrix gives 1.
std::int64_t count_spanning_trees_kirchhoff(const IntMatrix& laplacian);

/// Anti-arborescence of the PAG: one PCP leaving every non-root component,
/// all directed paths ending at the root.
struct RootedSpanningTree {
  ComponentId root = 0;
  std::vector<Pcp> edges;  // ordered by `from`

  friend bool operator==(const RootedSpanningTree&, const RootedSpanningTree&) = default;
};

/// Every rooted spanning tree of the PAG in a deterministic order: by root,
/// then by spanning tree of the simplified graph (enumeration order), then by
/// PCP choices in descending w, the edge with the smallest `from` varying slowest.
std::vector<RootedSpanningTree> rooted_spanning_trees(const Pag& pag);
/// Only the trees rooted at `root`, in the same relative order.
std::vector<RootedSpanningTree> rooted_spanning_trees(const Pag& pag, ComponentId root);

/// Throws InvalidTree unless every edge is a PCP of g and the edges form an
/// anti-arborescence over all components towards tree.root.
void validate_tree(const StateGraph& g, const RootedSpanningTree& tree);

/// Graph Joining Prefer-Opposite for one tree and initial state. The initial
/// state must lie on the root component's cycle. The output is de Bruijn.
GpoRun gjpo_run(const StateGraph& g, const RootedSpanningTree& tree, const RegisterState& initial);
PeriodicSequence gjpo_generate(const StateGraph& g, const RootedSpanningTree& tree, const RegisterState& initial);

/// Canonical outputs with multiplicities over every (rooted tree, initial
/// state on the root cycle) pair.
struct Enumeration {
  std::size_t rooted_trees = 0;
  std::size_t runs = 0;
  std::map<PeriodicSequence, std::size_t> multiplicity;  // key: canonical rotation

  std::size_t distinct() const noexcept { return multiplicity.size(); }
  /// multiplicity -> number of distinct sequences with that multiplicity.
  std::map<std::size_t, std::size_t> histogram() const;
};

struct EnumerateOptions {
  /// Worker threads; results do not depend on this value.
  unsigned jobs = 1;
  /// Restrict to trees rooted at this component.
  std::optional<ComponentId> root;
};

/// Throws NoRootedTrees when the PAG has no rooted spanning tree (for the
/// requested root, if any).
Enumeration enumerate_outputs(const StateGraph& g, const EnumerateOptions& options = {});
Enumeration enumerate_outputs(const FeedbackFunction& f, const EnumerateOptions& options = {});

}  // namespace gjpo
