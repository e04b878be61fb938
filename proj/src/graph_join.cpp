#include "gjpo/graph_join.hpp"

#include <algorithm>
#include <exception>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <thread>

#include "gjpo/error.hpp"
#include "walk.hpp"

namespace gjpo {

// ---------------------------------------------------------------------------
// PCP discovery

Pag::Pag(std::size_t component_count, std::vector<Pcp> edges)
    : component_count_(component_count), edges_(std::move(edges)) {
  const std::size_t t = component_count_;
  for (const auto& e : edges_) {
    if (e.from >= t || e.to >= t) fail(ErrorKind::InvalidArgument, "PCP refers to a missing component");
    if (e.from == e.to) fail(ErrorKind::InvalidArgument, "a PAG has no self-edges");
  }
  std::sort(edges_.begin(), edges_.end(), [](const Pcp& a, const Pcp& b) {
    return std::tie(a.from, a.to, a.w) < std::tie(b.from, b.to, b.w);
  });
  offsets_.assign(t * t + 1, 0);
  for (const auto& e : edges_) ++offsets_[e.from * t + e.to + 1];
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
}

std::span<const Pcp> Pag::between(ComponentId from, ComponentId to) const {
  if (from >= component_count_ || to >= component_count_) {
    fail(ErrorKind::InvalidArgument, "component id out of range");
  }
  const std::size_t slot = from * component_count_ + to;
  return std::span<const Pcp>(edges_).subspan(offsets_[slot], offsets_[slot + 1] - offsets_[slot]);
}

Pag find_pcps(const StateGraph& g) {
  if (!g.function().is_standard()) {
    fail(ErrorKind::NonStandardFunction, "preference companion pairs need a standard feedback function");
  }
  std::vector<Pcp> edges;
  for (const auto& c : g.components()) {
    for (auto w : c.cycle) {
      const StateId partner = w ^ 1u;
      const ComponentId target = g.component_of(partner);
      if (target != c.id && g.is_leaf(partner)) edges.push_back(Pcp{w, c.id, target});
    }
  }
  return Pag(g.components().size(), std::move(edges));
}

UndirectedGraph simplified_graph(const Pag& pag) {
  UndirectedGraph h{pag.component_count(), {}};
  const auto t = static_cast<ComponentId>(pag.component_count());
  for (ComponentId i = 0; i < t; ++i) {
    for (ComponentId j = i + 1; j < t; ++j) {
      if (!pag.between(i, j).empty() || !pag.between(j, i).empty()) h.edges.emplace_back(i, j);
    }
  }
  return h;
}

// ---------------------------------------------------------------------------
// Spanning trees

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

class SpanningTreeEnumerator {
 public:
  explicit SpanningTreeEnumerator(const UndirectedGraph& graph) : graph_(graph) {}

  std::vector<std::vector<std::size_t>> run() {
    if (graph_.vertex_count == 0) return {};
    std::vector<std::size_t> all(graph_.edges.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    DisjointSets sets(graph_.vertex_count);
    if (!connects(sets, all, graph_.vertex_count)) return {};
    recurse(std::move(all), std::move(sets), graph_.vertex_count);
    return std::move(trees_);
  }

 private:
  bool connects(DisjointSets sets, const std::vector<std::size_t>& edges, std::size_t groups) const {
    for (auto e : edges) {
      if (sets.unite(graph_.edges[e].first, graph_.edges[e].second)) --groups;
    }
    return groups == 1;
  }

  void recurse(std::vector<std::size_t> remaining, DisjointSets sets, std::size_t groups) {
    if (groups == 1) {
      trees_.push_back(chosen_);
      return;
    }
    // Edges inside a contracted vertex would close a cycle.
    std::erase_if(remaining, [&](std::size_t e) {
      return sets.find(graph_.edges[e].first) == sets.find(graph_.edges[e].second);
    });
    if (remaining.empty()) return;
    const std::size_t edge = remaining.front();
    std::vector<std::size_t> rest(remaining.begin() + 1, remaining.end());

    DisjointSets contracted = sets;
    contracted.unite(graph_.edges[edge].first, graph_.edges[edge].second);
    chosen_.push_back(edge);
    recurse(rest, std::move(contracted), groups - 1);
    chosen_.pop_back();

    if (connects(sets, rest, groups)) recurse(std::move(rest), std::move(sets), groups);
  }

  const UndirectedGraph& graph_;
  std::vector<std::size_t> chosen_;
  std::vector<std::vector<std::size_t>> trees_;
};

}  // namespace

std::vector<std::vector<std::size_t>> spanning_trees(const UndirectedGraph& graph) {
  for (const auto& [a, b] : graph.edges) {
    if (a >= graph.vertex_count || b >= graph.vertex_count) {
      fail(ErrorKind::InvalidArgument, "edge endpoint out of range");
    }
  }
  return SpanningTreeEnumerator(graph).run();
}

IntMatrix laplacian(const UndirectedGraph& graph) {
  const std::size_t n = graph.vertex_count;
  IntMatrix m(n, std::vector<std::int64_t>(n, 0));
  for (const auto& [a, b] : graph.edges) {
    if (a == b) continue;
    ++m[a][a];
    ++m[b][b];
    --m[a][b];
    --m[b][a];
  }
  return m;
}

// Bareiss intermediates are exact determinants of minors and can exceed 64 bits.
__extension__ using Wide = __int128;

std::int64_t count_spanning_trees_kirchhoff(const IntMatrix& matrix) {
  const std::size_t size = matrix.size();
  if (size == 0) fail(ErrorKind::InvalidArgument, "empty matrix");
  for (const auto& row : matrix) {
    if (row.size() != size) fail(ErrorKind::Dimension, "matrix must be square");
  }
  const std::size_t m = size - 1;
  if (m == 0) return 1;
  std::vector<std::vector<Wide>> a(m, std::vector<Wide>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) a[i][j] = matrix[i + 1][j + 1];
  }
  Wide previous = 1;
  int sign = 1;
  for (std::size_t k = 0; k < m; ++k) {
    if (a[k][k] == 0) {
      std::size_t pivot = k + 1;
      while (pivot < m && a[pivot][k] == 0) ++pivot;
      if (pivot == m) return 0;
      std::swap(a[k], a[pivot]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < m; ++i) {
      for (std::size_t j = k + 1; j < m; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / previous;
      }
    }
    previous = a[k][k];
  }
  const Wide det = sign * a[m - 1][m - 1];
  if (det > INT64_MAX || det < INT64_MIN) fail(ErrorKind::Resource, "spanning tree count overflows 64 bits");
  return static_cast<std::int64_t>(det);
}

// ---------------------------------------------------------------------------
// Rooted spanning trees

namespace {

// Orients one spanning tree of the simplified graph towards `root` and
// expands every combination of PCP choices along the oriented edges.
void expand_tree(const Pag& pag, const UndirectedGraph& h, const std::vector<std::size_t>& tree, ComponentId root,
                 std::vector<RootedSpanningTree>& out) {
  const std::size_t t = pag.component_count();
  std::vector<std::vector<std::size_t>> adjacent(t);
  for (auto e : tree) {
    adjacent[h.edges[e].first].push_back(h.edges[e].second);
    adjacent[h.edges[e].second].push_back(h.edges[e].first);
  }
  std::vector<std::size_t> parent(t, t);
  std::queue<std::size_t> frontier;
  frontier.push(root);
  parent[root] = root;
  while (!frontier.empty()) {
    const auto v = frontier.front();
    frontier.pop();
    for (auto u : adjacent[v]) {
      if (parent[u] == t) {
        parent[u] = v;
        frontier.push(u);
      }
    }
  }

  std::vector<std::span<const Pcp>> options;
  for (std::size_t v = 0; v < t; ++v) {
    if (v == root) continue;
    auto choices = pag.between(static_cast<ComponentId>(v), static_cast<ComponentId>(parent[v]));
    if (choices.empty()) return;  // this orientation is not available in the PAG
    options.push_back(choices);
  }

  std::vector<std::size_t> index(options.size(), 0);
  while (true) {
    RootedSpanningTree rooted{root, {}};
    rooted.edges.reserve(options.size());
    // Choices are taken from the largest w down.
    for (std::size_t k = 0; k < options.size(); ++k) {
      rooted.edges.push_back(options[k][options[k].size() - 1 - index[k]]);
    }
    out.push_back(std::move(rooted));
    // Odometer with the last edge varying fastest.
    std::size_t k = options.size();
    while (k > 0) {
      --k;
      if (++index[k] < options[k].size()) break;
      index[k] = 0;
      if (k == 0) return;
    }
    if (options.empty()) return;
  }
}

}  // namespace

std::vector<RootedSpanningTree> rooted_spanning_trees(const Pag& pag, ComponentId root) {
  if (root >= pag.component_count()) fail(ErrorKind::InvalidArgument, "root component out of range");
  const UndirectedGraph h = simplified_graph(pag);
  std::vector<RootedSpanningTree> out;
  for (const auto& tree : spanning_trees(h)) expand_tree(pag, h, tree, root, out);
  return out;
}

std::vector<RootedSpanningTree> rooted_spanning_trees(const Pag& pag) {
  const UndirectedGraph h = simplified_graph(pag);
  const auto trees = spanning_trees(h);
  std::vector<RootedSpanningTree> out;
  for (ComponentId root = 0; root < pag.component_count(); ++root) {
    for (const auto& tree : trees) expand_tree(pag, h, tree, root, out);
  }
  return out;
}

void validate_tree(const StateGraph& g, const RootedSpanningTree& tree) {
  const std::size_t t = g.components().size();
  auto reject = [](const std::string& why) { fail(ErrorKind::InvalidTree, why); };
  if (tree.root >= t) reject("root component does not exist");
  if (tree.edges.size() + 1 != t) {
    reject("a rooted spanning tree over " + std::to_string(t) + " components needs " + std::to_string(t - 1) +
           " edges, got " + std::to_string(tree.edges.size()));
  }
  std::vector<std::size_t> next(t, t);
  for (const auto& e : tree.edges) {
    const std::string label = "(" + RegisterState(g.order(), e.w).to_string() + ")";
    if (e.w >= g.state_count() || e.from >= t || e.to >= t || e.from == e.to) reject("malformed edge " + label);
    if (!g.on_cycle(e.w) || g.component_of(e.w) != e.from) reject(label + " is not a cycle state of its source");
    if (!g.is_leaf(e.companion()) || g.component_of(e.companion()) != e.to) {
      reject("companion of " + label + " is not a leaf of the target component");
    }
    if (e.from == tree.root) reject("the root component has an outgoing edge");
    if (next[e.from] != t) reject("component " + std::to_string(e.from) + " has two outgoing edges");
    next[e.from] = e.to;
  }
  for (std::size_t start = 0; start < t; ++start) {
    std::size_t v = start;
    for (std::size_t hops = 0; v != tree.root; ++hops) {
      if (hops >= t || next[v] == t) reject("component " + std::to_string(start) + " does not reach the root");
      v = next[v];
    }
  }
}

GpoRun gjpo_run(const StateGraph& g, const RootedSpanningTree& tree, const RegisterState& initial) {
  const FeedbackFunction& f = g.function();
  if (!f.is_standard()) fail(ErrorKind::NonStandardFunction, "GJPO needs a standard feedback function");
  if (initial.order() != f.order()) fail(ErrorKind::Dimension, "initial state order differs from function order");
  validate_tree(g, tree);
  if (!g.on_cycle(initial.id()) || g.component_of(initial.id()) != tree.root) {
    fail(ErrorKind::InitialStateOffRootCycle,
         initial.to_string() + " is not on the cycle of root component " + std::to_string(tree.root));
  }
  BitArray forced(g.state_count());
  for (const auto& e : tree.edges) forced.set(e.w);
  return detail::greedy_walk(f, initial.id(), &forced, g.state_count() + 1, true);
}

PeriodicSequence gjpo_generate(const StateGraph& g, const RootedSpanningTree& tree, const RegisterState& initial) {
  return gjpo_run(g, tree, initial).sequence();
}

// ---------------------------------------------------------------------------
// Enumeration

std::map<std::size_t, std::size_t> Enumeration::histogram() const {
  std::map<std::size_t, std::size_t> out;
  for (const auto& [sequence, count] : multiplicity) ++out[count];
  return out;
}

Enumeration enumerate_outputs(const StateGraph& g, const EnumerateOptions& options) {
  if (!g.function().is_standard()) fail(ErrorKind::NonStandardFunction, "enumeration needs a standard function");
  const Pag pag = find_pcps(g);
  const auto trees = options.root ? rooted_spanning_trees(pag, *options.root) : rooted_spanning_trees(pag);
  if (trees.empty()) fail(ErrorKind::NoRootedTrees, "the preference adjacency graph has no rooted spanning tree");

  struct Job {
    std::size_t tree;
    StateId initial;
  };
  std::vector<Job> jobs;
  for (std::size_t k = 0; k < trees.size(); ++k) {
    for (auto u : g.component(trees[k].root).cycle) jobs.push_back({k, u});
  }

  std::vector<std::optional<PeriodicSequence>> results(jobs.size());
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < jobs.size(); i += stride) {
      const auto& job = jobs[i];
      results[i] = gjpo_generate(g, trees[job.tree], RegisterState(g.order(), job.initial)).rotation_canonical();
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(options.jobs, 1, std::max<std::size_t>(jobs.size(), 1));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          work(w, workers);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& thread : pool) thread.join();
    for (auto& error : errors) {
      if (error) std::rethrow_exception(error);
    }
  }

  Enumeration out;
  out.rooted_trees = trees.size();
  out.runs = jobs.size();
  for (auto& r : results) ++out.multiplicity[std::move(*r)];
  return out;
}

Enumeration enumerate_outputs(const FeedbackFunction& f, const EnumerateOptions& options) {
  return enumerate_outputs(build_state_graph(f), options);
}

}  // namespace gjpo
