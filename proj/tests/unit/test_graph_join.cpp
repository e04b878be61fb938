#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "gjpo/error.hpp"
#include "gjpo/families.hpp"
#include "gjpo/graph_join.hpp"
#include "support.hpp"

using namespace gjpo;
using test_support::kind_of;

namespace {

StateId id(const char* bits) { return RegisterState::parse(bits).id(); }
RegisterState st(const char* bits) { return RegisterState::parse(bits); }

const FeedbackFunction& three_components() {
  static const auto f = parse_function("x1 + x2*x3", 4);
  return f;
}

const FeedbackFunction& lifted_sum() {
  static const auto f = parse_function("lift:x0+x1+x2+x3@4", 5);
  return f;
}

RootedSpanningTree tree_with(const Pag& pag, ComponentId root, const std::vector<StateId>& ws) {
  RootedSpanningTree tree{root, {}};
  for (const auto& e : pag.edges()) {
    if (std::find(ws.begin(), ws.end(), e.w) != ws.end()) tree.edges.push_back(e);
  }
  return tree;
}

std::size_t brute_force_count(const UndirectedGraph& h) { return oracle::count_spanning_trees(h.vertex_count, h.edges); }

/// Everything checkable against the brute-force oracles for one function.
void check_against_oracle(const FeedbackFunction& f) {
  const auto g = build_state_graph(f);
  const auto pag = find_pcps(g);
  const auto o = oracle::analyze(test_support::table_of(f), f.order());
  std::map<unsigned, ComponentId> ids;
  for (auto label : o.component_labels) ids.emplace(label, static_cast<ComponentId>(ids.size()));

  std::vector<Pcp> expected;
  for (const auto& [w, from, to] : oracle::preference_pairs(o)) expected.push_back({w, ids.at(from), ids.at(to)});
  std::sort(expected.begin(), expected.end(),
            [](const Pcp& a, const Pcp& b) { return std::tie(a.from, a.to, a.w) < std::tie(b.from, b.to, b.w); });
  REQUIRE(std::vector<Pcp>(pag.edges().begin(), pag.edges().end()) == expected);

  const auto h = simplified_graph(pag);
  const auto trees = spanning_trees(h);
  CHECK(trees.size() == brute_force_count(h));
  CHECK(static_cast<std::size_t>(count_spanning_trees_kirchhoff(laplacian(h))) == trees.size());

  const auto rooted = rooted_spanning_trees(pag);
  if (expected.size() <= 20) {
    const auto by_subsets = oracle::rooted_trees_by_subsets(o, oracle::preference_pairs(o));
    std::set<std::pair<unsigned, std::vector<unsigned>>> found;
    for (const auto& tree : rooted) {
      std::vector<unsigned> ws;
      for (const auto& e : tree.edges) ws.push_back(e.w);
      std::sort(ws.begin(), ws.end());
      unsigned label = 0;
      for (const auto& [l, i] : ids) {
        if (i == tree.root) label = l;
      }
      found.insert({label, ws});
    }
    CHECK(found.size() == rooted.size());
    CHECK(found == by_subsets);
  }

  for (const auto& tree : rooted) {
    validate_tree(g, tree);
    CHECK(tree.edges.size() + 1 == g.components().size());
    std::set<oracle::Bits> forced;
    for (const auto& e : tree.edges) forced.insert(oracle::to_bits(e.w, f.order()));
    for (auto u : g.component(tree.root).cycle) {
      const auto run = gjpo_run(g, tree, RegisterState(f.order(), u));
      CHECK(run.forced_steps == tree.edges.size());
      CHECK(is_de_bruijn(run.sequence(), f.order()));
      const auto reference = oracle::prefer_opposite_greedy(test_support::rule_of(f), oracle::to_bits(u, f.order()),
                                                            (std::size_t{1} << f.order()) + 1, forced);
      REQUIRE(reference.has_value());
      CHECK(run.sequence().to_string() == oracle::least_period(*reference));
    }
  }
}

}  // namespace

TEST_SUITE("graph-join") {
  TEST_CASE("PCPs of x1 + x2*x3") {
    const auto g = build_state_graph(three_components());
    const auto pag = find_pcps(g);
    // Components: 0 = {0000 loop}, 1 = cycle through 0010, 2 = cycle through 0111.
    const std::vector<Pcp> expected{
        {id("0000"), 0, 1}, {id("1001"), 1, 0}, {id("0010"), 1, 2},
        {id("0100"), 1, 2}, {id("1011"), 2, 1}, {id("1101"), 2, 1},
    };
    CHECK(std::vector<Pcp>(pag.edges().begin(), pag.edges().end()) == expected);
    CHECK(pag.between(1, 2).size() == 2);
    CHECK(pag.between(0, 2).empty());
    for (const auto& e : pag.edges()) {
      CHECK(g.on_cycle(e.w));
      CHECK(g.component_of(e.w) == e.from);
      CHECK(g.is_leaf(e.companion()));
      CHECK(g.component_of(e.companion()) == e.to);
    }

    const auto h = simplified_graph(pag);
    CHECK(h.vertex_count == 3);
    CHECK(h.edges == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}});
    CHECK(spanning_trees(h).size() == 1);
  }

  TEST_CASE("rooted trees and outputs of x1 + x2*x3") {
    const auto g = build_state_graph(three_components());
    const auto pag = find_pcps(g);
    const ComponentId root = g.component_of(id("1110"));
    const auto trees = rooted_spanning_trees(pag, root);
    REQUIRE(trees.size() == 2);
    CHECK(rooted_spanning_trees(pag).size() == 6);

    const auto via_0100 = tree_with(pag, root, {id("0000"), id("0100")});
    const auto via_0010 = tree_with(pag, root, {id("0000"), id("0010")});
    CHECK(std::find(trees.begin(), trees.end(), via_0100) != trees.end());
    CHECK(std::find(trees.begin(), trees.end(), via_0010) != trees.end());

    CHECK(gjpo_generate(g, via_0100, st("1110")).to_string() == "1110000110100101");
    CHECK(gjpo_generate(g, via_0100, st("1101")).to_string() == "1101000011001011");
    CHECK(gjpo_generate(g, via_0100, st("1011")).to_string() == "1011000011110100");
    CHECK(gjpo_generate(g, via_0010, st("1110")).to_string() == "1110000101001101");
    CHECK(gjpo_generate(g, via_0010, st("1011")).to_string() == "1011000010100111");
    CHECK(gjpo_generate(g, via_0010, st("1101")).to_string() == "1101011000010011");

    const auto e = enumerate_outputs(g, EnumerateOptions{1, root});
    CHECK(e.rooted_trees == 2);
    CHECK(e.runs == 8);
    CHECK(e.distinct() == 6);
    for (const char* s : {"1110000110100101", "1101000011001011", "1011000011110100", "1110000101001101"}) {
      CHECK(e.multiplicity.count(PeriodicSequence::parse(s).rotation_canonical()) == 1);
    }
    for (const auto& [s, count] : e.multiplicity) {
      CHECK(is_de_bruijn(s, 4));
      CHECK(s == s.rotation_canonical());
    }
  }

  TEST_CASE("GJPO input checks") {
    const auto g = build_state_graph(three_components());
    const auto pag = find_pcps(g);
    const ComponentId root = g.component_of(id("1110"));
    const auto tree = tree_with(pag, root, {id("0000"), id("0100")});
    CHECK(kind_of([&] { (void)gjpo_generate(g, tree, st("0010")); }) == ErrorKind::InitialStateOffRootCycle);
    CHECK(kind_of([&] { (void)gjpo_generate(g, tree, st("1111")); }) == ErrorKind::InitialStateOffRootCycle);
    CHECK(kind_of([&] { (void)gjpo_generate(g, tree, st("111")); }) == ErrorKind::Dimension);

    auto wrong_root = tree;
    wrong_root.root = 0;
    CHECK(kind_of([&] { validate_tree(g, wrong_root); }) == ErrorKind::InvalidTree);
    auto too_short = tree;
    too_short.edges.pop_back();
    CHECK(kind_of([&] { validate_tree(g, too_short); }) == ErrorKind::InvalidTree);
    auto not_a_pcp = tree;
    not_a_pcp.edges[0].w = id("0001");
    CHECK(kind_of([&] { validate_tree(g, not_a_pcp); }) == ErrorKind::InvalidTree);
    auto bad_root = tree;
    bad_root.root = 9;
    CHECK(kind_of([&] { validate_tree(g, bad_root); }) == ErrorKind::InvalidTree);
  }

  TEST_CASE("two PCPs out of one component are not a tree") {
    const auto f = three_components();
    const auto g = build_state_graph(f);
    const auto pag = find_pcps(g);
    const ComponentId root = g.component_of(id("1110"));
    // Both joins leave the middle component, so the loop component is never reached.
    const auto bad = tree_with(pag, root, {id("0100"), id("1001")});
    CHECK(kind_of([&] { validate_tree(g, bad); }) == ErrorKind::InvalidTree);
    CHECK(kind_of([&] { (void)gjpo_generate(g, bad, st("1011")); }) == ErrorKind::InvalidTree);

    const std::vector<StateId> forced{id("0100"), id("1001")};
    const auto a = forced_run_unchecked(f, forced, st("1011"));
    REQUIRE(a.status == RunStatus::Completed);
    CHECK(a.sequence().to_string() == "101100111101000");
    CHECK_FALSE(is_de_bruijn(a.sequence(), 4));
    // From the loop the walk closes up before reaching the 1011 cycle. The
    // forced successor is keyed on the f-successor, so 0010 is also steered to 0100.
    const auto b = forced_run_unchecked(f, forced, st("0000"));
    REQUIRE(b.status == RunStatus::Completed);
    const auto reference =
        oracle::prefer_opposite_greedy(test_support::rule_of(f), "0000", 17, std::set<oracle::Bits>{"0100", "1001"});
    REQUIRE(reference.has_value());
    CHECK(b.sequence().to_string() == *reference);
    CHECK(b.sequence().to_string() == "000011001");
    for (auto v : b.states) CHECK_FALSE((g.on_cycle(v) && g.component_of(v) == root));
  }

  TEST_CASE("majority function has no joins") {
    for (unsigned n = 4; n <= 6; ++n) {
      const auto g = build_state_graph(parse_function("example6", n));
      const auto pag = find_pcps(g);
      CHECK(pag.edges().empty());
      CHECK(g.components().size() == 2);
      const auto h = simplified_graph(pag);
      CHECK(h.edges.empty());
      CHECK(spanning_trees(h).empty());
      CHECK(rooted_spanning_trees(pag).empty());
      CHECK(kind_of([&] { (void)enumerate_outputs(g); }) == ErrorKind::NoRootedTrees);
    }
  }

  TEST_CASE("lifted sum register at order 5") {
    const auto g = build_state_graph(lifted_sum());
    const auto pag = find_pcps(g);
    REQUIRE(g.components().size() == 4);
    // (w, from, to) with components numbered from 0.
    const std::vector<std::tuple<const char*, ComponentId, ComponentId>> table{
        {"00000", 0, 1}, {"10001", 1, 0}, {"00011", 1, 2}, {"11000", 1, 2}, {"01001", 2, 1}, {"10010", 2, 1},
        {"00110", 1, 3}, {"01100", 1, 3}, {"10111", 3, 1}, {"11101", 3, 1}, {"01010", 2, 3}, {"11011", 3, 2},
    };
    std::set<Pcp> expected;
    for (const auto& [w, from, to] : table) expected.insert({id(w), from, to});
    CHECK(std::set<Pcp>(pag.edges().begin(), pag.edges().end()) == expected);
    CHECK(pag.edges().size() == 12);

    const auto h = simplified_graph(pag);
    CHECK(h.edges == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}, {1, 3}, {2, 3}});
    CHECK(spanning_trees(h).size() == 3);

    const auto rooted = rooted_spanning_trees(pag);
    CHECK(rooted.size() == 32);
    for (ComponentId r = 0; r < 4; ++r) CHECK(rooted_spanning_trees(pag, r).size() == 8);

    const auto e = enumerate_outputs(g);
    CHECK(e.rooted_trees == 32);
    CHECK(e.runs == 128);
    CHECK(e.distinct() == 96);
    CHECK(e.histogram() == std::map<std::size_t, std::size_t>{{1, 70}, {2, 23}, {3, 1}, {4, 1}, {5, 1}});
    std::multiset<std::size_t> high;
    for (const char* s : {"00000100101111101010001101100111", "00000100011101010011011001011111",
                          "00000101110001111101010011011001"}) {
      const auto it = e.multiplicity.find(PeriodicSequence::parse(s).rotation_canonical());
      REQUIRE(it != e.multiplicity.end());
      high.insert(it->second);
    }
    CHECK(high == std::multiset<std::size_t>{3, 4, 5});
  }

  TEST_CASE("Kirchhoff cofactor") {
    const IntMatrix printed{{1, -1, 0, 0}, {-1, 5, -2, -2}, {0, -2, 3, -1}, {0, -2, -1, 3}};
    CHECK(count_spanning_trees_kirchhoff(printed) == 8);
    CHECK(count_spanning_trees_kirchhoff(IntMatrix{{0}}) == 1);
    for (std::int64_t k = 1; k <= 5; ++k) CHECK(count_spanning_trees_kirchhoff(IntMatrix{{k, -k}, {-k, k}}) == k);

    UndirectedGraph complete{6, {}};
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t j = i + 1; j < 6; ++j) complete.edges.emplace_back(i, j);
    }
    CHECK(count_spanning_trees_kirchhoff(laplacian(complete)) == 1296);
    CHECK(spanning_trees(complete).size() == 1296);

    CHECK(spanning_trees(UndirectedGraph{1, {}}).size() == 1);
    CHECK(spanning_trees(UndirectedGraph{3, {{0, 1}}}).empty());
    CHECK(count_spanning_trees_kirchhoff(laplacian(UndirectedGraph{3, {{0, 1}}})) == 0);
  }

  TEST_CASE("spanning trees of random multigraphs") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 200; ++trial) {
      UndirectedGraph graph{1 + rng() % 6, {}};
      const std::size_t m = rng() % 10;
      for (std::size_t k = 0; k < m && graph.vertex_count > 1; ++k) {
        const std::size_t i = rng() % graph.vertex_count;
        std::size_t j = rng() % graph.vertex_count;
        if (i == j) j = (j + 1) % graph.vertex_count;
        graph.edges.emplace_back(std::min(i, j), std::max(i, j));
      }
      const auto trees = spanning_trees(graph);
      CHECK(trees.size() == brute_force_count(graph));
      CHECK(static_cast<std::size_t>(count_spanning_trees_kirchhoff(laplacian(graph))) == trees.size());
      std::set<std::vector<std::size_t>> unique(trees.begin(), trees.end());
      CHECK(unique.size() == trees.size());
      for (const auto& t : trees) CHECK(t.size() + 1 == graph.vertex_count);
    }
  }

  TEST_CASE("every standard function up to order 4 against the oracles") {
    for (unsigned n = 2; n <= 4; ++n) {
      const std::uint64_t tables = std::uint64_t{1} << (1u << (n - 1));
      for (std::uint64_t index = 0; index < tables; ++index) {
        check_against_oracle(test_support::from_table_index(n, index, true));
      }
    }
  }

  TEST_CASE("random standard functions of order 5 and 6 against the oracles") {
    std::mt19937 rng(77);
    for (unsigned n = 5; n <= 6; ++n) {
      for (int trial = 0; trial < 60; ++trial) check_against_oracle(test_support::random_function(rng, n, true));
    }
    check_against_oracle(lifted_sum());
  }

  TEST_CASE("different joins from one initial state give different outputs") {
    auto check = [](const FeedbackFunction& f) {
      const auto g = build_state_graph(f);
      const auto pag = find_pcps(g);
      // Group trees by root and by the directed component edges they use.
      std::map<std::pair<ComponentId, std::vector<std::pair<ComponentId, ComponentId>>>,
               std::vector<RootedSpanningTree>>
          shapes;
      for (const auto& tree : rooted_spanning_trees(pag)) {
        std::vector<std::pair<ComponentId, ComponentId>> arcs;
        for (const auto& e : tree.edges) arcs.emplace_back(e.from, e.to);
        shapes[{tree.root, arcs}].push_back(tree);
      }
      for (const auto& [shape, trees] : shapes) {
        for (auto u : g.component(shape.first).cycle) {
          std::set<PeriodicSequence> outputs;
          for (const auto& tree : trees) {
            outputs.insert(gjpo_generate(g, tree, RegisterState(f.order(), u)).rotation_canonical());
          }
          CHECK(outputs.size() == trees.size());
        }
      }
    };
    for (unsigned n = 2; n <= 4; ++n) {
      const std::uint64_t tables = std::uint64_t{1} << (1u << (n - 1));
      for (std::uint64_t index = 0; index < tables; ++index) check(test_support::from_table_index(n, index, true));
    }
    std::mt19937 rng(123);
    for (int trial = 0; trial < 200; ++trial) check(test_support::random_function(rng, 5, true));
    check(lifted_sum());
  }

  TEST_CASE("tree counts bound the outputs") {
    auto check = [](const FeedbackFunction& f) {
      const auto g = build_state_graph(f);
      const auto pag = find_pcps(g);
      const auto rooted = rooted_spanning_trees(pag);
      if (rooted.empty()) return;
      const auto h = simplified_graph(pag);
      std::size_t bound = 0;
      for (const auto& tree : spanning_trees(h)) {
        std::size_t product = 1;
        for (auto k : tree) {
          const auto [i, j] = h.edges[k];
          product *= pag.between(i, j).size() + pag.between(j, i).size();
        }
        bound += product;
      }
      CHECK(rooted.size() <= bound * g.components().size());
      std::size_t runs = 0;
      for (const auto& tree : rooted) runs += g.component(tree.root).cycle.size();
      CHECK(enumerate_outputs(g).runs == runs);
      // Trees sharing a root give at least as many distinct outputs as there are trees.
      for (ComponentId r = 0; r < g.components().size(); ++r) {
        if (rooted_spanning_trees(pag, r).empty()) continue;
        const auto e = enumerate_outputs(g, EnumerateOptions{1, r});
        CHECK(e.distinct() >= e.rooted_trees);
      }
    };
    for (unsigned n = 2; n <= 4; ++n) {
      const std::uint64_t tables = std::uint64_t{1} << (1u << (n - 1));
      for (std::uint64_t index = 0; index < tables; ++index) check(test_support::from_table_index(n, index, true));
    }
    std::mt19937 rng(606);
    for (int trial = 0; trial < 300; ++trial) check(test_support::random_function(rng, 5, true));
    check(lifted_sum());
  }

  TEST_CASE("trees with different roots can share an output") {
    // x1 at order 3: three rooted trees, one per root, but only two distinct outputs.
    const auto e = enumerate_outputs(parse_function("x1", 3));
    CHECK(e.rooted_trees == 3);
    CHECK(e.distinct() == 2);
    for (const auto& [s, count] : e.multiplicity) CHECK(is_de_bruijn(s, 3));
  }

  TEST_CASE("worker count does not change the enumeration") {
    const auto g = build_state_graph(lifted_sum());
    const auto serial = enumerate_outputs(g, EnumerateOptions{1, {}});
    for (unsigned jobs : {2u, 3u, 8u, 64u}) {
      const auto parallel = enumerate_outputs(g, EnumerateOptions{jobs, {}});
      CHECK(parallel.multiplicity == serial.multiplicity);
      CHECK(parallel.runs == serial.runs);
    }
    std::mt19937 rng(5);
    const auto f = test_support::random_function(rng, 7, true);
    if (!rooted_spanning_trees(find_pcps(build_state_graph(f))).empty()) {
      CHECK(enumerate_outputs(f, EnumerateOptions{1, {}}).multiplicity ==
            enumerate_outputs(f, EnumerateOptions{4, {}}).multiplicity);
    }
  }

  TEST_CASE("joining the two loops of x_{n-1} gives Prefer-Opposite") {
    for (unsigned n = 3; n <= 8; ++n) {
      const auto g = build_state_graph(parse_function("prefer-opposite", n));
      REQUIRE(g.components().size() == 2);
      const auto ones = RegisterState::ones(n).id();
      const ComponentId zero_component = g.component_of(0);
      const RootedSpanningTree tree{zero_component, {Pcp{ones, g.component_of(ones), zero_component}}};
      validate_tree(g, tree);
      CHECK(gjpo_generate(g, tree, RegisterState::zeros(n)).to_string() == oracle::prefer_opposite_sequence(n));
    }
  }

  TEST_CASE("single component needs no joins") {
    const auto g = build_state_graph(FeedbackFunction::constant(4, false));
    const auto pag = find_pcps(g);
    CHECK(pag.edges().empty());
    const auto rooted = rooted_spanning_trees(pag);
    REQUIRE(rooted.size() == 1);
    CHECK(rooted[0].edges.empty());
    const auto e = enumerate_outputs(g);
    CHECK(e.runs == 1);
    CHECK(e.multiplicity.begin()->first.to_string() == "0000111101100101");
  }

  TEST_CASE("non-standard input is rejected") {
    CHECK(kind_of([] { (void)enumerate_outputs(parse_function("x0", 3)); }) == ErrorKind::NonStandardFunction);
  }
}
