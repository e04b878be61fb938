#pragma once

#include <json.hpp>

#include "gjpo/families.hpp"
#include "gjpo/gpo.hpp"
#include "gjpo/graph_join.hpp"
#include "gjpo/sequence.hpp"
#include "gjpo/state_graph.hpp"

namespace gjpo::report {

using Json = nlohmann::ordered_json;

std::string bits(unsigned order, StateId state);

/// {"n", "bits"}
Json sequence(const PeriodicSequence& s, unsigned order);

/// {"n", "components": [{"id", "cycle", "size", "leaves"}]}
Json state_graph(const StateGraph& g);

/// [{"w", "companion", "from", "to"}], ascending by (from, to, w).
Json pcps(const StateGraph& g, const Pag& pag);

Json rooted_tree(const StateGraph& g, const RootedSpanningTree& tree);

/// {"components", "pcps", "spanning_trees", "rooted_trees", "runs",
///  "distinct", "histogram", "sequences"?}. Sequences are canonical
/// rotations in ascending order, each with its multiplicity.
Json enumeration(const StateGraph& g, const Pag& pag, std::size_t spanning_trees, const Enumeration& e,
                 bool emit_sequences);

}  // namespace gjpo::report
