#include "report.hpp"

namespace gjpo::report {

std::string bits(unsigned order, StateId state) { return RegisterState(order, state).to_string(); }

Json sequence(const PeriodicSequence& s, unsigned order) {
  Json out;
  out["n"] = order;
  out["bits"] = s.to_string();
  return out;
}

Json state_graph(const StateGraph& g) {
  Json components = Json::array();
  for (const auto& c : g.components()) {
    Json cycle = Json::array(), leaves = Json::array();
    for (auto s : c.cycle) cycle.push_back(bits(g.order(), s));
    for (auto s : g.leaves_of(c.id)) leaves.push_back(bits(g.order(), s));
    Json entry;
    entry["id"] = c.id;
    entry["cycle"] = std::move(cycle);
    entry["size"] = c.members;
    entry["leaves"] = std::move(leaves);
    components.push_back(std::move(entry));
  }
  Json out;
  out["n"] = g.order();
  out["components"] = std::move(components);
  return out;
}

Json pcps(const StateGraph& g, const Pag& pag) {
  Json out = Json::array();
  for (const auto& e : pag.edges()) {
    Json entry;
    entry["w"] = bits(g.order(), e.w);
    entry["companion"] = bits(g.order(), e.companion());
    entry["from"] = e.from;
    entry["to"] = e.to;
    out.push_back(std::move(entry));
  }
  return out;
}

Json rooted_tree(const StateGraph& g, const RootedSpanningTree& tree) {
  Json out;
  out["root"] = tree.root;
  Json edges = Json::array();
  for (const auto& e : tree.edges) {
    Json entry;
    entry["w"] = bits(g.order(), e.w);
    entry["from"] = e.from;
    entry["to"] = e.to;
    edges.push_back(std::move(entry));
  }
  out["edges"] = std::move(edges);
  return out;
}

Json enumeration(const StateGraph& g, const Pag& pag, std::size_t spanning_trees, const Enumeration& e,
                 bool emit_sequences) {
  Json out;
  out["components"] = g.components().size();
  out["pcps"] = pcps(g, pag);
  out["spanning_trees"] = spanning_trees;
  out["rooted_trees"] = e.rooted_trees;
  out["runs"] = e.runs;
  out["distinct"] = e.distinct();
  Json histogram = Json::object();
  for (const auto& [multiplicity, count] : e.histogram()) histogram[std::to_string(multiplicity)] = count;
  out["histogram"] = std::move(histogram);
  if (emit_sequences) {
    Json sequences = Json::array();
    for (const auto& [s, count] : e.multiplicity) {
      Json entry = sequence(s, g.order());
      entry["multiplicity"] = count;
      sequences.push_back(std::move(entry));
    }
    out["sequences"] = std::move(sequences);
  }
  return out;
}

}  // namespace gjpo::report
