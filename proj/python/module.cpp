#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>

#include "gjpo/error.hpp"
#include "gjpo/families.hpp"
#include "gjpo/gpo.hpp"
#include "gjpo/graph_join.hpp"

namespace py = pybind11;
using namespace gjpo;

namespace {

std::string bits(unsigned order, StateId s) { return RegisterState(order, s).to_string(); }

RegisterState state_for(const FeedbackFunction& f, const std::string& text) {
  const auto s = RegisterState::parse(text);
  if (s.order() != f.order()) fail(ErrorKind::Dimension, "state " + text + " does not match the function order");
  return s;
}

py::dict pcp_dict(unsigned order, const Pcp& p) {
  py::dict d;
  d["w"] = bits(order, p.w);
  d["companion"] = bits(order, p.companion());
  d["from"] = p.from;
  d["to"] = p.to;
  return d;
}

py::dict tree_dict(unsigned order, const RootedSpanningTree& t) {
  py::list edges;
  for (const auto& e : t.edges) edges.append(pcp_dict(order, e));
  py::dict d;
  d["root"] = t.root;
  d["edges"] = edges;
  return d;
}

std::optional<ComponentId> root_of(const StateGraph& g, const std::optional<std::string>& state) {
  if (!state) return std::nullopt;
  return g.component_of(state_for(g.function(), *state).id());
}

py::dict analyze(const FeedbackFunction& f) {
  const auto g = build_state_graph(f);
  py::list components;
  for (const auto& c : g.components()) {
    py::list cycle;
    for (auto s : c.cycle) cycle.append(bits(f.order(), s));
    py::dict d;
    d["id"] = c.id;
    d["cycle"] = cycle;
    d["size"] = c.members;
    d["leaves"] = g.leaves_of(c.id).size();
    components.append(d);
  }
  py::dict out;
  out["components"] = components;
  if (f.is_standard()) {
    const auto pag = find_pcps(g);
    py::list pcps;
    for (const auto& e : pag.edges()) pcps.append(pcp_dict(f.order(), e));
    out["pcps"] = pcps;
    out["spanning_trees"] = spanning_trees(simplified_graph(pag)).size();
    out["rooted_trees"] = rooted_spanning_trees(pag).size();
  } else {
    out["pcps"] = py::none();
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_gjpo, m) {
  m.doc() = "GPO and graph-joining de Bruijn sequence generation";

  // The message already starts with the error kind name.
  static py::handle error_type = py::exception<Error>(m, "GjpoError", PyExc_ValueError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error_type.ptr(), e.what());
    }
  });

  py::class_<FeedbackFunction>(m, "FeedbackFunction")
      .def_property_readonly("order", &FeedbackFunction::order)
      .def_property_readonly("is_standard", &FeedbackFunction::is_standard)
      .def_property_readonly("is_nonsingular", &FeedbackFunction::is_nonsingular)
      .def_property_readonly("truth_table", &FeedbackFunction::table_hex)
      .def_property_readonly("anf", [](const FeedbackFunction& f) { return f.anf().to_string(); })
      .def("__call__", [](const FeedbackFunction& f, const std::string& s) { return eval(f, state_for(f, s)); })
      .def("__eq__", [](const FeedbackFunction& a, const FeedbackFunction& b) { return a == b; })
      .def("__repr__", [](const FeedbackFunction& f) {
        return "<FeedbackFunction order=" + std::to_string(f.order()) + " anf='" + f.anf().to_string() + "'>";
      });

  m.def("parse_function", &parse_function, py::arg("text"), py::arg("n"), py::arg("max_order") = kDefaultMaxOrder,
        "ANF over x0..x{n-1} or a family name such as 'example4' or 'lift:x0+x1@2'.");

  m.def(
      "gpo_generate",
      [](const FeedbackFunction& f, const std::string& u) { return gpo_generate(f, state_for(f, u)).to_string(); },
      py::arg("f"), py::arg("u"));

  m.def(
      "gpo_generate_unchecked",
      [](const FeedbackFunction& f, const std::string& u) -> std::optional<std::string> {
        const auto run = gpo_run_unchecked(f, state_for(f, u));
        if (run.status != RunStatus::Completed) return std::nullopt;
        return run.sequence().to_string();
      },
      py::arg("f"), py::arg("u"), "None when the initial state never comes back.");

  m.def("analyze", &analyze, py::arg("f"));

  m.def(
      "rooted_trees",
      [](const FeedbackFunction& f, std::optional<std::string> root_state) {
        const auto g = build_state_graph(f);
        const auto pag = find_pcps(g);
        const auto root = root_of(g, root_state);
        py::list out;
        for (const auto& t : root ? rooted_spanning_trees(pag, *root) : rooted_spanning_trees(pag)) {
          out.append(tree_dict(f.order(), t));
        }
        return out;
      },
      py::arg("f"), py::arg("root_of") = py::none());

  m.def(
      "gjpo_generate",
      [](const FeedbackFunction& f, std::size_t tree, const std::string& u) {
        const auto initial = state_for(f, u);
        if (!f.is_standard()) fail(ErrorKind::NonStandardFunction, "GJPO needs a standard feedback function");
        const auto g = build_state_graph(f);
        const auto trees = rooted_spanning_trees(find_pcps(g), g.component_of(initial.id()));
        if (tree >= trees.size()) fail(ErrorKind::InvalidTree, "tree index out of range");
        return gjpo_generate(g, trees[tree], initial).to_string();
      },
      py::arg("f"), py::arg("tree"), py::arg("u"),
      "Uses the tree with this index among those rooted at u's component.");

  m.def(
      "enumerate",
      [](const FeedbackFunction& f, unsigned jobs, std::optional<std::string> root_state) {
        const auto g = build_state_graph(f);
        EnumerateOptions options;
        options.jobs = jobs;
        options.root = root_of(g, root_state);
        Enumeration e;
        {
          py::gil_scoped_release release;
          e = enumerate_outputs(g, options);
        }
        std::map<std::string, std::size_t> sequences;
        for (const auto& [s, count] : e.multiplicity) sequences.emplace(s.to_string(), count);
        py::dict out;
        out["rooted_trees"] = e.rooted_trees;
        out["runs"] = e.runs;
        out["distinct"] = e.distinct();
        out["histogram"] = e.histogram();
        out["sequences"] = sequences;
        return out;
      },
      py::arg("f"), py::arg("jobs") = 1, py::arg("root_of") = py::none());

  m.def(
      "reverse_engineer",
      [](const std::string& s, bool unseen_value) {
        auto pair = reverse_engineer(PeriodicSequence::parse(s), ReverseOptions{unseen_value});
        return py::make_tuple(pair.function, pair.initial.to_string());
      },
      py::arg("bits"), py::arg("unseen_value") = false);

  m.def(
      "is_de_bruijn", [](const std::string& s, unsigned n) { return is_de_bruijn(PeriodicSequence::parse(s), n); },
      py::arg("bits"), py::arg("n"));
  m.def(
      "nonlinear_complexity", [](const std::string& s) { return nonlinear_complexity(PeriodicSequence::parse(s)); },
      py::arg("bits"));
  m.def(
      "rotation_canonical",
      [](const std::string& s) { return PeriodicSequence::parse(s).rotation_canonical().to_string(); },
      py::arg("bits"));
}
