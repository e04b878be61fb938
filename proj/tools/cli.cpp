#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "gjpo/families.hpp"
#include "gjpo/gpo.hpp"
#include "gjpo/graph_join.hpp"
#include "report.hpp"

extern char** environ;

namespace gjpo::cli {

Environment Environment::from_process() {
  Environment env;
  for (char** entry = environ; entry != nullptr && *entry != nullptr; ++entry) {
    const std::string_view text(*entry);
    const auto eq = text.find('=');
    if (eq != std::string_view::npos) env.variables.emplace(text.substr(0, eq), text.substr(eq + 1));
  }
  return env;
}

std::optional<std::string> Environment::get(const std::string& name) const {
  auto it = variables.find(name);
  if (it == variables.end()) return std::nullopt;
  return it->second;
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::Dimension:
    case ErrorKind::InvalidArgument: return kExitUsage;
    case ErrorKind::Resource: return kExitResource;
    case ErrorKind::LeafInitialState:
    case ErrorKind::NonStandardFunction:
    case ErrorKind::NonsingularRequired:
    case ErrorKind::InitialStateOffRootCycle:
    case ErrorKind::InvalidTree: return kExitRejectedInput;
    case ErrorKind::NoRootedTrees: return kExitNoRootedTrees;
    case ErrorKind::ComplexityTooLow: return kExitComplexityTooLow;
  }
  return kExitInternal;
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  return std::string(s.substr(first, s.find_last_not_of(" \t\r\n") - first + 1));
}

unsigned parse_count(const std::string& text, const std::string& what) {
  unsigned value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) fail(ErrorKind::Parse, what + ": not a number: '" + text + "'");
  return value;
}

bool parse_bool(const std::string& text, const std::string& what) {
  if (text == "1" || text == "true" || text == "yes" || text == "on") return true;
  if (text == "0" || text == "false" || text == "no" || text == "off") return false;
  fail(ErrorKind::Parse, what + ": not a boolean: '" + text + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot read config file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void check_settings(const Settings& s) {
  if (s.max_order < 2) fail(ErrorKind::InvalidArgument, "max_order must be at least 2");
  if (s.max_order > kMaxSupportedOrder) {
    fail(ErrorKind::Resource, "max_order above " + std::to_string(kMaxSupportedOrder) + " is not supported");
  }
}

// Flag values shared by every subcommand; unset optionals defer to the
// environment and config file.
struct Flags {
  std::optional<unsigned> max_order;
  std::optional<unsigned> jobs;
  std::string config;
  bool json = false;
  bool emit_sequences = false;
};

Settings resolve(const Flags& flags, const Environment& env) {
  Settings s;
  std::string config = flags.config;
  if (config.empty()) config = env.get("GJPO_CONFIG").value_or("");
  if (!config.empty()) apply_config_text(read_file(config), s);
  if (auto v = env.get("GJPO_MAX_ORDER")) s.max_order = parse_count(*v, "GJPO_MAX_ORDER");
  if (auto v = env.get("GJPO_JOBS")) s.jobs = parse_count(*v, "GJPO_JOBS");
  if (flags.max_order) s.max_order = *flags.max_order;
  if (flags.jobs) s.jobs = *flags.jobs;
  if (flags.json) s.json = true;
  if (flags.emit_sequences) s.emit_sequences = true;
  if (s.jobs == 0) s.jobs = std::max(1u, std::thread::hardware_concurrency());
  check_settings(s);
  return s;
}

void write_json(std::ostream& out, const report::Json& j) { out << j.dump(2) << '\n'; }

std::string state_text(const StateGraph& g, StateId s) { return report::bits(g.order(), s); }

RegisterState parse_state(const std::string& text, unsigned n) {
  const auto s = RegisterState::parse(text);
  if (s.order() != n) {
    fail(ErrorKind::Dimension, "state " + text + " has " + std::to_string(s.order()) + " bits, expected " +
                                   std::to_string(n));
  }
  return s;
}

std::optional<ComponentId> root_filter(const StateGraph& g, const std::string& root_of) {
  if (root_of.empty()) return std::nullopt;
  return g.component_of(parse_state(root_of, g.order()).id());
}

// --- analyze ---------------------------------------------------------------

struct AnalyzeArgs {
  std::string function;
  unsigned n = 0;
  std::string dot;
  std::string root_of;
};

int cmd_analyze(const AnalyzeArgs& a, const Settings& s, std::ostream& out) {
  const auto f = parse_function(a.function, a.n, s.max_order);
  const auto g = build_state_graph(f, s.max_order);
  const bool dot_to_stdout = a.dot == "-";
  if (dot_to_stdout && s.json) fail(ErrorKind::InvalidArgument, "--json and --dot - are mutually exclusive");
  if (!a.dot.empty()) {
    const std::string dot = export_dot(g);
    if (dot_to_stdout) {
      out << dot;
      return kExitOk;
    }
    std::ofstream file(a.dot);
    if (!file) fail(ErrorKind::InvalidArgument, "cannot write " + a.dot);
    file << dot;
  }

  const auto root = root_filter(g, a.root_of);
  std::optional<Pag> pag;
  std::size_t spanning = 0;
  std::vector<std::size_t> per_root(g.components().size(), 0);
  if (f.is_standard()) {
    pag = find_pcps(g);
    spanning = spanning_trees(simplified_graph(*pag)).size();
    for (const auto& t : rooted_spanning_trees(*pag)) ++per_root[t.root];
  }
  std::size_t rooted = 0;
  for (std::size_t r = 0; r < per_root.size(); ++r) {
    if (!root || *root == r) rooted += per_root[r];
  }

  if (s.json) {
    report::Json j;
    j["n"] = a.n;
    j["function"] = f.anf().to_string();
    j["standard"] = f.is_standard();
    j["nonsingular"] = f.is_nonsingular();
    j["components"] = report::state_graph(g)["components"];
    if (pag) {
      j["pcps"] = report::pcps(g, *pag);
      j["spanning_trees"] = spanning;
      j["rooted_trees"] = rooted;
      report::Json by_root = report::Json::object();
      for (std::size_t r = 0; r < per_root.size(); ++r) by_root[std::to_string(r)] = per_root[r];
      j["rooted_trees_by_root"] = std::move(by_root);
    } else {
      j["pcps"] = nullptr;
    }
    write_json(out, j);
    return kExitOk;
  }

  out << "n: " << a.n << '\n';
  out << "function: " << f.anf().to_string() << '\n';
  out << "standard: " << (f.is_standard() ? "true" : "false") << '\n';
  out << "nonsingular: " << (f.is_nonsingular() ? "true" : "false") << '\n';
  out << "components: " << g.components().size() << '\n';
  for (const auto& c : g.components()) {
    out << "  G" << c.id << ": cycle (";
    for (std::size_t k = 0; k < c.cycle.size(); ++k) out << (k ? " " : "") << state_text(g, c.cycle[k]);
    out << ") length " << c.cycle.size() << ", size " << c.members << ", leaves " << g.leaves_of(c.id).size()
        << '\n';
  }
  if (!pag) return kExitOk;
  out << "pcps: " << pag->edges().size() << '\n';
  for (const auto& e : pag->edges()) {
    out << "  (" << state_text(g, e.w) << "," << state_text(g, e.companion()) << ") G" << e.from << " -> G"
        << e.to << '\n';
  }
  out << "spanning_trees: " << spanning << '\n';
  out << "rooted_trees: " << rooted << '\n';
  for (std::size_t r = 0; r < per_root.size(); ++r) out << "  root G" << r << ": " << per_root[r] << '\n';
  return kExitOk;
}

// --- generate --------------------------------------------------------------

struct GenerateArgs {
  std::string mode;
  std::string function;
  unsigned n = 0;
  std::string seed;
  std::optional<std::size_t> tree;
};

int cmd_generate(const GenerateArgs& a, const Settings& s, std::ostream& out) {
  const auto f = parse_function(a.function, a.n, s.max_order);
  const auto u = parse_state(a.seed, a.n);
  std::optional<RootedSpanningTree> chosen;
  std::optional<PeriodicSequence> result;
  if (a.mode == "gpo") {
    if (a.tree) fail(ErrorKind::InvalidArgument, "--tree applies to gjpo only");
    result = gpo_generate(f, u);
  } else {
    if (!a.tree) fail(ErrorKind::InvalidArgument, "gjpo needs --tree <index>");
    if (!f.is_standard()) fail(ErrorKind::NonStandardFunction, "GJPO needs a standard feedback function");
    const auto g = build_state_graph(f, s.max_order);
    if (!g.on_cycle(u.id())) {
      fail(ErrorKind::InitialStateOffRootCycle, u.to_string() + " does not lie on any cycle");
    }
    const auto trees = rooted_spanning_trees(find_pcps(g), g.component_of(u.id()));
    if (*a.tree >= trees.size()) {
      fail(ErrorKind::InvalidTree, "tree index " + std::to_string(*a.tree) + " out of range; " +
                                       std::to_string(trees.size()) + " rooted trees contain " + u.to_string());
    }
    chosen = trees[*a.tree];
    result = gjpo_generate(g, *chosen, u);
  }

  if (s.json) {
    report::Json j;
    j["mode"] = a.mode;
    j["n"] = a.n;
    j["initial"] = u.to_string();
    if (chosen) {
      j["tree_index"] = *a.tree;
      j["tree"] = report::rooted_tree(build_state_graph(f, s.max_order), *chosen);
    }
    j["bits"] = result->to_string();
    j["period"] = result->period();
    j["de_bruijn"] = is_de_bruijn(*result, a.n);
    write_json(out, j);
  } else {
    out << result->to_string() << '\n';
  }
  return kExitOk;
}

// --- enumerate -------------------------------------------------------------

struct EnumerateArgs {
  std::string function;
  unsigned n = 0;
  std::string root_of;
};

int cmd_enumerate(const EnumerateArgs& a, const Settings& s, std::ostream& out) {
  const auto f = parse_function(a.function, a.n, s.max_order);
  const auto g = build_state_graph(f, s.max_order);
  const Pag pag = find_pcps(g);
  const std::size_t spanning = spanning_trees(simplified_graph(pag)).size();
  EnumerateOptions options;
  options.jobs = s.jobs;
  options.root = root_filter(g, a.root_of);
  const Enumeration e = enumerate_outputs(g, options);

  if (s.json) {
    write_json(out, report::enumeration(g, pag, spanning, e, s.emit_sequences));
    return kExitOk;
  }
  out << "components: " << g.components().size() << '\n';
  out << "pcps: " << pag.edges().size() << '\n';
  out << "spanning_trees: " << spanning << '\n';
  out << "rooted_trees: " << e.rooted_trees << '\n';
  out << "runs: " << e.runs << '\n';
  out << "distinct: " << e.distinct() << '\n';
  out << "histogram:";
  for (const auto& [multiplicity, count] : e.histogram()) out << ' ' << multiplicity << ':' << count;
  out << '\n';
  if (s.emit_sequences) {
    for (const auto& [sequence, count] : e.multiplicity) out << sequence.to_string() << ' ' << count << '\n';
  }
  return kExitOk;
}

// --- reverse / verify ------------------------------------------------------

struct ReverseArgs {
  std::string bits;
  bool unseen_value = false;
};

int cmd_reverse(const ReverseArgs& a, const Settings& s, std::ostream& out, std::ostream& err) {
  const auto seq = PeriodicSequence::parse(a.bits);
  const auto pair = reverse_engineer(seq, ReverseOptions{a.unseen_value});
  const unsigned n = pair.function.order();
  check_order(n, s.max_order);
  const auto regenerated = gpo_generate(pair.function, pair.initial);
  const bool round_trip = regenerated.shift_equivalent(seq);
  if (s.json) {
    report::Json j;
    j["n"] = n;
    j["initial"] = pair.initial.to_string();
    j["truth_table"] = pair.function.table_hex();
    j["round_trip"] = round_trip;
    write_json(out, j);
  } else {
    out << "n: " << n << '\n';
    out << "initial: " << pair.initial.to_string() << '\n';
    out << "truth_table: " << pair.function.table_hex() << '\n';
    out << "round_trip: " << (round_trip ? "ok" : "FAILED") << '\n';
  }
  if (!round_trip) {
    err << "error: regenerated sequence " << regenerated.to_string() << " is not a rotation of the input\n";
    return kExitInternal;
  }
  return kExitOk;
}

struct VerifyArgs {
  std::string bits;
  unsigned n = 0;
};

int cmd_verify(const VerifyArgs& a, const Settings& s, std::ostream& out) {
  check_order(a.n, s.max_order);
  const auto seq = PeriodicSequence::parse(a.bits);
  const bool ok = is_de_bruijn(seq, a.n);
  const std::size_t expected = std::size_t{1} << a.n;

  // Window census over one period, read cyclically.
  std::unordered_map<std::uint64_t, std::size_t> count;
  const auto ids = window_ids(seq.bits(), a.n);
  for (auto id : ids) ++count[id];
  std::vector<std::string> repeated;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (count[ids[i]] > 1) {
      std::string w;
      for (unsigned j = 0; j < a.n; ++j) w += seq.bit(i + j) ? '1' : '0';
      repeated.push_back(std::move(w));
    }
  }
  std::sort(repeated.begin(), repeated.end());
  repeated.erase(std::unique(repeated.begin(), repeated.end()), repeated.end());

  if (s.json) {
    report::Json j;
    j["n"] = a.n;
    j["de_bruijn"] = ok;
    j["period"] = seq.period();
    j["expected_period"] = expected;
    j["distinct_windows"] = count.size();
    j["repeated_windows"] = repeated;
    write_json(out, j);
  } else {
    out << (ok ? "true" : "false") << '\n';
    out << "period: " << seq.period() << " (expected " << expected << ")\n";
    out << "distinct_windows: " << count.size() << '\n';
    if (!repeated.empty()) {
      out << "repeated_windows:";
      for (const auto& w : repeated) out << ' ' << w;
      out << '\n';
    }
  }
  return kExitOk;
}

void add_common(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--max-order", flags.max_order, "Largest order accepted (default 20)");
  cmd->add_option("--jobs", flags.jobs, "Worker threads for enumeration; 0 uses every core");
  cmd->add_option("--config", flags.config, "key=value settings file");
  cmd->add_flag("--json", flags.json, "Machine-readable output");
}

}  // namespace

void apply_config_text(const std::string& text, Settings& settings) {
  std::istringstream in(text);
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(ErrorKind::Parse, "config line " + std::to_string(number) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "max_order") {
      settings.max_order = parse_count(value, key);
    } else if (key == "jobs") {
      settings.jobs = parse_count(value, key);
    } else if (key == "emit_sequences") {
      settings.emit_sequences = parse_bool(value, key);
    } else if (key == "format") {
      if (value != "text" && value != "json") fail(ErrorKind::Parse, "format must be text or json");
      settings.json = value == "json";
    } else {
      fail(ErrorKind::Parse, "config line " + std::to_string(number) + ": unknown key '" + key + "'");
    }
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& env) {
  CLI::App app{"Generalized Prefer-Opposite and graph-joining de Bruijn sequence generator", "gjpo"};
  app.require_subcommand(1);
  Flags flags;

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "State graph, PCPs and tree counts of a feedback function");
  analyze_cmd->add_option("function", analyze.function, "ANF over x0..x{n-1} or a family name")->required();
  analyze_cmd->add_option("-n,--order", analyze.n, "Register order")->required();
  analyze_cmd->add_option("--dot", analyze.dot, "Write the state graph as DOT to a file ('-' for stdout)");
  analyze_cmd->add_option("--root-of", analyze.root_of, "Count only trees rooted at this state's component");
  add_common(analyze_cmd, flags);

  GenerateArgs generate;
  auto* generate_cmd = app.add_subcommand("generate", "Run GPO or GJPO and print one period");
  generate_cmd->add_option("mode", generate.mode, "gpo or gjpo")->required()->check(CLI::IsMember({"gpo", "gjpo"}));
  generate_cmd->add_option("function", generate.function, "ANF over x0..x{n-1} or a family name")->required();
  generate_cmd->add_option("-n,--order", generate.n, "Register order")->required();
  generate_cmd->add_option("-u,--seed-state", generate.seed, "Initial state as a bit string")->required();
  generate_cmd->add_option("--tree", generate.tree, "Index into the rooted trees whose root cycle holds the seed");
  add_common(generate_cmd, flags);

  EnumerateArgs enumerate;
  auto* enumerate_cmd = app.add_subcommand("enumerate", "Run GJPO over every rooted tree and root-cycle state");
  enumerate_cmd->add_option("function", enumerate.function, "ANF over x0..x{n-1} or a family name")->required();
  enumerate_cmd->add_option("-n,--order", enumerate.n, "Register order")->required();
  enumerate_cmd->add_option("--root-of", enumerate.root_of, "Only trees rooted at this state's component");
  enumerate_cmd->add_flag("--emit-sequences", flags.emit_sequences, "List every canonical output");
  add_common(enumerate_cmd, flags);

  ReverseArgs reverse;
  auto* reverse_cmd = app.add_subcommand("reverse", "Build a GPO input pair that regenerates a periodic sequence");
  reverse_cmd->add_option("bits", reverse.bits, "One period as 0/1 characters")->required();
  reverse_cmd->add_option("--unseen-value", reverse.unseen_value, "Value on windows absent from the sequence");
  add_common(reverse_cmd, flags);

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check whether a sequence is de Bruijn of order n");
  verify_cmd->add_option("bits", verify.bits, "One period as 0/1 characters")->required();
  verify_cmd->add_option("-n,--order", verify.n, "Order")->required();
  add_common(verify_cmd, flags);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    const Settings settings = resolve(flags, env);
    if (analyze_cmd->parsed()) return cmd_analyze(analyze, settings, out);
    if (generate_cmd->parsed()) return cmd_generate(generate, settings, out);
    if (enumerate_cmd->parsed()) return cmd_enumerate(enumerate, settings, out);
    if (reverse_cmd->parsed()) return cmd_reverse(reverse, settings, out, err);
    if (verify_cmd->parsed()) return cmd_verify(verify, settings, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace gjpo::cli
