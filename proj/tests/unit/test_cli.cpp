#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "support.hpp"

using gjpo::cli::Environment;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, Environment env = {}) {
  std::ostringstream out, err;
  Result r;
  r.code = gjpo::cli::run(args, out, err, env);
  r.out = out.str();
  r.err = err.str();
  return r;
}

bool contains(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("gjpo_cli_" + name);
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("analyze") {
    const auto r = run({"analyze", "x1 + x2*x3", "-n", "4"});
    REQUIRE(r.code == 0);
    CHECK(contains(r.out, "components: 3\n"));
    CHECK(contains(r.out, "G2: cycle (0111 1110 1101 1011) length 4, size 8, leaves 4\n"));
    CHECK(contains(r.out, "pcps: 6\n"));
    CHECK(contains(r.out, "  (0100,0101) G1 -> G2\n"));
    CHECK(contains(r.out, "spanning_trees: 1\n"));
    CHECK(contains(r.out, "rooted_trees: 6\n"));
    CHECK(contains(r.out, "  root G2: 2\n"));
    CHECK(r.err.empty());

    const auto rooted = run({"analyze", "x1 + x2*x3", "-n", "4", "--root-of", "1110"});
    CHECK(contains(rooted.out, "rooted_trees: 2\n"));

    const auto none = run({"analyze", "example6", "-n", "4"});
    CHECK(none.code == 0);
    CHECK(contains(none.out, "pcps: 0\n"));
    CHECK(contains(none.out, "rooted_trees: 0\n"));
  }

  TEST_CASE("analyze JSON") {
    const auto r = run({"analyze", "lift:\"x0+x1+x2+x3\"@4", "-n", "5", "--json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["pcps"].size() == 12);
    CHECK(j["rooted_trees"] == 32);
    CHECK(j["spanning_trees"] == 3);
    CHECK(j["components"].size() == 4);
    std::set<std::tuple<std::string, int, int>> pcps;
    for (const auto& p : j["pcps"]) {
      pcps.insert({p["w"].get<std::string>(), p["from"].get<int>(), p["to"].get<int>()});
    }
    CHECK(pcps.count({"00011", 1, 2}) == 1);
    CHECK(pcps.count({"11000", 1, 2}) == 1);
    CHECK(pcps.count({"00000", 0, 1}) == 1);

    const auto e6 = nlohmann::json::parse(run({"analyze", "example6", "-n", "4", "--json"}).out);
    CHECK(e6["rooted_trees"] == 0);

    const auto ns = nlohmann::json::parse(run({"analyze", "x0", "-n", "3", "--json"}).out);
    CHECK(ns["pcps"].is_null());
    CHECK(ns["standard"] == false);
  }

  TEST_CASE("analyze DOT") {
    const auto r = run({"analyze", "example4", "-n", "4", "--dot", "-"});
    REQUIRE(r.code == 0);
    const auto d = oracle::parse_dot(r.out);
    CHECK(d.ok);
    CHECK(d.nodes.size() == 16);

    const auto path = std::filesystem::temp_directory_path() / "gjpo_cli_graph.dot";
    std::filesystem::remove(path);
    const auto f = run({"analyze", "example4", "-n", "4", "--dot", path.string()});
    CHECK(f.code == 0);
    CHECK(contains(f.out, "components: 3"));
    std::ifstream in(path);
    std::stringstream text;
    text << in.rdbuf();
    CHECK(text.str() == r.out);
    std::filesystem::remove(path);

    CHECK(run({"analyze", "example4", "-n", "4", "--dot", "-", "--json"}).code == 2);
  }

  TEST_CASE("generate") {
    CHECK(run({"generate", "gpo", "0", "-n", "4", "-u", "0000"}).out == "0000111101100101\n");
    CHECK(run({"generate", "gjpo", "example4", "-n", "4", "-u", "1110", "--tree", "0"}).out == "1110000110100101\n");
    CHECK(run({"generate", "gjpo", "example4", "-n", "4", "-u", "1110", "--tree", "1"}).out == "1110000101001101\n");

    const auto leaf = run({"generate", "gpo", "x1+x2*x3", "-n", "4", "-u", "0110"});
    CHECK(leaf.code == 4);
    CHECK(leaf.out.empty());
    CHECK(contains(leaf.err, "LeafInitialState"));

    const auto off = run({"generate", "gjpo", "example4", "-n", "4", "-u", "0110", "--tree", "0"});
    CHECK(off.code == 4);
    CHECK(contains(off.err, "InitialStateOffRootCycle"));
    const auto range = run({"generate", "gjpo", "example4", "-n", "4", "-u", "1110", "--tree", "2"});
    CHECK(range.code == 4);
    CHECK(contains(range.err, "InvalidTree"));

    CHECK(run({"generate", "gjpo", "example4", "-n", "4", "-u", "1110"}).code == 2);
    CHECK(run({"generate", "gpo", "0", "-n", "4", "-u", "0000", "--tree", "0"}).code == 2);
    CHECK(run({"generate", "gpo", "x0", "-n", "4", "-u", "0000"}).code == 4);
    CHECK(run({"generate", "gpo", "0", "-n", "4", "-u", "000"}).code == 2);
    CHECK(run({"generate", "gpo", "x9", "-n", "4", "-u", "0000"}).code == 2);
    CHECK(run({"generate", "lfsr", "0", "-n", "4", "-u", "0000"}).code == 2);

    const auto j = nlohmann::json::parse(run({"generate", "gjpo", "example4", "-n", "4", "-u", "1110", "--tree", "0",
                                              "--json"})
                                             .out);
    CHECK(j["bits"] == "1110000110100101");
    CHECK(j["de_bruijn"] == true);
    CHECK(j["period"] == 16);
    CHECK(j["tree"]["edges"].size() == 2);
  }

  TEST_CASE("enumerate") {
    const auto r = run({"enumerate", "lift:\"x0+x1+x2+x3\"@4", "-n", "5"});
    REQUIRE(r.code == 0);
    CHECK(contains(r.out, "runs: 128\n"));
    CHECK(contains(r.out, "distinct: 96\n"));
    CHECK(contains(r.out, "histogram: 1:70 2:23 3:1 4:1 5:1\n"));

    const auto e4 = run({"enumerate", "example4", "-n", "4", "--root-of", "1110"});
    CHECK(contains(e4.out, "runs: 8\n"));
    CHECK(contains(e4.out, "distinct: 6\n"));
    const auto all = run({"enumerate", "example4", "-n", "4"});
    CHECK(contains(all.out, "rooted_trees: 6\n"));
    CHECK(contains(all.out, "runs: 16\n"));

    const auto e6 = run({"enumerate", "example6", "-n", "4"});
    CHECK(e6.code == 5);
    CHECK(contains(e6.err, "NoRootedTrees"));

    const auto seqs = run({"enumerate", "example4", "-n", "4", "--root-of", "1110", "--emit-sequences"});
    std::istringstream lines(seqs.out);
    std::string line;
    std::size_t listed = 0;
    std::string previous;
    while (std::getline(lines, line)) {
      if (line.size() > 16 && line[16] == ' ') {
        CHECK(oracle::is_de_bruijn(line.substr(0, 16), 4));
        CHECK(line.substr(0, 16) > previous);
        previous = line.substr(0, 16);
        ++listed;
      }
    }
    CHECK(listed == 6);

    const auto j = nlohmann::json::parse(
        run({"enumerate", "lift:\"x0+x1+x2+x3\"@4", "-n", "5", "--json", "--emit-sequences", "--jobs", "4"}).out);
    CHECK(j["runs"] == 128);
    CHECK(j["distinct"] == 96);
    CHECK(j["sequences"].size() == 96);
    CHECK(j["histogram"]["2"] == 23);
  }

  TEST_CASE("reverse and verify") {
    const auto r = run({"reverse", "0011101"});
    REQUIRE(r.code == 0);
    CHECK(contains(r.out, "n: 3\n"));
    CHECK(contains(r.out, "round_trip: ok\n"));
    CHECK(run({"reverse", "01"}).code == 6);
    CHECK(run({"reverse", "0102"}).code == 2);

    const auto yes = run({"verify", "0000111101100101", "-n", "4"});
    CHECK(yes.code == 0);
    CHECK(first_line(yes.out) == "true");
    const auto no = run({"verify", "0000111101100101", "-n", "5"});
    CHECK(no.code == 0);
    CHECK(first_line(no.out) == "false");
    const auto repeated = run({"verify", "0000111101100110", "-n", "4"});
    CHECK(first_line(repeated.out) == "false");
    CHECK(contains(repeated.out, "repeated_windows:"));
  }

  TEST_CASE("settings precedence") {
    // A config file limiting the order, overridden by the environment, overridden by the flag.
    const auto config = temp_file("limits.conf", "# limits\nmax_order = 3\njobs = 2\n");
    CHECK(run({"analyze", "0", "-n", "4", "--config", config.string()}).code == 3);
    Environment env;
    env.variables["GJPO_CONFIG"] = config.string();
    CHECK(run({"analyze", "0", "-n", "4"}, env).code == 3);
    env.variables["GJPO_MAX_ORDER"] = "4";
    CHECK(run({"analyze", "0", "-n", "4"}, env).code == 0);
    CHECK(run({"analyze", "0", "-n", "5"}, env).code == 3);
    CHECK(run({"analyze", "0", "-n", "5", "--max-order", "5"}, env).code == 0);

    const auto json_config = temp_file("json.conf", "format = json\n");
    const auto j = run({"verify", "01", "-n", "1", "--config", json_config.string()});
    CHECK(nlohmann::json::parse(j.out)["de_bruijn"] == true);

    const auto bad = temp_file("bad.conf", "colour = blue\n");
    CHECK(run({"verify", "01", "-n", "1", "--config", bad.string()}).code == 2);
    CHECK(run({"verify", "01", "-n", "1", "--config", "/nonexistent/gjpo.conf"}).code == 2);
    env.variables["GJPO_JOBS"] = "many";
    CHECK(run({"verify", "01", "-n", "1"}, env).code == 2);
    CHECK(run({"analyze", "0", "-n", "4", "--max-order", "1"}).code == 2);
    CHECK(run({"analyze", "0", "-n", "4", "--max-order", "40"}).code == 3);

    gjpo::cli::Settings s;
    gjpo::cli::apply_config_text("emit_sequences = yes # trailing\n\njobs=3", s);
    CHECK(s.emit_sequences);
    CHECK(s.jobs == 3);
    CHECK_THROWS_AS(gjpo::cli::apply_config_text("jobs", s), gjpo::Error);

    std::filesystem::remove(config);
    std::filesystem::remove(json_config);
    std::filesystem::remove(bad);
  }

  TEST_CASE("identical invocations give identical bytes") {
    const std::vector<std::string> args{"enumerate", "lift:\"x0+x1+x2+x3\"@4", "-n", "5", "--json", "--emit-sequences"};
    const auto a = run(args);
    auto parallel = args;
    parallel.insert(parallel.end(), {"--jobs", "3"});
    CHECK(a.out == run(args).out);
    CHECK(a.out == run(parallel).out);
    const std::vector<std::string> analyze{"analyze", "example4", "-n", "4", "--json"};
    CHECK(run(analyze).out == run(analyze).out);
  }

  TEST_CASE("usage errors") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"analyze", "0"}).code == 2);
    const auto help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(contains(help.out, "enumerate"));
    CHECK(gjpo::cli::exit_code(gjpo::ErrorKind::NoRootedTrees) == 5);
    CHECK(gjpo::cli::exit_code(gjpo::ErrorKind::ComplexityTooLow) == 6);
    CHECK(gjpo::cli::exit_code(gjpo::ErrorKind::Resource) == 3);
  }
}
