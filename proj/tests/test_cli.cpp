#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "udeq/builtins.hpp"
#include "udeq/cli.hpp"
#include "udeq/io.hpp"

using namespace udeq;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(UDEQ_DATA_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& text) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::size_t count(const std::string& s, const std::string& sub) {
  std::size_t n = 0;
  for (auto p = s.find(sub); p != std::string::npos; p = s.find(sub, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("poset commands") {
  auto r = run({"poset", "check", data("diamond.json")});
  CHECK(r.code == 0);
  CHECK(r.out.find("OK") != std::string::npos);
  r = run({"poset", "hasse", data("chain3.json")});
  CHECK(r.code == 0);
  CHECK(count(r.out, "->") == 2);
  auto built = run({"glue", "build", data("fig1_12.json"), "--mode", "plus"});
  REQUIRE(built.code == 0);
  auto path = temp_file("udeq_x1_built.json", built.out);
  r = run({"poset", "iso", path, data("x1.json")});
  CHECK(r.code == 0);
  CHECK(count(r.out, "->") == 7);
  r = run({"poset", "iso", data("chain3.json"), data("diamond.json")});
  CHECK(r.out == "none\n");
  r = run({"poset", "op", "opposite", data("chain3.json")});
  CHECK(r.code == 0);
  auto p = poset_from_json(parse_json(r.out));
  CHECK(p.leq(p.index_of("c"), p.index_of("a")));
  r = run({"poset", "op", "product", data("chain3.json"), data("diamond.json")});
  CHECK(poset_from_json(parse_json(r.out)).size() == 12);
}

TEST_CASE("glue commands") {
  auto r = run({"glue", "validate", data("counterexample.json")});
  CHECK(r.code == 1);
  CHECK(r.err.find("'4'") != std::string::npos);
  CHECK(run({"glue", "validate", data("fig1_34.json")}).code == 0);
  r = run({"glue", "build", data("bgp_star.json"), "--mode", "minus"});
  REQUIRE(r.code == 0);
  auto p = poset_from_json(parse_json(r.out));
  CHECK(p.maximal_elements() == std::vector<Elem>{p.index_of("c")});
  auto dir = (std::filesystem::temp_directory_path() / "udeq_dot").string();
  std::filesystem::remove_all(dir);
  r = run({"glue", "build", data("fig1_13.json"), "--mode", "minus", "--dot", dir});
  CHECK(r.code == 0);
  CHECK(std::filesystem::exists(dir + "/minus.dot"));
  auto q = poset_from_json(parse_json(r.out));
  CHECK(is_isomorphic(q, builtins::figure1_poset(3)).has_value());
}

TEST_CASE("verify commands") {
  CHECK(run({"verify", "two-chain", "--trials", "100", "--seed", "7"}).code == 0);
  CHECK(run({"verify", "theorem", "--gluing", data("fig1_13.json"), "--trials", "25"}).code == 0);
  auto r = run({"verify", "theorem", "--gluing", data("counterexample.json")});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  CHECK(run({"verify", "bgp", "--tree", data("tree_path.json"), "--from", "right", "--to", "left", "--trials", "3"}).code == 0);
  CHECK(run({"verify", "bgp", "--tree", data("tree_star.json"), "--from", "out", "--to", "nope"}).code == 1);
  CHECK(run({"verify", "x1z", "--x", data("diamond.json"), "--z", data("chain3.json"), "--trials", "3"}).code == 0);
}

TEST_CASE("demos") {
  for (const char* d : {"figure1", "two-chain", "bgp-star", "x1z"}) CHECK(run({"demo", d, "--trials", "3"}).code == 0);
  auto r = run({"demo", "counterexample"});
  CHECK(r.code == 1);
  CHECK(r.err.find("'4'") != std::string::npos);
}

TEST_CASE("formula files") {
  CHECK(run({"formula", "check", data("xi121.json")}).code == 0);
  CHECK(run({"formula", "check", data("cone_formula.json")}).code == 0);
  CHECK(run({"formula", "check", data("bad_formula.json")}).code == 1);
}

TEST_CASE("exit codes for bad input") {
  CHECK(run({"poset", "check", temp_file("udeq_bad.json", "{oops")}).code == 3);
  CHECK(run({"poset", "check", temp_file("udeq_shape.json", R"({"elements": "a"})")}).code == 3);
  CHECK(run({"poset", "check", "/nonexistent/udeq.json"}).code == 3);
  CHECK(run({"poset", "check", temp_file("udeq_cycle.json", R"({"elements": ["a","b"], "relations": [["a","b"],["b","a"]]})")}).code == 1);
  CHECK(run({"verify", "two-chain", "--field", "p:4"}).code == 1);
  CHECK(run({"verify", "two-chain", "--trials", "0"}).code == 1);
  CHECK(run({"verify", "two-chain", "--window", "2,-2"}).code == 1);
  CHECK(run({"nonsense"}).code == 1);
}

TEST_CASE("JSON reports are byte-identical across runs and thread counts") {
  std::vector<std::string> base{"verify", "theorem", "--gluing", data("fig1_12.json"), "--trials", "6", "--seed", "9", "--json"};
  auto a = run(base), b = run(base);
  auto par = base;
  par.insert(par.end(), {"--jobs", "4"});
  auto c = run(par);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  auto j = parse_json(a.out);
  CHECK(j["valid"] == true);
  CHECK(j["trials"].size() == 6);
  auto two = run({"verify", "two-chain", "--trials", "5", "--json", "--field", "p:5"});
  CHECK(two.out == run({"verify", "two-chain", "--trials", "5", "--json", "--field", "p:5"}).out);
  CHECK(parse_json(two.out)["field"] == "p:5");
}
