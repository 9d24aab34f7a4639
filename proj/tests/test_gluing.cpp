#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>

#include "udeq/builtins.hpp"
#include "udeq/error.hpp"
#include "udeq/gluing.hpp"
#include "udeq/harness.hpp"
#include "udeq/io.hpp"

using namespace udeq;
namespace b = udeq::builtins;

namespace {

using YxMap = std::map<std::string, std::vector<std::string>>;

GluingPtr shared(GluingData g) { return std::make_shared<const GluingData>(std::move(g)); }

Poset restrict_to(const Poset& p, const std::vector<std::string>& labels) {
  std::vector<Elem> idx;
  for (const auto& l : labels) idx.push_back(p.index_of(l));
  return induced(p, idx);
}

}  // namespace

TEST_CASE("counterexample names witness 4") {
  auto in = b::counterexample();
  auto t0 = std::chrono::steady_clock::now();
  try {
    GluingData::validate(in.x, in.y, in.yx);
    FAIL("accepted");
  } catch (const AntichainViolation& e) {
    CHECK(e.witness == "4");
    CHECK(e.x == "1");
    CHECK(std::string(e.what()).find("'4'") != std::string::npos);
  }
  auto us = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0).count();
  CHECK(us < 1000);
}

TEST_CASE("one element each side") {
  auto g = shared(GluingData::validate(Poset::point("x"), Poset::point("y"), YxMap{{"x", {"y"}}}));
  CHECK(g->phi(0, 0) == std::vector<Elem>{0});
  auto p = build_plus(g), m = build_minus(g);
  CHECK(p.poset->leq(0, 1));
  CHECK_FALSE(p.poset->leq(1, 0));
  CHECK(m.poset->leq(1, 0));
  CHECK_FALSE(m.poset->leq(0, 1));
}

TEST_CASE("figure 1 data") {
  for (auto [i, j] : b::figure1_pairs()) {
    auto in = b::figure1_gluing(i, j);
    auto g = shared(GluingData::validate(in.x, in.y, in.yx));
    for (Elem x = 0; x < g->X().size(); ++x) CHECK(g->Yx(x).size() == 1);
    CHECK(is_isomorphic(*build_plus(g).poset, b::figure1_poset(i)).has_value());
    CHECK(is_isomorphic(*build_minus(g).poset, b::figure1_poset(j)).has_value());
  }
  auto in = b::figure1_gluing(3, 4);
  std::map<std::string, std::string> f{{"1", "4"}, {"7", "4"}, {"2", "5"}, {"3", "6"}};
  CHECK_NOTHROW(from_function(in.x, in.y, f));
}

TEST_CASE("empty witness sets give the direct sum") {
  auto x = Poset::chain({"a", "b"});
  auto y = Poset::antichain({"c", "d"});
  auto g = shared(GluingData::validate(x, y, YxMap{{"a", {}}, {"b", {}}}));
  CHECK(*build_plus(g).poset == direct_sum(x, y));
  CHECK(*build_minus(g).poset == direct_sum(x, y));
}

TEST_CASE("functions") {
  auto x = Poset::chain({"a", "b"});
  auto y = Poset::chain({"c", "d"});
  CHECK_NOTHROW(from_function(x, y, {{"a", "c"}, {"b", "c"}}));
  CHECK_THROWS_AS(from_function(x, y, {{"a", "d"}, {"b", "c"}}), NotOrderPreserving);
}

TEST_CASE("bgp points") {
  auto y = Poset::antichain({"a", "b", "c"});
  auto g = shared(from_bgp(y, {"a", "b", "c"}));
  auto p = build_plus(g), m = build_minus(g);
  for (Elem e = 1; e < 4; ++e) {
    CHECK(p.poset->less(0, e));
    CHECK(m.poset->less(e, 0));
  }
  CHECK_NOTHROW(from_bgp(y, {"a"}));
  auto ab = Poset::chain({"a", "b"});
  CHECK_THROWS_AS(from_bgp(ab, {"a", "b"}), AntichainViolation);
  auto star = gluing_from_json(read_json_file(std::string(UDEQ_DATA_DIR) + "/bgp_star.json"));
  auto sm = build_minus(shared(star));
  CHECK(sm.poset->maximal_elements() == std::vector<Elem>{0});
}

TEST_CASE("ordinal witnesses") {
  auto w = ordinal_witness(Poset::point("x"), Poset::point("z"));
  auto g = shared(w.gluing);
  CHECK(is_isomorphic(*build_plus(g).poset, Poset::chain({"1", "2", "3"})).has_value());
  CHECK(is_isomorphic(*build_minus(g).poset, ordinal_sum(Poset::point("b"), Poset::antichain({"p", "q"}))).has_value());
  auto w2 = ordinal_witness(Poset::antichain({"x1", "x2"}), Poset::point("z"));
  auto plus = build_plus(shared(w2.gluing)).poset;
  CHECK(plus->size() == 4);
  CHECK(plus->height() == 3);
}

TEST_CASE("multi-element witness sets and phi") {
  // X = a < b, Y = {p < r, q < s} with Y_a = {p, q}, Y_b = {r, s}.
  auto x = Poset::chain({"a", "b"});
  auto y = Poset::from_generators({"p", "q", "r", "s"}, {{"p", "r"}, {"q", "s"}});
  auto g = GluingData::validate(x, y, YxMap{{"a", {"p", "q"}}, {"b", {"s", "r"}}});
  CHECK(g.phi(0, 1) == std::vector<Elem>{2, 3});
  CHECK(g.position_in(1, 2) == 1);
  CHECK(g.witness_below(0, 3) == std::optional<Elem>(1));
  CHECK_THROWS_AS(GluingData::validate(x, y, YxMap{{"a", {"p", "q"}}, {"b", {"r"}}}), PhiMissing);
}

TEST_CASE("random gluings build legal orders") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    Rng rng(Rng::derive(11, s));
    auto g = shared(random_gluing(rng, 6 + rng.below(3)));
    std::vector<std::string> xs = g->X().labels(), ys = g->Y().labels();
    for (Sign sign : {Sign::plus, Sign::minus}) {
      auto o = build_order(g, sign);
      CHECK(restrict_to(*o.poset, xs) == g->X());
      CHECK(restrict_to(*o.poset, ys) == g->Y());
    }
    // Revalidating reproduces the same data, phi included.
    CHECK(GluingData::validate(g->X(), g->Y(), g->all_Yx()) == *g);
    bool singletons = true;
    for (const auto& s2 : g->all_Yx()) singletons = singletons && s2.size() == 1;
    if (singletons) {
      std::map<std::string, std::string> f;
      for (Elem x = 0; x < g->X().size(); ++x) f[g->X().label(x)] = g->Y().label(g->Yx(x)[0]);
      CHECK(from_function(g->X(), g->Y(), f) == *g);
    }
    CHECK(gluing_from_json(to_json(*g)) == *g);
  }
}
