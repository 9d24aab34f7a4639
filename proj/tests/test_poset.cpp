#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "udeq/error.hpp"
#include "udeq/harness.hpp"
#include "udeq/io.hpp"
#include "udeq/poset.hpp"

using namespace udeq;

namespace {

using Edges = std::vector<std::pair<Elem, Elem>>;

Edges sorted(Edges e) {
  std::sort(e.begin(), e.end());
  return e;
}

Poset diamond() {
  return Poset::from_generators({"1", "2", "3", "4"}, {{"1", "2"}, {"1", "3"}, {"2", "4"}, {"3", "4"}, {"1", "4"}});
}

std::vector<std::pair<std::string, std::string>> label_pairs(const Poset& p, const Edges& e) {
  std::vector<std::pair<std::string, std::string>> out;
  for (auto [a, c] : e) out.emplace_back(p.label(a), p.label(c));
  return out;
}

}  // namespace

TEST_CASE("generators and closure") {
  auto p = Poset::from_generators({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  CHECK(p.leq(0, 2));
  CHECK_FALSE(p.leq(2, 0));
  CHECK(p.relations().size() == 6);
  auto one = Poset::from_generators({"a"}, {});
  CHECK(one.size() == 1);
  CHECK(one.leq(0, 0));
  CHECK_THROWS_AS(Poset::from_generators({"a", "b"}, {{"a", "b"}, {"b", "a"}}), CycleError);
  CHECK_THROWS_AS(Poset::from_generators({"a"}, {{"a", "z"}}), UnknownElement);
  CHECK_THROWS_AS(Poset::from_generators({"a", "a"}, {}), DuplicateElement);
}

TEST_CASE("hasse diagrams") {
  auto d = diamond();
  CHECK(sorted(d.hasse().edges) == Edges{{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  CHECK(sorted(Poset::chain({"a", "b", "c"}).hasse().edges) == Edges{{0, 1}, {1, 2}});
  CHECK(Poset::antichain({"a", "b"}).hasse().edges.empty());
}

TEST_CASE("ordinal and direct sums") {
  auto one = Poset::point("a");
  auto two = ordinal_sum(one, Poset::point("b"));
  CHECK(is_isomorphic(two, Poset::chain({"x", "y"})).has_value());
  auto v = ordinal_sum(Poset::antichain({"a", "b"}), Poset::point("c"));
  CHECK(v.leq(v.index_of("a"), v.index_of("c")));
  CHECK(v.leq(v.index_of("b"), v.index_of("c")));
  CHECK_FALSE(v.comparable(v.index_of("a"), v.index_of("b")));
  auto x = Poset::antichain({"p", "q", "r"});
  auto y = Poset::chain({"s", "t"});
  CHECK(ordinal_sum(x, y).relations().size() == x.relations().size() + y.relations().size() + 6);
  CHECK(is_isomorphic(direct_sum(Poset::point("a"), Poset::point("b")), Poset::antichain({"1", "2"})).has_value());
  auto cc = direct_sum(Poset::chain({"a", "b"}), Poset::chain({"c", "d"}));
  CHECK(cc.size() == 4);
  CHECK(cc.hasse().edges.size() == 2);
  auto clash = direct_sum(Poset::point("a"), Poset::point("a"));
  CHECK(clash.labels() == std::vector<std::string>{"L.a", "R.a"});
}

TEST_CASE("opposite and product") {
  auto c = Poset::chain({"a", "b"});
  auto o = opposite(c);
  CHECK(o.leq(o.index_of("b"), o.index_of("a")));
  CHECK(opposite(opposite(diamond())) == diamond());
  auto a = Poset::antichain({"a", "b"});
  CHECK(opposite(a) == a);
  auto grid = product(c, c);
  CHECK(grid.size() == 4);
  CHECK(grid.hasse().edges.size() == 4);
  CHECK(grid.relations().size() == 9);
  CHECK(is_isomorphic(product(diamond(), Poset::point()), diamond()).has_value());
  CHECK(product(diamond(), c).size() == 8);
}

TEST_CASE("isomorphism search") {
  auto d = diamond();
  auto m = is_isomorphic(d, d);
  REQUIRE(m.has_value());
  CHECK_FALSE(is_isomorphic(Poset::chain({"a", "b"}), Poset::antichain({"a", "b"})).has_value());
  std::vector<std::string> big;
  for (int i = 0; i < 13; ++i) big.push_back("e" + std::to_string(i));
  CHECK_THROWS_AS(is_isomorphic(Poset::antichain(big), Poset::antichain(big)), SizeLimit);
}

TEST_CASE("principal up and down sets") {
  auto c = Poset::chain({"a", "b"});
  CHECK(c.up_set(0) == std::vector<Elem>{0, 1});
  CHECK(c.down_set(0) == std::vector<Elem>{0});
  CHECK(Poset::antichain({"a", "b"}).up_set(0) == std::vector<Elem>{0});
}

TEST_CASE("poset JSON and DOT") {
  auto d = diamond();
  CHECK(poset_from_json(to_json(d)) == d);
  auto dot = to_dot(Poset::chain({"a", "b", "c"}));
  CHECK(dot.find("\"a\" -> \"b\"") != std::string::npos);
  CHECK(dot.find("\"a\" -> \"c\"") == std::string::npos);
  CHECK_THROWS_AS(poset_from_json(parse_json(R"({"relations": []})")), ParseError);
  CHECK_THROWS_AS(poset_from_json(parse_json(R"({"elements": [1, 2]})")), ParseError);
}

TEST_CASE("properties on random posets") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    Rng rng(s);
    auto p = random_poset(rng, 1 + rng.below(8), "p");
    auto q = random_poset(rng, 1 + rng.below(4), "q");
    auto r = random_poset(rng, 1 + rng.below(3), "r");
    // Closing the relation again and reducing a closure of the reduction are fixed points.
    CHECK(Poset::from_index_pairs(p.labels(), p.relations()) == p);
    auto h = p.hasse().edges;
    auto closed = Poset::from_generators(p.labels(), label_pairs(p, h));
    CHECK(closed == p);
    CHECK(sorted(closed.hasse().edges) == sorted(h));
    for (auto [a, c] : p.relations())
      for (Elem e = 0; e < p.size(); ++e)
        if (p.leq(c, e)) CHECK(p.leq(a, e));
    CHECK(is_isomorphic(p, p).has_value());
    CHECK(is_isomorphic(p, q).has_value() == is_isomorphic(q, p).has_value());
    CHECK(is_isomorphic(direct_sum(p, q), direct_sum(q, p)).has_value());
    CHECK(is_isomorphic(ordinal_sum(ordinal_sum(p, q), r), ordinal_sum(p, ordinal_sum(q, r)), 16).has_value());
  }
}
