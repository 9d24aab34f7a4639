#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "udeq/builtins.hpp"
#include "udeq/error.hpp"
#include "udeq/eval.hpp"
#include "udeq/harness.hpp"
#include "udeq/io.hpp"

using namespace udeq;
namespace b = udeq::builtins;

namespace {

GluingPtr fig(int i, int j) {
  auto in = b::figure1_gluing(i, j);
  return std::make_shared<const GluingData>(GluingData::validate(in.x, in.y, in.yx));
}

VerifyOptions quick(std::size_t trials, std::uint64_t seed = 0) {
  VerifyOptions o;
  o.trials = trials;
  o.seed = seed;
  return o;
}

}  // namespace

TEST_CASE("theorem formulas on a single gluing step") {
  // X = {x}, Y = {y}, Y_x = {y}: plus is x < y, minus is y < x.
  auto g = std::make_shared<const GluingData>(
      GluingData::validate(Poset::point("x"), Poset::point("y"), std::map<std::string, std::vector<std::string>>{{"x", {"y"}}}));
  auto t = build_theorem_formulas(g);
  CHECK(all_passed(t.checks));
  // At x the plus formula is ((x,1),(y,0)) with the two-chain cone differential.
  const auto& fx = t.xi_plus.at(0);
  REQUIRE(fx.xi.size() == 2);
  CHECK(fx.xi[0].deg == 1);
  CHECK(fx.xi[1].deg == 0);
  CHECK(fx.D.matrix() == IntMatrix{{1, 0}, {1, 1}});
  const auto& gx = t.xi_minus.at(0);
  CHECK(gx.xi[0].deg == 1);
  CHECK(gx.xi[1].deg == 0);
  CHECK(gx.D.matrix() == IntMatrix{{1, 0}, {1, 1}});
  auto e = build_epsilons(t);
  CHECK(all_passed(e.checks));
}

TEST_CASE("figure 1 gluings build X_i and X_j") {
  for (auto [i, j] : b::figure1_pairs()) {
    auto g = fig(i, j);
    CHECK(is_isomorphic(*build_plus(g).poset, b::figure1_poset(i)).has_value());
    CHECK(is_isomorphic(*build_minus(g).poset, b::figure1_poset(j)).has_value());
    CHECK(same_order_by_labels(*build_plus(g).poset, b::figure1_poset(i)));
    CHECK(same_order_by_labels(*build_minus(g).poset, b::figure1_poset(j)));
  }
}

TEST_CASE("figure 1 equivalences") {
  for (auto [i, j] : b::figure1_pairs()) {
    auto cert = verify_equivalence(fig(i, j), quick(10));
    CHECK(cert.structural_ok());
    for (const auto& r : cert.trials) {
      CHECK(r.mp_qis);
      CHECK(r.pm_qis);
      CHECK(r.euler_ok);
      CHECK(r.composite_ok);
      CHECK(r.k_shift == r.rmrp);
      CHECK(r.l_shift == r.rprm);
    }
    CHECK(cert.valid());
  }
}

TEST_CASE("counterexample is rejected") {
  auto in = b::counterexample();
  try {
    GluingData::validate(in.x, in.y, in.yx);
    FAIL("accepted");
  } catch (const AntichainViolation& e) {
    CHECK(e.witness == "4");
  }
}

TEST_CASE("random gluings are valid and deterministic") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    Rng a(s), c(s);
    auto g1 = random_gluing(a), g2 = random_gluing(c);
    CHECK(g1 == g2);
    CHECK(g1.X().size() + g1.Y().size() <= 8);
  }
}

TEST_CASE("random gluings pass verification") {
  for (std::uint64_t s = 0; s < 15; ++s) {
    Rng rng(Rng::derive(77, s));
    auto g = std::make_shared<const GluingData>(random_gluing(rng));
    auto cert = verify_equivalence(g, quick(4, s));
    INFO("seed " << s << ": " << to_json(*g).dump());
    CHECK(cert.valid());
  }
}

TEST_CASE("two-chain report") {
  auto rep = verify_two_chain(quick(20));
  CHECK(all_passed(rep.checks));
  CHECK(rep.ok());
  for (const auto& t : rep.trials) CHECK(t.cube == t.k_shift);
}

TEST_CASE("fields give the same tables on the same seeds") {
  auto q = verify_two_chain(quick(10));
  auto o = quick(10);
  o.field = Field::prime(5);
  auto p = verify_two_chain(o);
  for (std::size_t i = 0; i < 10; ++i) CHECK(q.trials[i].k_shift == p.trials[i].k_shift);
}

TEST_CASE("parallel runs match serial runs") {
  auto g = fig(1, 2);
  auto o = quick(8, 5);
  auto serial = verify_equivalence(g, o).to_json().dump();
  o.jobs = 4;
  CHECK(verify_equivalence(g, o).to_json().dump() == serial);
}

TEST_CASE("bgp reflections") {
  VerifyOptions o = quick(3);
  std::vector<std::string> v{"a", "b", "c", "d"};
  auto rep = verify_bgp_path(v, {{"a", "b"}, {"b", "c"}, {"c", "d"}}, {{"b", "a"}, {"b", "c"}, {"c", "d"}}, o);
  REQUIRE(rep.steps.size() == 1);
  CHECK(rep.steps[0].vertex == "a");
  CHECK(rep.steps[0].source_to_sink);
  CHECK(rep.ok());
  auto same = verify_bgp_path(v, {{"a", "b"}, {"b", "c"}, {"c", "d"}}, {{"a", "b"}, {"b", "c"}, {"c", "d"}}, o);
  CHECK(same.steps.empty());
  CHECK_THROWS_AS(verify_bgp_path(v, {{"a", "b"}, {"b", "c"}}, {{"a", "b"}, {"b", "c"}}, o), NotATree);
  CHECK_THROWS_AS(verify_bgp_path(v, {{"a", "b"}, {"b", "c"}, {"c", "a"}}, {{"a", "b"}, {"b", "c"}, {"c", "a"}}, o),
                  NotATree);
}

TEST_CASE("bgp on the star reaches every orientation") {
  std::vector<std::string> v{"c", "1", "2", "3"};
  std::vector<std::pair<std::string, std::string>> base{{"c", "1"}, {"c", "2"}, {"c", "3"}};
  for (unsigned bits = 0; bits < 8; ++bits) {
    auto e = base;
    for (int i = 0; i < 3; ++i)
      if ((bits >> i) & 1) std::swap(e[i].first, e[i].second);
    auto rep = verify_bgp_path(v, base, e, quick(2));
    CHECK(rep.ok());
  }
}

TEST_CASE("x1z") {
  auto x = Poset::from_generators({"a", "b", "c"}, {{"a", "b"}});
  auto z = Poset::antichain({"p", "q"});
  auto r = verify_x1z(x, z, quick(5));
  CHECK(r.plus_shape);
  CHECK(r.minus_shape);
  CHECK(r.ok());
}

TEST_CASE("broken transformations are detected") {
  auto g = fig(1, 2);
  auto t = build_theorem_formulas(g);
  auto e = build_epsilons(t);
  auto zero = e.eps_mp;
  for (auto& c : zero.components) c = CMorphism::zero(c.source(), c.target());
  CHECK(check_transformation(zero).ok());
  Rng rng(1);
  auto k = random_diagram(t.plus.poset, rng);
  auto h = cohomology(k, Field::rationals());
  bool nonzero = false;
  for (const auto& m : h) nonzero = nonzero || !m.empty();
  REQUIRE(nonzero);
  CHECK_FALSE(is_quasi_iso_diagram(eval_transformation(zero, k), Field::rationals()));
  auto scaled = e.eps_mp;
  scaled.components[0] = scaled.components[0].scaled(2);
  CHECK_FALSE(check_transformation(scaled).ok());
  TrialRecord r;
  r.mp_qis = r.pm_qis = r.euler_ok = true;
  CHECK_FALSE(r.verdict());
  EquivalenceCertificate c;
  c.trials.push_back(r);
  CHECK_FALSE(c.valid());
}
