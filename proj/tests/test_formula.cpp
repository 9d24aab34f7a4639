#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "udeq/builtins.hpp"
#include "udeq/error.hpp"
#include "udeq/formula.hpp"
#include "udeq/random.hpp"

using namespace udeq;
namespace b = udeq::builtins;

namespace {

CObject obj(std::vector<Term> t) { return CObject(b::two_chain(), std::move(t)); }

}  // namespace

TEST_CASE("normalize kills degree jumps of two") {
  CObject s = obj({{0, 0}}), t = obj({{0, 2}});
  CMorphism m(s, t, IntMatrix{{5}});
  CHECK(m.is_zero());
  CHECK_NOTHROW(CMorphism(s, t, IntMatrix{{5}}, Strictness::strict));
}

TEST_CASE("strict mode rejects entries against the order") {
  CObject s = obj({{1, 0}}), t = obj({{0, 0}});
  CHECK_THROWS_AS(CMorphism(s, t, IntMatrix{{1}}, Strictness::strict), IllegalSupport);
  CHECK(CMorphism(s, t, IntMatrix{{1}}).is_zero());
  CObject down = obj({{0, -1}});
  CHECK_THROWS_AS(CMorphism(obj({{0, 0}}), down, IntMatrix{{1}}, Strictness::strict), IllegalSupport);
}

TEST_CASE("identity is already canonical") {
  auto f = b::xi121();
  auto id = CMorphism::identity(f.xi);
  CHECK(normalize(id) == id);
  CHECK(id.is_identity());
}

TEST_CASE("composition through two unit jumps vanishes") {
  CObject a = obj({{0, 0}}), m = obj({{0, 1}}), c = obj({{0, 2}});
  CMorphism f(a, m, IntMatrix{{1}}), g(m, c, IntMatrix{{1}});
  CHECK(compose(g, f).is_zero());
  CHECK_THROWS_AS(compose(f, f), ShapeMismatch);
}

TEST_CASE("beta1 alpha1 is the 1x1 identity") {
  auto ba = compose(b::beta1(), b::alpha1());
  CHECK(ba.matrix() == IntMatrix{{1}});
  CHECK(compose(b::beta2(), b::alpha2()).matrix() == IntMatrix{{1}});
}

TEST_CASE("shift") {
  CHECK(shift(shift(b::xi121().xi, 1), -1) == b::xi121().xi);
  CHECK(shift(b::xi2().xi, 1) == obj({{1, 1}}));
  CHECK(check_formula(shift(b::xi212(), 3)).ok());
}

TEST_CASE("star") {
  auto d = b::xi12().D;
  CHECK(star(d).matrix() == IntMatrix{{-1, 0}, {1, -1}});
  CHECK(star(star(d)) == d);
  CHECK(star(b::phi1()) == b::phi1());
}

TEST_CASE("check_formula on the two-chain formulas") {
  for (const auto& f : {b::xi1(), b::xi2(), b::xi12(), b::xi121(), b::xi212()}) CHECK(check_formula(f).ok());
  CHECK_THROWS_AS(FormulaToPoint::make(b::xi12().xi, IntMatrix{{2, 0}, {1, 1}}), InvalidFormula);
  FormulaToPoint bad{b::xi12().xi, CMorphism(b::xi12().xi, shift(b::xi12().xi, 1), IntMatrix{{2, 0}, {1, 1}})};
  auto r = check_formula(bad);
  REQUIRE_FALSE(r.ok());
  bool cond3 = false;
  for (const auto& v : r.violations) cond3 = cond3 || v.find("condition 3: D(0,0)") != std::string::npos;
  CHECK(cond3);
}

TEST_CASE("upper triangular D is rejected") {
  FormulaToPoint bad{b::xi12().xi, CMorphism(b::xi12().xi, shift(b::xi12().xi, 1), IntMatrix{{1, 1}, {1, 1}})};
  // (2,0) -> (1,2) is not supported by the order, so canonical form already kills it.
  CHECK(check_formula(bad).ok());
  CObject o = obj({{0, 0}, {0, 0}});
  FormulaToPoint upper{o, CMorphism(o, shift(o, 1), IntMatrix{{1, 1}, {0, 1}})};
  CHECK_FALSE(check_formula(upper).ok());
}

TEST_CASE("check_formula_morphism") {
  CHECK(check_formula_morphism({b::xi12(), b::xi1(), b::phi1()}).ok());
  CHECK(check_formula_morphism({b::xi2(), b::xi12(), b::phi2()}).ok());
  CObject s = b::xi2().xi;
  CObject t = obj({{1, 1}});
  FormulaToPoint ft = FormulaToPoint::make(t, {{1}});
  CMorphism raising(s, t, IntMatrix{{1}});
  auto r = check_formula_morphism({b::xi2(), ft, raising});
  CHECK_FALSE(r.ok());
  CHECK(r.violations.front().find("restriction") != std::string::npos);
}

TEST_CASE("identity and translation formulas") {
  auto x = b::two_chain();
  CHECK(check_formula_diagram(identity_formula(x)).ok());
  auto t0 = translation_formula(x, 0);
  auto id = identity_formula(x);
  CHECK(t0.at(0) == id.at(0));
  CHECK(t0.res(0, 1) == id.res(0, 1));
  auto n = b::nu();
  CHECK(n.at(0) == b::xi1());
  CHECK(n.at(1) == shift(b::xi2(), 1));
  CHECK(n.res(0, 1).matrix() == IntMatrix{{1}});
}

TEST_CASE("substitution reproduces the three-term formulas") {
  auto pm = compose(b::xi_plus(), b::xi_minus());
  auto mp = compose(b::xi_minus(), b::xi_plus());
  CHECK(pm.at(0) == b::xi1());
  CHECK(pm.at(1) == b::xi121());
  CHECK(pm.res(0, 1).matrix() == IntMatrix{{0}, {0}, {1}});
  CHECK(mp.at(0) == b::xi212());
  CHECK(mp.at(1) == shift(b::xi2(), 1));
  CHECK(mp.res(0, 1).matrix() == IntMatrix{{1, 0, 0}});
  auto pp = compose(b::xi_plus(), b::xi_plus());
  CHECK(pp.at(0) == b::xi12());
  CHECK(pp.at(1) == b::xi212());
  CHECK(pp.res(0, 1).matrix() == IntMatrix{{0, 0}, {1, 0}, {0, 1}});
  auto mm = compose(b::xi_minus(), b::xi_minus());
  CHECK(mm.at(0) == b::xi121());
  CHECK(mm.at(1) == negated_star_shift(b::xi12()));
  CHECK(mm.res(0, 1).matrix() == IntMatrix{{1, 0, 0}, {0, 1, 0}});
}

TEST_CASE("substitution into the identity formula changes nothing") {
  auto id = identity_formula(b::two_chain());
  for (const auto& f : {b::xi12(), b::xi121(), b::xi212()}) CHECK(substitute(f, id) == f);
}

TEST_CASE("homotopy identities") {
  CHECK(check_homotopy(b::alpha1(), b::beta1(), b::h1(), b::xi212().D).ok());
  CHECK(check_homotopy(b::alpha2(), b::beta2(), b::h2(), b::xi121().D).ok());
  auto zero = CMorphism::zero(b::xi212().xi, shift(b::xi212().xi, -1));
  CHECK_FALSE(check_homotopy(b::alpha1(), b::beta1(), zero, b::xi212().D).ok());
}

TEST_CASE("epsilon transformations on the two-chain") {
  for (const auto& t : {b::eps_pm(), b::eps_mp(), b::eps_pp(), b::eps_mm()}) {
    auto r = check_transformation(t);
    INFO((r.ok() ? std::string() : r.violations.front()));
    CHECK(r.ok());
  }
}

TEST_CASE("negated star shift and I_xi") {
  auto i = i_xi(b::xi121());
  CHECK(check_formula(i.target).ok());
  CHECK(check_formula_morphism(i).ok());
  FormulaMorphism back{i.target, i.source, i.phi};
  CHECK(check_formula_morphism(back).ok());
  CHECK(compose(i.phi, i.phi).is_identity());
  // I[1] D = -D* I
  CHECK(compose(shift(i.phi, 1), shift(b::xi121(), 1).D) == compose(i.target.D, i.phi));
  CObject even = obj({{0, 0}, {1, 0}});
  auto f = FormulaToPoint::make(even, {{1, 0}, {1, 1}});
  CHECK(i_xi(f).phi.is_identity());
  CHECK(negated_star_shift(f).D == shift(f, 1).D);
  CHECK(check_formula(negated_star_shift(negated_star_shift(b::xi12()))).ok());
}
