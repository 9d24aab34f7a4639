#include "udeq/builtins.hpp"

#include "udeq/error.hpp"

namespace udeq::builtins {

namespace {

CObject obj(std::vector<Term> t) { return CObject(two_chain(), std::move(t)); }

// Element indices of the two-chain.
constexpr Elem e1 = 0, e2 = 1;

FormulaToPoint shifted(const FormulaToPoint& f, int n) { return shift(f, n); }

Poset from_pairs(const std::vector<std::pair<int, int>>& pairs) {
  std::vector<std::pair<std::string, std::string>> g;
  for (auto [a, b] : pairs) g.emplace_back(std::to_string(a), std::to_string(b));
  return Poset::from_generators({"1", "2", "3", "4", "5", "6", "7"}, g);
}

Poset sub(const Poset& p, const std::vector<std::string>& labels) {
  std::vector<Elem> idx;
  for (const auto& l : labels) idx.push_back(p.index_of(l));
  return induced(p, idx);
}

}  // namespace

PosetPtr two_chain() {
  static const PosetPtr p = share(Poset::chain({"1", "2"}));
  return p;
}

FormulaToPoint xi1() { return FormulaToPoint::make(obj({{e1, 1}}), {{1}}); }
FormulaToPoint xi2() { return FormulaToPoint::make(obj({{e2, 0}}), {{1}}); }
FormulaToPoint xi12() { return FormulaToPoint::make(obj({{e1, 1}, {e2, 0}}), {{1, 0}, {1, 1}}); }
FormulaToPoint xi121() {
  return FormulaToPoint::make(obj({{e1, 2}, {e2, 1}, {e1, 1}}), {{1, 0, 0}, {-1, 1, 0}, {1, 0, 1}});
}
FormulaToPoint xi212() {
  return FormulaToPoint::make(obj({{e2, 1}, {e1, 1}, {e2, 0}}), {{1, 0, 0}, {0, 1, 0}, {1, 1, 1}});
}

CMorphism phi1() { return CMorphism(xi12().xi, xi1().xi, {{1, 0}}, Strictness::strict); }
CMorphism phi2() { return CMorphism(xi2().xi, xi12().xi, {{0}, {1}}, Strictness::strict); }
CMorphism alpha1() { return CMorphism(xi1().xi, xi212().xi, {{1}, {-1}, {0}}, Strictness::strict); }
CMorphism beta1() { return CMorphism(xi212().xi, xi1().xi, {{0, -1, 0}}, Strictness::strict); }
CMorphism alpha2() { return CMorphism(shift(xi2().xi, 1), xi121().xi, {{0}, {1}, {0}}, Strictness::strict); }
CMorphism beta2() { return CMorphism(xi121().xi, shift(xi2().xi, 1), {{0, 1, 1}}, Strictness::strict); }
CMorphism h1() {
  return CMorphism(xi212().xi, shift(xi212().xi, -1), {{0, 0, 1}, {0, 0, 0}, {0, 0, 0}}, Strictness::strict);
}
CMorphism h2() {
  return CMorphism(xi121().xi, shift(xi121().xi, -1), {{0, 0, 1}, {0, 0, 0}, {0, 0, 0}}, Strictness::strict);
}

Formula xi_plus() { return Formula::from_covers(two_chain(), two_chain(), {xi2(), xi12()}, {{{e1, e2}, phi2()}}); }
Formula xi_minus() { return Formula::from_covers(two_chain(), two_chain(), {xi12(), xi1()}, {{{e1, e2}, phi1()}}); }
Formula nu() { return translation_formula(two_chain(), 1); }

FormulaTransformation eps_pm() {
  Formula src = compose(xi_plus(), xi_minus());
  Formula tgt = nu();
  return {src, tgt, {CMorphism::identity(xi1().xi), beta2()}};
}

FormulaTransformation eps_mp() {
  Formula src = nu();
  Formula tgt = compose(xi_minus(), xi_plus());
  return {src, tgt, {alpha1(), CMorphism::identity(shifted(xi2(), 1).xi)}};
}

FormulaTransformation eps_pp() {
  Formula src = compose(xi_plus(), xi_plus());
  Formula tgt = xi_minus();
  return {src, tgt, {CMorphism::identity(xi12().xi), -beta1()}};
}

FormulaTransformation eps_mm() {
  Formula src = compose(xi_plus(), nu());
  Formula tgt = compose(xi_minus(), xi_minus());
  const CObject o = shift(xi12().xi, 1);
  return {src, tgt, {alpha2(), CMorphism(o, o, {{-1, 0}, {0, 1}}, Strictness::strict)}};
}

std::vector<std::string> names() {
  return {"xi1", "xi2", "xi12", "xi121", "xi212", "alpha1", "alpha2", "beta1", "beta2", "h", "nu"};
}

Poset figure1_poset(int i) {
  switch (i) {
    case 1:
      return from_pairs({{1, 2}, {1, 3}, {1, 4}, {2, 5}, {3, 6}, {4, 5}, {4, 6}, {5, 7}, {6, 7}});
    case 2:
      return from_pairs({{3, 6}, {3, 1}, {6, 7}, {6, 4}, {1, 4}, {1, 2}, {4, 5}, {7, 2}, {2, 5}});
    case 3:
      return from_pairs({{7, 1}, {1, 2}, {1, 3}, {1, 4}, {2, 5}, {3, 6}, {4, 5}, {4, 6}});
    case 4:
      return from_pairs({{4, 5}, {4, 6}, {4, 7}, {5, 2}, {6, 3}, {7, 1}, {1, 2}, {1, 3}});
    default:
      throw Error("figure 1 has posets X1..X4 only");
  }
}

std::vector<std::pair<int, int>> figure1_pairs() { return {{1, 2}, {1, 3}, {3, 4}}; }

GluingInput figure1_gluing(int i, int j) {
  std::vector<std::string> xs, ys;
  std::map<std::string, std::string> f;
  if (i == 1 && j == 2) {
    xs = {"1", "2", "4", "5"};
    ys = {"3", "6", "7"};
    f = {{"1", "3"}, {"2", "7"}, {"4", "6"}, {"5", "7"}};
  } else if (i == 1 && j == 3) {
    xs = {"1", "2", "3", "4", "5", "6"};
    ys = {"7"};
    for (const auto& x : xs) f[x] = "7";
  } else if (i == 3 && j == 4) {
    xs = {"1", "2", "3", "7"};
    ys = {"4", "5", "6"};
    f = {{"1", "4"}, {"7", "4"}, {"2", "5"}, {"3", "6"}};
  } else {
    throw Error("figure 1 gluings are (1,2), (1,3) and (3,4)");
  }
  const Poset whole = figure1_poset(i);
  GluingInput in{sub(whole, xs), sub(whole, ys), {}};
  for (const auto& [x, y] : f) in.yx[x] = {y};
  return in;
}

GluingInput counterexample() {
  return {Poset::point("1"), Poset::from_generators({"2", "3", "4"}, {{"2", "4"}, {"3", "4"}}), {{"1", {"2", "3"}}}};
}

}  // namespace udeq::builtins
