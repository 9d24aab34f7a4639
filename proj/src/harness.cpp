#include "udeq/harness.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "udeq/builtins.hpp"
#include "udeq/error.hpp"
#include "udeq/eval.hpp"
#include "udeq/io.hpp"

namespace udeq {

namespace b = builtins;

namespace {

// Two-chain element indices.
constexpr Elem c1 = 0, c2 = 1;

std::string pattern(const GluedOrder& o, std::initializer_list<Elem> es) {
  std::string s;
  for (Elem e : es) s += o.is_x(e) ? 'X' : 'Y';
  return s;
}

void add(CheckList& out, std::string name, std::string category, const CheckReport& r) {
  std::string detail;
  for (const auto& v : r.violations) detail += (detail.empty() ? "" : "; ") + v;
  out.push_back({std::move(name), std::move(category), r.ok(), std::move(detail)});
}

std::string first_failure(const CheckList& c) {
  for (const auto& s : c)
    if (!s.passed) return s.name + ": " + s.detail;
  return {};
}

FormulaToPoint single(const PosetPtr& base, Elem e, int deg) {
  return FormulaToPoint::make(CObject(base, {{e, deg}}), IntMatrix{{1}});
}

FormulaToPoint several(const PosetPtr& base, const std::vector<Elem>& es, int deg) {
  std::vector<Term> t;
  for (Elem e : es) t.push_back({e, deg});
  return FormulaToPoint::make(CObject(base, std::move(t)), IntMatrix::identity(es.size()));
}

// ξ_{x,Y_x}: ((x,0)) -> ((Y_x,0)) over ≤₊.
Formula arrow_plus_of(const GluedOrder& p, Elem x) {
  const auto& g = *p.gluing;
  std::vector<Elem> ys;
  for (Elem y : g.Yx(x)) ys.push_back(p.from_y(y));
  auto src = single(p.poset, p.from_x(x), 0);
  auto tgt = several(p.poset, ys, 0);
  IntMatrix m(ys.size(), 1);
  for (std::size_t k = 0; k < ys.size(); ++k) m(k, 0) = 1;
  CMorphism r(src.xi, tgt.xi, m, Strictness::strict);
  return Formula::from_covers(p.poset, b::two_chain(), {src, tgt}, {{{c1, c2}, r}});
}

// ξ_{Y_x,x}: ((Y_x,0)) -> ((x,0)) over ≤₋.
Formula arrow_minus_of(const GluedOrder& m, Elem x) {
  const auto& g = *m.gluing;
  std::vector<Elem> ys;
  for (Elem y : g.Yx(x)) ys.push_back(m.from_y(y));
  auto src = several(m.poset, ys, 0);
  auto tgt = single(m.poset, m.from_x(x), 0);
  IntMatrix mat(1, ys.size());
  for (std::size_t k = 0; k < ys.size(); ++k) mat(0, k) = 1;
  CMorphism r(src.xi, tgt.xi, mat, Strictness::strict);
  return Formula::from_covers(m.poset, b::two_chain(), {src, tgt}, {{{c1, c2}, r}});
}

// Restriction a <= b of the formula over `o` (target order) whose stalks are
// `at`. `x_first` says whether x sits before Y_x inside an X stalk.
IntMatrix theorem_restriction(const GluedOrder& o, const GluingData& g, Elem a, Elem b, bool x_first) {
  const std::size_t off = x_first ? 1 : 0;
  auto size_of = [&](Elem e) { return o.is_x(e) ? g.Yx(o.to_x(e)).size() + 1 : std::size_t{1}; };
  IntMatrix m(size_of(b), size_of(a));
  if (!o.is_x(a) && !o.is_x(b)) {
    m(0, 0) = 1;
  } else if (o.is_x(a) && o.is_x(b)) {
    const Elem x = o.to_x(a), x2 = o.to_x(b);
    const std::size_t nx = g.Yx(x).size(), nx2 = g.Yx(x2).size();
    const auto& img = g.phi(x, x2);
    for (std::size_t k = 0; k < nx; ++k) m(off + g.position_in(x2, img[k]), off + k) = 1;
    m(x_first ? 0 : nx2, x_first ? 0 : nx) = 1;
  } else if (!o.is_x(a)) {
    // y <=₋ x: ((y,0)) into the Y_x block at the witness above y.
    const Elem x = o.to_x(b), y = o.to_y(a);
    auto w = g.witness_above(x, y);
    if (!w) throw InternalInconsistency("no witness above " + g.Y().label(y));
    m(off + g.position_in(x, *w), 0) = 1;
  } else {
    // x <=₊ y: the Y_x block onto ((y,1)) at the witness below y.
    const Elem x = o.to_x(a), y = o.to_y(b);
    auto w = g.witness_below(x, y);
    if (!w) throw InternalInconsistency("no witness below " + g.Y().label(y));
    m(0, off + g.position_in(x, *w)) = 1;
  }
  return m;
}

Formula assemble(const GluedOrder& target, const PosetPtr& base, std::vector<FormulaToPoint> at, bool x_first) {
  const auto& g = *target.gluing;
  std::map<std::pair<Elem, Elem>, CMorphism> res;
  for (auto [a, c] : target.poset->relations()) {
    if (a == c) continue;
    res.emplace(std::make_pair(a, c),
                CMorphism(at[a].xi, at[c].xi, theorem_restriction(target, g, a, c, x_first), Strictness::strict));
  }
  return Formula(base, target.poset, std::move(at), std::move(res));
}

void check_formula_categorized(const Formula& f, const GluedOrder& o, const std::string& tag, CheckList& out) {
  const Poset& y = *o.poset;
  for (Elem a = 0; a < y.size(); ++a)
    add(out, tag + " stalk " + y.label(a), tag + " stalk " + pattern(o, {a}), check_formula(f.at(a)));
  for (auto [a, c] : y.relations()) {
    if (a == c) continue;
    add(out, tag + " restriction " + y.label(a) + "<=" + y.label(c), tag + " restriction " + pattern(o, {a, c}),
        check_formula_morphism(f.res_morphism(a, c)));
  }
  for (auto [a, m] : y.relations())
    for (Elem c = 0; c < y.size(); ++c) {
      if (a == m || m == c || !y.leq(m, c)) continue;
      CheckReport r;
      if (!(compose(f.res(m, c), f.res(a, m)) == f.res(a, c)))
        r.add("restriction " + y.label(a) + "->" + y.label(c) + " differs from the composite through " + y.label(m));
      add(out, tag + " composite " + y.label(a) + "<" + y.label(m) + "<" + y.label(c),
          tag + " composite " + pattern(o, {a, m, c}), r);
    }
}

void check_transformation_categorized(const FormulaTransformation& t, const GluedOrder& o, const std::string& tag,
                                      CheckList& out) {
  const Poset& y = *o.poset;
  for (Elem a = 0; a < y.size(); ++a) {
    CheckReport r;
    if (!(t.components[a].source() == t.source.at(a).xi) || !(t.components[a].target() == t.target.at(a).xi))
      r.add("component has the wrong source or target object");
    else
      r = check_formula_morphism({t.source.at(a), t.target.at(a), t.components[a]});
    add(out, tag + " component " + y.label(a), tag + " component " + pattern(o, {a}), r);
  }
  for (auto [a, c] : y.relations()) {
    if (a == c) continue;
    CheckReport r;
    try {
      auto lhs = compose(t.components[c], t.source.res(a, c));
      auto rhs = compose(t.target.res(a, c), t.components[a]);
      if (!(lhs == rhs)) {
        std::ostringstream os;
        os << lhs.matrix() << " vs " << rhs.matrix();
        r.add(os.str());
      }
    } catch (const Error& e) {
      r.add(e.what());
    }
    add(out, tag + " naturality " + y.label(a) + "<=" + y.label(c), tag + " naturality " + pattern(o, {a, c}), r);
  }
}

json table_json(const std::map<int, std::size_t>& h) {
  json j = json::object();
  for (auto [d, n] : h) j[std::to_string(d)] = n;
  return j;
}

bool euler_matches(const Formula& f, const PosetDiagram& k, const PosetDiagram& value) {
  for (Elem e = 0; e < value.size(); ++e)
    if (predicted_euler_characteristic(f.at(e).xi, k) != euler_characteristic(value.stalk(e))) return false;
  return true;
}

}  // namespace

bool all_passed(const CheckList& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const StructuralCheck& c) { return c.passed; });
}

json to_json(const CheckList& checks) {
  json arr = json::array();
  for (const auto& c : checks) {
    json j{{"name", c.name}, {"category", c.category}, {"passed", c.passed}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    arr.push_back(j);
  }
  return arr;
}

json to_json(const CohomologyTable& t, const Poset& p) {
  json j = json::object();
  for (Elem e = 0; e < t.size(); ++e) j[p.label(e)] = table_json(t[e]);
  return j;
}

TheoremFormulas build_theorem_formulas(const GluingPtr& g) {
  TheoremFormulas t;
  t.gluing = g;
  t.plus = build_plus(g);
  t.minus = build_minus(g);
  const std::size_t nx = g->X().size(), ny = g->Y().size();

  std::vector<FormulaToPoint> at_plus(nx + ny), at_minus(nx + ny);
  for (Elem x = 0; x < nx; ++x) {
    t.arrow_plus.push_back(arrow_plus_of(t.plus, x));
    t.arrow_minus.push_back(arrow_minus_of(t.minus, x));
    at_plus[x] = substitute(b::xi12(), t.arrow_plus.back());
    at_minus[x] = substitute(b::xi12(), t.arrow_minus.back());
  }
  for (Elem y = 0; y < ny; ++y) {
    at_plus[nx + y] = single(t.plus.poset, t.plus.from_y(y), 0);
    at_minus[nx + y] = single(t.minus.poset, t.minus.from_y(y), 1);
  }
  t.xi_plus = assemble(t.minus, t.plus.poset, std::move(at_plus), true);
  t.xi_minus = assemble(t.plus, t.minus.poset, std::move(at_minus), false);

  check_formula_categorized(t.xi_plus, t.minus, "xi+", t.checks);
  check_formula_categorized(t.xi_minus, t.plus, "xi-", t.checks);
  if (!all_passed(t.checks)) throw CommutativityFailure(first_failure(t.checks));
  return t;
}

Epsilons build_epsilons(const TheoremFormulas& t) {
  Epsilons e;
  const std::size_t nx = t.gluing->X().size();
  const Formula pm = compose(t.xi_plus, t.xi_minus);  // over ≤₋
  const Formula mp = compose(t.xi_minus, t.xi_plus);  // over ≤₊
  const Formula nu_m = translation_formula(t.minus.poset, 1);
  const Formula nu_p = translation_formula(t.plus.poset, 1);

  std::vector<CMorphism> c_pm, c_mp;
  for (Elem a = 0; a < t.minus.poset->size(); ++a)
    c_pm.push_back(a < nx ? substitute(b::beta2(), t.arrow_minus[a]) : CMorphism::identity(nu_m.at(a).xi));
  for (Elem a = 0; a < t.plus.poset->size(); ++a)
    c_mp.push_back(a < nx ? substitute(b::alpha1(), t.arrow_plus[a]) : CMorphism::identity(nu_p.at(a).xi));
  e.eps_pm = {pm, nu_m, std::move(c_pm)};
  e.eps_mp = {nu_p, mp, std::move(c_mp)};

  check_transformation_categorized(e.eps_pm, t.minus, "eps+-", e.checks);
  check_transformation_categorized(e.eps_mp, t.plus, "eps-+", e.checks);

  for (Elem x = 0; x < nx; ++x) {
    const std::string lx = t.gluing->X().label(x);
    const Formula& ap = t.arrow_plus[x];
    const Formula& am = t.arrow_minus[x];
    add(e.checks, "homotopy eps-+ at " + lx, "homotopy eps-+",
        check_homotopy(substitute(b::alpha1(), ap), substitute(b::beta1(), ap), substitute(b::h1(), ap),
                       mp.at(x).D));
    add(e.checks, "homotopy eps+- at " + lx, "homotopy eps+-",
        check_homotopy(substitute(b::alpha2(), am), substitute(b::beta2(), am), substitute(b::h2(), am),
                       pm.at(x).D));
  }
  if (!all_passed(e.checks)) throw NaturalityFailure(first_failure(e.checks));
  return e;
}

bool EquivalenceCertificate::trials_ok() const {
  return std::all_of(trials.begin(), trials.end(), [](const TrialRecord& r) { return r.verdict(); });
}

json EquivalenceCertificate::to_json() const {
  json j;
  j["gluing"] = udeq::to_json(*gluing);
  j["plus"] = udeq::to_json(*formulas.plus.poset);
  j["minus"] = udeq::to_json(*formulas.minus.poset);
  j["field"] = field;
  j["structural"] = udeq::to_json(checks);
  j["structural_ok"] = structural_ok();
  json ts = json::array();
  const Poset& p = *formulas.plus.poset;
  const Poset& m = *formulas.minus.poset;
  for (const auto& r : trials) {
    ts.push_back({{"index", r.index},
                  {"seed", r.seed},
                  {"verdict", r.verdict()},
                  {"eps_mp_qis", r.mp_qis},
                  {"eps_pm_qis", r.pm_qis},
                  {"euler_ok", r.euler_ok},
                  {"composite_ok", r.composite_ok},
                  {"H", {{"K[1]", udeq::to_json(r.k_shift, p)},
                         {"R-R+K", udeq::to_json(r.rmrp, p)},
                         {"L[1]", udeq::to_json(r.l_shift, m)},
                         {"R+R-L", udeq::to_json(r.rprm, m)}}}});
  }
  j["trials"] = ts;
  j["trials_ok"] = trials_ok();
  j["valid"] = valid();
  return j;
}

EquivalenceCertificate verify_equivalence(const GluingPtr& g, const VerifyOptions& opt) {
  EquivalenceCertificate c;
  c.gluing = g;
  c.field = opt.field.name();
  c.formulas = build_theorem_formulas(g);
  c.eps = build_epsilons(c.formulas);
  c.checks = c.formulas.checks;
  c.checks.insert(c.checks.end(), c.eps.checks.begin(), c.eps.checks.end());

  const auto& f = c.formulas;
  const auto& eps = c.eps;
  c.trials = parallel_map<TrialRecord>(opt.trials, opt.jobs, [&](std::size_t i) {
    TrialRecord r;
    r.index = i;
    r.seed = Rng::derive(opt.seed, i);
    Rng rng(r.seed);
    const PosetDiagram k = random_diagram(f.plus.poset, rng, opt.diagram);
    const PosetDiagram l = random_diagram(f.minus.poset, rng, opt.diagram);

    const PosetDiagram rp_k = eval_formula(f.xi_plus, k);
    const PosetDiagram rm_l = eval_formula(f.xi_minus, l);
    const PosetDiagram rmrp_k = eval_formula(f.xi_minus, rp_k);
    const PosetDiagram rprm_l = eval_formula(f.xi_plus, rm_l);

    const DiagramMap emp = eval_transformation(eps.eps_mp, k);
    const DiagramMap epm = eval_transformation(eps.eps_pm, l);
    r.mp_qis = is_quasi_iso_diagram(emp, opt.field);
    r.pm_qis = is_quasi_iso_diagram(epm, opt.field);
    r.composite_ok = emp.target() == rmrp_k && epm.source() == rprm_l;
    r.euler_ok = euler_matches(f.xi_plus, k, rp_k) && euler_matches(f.xi_minus, l, rm_l) &&
                 euler_matches(f.xi_minus, rp_k, rmrp_k) && euler_matches(f.xi_plus, rm_l, rprm_l);
    r.k_shift = cohomology(emp.source(), opt.field);
    r.rmrp = cohomology(emp.target(), opt.field);
    r.l_shift = cohomology(epm.target(), opt.field);
    r.rprm = cohomology(epm.source(), opt.field);
    return r;
  });
  return c;
}

bool TwoChainReport::ok() const {
  return all_passed(checks) &&
         std::all_of(trials.begin(), trials.end(), [](const TwoChainTrial& t) { return t.verdict(); });
}

json TwoChainReport::to_json() const {
  json j;
  j["field"] = field;
  j["structural"] = udeq::to_json(checks);
  json ts = json::array();
  const Poset& p = *b::two_chain();
  for (const auto& t : trials)
    ts.push_back({{"index", t.index},
                  {"seed", t.seed},
                  {"verdict", t.verdict()},
                  {"eps_pm", t.pm},
                  {"eps_mp", t.mp},
                  {"eps_pp", t.pp},
                  {"eps_mm", t.mm},
                  {"cube_ok", t.cube_ok},
                  {"H", {{"K[1]", udeq::to_json(t.k_shift, p)}, {"R+R+R+K", udeq::to_json(t.cube, p)}}}});
  j["trials"] = ts;
  j["ok"] = ok();
  return j;
}

TwoChainReport verify_two_chain(const VerifyOptions& opt) {
  TwoChainReport rep;
  rep.field = opt.field.name();
  const auto x = b::two_chain();
  auto& c = rep.checks;

  add(c, "homotopy alpha1 beta1 h1", "homotopy", check_homotopy(b::alpha1(), b::beta1(), b::h1(), b::xi212().D));
  add(c, "homotopy alpha2 beta2 h2", "homotopy", check_homotopy(b::alpha2(), b::beta2(), b::h2(), b::xi121().D));
  for (const auto& [name, f] : std::vector<std::pair<std::string, FormulaToPoint>>{
           {"xi1", b::xi1()}, {"xi2", b::xi2()}, {"xi12", b::xi12()}, {"xi121", b::xi121()}, {"xi212", b::xi212()}})
    add(c, "formula " + name, "formula", check_formula(f));
  add(c, "xi+ diagram", "formula", check_formula_diagram(b::xi_plus()));
  add(c, "xi- diagram", "formula", check_formula_diagram(b::xi_minus()));
  {
    CheckReport r;
    if (!(compose(b::xi_plus(), b::xi_minus()).at(c2) == b::xi121())) r.add("xi+ xi- at 2 is not xi121");
    if (!(compose(b::xi_minus(), b::xi_plus()).at(c1) == b::xi212())) r.add("xi- xi+ at 1 is not xi212");
    add(c, "substitution", "substitution", r);
  }
  const std::vector<std::pair<std::string, FormulaTransformation>> eps{
      {"eps+-", b::eps_pm()}, {"eps-+", b::eps_mp()}, {"eps++", b::eps_pp()}, {"eps--", b::eps_mm()}};
  for (const auto& [name, t] : eps) add(c, name, "transformation", check_transformation(t));

  const Formula xp = b::xi_plus();
  rep.trials = parallel_map<TwoChainTrial>(opt.trials, opt.jobs, [&](std::size_t i) {
    TwoChainTrial t;
    t.index = i;
    t.seed = Rng::derive(opt.seed, i);
    Rng rng(t.seed);
    const PosetDiagram k = random_diagram(x, rng, opt.diagram);
    t.pm = is_quasi_iso_diagram(eval_transformation(eps[0].second, k), opt.field);
    const DiagramMap mp = eval_transformation(eps[1].second, k);
    t.mp = is_quasi_iso_diagram(mp, opt.field);
    t.pp = is_quasi_iso_diagram(eval_transformation(eps[2].second, k), opt.field);
    t.mm = is_quasi_iso_diagram(eval_transformation(eps[3].second, k), opt.field);

    const PosetDiagram rp = eval_formula(xp, k);
    const DiagramMap top = eval_transformation(eps[2].second, rp);
    t.k_shift = cohomology(mp.source(), opt.field);
    t.cube = cohomology(top.source(), opt.field);
    t.cube_ok = top.target() == mp.target() && is_quasi_iso_diagram(top, opt.field) && t.mp &&
                t.cube == t.k_shift && cohomology(top.target(), opt.field) == t.k_shift;
    return t;
  });
  return rep;
}

Poset orientation_poset(const std::vector<std::string>& vertices,
                        const std::vector<std::pair<std::string, std::string>>& edges) {
  return Poset::from_generators(vertices, edges);
}

bool BgpReport::ok() const {
  return std::all_of(steps.begin(), steps.end(),
                     [](const ReflectionStep& s) { return s.orders_match && s.certificate.valid(); });
}

json BgpReport::to_json() const {
  json j;
  json arr = json::array();
  for (const auto& s : steps)
    arr.push_back({{"vertex", s.vertex},
                   {"reflection", s.source_to_sink ? "source" : "sink"},
                   {"orders_match", s.orders_match},
                   {"certificate", s.certificate.to_json()}});
  j["steps"] = arr;
  j["ok"] = ok();
  return j;
}

namespace {

using Edges = std::vector<std::pair<std::string, std::string>>;
using Key = std::pair<std::string, std::string>;

Key undirected(const std::pair<std::string, std::string>& e) { return std::minmax(e.first, e.second); }

void check_tree(const std::vector<std::string>& vertices, const Edges& edges) {
  std::set<std::string> vs(vertices.begin(), vertices.end());
  if (vs.size() != vertices.size()) throw NotATree("repeated vertex");
  if (vertices.empty()) throw NotATree("a tree needs a vertex");
  if (edges.size() + 1 != vertices.size())
    throw NotATree("a tree on " + std::to_string(vertices.size()) + " vertices has " +
                   std::to_string(vertices.size() - 1) + " edges, got " + std::to_string(edges.size()));
  std::set<Key> seen;
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& e : edges) {
    if (!vs.count(e.first)) throw UnknownElement(e.first);
    if (!vs.count(e.second)) throw UnknownElement(e.second);
    if (e.first == e.second) throw NotATree("loop at " + e.first);
    if (!seen.insert(undirected(e)).second) throw NotATree("repeated edge " + e.first + " - " + e.second);
    adj[e.first].push_back(e.second);
    adj[e.second].push_back(e.first);
  }
  std::set<std::string> reached{vertices.front()};
  std::deque<std::string> q{vertices.front()};
  while (!q.empty()) {
    auto v = q.front();
    q.pop_front();
    for (const auto& w : adj[v])
      if (reached.insert(w).second) q.push_back(w);
  }
  if (reached.size() != vertices.size()) throw NotATree("graph is not connected");
}

// Orientation as a bit per edge of `base`: 1 means reversed.
Edges orient(const Edges& base, std::uint32_t bits) {
  Edges out;
  for (std::size_t i = 0; i < base.size(); ++i)
    out.push_back((bits >> i) & 1 ? std::make_pair(base[i].second, base[i].first) : base[i]);
  return out;
}

// +1 if v is a source, -1 if a sink, 0 otherwise (isolated vertices are neither).
int source_or_sink(const Edges& e, const std::string& v) {
  bool out = false, in = false;
  for (const auto& [a, c] : e) {
    out |= a == v;
    in |= c == v;
  }
  if (out && !in) return 1;
  if (in && !out) return -1;
  return 0;
}

std::uint32_t flip_at(const Edges& base, std::uint32_t bits, const std::string& v) {
  for (std::size_t i = 0; i < base.size(); ++i)
    if (base[i].first == v || base[i].second == v) bits ^= 1u << i;
  return bits;
}

}  // namespace

BgpReport verify_bgp_path(const std::vector<std::string>& vertices, const Edges& from, const Edges& to,
                          const VerifyOptions& opt) {
  check_tree(vertices, from);
  check_tree(vertices, to);
  if (from.size() > kMaxTreeEdges)
    throw SizeLimit("trees are limited to " + std::to_string(kMaxTreeEdges) + " edges");
  std::map<Key, std::size_t> pos;
  for (std::size_t i = 0; i < from.size(); ++i) pos[undirected(from[i])] = i;
  std::uint32_t goal = 0;
  for (const auto& e : to) {
    auto it = pos.find(undirected(e));
    if (it == pos.end()) throw NotATree("orientations have different underlying trees");
    if (from[it->second] != e) goal |= 1u << it->second;
  }

  // Breadth-first search over orientations; vertices tried in input order.
  std::map<std::uint32_t, std::pair<std::uint32_t, std::string>> parent;
  std::deque<std::uint32_t> q{0};
  parent[0] = {0, ""};
  while (!q.empty() && !parent.count(goal)) {
    auto cur = q.front();
    q.pop_front();
    const Edges e = orient(from, cur);
    for (const auto& v : vertices) {
      if (source_or_sink(e, v) == 0) continue;
      auto nxt = flip_at(from, cur, v);
      if (parent.emplace(nxt, std::make_pair(cur, v)).second) q.push_back(nxt);
    }
  }
  if (!parent.count(goal)) throw NoPathFound("no reflection sequence between the orientations");

  std::vector<std::pair<std::uint32_t, std::string>> path;
  for (auto s = goal; s != 0; s = parent[s].first) path.emplace_back(parent[s].first, parent[s].second);
  std::reverse(path.begin(), path.end());

  BgpReport rep;
  for (const auto& [state, v] : path) {
    const Edges cur = orient(from, state);
    const Edges nxt = orient(from, flip_at(from, state, v));
    const Poset before = orientation_poset(vertices, cur);
    const Poset after = orientation_poset(vertices, nxt);
    std::vector<Elem> rest;
    std::vector<std::string> nbrs;
    for (Elem e = 0; e < before.size(); ++e)
      if (before.label(e) != v) rest.push_back(e);
    for (const auto& [a, c] : cur) {
      if (a == v) nbrs.push_back(c);
      if (c == v) nbrs.push_back(a);
    }
    auto g = std::make_shared<const GluingData>(from_bgp(induced(before, rest), nbrs, v));
    ReflectionStep step;
    step.vertex = v;
    step.source_to_sink = source_or_sink(cur, v) > 0;
    const Poset plus = *build_plus(g).poset, minus = *build_minus(g).poset;
    step.orders_match = step.source_to_sink
                            ? same_order_by_labels(plus, before) && same_order_by_labels(minus, after)
                            : same_order_by_labels(minus, before) && same_order_by_labels(plus, after);
    step.certificate = verify_equivalence(g, opt);
    rep.steps.push_back(std::move(step));
  }
  return rep;
}

json X1ZReport::to_json() const {
  return {{"plus_shape", plus_shape}, {"minus_shape", minus_shape}, {"certificate", certificate.to_json()},
          {"ok", ok()}};
}

X1ZReport verify_x1z(const Poset& x, const Poset& z, const VerifyOptions& opt) {
  auto w = ordinal_witness(x, z);
  auto g = std::make_shared<const GluingData>(w.gluing);
  X1ZReport r;
  r.plus_shape = is_isomorphic(*build_plus(g).poset, w.expected_plus).has_value();
  r.minus_shape = is_isomorphic(*build_minus(g).poset, w.expected_minus).has_value();
  r.certificate = verify_equivalence(g, opt);
  return r;
}

Poset random_poset(Rng& rng, std::size_t n, const std::string& prefix) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i + 1));
  std::vector<std::pair<Elem, Elem>> rel;
  for (Elem i = 0; i < n; ++i)
    for (Elem j = i + 1; j < n; ++j)
      if (rng.below(3) == 0) rel.emplace_back(i, j);
  return Poset::from_index_pairs(labels, rel);
}

namespace {

// Random order-preserving map X -> Y, processed by height; nullopt on a dead end.
std::optional<std::vector<std::vector<Elem>>> random_function(Rng& rng, const Poset& x, const Poset& y) {
  std::vector<Elem> order(x.size());
  for (Elem e = 0; e < x.size(); ++e) order[e] = e;
  const auto h = x.heights();
  std::stable_sort(order.begin(), order.end(), [&](Elem a, Elem c) { return h[a] < h[c]; });
  std::vector<std::vector<Elem>> f(x.size());
  for (Elem a : order) {
    std::vector<Elem> cand;
    for (Elem t = 0; t < y.size(); ++t) {
      bool ok = true;
      for (Elem p : x.down_set(a))
        if (p != a && !y.leq(f[p][0], t)) ok = false;
      if (ok) cand.push_back(t);
    }
    if (cand.empty()) return std::nullopt;
    f[a] = {cand[rng.below(cand.size())]};
  }
  return f;
}

}  // namespace

GluingData random_gluing(Rng& rng, std::size_t max_total) {
  if (max_total < 2) throw SizeLimit("a gluing needs at least two elements");
  for (;;) {
    const std::size_t nx = rng.uniform(1, std::min<std::int64_t>(4, max_total - 1));
    const std::size_t ny = rng.uniform(1, max_total - nx);
    Poset x = random_poset(rng, nx, "x");
    Poset y = random_poset(rng, ny, "y");
    if (rng.below(3) != 0) {
      const std::size_t k = rng.below(6) == 0 ? 0 : 1 + rng.below(std::min<std::size_t>(2, ny));
      for (int attempt = 0; attempt < 50; ++attempt) {
        std::vector<std::vector<Elem>> yx(nx);
        for (auto& s : yx) {
          std::vector<Elem> all(ny);
          for (Elem e = 0; e < ny; ++e) all[e] = e;
          for (std::size_t i = 0; i < k; ++i) std::swap(all[i], all[i + rng.below(ny - i)]);
          s.assign(all.begin(), all.begin() + k);
          std::sort(s.begin(), s.end());
        }
        try {
          return GluingData::validate(x, y, yx);
        } catch (const Error&) {
        }
      }
    }
    if (auto f = random_function(rng, x, y)) return GluingData::validate(std::move(x), std::move(y), std::move(*f));
  }
}

bool same_order_by_labels(const Poset& a, const Poset& c) {
  if (a.size() != c.size()) return false;
  std::vector<Elem> m(a.size());
  for (Elem e = 0; e < a.size(); ++e) {
    auto f = c.find(a.label(e));
    if (!f) return false;
    m[e] = *f;
  }
  for (Elem i = 0; i < a.size(); ++i)
    for (Elem j = 0; j < a.size(); ++j)
      if (a.leq(i, j) != c.leq(m[i], m[j])) return false;
  return true;
}

}  // namespace udeq
