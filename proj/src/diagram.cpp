#include "udeq/diagram.hpp"

#include <functional>
#include <string>

#include "udeq/error.hpp"

namespace udeq {

namespace {

std::string pair_name(const Poset& p, Elem a, Elem b) { return p.label(a) + "<=" + p.label(b); }

ChainMap first_inclusion(const VectComplex& a, const VectComplex& b, const VectComplex& sum) {
  std::map<int, IntMatrix> c;
  for (int i = a.lo(); i <= a.hi(); ++i) {
    IntMatrix m(sum.dim(i), a.dim(i));
    m.set_block(0, 0, IntMatrix::identity(a.dim(i)));
    c[i] = m;
  }
  (void)b;
  return ChainMap::unchecked(a, sum, std::move(c));
}

ChainMap second_inclusion(const VectComplex& a, const VectComplex& b, const VectComplex& sum) {
  std::map<int, IntMatrix> c;
  for (int i = b.lo(); i <= b.hi(); ++i) {
    IntMatrix m(sum.dim(i), b.dim(i));
    m.set_block(a.dim(i), 0, IntMatrix::identity(b.dim(i)));
    c[i] = m;
  }
  return ChainMap::unchecked(b, sum, std::move(c));
}

ChainMap transpose_map(const ChainMap& f) {
  std::map<int, IntMatrix> c;
  for (const auto& [i, m] : f.components()) c[i] = m.transpose();
  return ChainMap::unchecked(f.target(), f.source(), std::move(c));
}

// Upper unitriangular matrix with entries in {-1, 0, 1} and its inverse.
std::pair<IntMatrix, IntMatrix> unitriangular(Rng& rng, std::size_t n) {
  IntMatrix u = IntMatrix::identity(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r + 1; c < n; ++c) u(r, c) = rng.uniform(-1, 1);
  // Back substitution on U X = I, column by column.
  IntMatrix inv(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = n; r-- > 0;) {
      std::int64_t v = (r == c) ? 1 : 0;
      for (std::size_t k = r + 1; k < n; ++k) v = checked::add(v, -checked::mul(u(r, k), inv(k, c)));
      inv(r, c) = v;
    }
  }
  return {u, inv};
}

struct Twist {
  std::map<int, IntMatrix> fwd, bwd;
};

Twist random_basis_change(Rng& rng, const VectComplex& k) {
  Twist t;
  for (int i = k.lo(); i <= k.hi(); ++i) {
    auto [u, inv] = unitriangular(rng, k.dim(i));
    t.fwd[i] = u;
    t.bwd[i] = inv;
  }
  return t;
}

IntMatrix basis_at(const std::map<int, IntMatrix>& m, int i, std::size_t n) {
  auto it = m.find(i);
  return it == m.end() ? IntMatrix::identity(n) : it->second;
}

VectComplex conjugate(const VectComplex& k, const Twist& t) {
  std::map<int, std::size_t> dims;
  std::map<int, IntMatrix> d;
  for (int i = k.lo(); i <= k.hi(); ++i) {
    dims[i] = k.dim(i);
    if (i < k.hi()) d[i] = basis_at(t.fwd, i + 1, k.dim(i + 1)) * k.d(i) * basis_at(t.bwd, i, k.dim(i));
  }
  return VectComplex(dims, d);
}

}  // namespace

PosetDiagram::PosetDiagram(PosetPtr base, std::vector<VectComplex> stalks,
                           std::map<std::pair<Elem, Elem>, ChainMap> res)
    : base_(std::move(base)), stalks_(std::move(stalks)) {
  const Poset& p = *base_;
  if (stalks_.size() != p.size())
    throw DiagramAxiomFailure("diagram has " + std::to_string(stalks_.size()) + " stalks over a poset of size " +
                              std::to_string(p.size()));
  for (auto& [key, m] : res) {
    if (!p.leq(key.first, key.second))
      throw DiagramAxiomFailure("restriction given for non-relation " + p.label(key.first) + ", " + p.label(key.second));
  }
  for (const auto& [a, b] : p.relations()) {
    auto it = res.find({a, b});
    ChainMap m = it != res.end() ? it->second
                 : a == b        ? ChainMap::identity(stalks_[a])
                                 : ChainMap::zero(stalks_[a], stalks_[b]);
    if (!(m.source() == stalks_[a]) || !(m.target() == stalks_[b]))
      throw DiagramAxiomFailure("restriction " + pair_name(p, a, b) + " has wrong ends");
    if (!m.is_chain_map()) throw DiagramAxiomFailure("restriction " + pair_name(p, a, b) + " is not a chain map");
    if (a == b && !(m == ChainMap::identity(stalks_[a])))
      throw DiagramAxiomFailure("restriction at " + p.label(a) + " is not the identity");
    res_.emplace(std::make_pair(a, b), std::move(m));
  }
  for (const auto& [a, b] : p.relations()) {
    if (a == b) continue;
    for (Elem c : p.up_set(b)) {
      if (c == b) continue;
      if (!(compose(res_.at({b, c}), res_.at({a, b})) == res_.at({a, c})))
        throw DiagramAxiomFailure("composite through " + p.label(b) + " differs from " + pair_name(p, a, c));
    }
  }
}

PosetDiagram PosetDiagram::from_covers(PosetPtr base, std::vector<VectComplex> stalks,
                                       const std::map<std::pair<Elem, Elem>, ChainMap>& cover_res) {
  const Poset& p = *base;
  const HasseDiagram h = p.hasse();
  for (const auto& [key, m] : cover_res) {
    bool cover = false;
    for (const auto& e : h.edges) cover = cover || e == key;
    if (!cover) throw DiagramAxiomFailure("map given on non-cover " + pair_name(p, key.first, key.second));
  }
  std::map<std::pair<Elem, Elem>, ChainMap> res;
  std::function<const ChainMap&(Elem, Elem)> get = [&](Elem a, Elem b) -> const ChainMap& {
    auto it = res.find({a, b});
    if (it != res.end()) return it->second;
    ChainMap m;
    if (a == b) {
      m = ChainMap::identity(stalks.at(a));
    } else {
      bool done = false;
      for (const auto& e : h.edges) {
        if (e.first != a || !p.leq(e.second, b)) continue;
        auto cit = cover_res.find(e);
        ChainMap step = cit != cover_res.end() ? cit->second : ChainMap::zero(stalks.at(a), stalks.at(e.second));
        m = e.second == b ? step : compose(get(e.second, b), step);
        done = true;
        break;
      }
      if (!done) throw InternalInconsistency("no cover path " + pair_name(p, a, b));
    }
    return res.emplace(std::make_pair(a, b), std::move(m)).first->second;
  };
  for (const auto& [a, b] : p.relations()) get(a, b);
  return PosetDiagram(std::move(base), std::move(stalks), std::move(res));
}

PosetDiagram PosetDiagram::zero(PosetPtr base) {
  const std::size_t n = base->size();
  return PosetDiagram(std::move(base), std::vector<VectComplex>(n), {});
}

const ChainMap& PosetDiagram::res(Elem x, Elem x2) const {
  auto it = res_.find({x, x2});
  if (it == res_.end()) throw UnknownElement(base_->label(x) + "<=" + base_->label(x2));
  return it->second;
}

DiagramMap::DiagramMap(PosetDiagram source, PosetDiagram target, std::vector<ChainMap> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  const Poset& p = *source_.base();
  if (!(*source_.base() == *target_.base())) throw BaseMismatch("diagram map between different posets");
  if (components_.size() != p.size()) throw DiagramAxiomFailure("diagram map has wrong number of components");
  for (Elem x = 0; x < p.size(); ++x) {
    const ChainMap& f = components_[x];
    if (!(f.source() == source_.stalk(x)) || !(f.target() == target_.stalk(x)))
      throw DiagramAxiomFailure("component at " + p.label(x) + " has wrong ends");
    if (!f.is_chain_map()) throw DiagramAxiomFailure("component at " + p.label(x) + " is not a chain map");
  }
  for (const auto& [a, b] : p.relations()) {
    if (a == b) continue;
    if (!(compose(target_.res(a, b), components_[a]) == compose(components_[b], source_.res(a, b))))
      throw DiagramAxiomFailure("square " + pair_name(p, a, b) + " does not commute");
  }
}

DiagramMap DiagramMap::identity(const PosetDiagram& k) {
  std::vector<ChainMap> c;
  for (const auto& s : k.stalks()) c.push_back(ChainMap::identity(s));
  return DiagramMap(k, k, std::move(c));
}

PosetDiagram shift(const PosetDiagram& k, int n) {
  std::vector<VectComplex> stalks;
  for (const auto& s : k.stalks()) stalks.push_back(shift(s, n));
  std::map<std::pair<Elem, Elem>, ChainMap> res;
  for (const auto& [a, b] : k.base()->relations()) res[{a, b}] = shift(k.res(a, b), n);
  return PosetDiagram(k.base(), std::move(stalks), std::move(res));
}

DiagramMap shift(const DiagramMap& f, int n) {
  std::vector<ChainMap> c;
  for (const auto& m : f.components()) c.push_back(shift(m, n));
  return DiagramMap(shift(f.source(), n), shift(f.target(), n), std::move(c));
}

PosetDiagram direct_sum(const PosetDiagram& a, const PosetDiagram& b) {
  if (!(*a.base() == *b.base())) throw BaseMismatch("direct sum of diagrams over different posets");
  std::vector<VectComplex> stalks;
  for (Elem x = 0; x < a.size(); ++x) stalks.push_back(direct_sum(a.stalk(x), b.stalk(x)));
  std::map<std::pair<Elem, Elem>, ChainMap> res;
  for (const auto& [x, y] : a.base()->relations()) res[{x, y}] = direct_sum(a.res(x, y), b.res(x, y));
  return PosetDiagram(a.base(), std::move(stalks), std::move(res));
}

DiagramMap compose(const DiagramMap& g, const DiagramMap& f) {
  std::vector<ChainMap> c;
  for (Elem x = 0; x < f.components().size(); ++x) c.push_back(compose(g.at(x), f.at(x)));
  return DiagramMap(f.source(), g.target(), std::move(c));
}

PosetDiagram cone(const DiagramMap& f) {
  const PosetDiagram& k = f.source();
  const PosetDiagram& l = f.target();
  std::vector<VectComplex> stalks;
  for (const auto& m : f.components()) stalks.push_back(cone(m));
  std::map<std::pair<Elem, Elem>, ChainMap> res;
  for (const auto& [a, b] : k.base()->relations()) {
    const ChainMap ka = shift(k.res(a, b), 1);
    const ChainMap& la = l.res(a, b);
    std::map<int, IntMatrix> c;
    for (int i = stalks[a].lo(); i <= stalks[a].hi(); ++i)
      if (stalks[b].dim(i)) c[i] = IntMatrix::direct_sum(ka.component(i), la.component(i));
    res[{a, b}] = ChainMap::unchecked(stalks[a], stalks[b], std::move(c));
  }
  return PosetDiagram(k.base(), std::move(stalks), std::move(res));
}

std::vector<std::map<int, std::size_t>> cohomology(const PosetDiagram& k, const Field& field) {
  std::vector<std::map<int, std::size_t>> out;
  for (const auto& s : k.stalks()) out.push_back(cohomology(s, field));
  return out;
}

bool is_quasi_iso_diagram(const DiagramMap& f, const Field& field) {
  for (const auto& m : f.components())
    if (!is_quasi_iso(m, field)) return false;
  return true;
}

PosetDiagram interval_diagram(const PosetPtr& base, Elem u, std::optional<Elem> v, const VectComplex& s) {
  const Poset& p = *base;
  auto inside = [&](Elem x) { return p.leq(u, x) && (!v || p.leq(x, *v)); };
  std::vector<VectComplex> stalks(p.size());
  for (Elem x = 0; x < p.size(); ++x)
    if (inside(x)) stalks[x] = s;
  std::map<std::pair<Elem, Elem>, ChainMap> res;
  for (const auto& [a, b] : p.relations())
    if (inside(a) && inside(b)) res[{a, b}] = ChainMap::identity(s);
  return PosetDiagram(base, std::move(stalks), std::move(res));
}

VectComplex random_complex(Rng& rng, std::size_t max_dim, int lo, int hi, bool contractible) {
  struct Atom {
    int deg;
    bool pair;
  };
  std::map<int, std::size_t> dims;
  std::vector<Atom> atoms;
  const int width = hi - lo + 1;
  const auto attempts = rng.uniform(contractible ? 1 : 0, 2 * width);
  for (std::int64_t k = 0; k < attempts; ++k) {
    const int deg = static_cast<int>(rng.uniform(lo, hi));
    const bool pair = deg < hi && (contractible || rng.coin());
    if (contractible && !pair) continue;
    if (dims[deg] + 1 > max_dim || (pair && dims[deg + 1] + 1 > max_dim)) continue;
    atoms.push_back({deg, pair});
    ++dims[deg];
    if (pair) ++dims[deg + 1];
  }
  // Differentials of the atom sum, then a change of basis in each degree.
  std::map<int, std::size_t> used;
  std::map<int, IntMatrix> d;
  for (int i = lo; i < hi; ++i) d[i] = IntMatrix(dims[i + 1], dims[i]);
  for (const auto& a : atoms) {
    const std::size_t src = used[a.deg]++;
    if (a.pair) d[a.deg](used[a.deg + 1]++, src) = 1;
  }
  VectComplex plain(dims, d);
  return conjugate(plain, random_basis_change(rng, plain));
}

PosetDiagram random_diagram(const PosetPtr& base, Rng& rng, const RandomDiagramOptions& opt) {
  const Poset& p = *base;
  PosetDiagram k = PosetDiagram::zero(base);
  const auto summands = rng.uniform(1, 2 * static_cast<std::int64_t>(p.size()));
  for (std::int64_t n = 0; n < summands; ++n) {
    const Elem u = rng.below(p.size());
    std::optional<Elem> v;
    if (rng.coin()) {
      const auto up = p.up_set(u);
      v = up[rng.below(up.size())];
    }
    const VectComplex s = random_complex(rng, opt.max_dim, opt.lo, opt.hi);
    if (s.is_zero()) continue;
    bool fits = true;
    for (Elem x = 0; x < p.size() && fits; ++x) {
      if (!p.leq(u, x) || (v && !p.leq(x, *v))) continue;
      for (int i = s.lo(); i <= s.hi(); ++i) fits = fits && k.stalk(x).dim(i) + s.dim(i) <= opt.max_dim;
    }
    if (fits) k = direct_sum(k, interval_diagram(base, u, v, s));
  }
  if (opt.twist) k = random_twist(k, rng).target();
  return k;
}

namespace {

std::pair<DiagramMap, DiagramMap> twist_pair(const PosetDiagram& k, Rng& rng) {
  const Poset& p = *k.base();
  std::vector<Twist> t;
  std::vector<VectComplex> stalks;
  for (Elem x = 0; x < p.size(); ++x) {
    t.push_back(random_basis_change(rng, k.stalk(x)));
    stalks.push_back(conjugate(k.stalk(x), t.back()));
  }
  std::map<std::pair<Elem, Elem>, ChainMap> res;
  for (const auto& [a, b] : p.relations()) {
    std::map<int, IntMatrix> c;
    for (const auto& [i, m] : k.res(a, b).components())
      c[i] = basis_at(t[b].fwd, i, stalks[b].dim(i)) * m * basis_at(t[a].bwd, i, stalks[a].dim(i));
    res[{a, b}] = ChainMap::unchecked(stalks[a], stalks[b], std::move(c));
  }
  PosetDiagram k2(k.base(), stalks, std::move(res));
  std::vector<ChainMap> fwd, bwd;
  for (Elem x = 0; x < p.size(); ++x) {
    fwd.push_back(ChainMap::unchecked(k.stalk(x), stalks[x], t[x].fwd));
    bwd.push_back(ChainMap::unchecked(stalks[x], k.stalk(x), t[x].bwd));
  }
  return {DiagramMap(k, k2, std::move(fwd)), DiagramMap(k2, k, std::move(bwd))};
}

std::pair<DiagramMap, DiagramMap> sum_maps(const PosetDiagram& a, const PosetDiagram& b, bool first) {
  const PosetDiagram s = direct_sum(a, b);
  std::vector<ChainMap> inc, proj;
  for (Elem x = 0; x < a.size(); ++x) {
    ChainMap i = first ? first_inclusion(a.stalk(x), b.stalk(x), s.stalk(x))
                       : second_inclusion(a.stalk(x), b.stalk(x), s.stalk(x));
    proj.push_back(transpose_map(i));
    inc.push_back(std::move(i));
  }
  const PosetDiagram& part = first ? a : b;
  return {DiagramMap(part, s, std::move(inc)), DiagramMap(s, part, std::move(proj))};
}

}  // namespace

DiagramMap random_twist(const PosetDiagram& k, Rng& rng) { return twist_pair(k, rng).first; }

std::pair<DiagramMap, DiagramMap> random_ses(const PosetPtr& base, Rng& rng, const RandomDiagramOptions& opt) {
  const PosetDiagram a = random_diagram(base, rng, opt);
  const PosetDiagram c = random_diagram(base, rng, opt);
  const DiagramMap inc = sum_maps(a, c, true).first;
  const DiagramMap proj = sum_maps(a, c, false).second;
  const auto [fwd, bwd] = twist_pair(inc.target(), rng);
  return {compose(fwd, inc), compose(proj, bwd)};
}

DiagramMap random_qis(const PosetPtr& base, Rng& rng, const RandomDiagramOptions& opt) {
  const Poset& p = *base;
  const PosetDiagram k = random_diagram(base, rng, opt);
  PosetDiagram c = PosetDiagram::zero(base);
  const auto summands = rng.uniform(1, static_cast<std::int64_t>(p.size()) + 1);
  for (std::int64_t n = 0; n < summands; ++n) {
    const Elem u = rng.below(p.size());
    const VectComplex s = random_complex(rng, opt.max_dim, opt.lo, opt.hi, true);
    if (!s.is_zero()) c = direct_sum(c, interval_diagram(base, u, std::nullopt, s));
  }
  const auto [inc, proj] = sum_maps(k, c, true);
  const auto [fwd, bwd] = twist_pair(inc.target(), rng);
  if (rng.coin()) return compose(fwd, inc);
  return compose(random_twist(k, rng), compose(proj, bwd));
}

DiagramMap random_map(const PosetPtr& base, Rng& rng, const RandomDiagramOptions& opt) {
  RandomDiagramOptions small = opt;
  small.max_dim = std::max<std::size_t>(1, opt.max_dim / 2 + 1);
  const PosetDiagram a = random_diagram(base, rng, small);
  const PosetDiagram b = random_diagram(base, rng, small);
  const PosetDiagram c = random_diagram(base, rng, small);
  const DiagramMap proj = sum_maps(a, b, false).second;
  const DiagramMap inc = sum_maps(b, c, true).first;
  const std::int64_t s = rng.uniform(-2, 2);
  std::vector<ChainMap> scale;
  for (const auto& st : b.stalks()) {
    std::map<int, IntMatrix> m;
    for (int i = st.lo(); i <= st.hi(); ++i) m[i] = IntMatrix::identity(st.dim(i)).scaled(s);
    scale.push_back(ChainMap::unchecked(st, st, std::move(m)));
  }
  const DiagramMap mid(b, b, std::move(scale));
  const auto src = twist_pair(proj.source(), rng);
  const auto tgt = twist_pair(inc.target(), rng);
  return compose(tgt.first, compose(inc, compose(mid, compose(proj, src.second))));
}

}  // namespace udeq
