#include "udeq/eval.hpp"

#include <algorithm>
#include <climits>
#include <string>

#include "udeq/error.hpp"

namespace udeq {

namespace {

void require_base(const CObject& xi, const PosetDiagram& k) {
  if (!same_base(xi.base(), k.base())) throw BaseMismatch("formula and diagram live over different posets");
}

// Support window [lo, hi] of ⊕ K_{x_i}[m_i]; empty when lo > hi.
std::pair<int, int> window(const CObject& xi, const PosetDiagram& k) {
  int lo = INT_MAX, hi = INT_MIN;
  for (const auto& t : xi.entries()) {
    const VectComplex& s = k.stalk(t.x);
    if (s.is_zero()) continue;
    lo = std::min(lo, s.lo() - t.deg);
    hi = std::max(hi, s.hi() - t.deg);
  }
  return {lo, hi};
}

// Row offsets of each block in degree t, plus the total.
std::vector<std::size_t> offsets(const CObject& xi, const PosetDiagram& k, int t) {
  std::vector<std::size_t> off{0};
  for (const auto& e : xi.entries()) off.push_back(off.back() + k.stalk(e.x).dim(t + e.deg));
  return off;
}

std::map<int, std::size_t> graded_dims(const CObject& xi, const PosetDiagram& k) {
  std::map<int, std::size_t> dims;
  const auto [lo, hi] = window(xi, k);
  for (int t = lo; t <= hi; ++t) dims[t] = offsets(xi, k, t).back();
  return dims;
}

// Degree-t component of η_φ(K), from ⊕ K_{x_i}^{t+m_i} to ⊕ K_{x'_j}^{t+m'_j}.
IntMatrix component(const CMorphism& phi, const PosetDiagram& k, int t) {
  const CObject& src = phi.source();
  const CObject& tgt = phi.target();
  const auto so = offsets(src, k, t), to = offsets(tgt, k, t);
  IntMatrix out(to.back(), so.back());
  for (std::size_t j = 0; j < tgt.size(); ++j) {
    for (std::size_t i = 0; i < src.size(); ++i) {
      const std::int64_t c = phi(j, i);
      if (c == 0) continue;
      const Term& a = src[i];
      const Term& b = tgt[j];
      const int deg = t + a.deg;
      const IntMatrix r = k.res(a.x, b.x).component(deg);
      if (r.empty()) continue;
      if (b.deg == a.deg) {
        out.add_block(to[j], so[i], r.scaled(c));
      } else {
        const std::int64_t sign = (a.deg % 2 == 0) ? 1 : -1;
        out.add_block(to[j], so[i], (k.stalk(b.x).d(deg) * r).scaled(checked::mul(c, sign)));
      }
    }
  }
  return out;
}

std::map<int, IntMatrix> components(const CMorphism& phi, const PosetDiagram& k, const VectComplex& src,
                                    const VectComplex& tgt) {
  std::map<int, IntMatrix> c;
  for (int t = src.lo(); t <= src.hi(); ++t)
    if (tgt.dim(t) && src.dim(t)) c[t] = component(phi, k, t);
  return c;
}

}  // namespace

VectComplex eval_object(const CObject& xi, const PosetDiagram& k) {
  require_base(xi, k);
  const auto dims = graded_dims(xi, k);
  std::map<int, IntMatrix> d;
  for (const auto& [t, n] : dims) {
    if (!dims.count(t + 1)) continue;
    const auto so = offsets(xi, k, t), to = offsets(xi, k, t + 1);
    IntMatrix m(to.back(), so.back());
    for (std::size_t i = 0; i < xi.size(); ++i) {
      const Term& e = xi[i];
      const std::int64_t sign = (e.deg % 2 == 0) ? 1 : -1;
      m.set_block(to[i], so[i], k.stalk(e.x).d(t + e.deg).scaled(sign));
    }
    d[t] = std::move(m);
  }
  return VectComplex(dims, d);
}

ChainMap eval_cmorphism(const CMorphism& phi, const PosetDiagram& k) {
  require_base(phi.source(), k);
  const VectComplex src = eval_object(phi.source(), k);
  const VectComplex tgt = eval_object(phi.target(), k);
  ChainMap m = ChainMap::unchecked(src, tgt, components(phi, k, src, tgt));
  if (!m.is_chain_map()) throw InvalidChainMap("η_φ(K) does not commute with the diagonal differentials");
  return m;
}

VectComplex eval_point(const FormulaToPoint& f, const PosetDiagram& k) {
  require_base(f.xi, k);
  const auto dims = graded_dims(f.xi, k);
  std::map<int, IntMatrix> d;
  for (const auto& [t, n] : dims)
    if (dims.count(t + 1)) d[t] = component(f.D, k, t);
  return VectComplex(dims, d);
}

ChainMap eval_point_morphism(const FormulaMorphism& m, const PosetDiagram& k) {
  const VectComplex src = eval_point(m.source, k);
  const VectComplex tgt = eval_point(m.target, k);
  return ChainMap(src, tgt, components(m.phi, k, src, tgt));
}

ChainMap eval_point_map(const FormulaToPoint& f, const DiagramMap& g) {
  const PosetDiagram& k = g.source();
  const PosetDiagram& l = g.target();
  const VectComplex src = eval_point(f, k);
  const VectComplex tgt = eval_point(f, l);
  std::map<int, IntMatrix> c;
  for (int t = src.lo(); t <= src.hi(); ++t) {
    if (!tgt.dim(t)) continue;
    const auto so = offsets(f.xi, k, t), to = offsets(f.xi, l, t);
    IntMatrix m(to.back(), so.back());
    for (std::size_t i = 0; i < f.xi.size(); ++i) {
      const Term& e = f.xi[i];
      m.set_block(to[i], so[i], g.at(e.x).component(t + e.deg));
    }
    c[t] = std::move(m);
  }
  return ChainMap(src, tgt, std::move(c));
}

PosetDiagram eval_formula(const Formula& f, const PosetDiagram& k) {
  const Poset& y = *f.target();
  std::vector<VectComplex> stalks;
  for (Elem e = 0; e < y.size(); ++e) stalks.push_back(eval_point(f.at(e), k));
  std::map<std::pair<Elem, Elem>, ChainMap> res;
  for (const auto& [a, b] : y.relations()) res[{a, b}] = eval_point_morphism(f.res_morphism(a, b), k);
  return PosetDiagram(f.target(), std::move(stalks), std::move(res));
}

DiagramMap eval_formula_map(const Formula& f, const DiagramMap& g) {
  std::vector<ChainMap> c;
  for (Elem e = 0; e < f.target()->size(); ++e) c.push_back(eval_point_map(f.at(e), g));
  return DiagramMap(eval_formula(f, g.source()), eval_formula(f, g.target()), std::move(c));
}

DiagramMap eval_transformation(const FormulaTransformation& t, const PosetDiagram& k) {
  std::vector<ChainMap> c;
  for (Elem e = 0; e < t.source.target()->size(); ++e)
    c.push_back(eval_point_morphism({t.source.at(e), t.target.at(e), t.components.at(e)}, k));
  return DiagramMap(eval_formula(t.source, k), eval_formula(t.target, k), std::move(c));
}

long predicted_euler_characteristic(const CObject& xi, const PosetDiagram& k) {
  long chi = 0;
  for (const auto& e : xi.entries()) chi += (e.deg % 2 == 0 ? 1 : -1) * euler_characteristic(k.stalk(e.x));
  return chi;
}

}  // namespace udeq
