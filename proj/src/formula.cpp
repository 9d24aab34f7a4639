#include "udeq/formula.hpp"

#include <algorithm>
#include <sstream>

#include "udeq/error.hpp"

namespace udeq {

CObject::CObject(PosetPtr base, std::vector<Term> entries) : base_(std::move(base)), entries_(std::move(entries)) {
  if (!base_) throw BaseMismatch("object without a base poset");
  for (const auto& t : entries_)
    if (t.x >= base_->size()) throw UnknownElement(std::to_string(t.x));
}

bool same_base(const PosetPtr& a, const PosetPtr& b) { return a == b || (a && b && *a == *b); }

bool operator==(const CObject& a, const CObject& b) {
  return a.entries_ == b.entries_ && same_base(a.base_, b.base_);
}

CObject shift(const CObject& o, int n) {
  std::vector<Term> e = o.entries();
  for (auto& t : e) t.deg += n;
  return CObject(o.base(), std::move(e));
}

CObject concat(const std::vector<CObject>& parts, const PosetPtr& base) {
  std::vector<Term> e;
  for (const auto& p : parts) {
    if (!same_base(p.base(), base)) throw BaseMismatch("concatenating objects over different posets");
    e.insert(e.end(), p.entries().begin(), p.entries().end());
  }
  return CObject(base, std::move(e));
}

std::string describe(const CObject& o) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < o.size(); ++i)
    os << (i ? "," : "") << '(' << o.base()->label(o[i].x) << ',' << o[i].deg << ')';
  os << ')';
  return os.str();
}

bool supported(const Poset& base, const Term& from, const Term& to) {
  const int jump = to.deg - from.deg;
  return (jump == 0 || jump == 1) && base.leq(from.x, to.x);
}

CMorphism::CMorphism(CObject source, CObject target, IntMatrix matrix, Strictness mode)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (!same_base(source_.base(), target_.base())) throw BaseMismatch("morphism between objects over different posets");
  if (matrix_.rows() != target_.size() || matrix_.cols() != source_.size())
    throw ShapeMismatch("matrix is " + std::to_string(matrix_.rows()) + "x" + std::to_string(matrix_.cols()) +
                        ", expected " + std::to_string(target_.size()) + "x" + std::to_string(source_.size()));
  const Poset& base = *source_.base();
  for (std::size_t j = 0; j < target_.size(); ++j)
    for (std::size_t i = 0; i < source_.size(); ++i) {
      if (matrix_(j, i) == 0 || supported(base, source_[i], target_[j])) continue;
      const bool in_ideal = target_[j].deg - source_[i].deg >= 2 && base.leq(source_[i].x, target_[j].x);
      if (mode == Strictness::strict && !in_ideal) throw IllegalSupport(j, i);
      matrix_(j, i) = 0;
    }
}

CMorphism CMorphism::identity(const CObject& o) { return CMorphism(o, o, IntMatrix::identity(o.size())); }

CMorphism CMorphism::zero(const CObject& source, const CObject& target) {
  return CMorphism(source, target, IntMatrix(target.size(), source.size()));
}

bool CMorphism::is_restriction() const {
  for (std::size_t j = 0; j < target_.size(); ++j)
    for (std::size_t i = 0; i < source_.size(); ++i)
      if (matrix_(j, i) != 0 && target_[j].deg != source_[i].deg) return false;
  return true;
}

CMorphism operator+(const CMorphism& a, const CMorphism& b) {
  if (!(a.source_ == b.source_) || !(a.target_ == b.target_)) throw ShapeMismatch("sum of non-parallel morphisms");
  return CMorphism(a.source_, a.target_, a.matrix_ + b.matrix_);
}

CMorphism CMorphism::scaled(std::int64_t s) const { return CMorphism(source_, target_, matrix_.scaled(s)); }

CMorphism normalize(const CMorphism& m, Strictness mode) {
  return CMorphism(m.source(), m.target(), m.matrix(), mode);
}

CMorphism compose(const CMorphism& g, const CMorphism& f) {
  if (!(g.source() == f.target()))
    throw ShapeMismatch("compose: source " + describe(g.source()) + " != target " + describe(f.target()));
  return CMorphism(f.source(), g.target(), g.matrix() * f.matrix());
}

CMorphism shift(const CMorphism& m, int n) {
  return CMorphism(shift(m.source(), n), shift(m.target(), n), m.matrix());
}

CMorphism star(const CMorphism& m) {
  IntMatrix s = m.matrix();
  for (std::size_t j = 0; j < s.rows(); ++j)
    for (std::size_t i = 0; i < s.cols(); ++i)
      if ((m.target()[j].deg - m.source()[i].deg) % 2 != 0) s(j, i) = -s(j, i);
  return CMorphism(m.source(), m.target(), std::move(s));
}

FormulaToPoint FormulaToPoint::make(CObject xi, IntMatrix d, Strictness mode) {
  CObject t = shift(xi, 1);
  FormulaToPoint f{xi, CMorphism(std::move(xi), std::move(t), std::move(d), mode)};
  auto report = check_formula(f);
  if (!report.ok()) throw InvalidFormula(report.violations.front());
  return f;
}

CheckReport check_formula(const FormulaToPoint& f) {
  CheckReport r;
  if (!(f.D.source() == f.xi) || !(f.D.target() == shift(f.xi, 1))) {
    r.add("D must map xi to xi[1]");
    return r;
  }
  const std::size_t n = f.xi.size();
  auto sq = compose(shift(star(f.D), 1), f.D);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (sq(j, i) != 0)
        r.add("condition 1: (D*[1] D)(" + std::to_string(j) + "," + std::to_string(i) + ") = " +
              std::to_string(sq(j, i)));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = j + 1; i < n; ++i)
      if (f.D(j, i) != 0) r.add("condition 2: D(" + std::to_string(j) + "," + std::to_string(i) + ") above diagonal");
  for (std::size_t i = 0; i < n; ++i)
    if (f.D(i, i) != 1)
      r.add("condition 3: D(" + std::to_string(i) + "," + std::to_string(i) + ") = " + std::to_string(f.D(i, i)) +
            " is not a differential");
  return r;
}

FormulaToPoint shift(const FormulaToPoint& f, int n) { return {shift(f.xi, n), shift(f.D, n)}; }

FormulaToPoint negated_star_shift(const FormulaToPoint& f) { return {shift(f.xi, 1), -star(shift(f.D, 1))}; }

FormulaToPoint complex_shift(const FormulaToPoint& f, int n) {
  FormulaToPoint s = shift(f, n);
  if (n % 2 != 0) s.D = -star(s.D);
  return s;
}

CheckReport check_formula_morphism(const FormulaMorphism& m, bool allow_non_restriction) {
  CheckReport r;
  if (!(m.phi.source() == m.source.xi) || !(m.phi.target() == m.target.xi)) {
    r.add("phi does not map " + describe(m.source.xi) + " to " + describe(m.target.xi));
    return r;
  }
  if (!allow_non_restriction) {
    for (std::size_t j = 0; j < m.phi.target().size(); ++j)
      for (std::size_t i = 0; i < m.phi.source().size(); ++i)
        if (m.phi(j, i) != 0 && m.phi.target()[j].deg != m.phi.source()[i].deg)
          r.add("phi(" + std::to_string(j) + "," + std::to_string(i) + ") is not a restriction");
  }
  auto lhs = compose(shift(m.phi, 1), m.source.D);
  auto rhs = compose(m.target.D, m.phi);
  if (!(lhs == rhs)) {
    std::ostringstream os;
    os << "phi[1] D = " << lhs.matrix() << " but D' phi = " << rhs.matrix();
    r.add(os.str());
  }
  return r;
}

FormulaMorphism i_xi(const FormulaToPoint& f) {
  const std::size_t n = f.xi.size();
  IntMatrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = (f.xi[i].deg % 2 == 0) ? 1 : -1;
  FormulaToPoint src = shift(f, 1);
  CMorphism phi(src.xi, src.xi, std::move(d));
  return {src, negated_star_shift(f), phi};
}

Formula::Formula(PosetPtr base, PosetPtr target, std::vector<FormulaToPoint> at,
                 std::map<std::pair<Elem, Elem>, CMorphism> res)
    : base_(std::move(base)), target_(std::move(target)), at_(std::move(at)), res_(std::move(res)) {
  if (!base_ || !target_) throw BaseMismatch("formula without posets");
  if (at_.size() != target_->size()) throw ShapeMismatch("formula needs one stalk per target element");
  for (const auto& f : at_)
    if (!same_base(f.xi.base(), base_)) throw BaseMismatch("formula stalk over the wrong poset");
  for (auto [a, b] : target_->relations())
    if (!res_.count({a, b})) {
      if (a == b)
        res_.emplace(std::make_pair(a, a), CMorphism::identity(at_[a].xi));
      else
        throw ShapeMismatch("missing restriction " + target_->label(a) + " -> " + target_->label(b));
    }
}

Formula Formula::from_covers(PosetPtr base, PosetPtr target, std::vector<FormulaToPoint> at,
                             const std::map<std::pair<Elem, Elem>, CMorphism>& cover_res) {
  const Poset& y = *target;
  std::map<std::pair<Elem, Elem>, CMorphism> res;
  for (Elem a = 0; a < y.size(); ++a) res.emplace(std::make_pair(a, a), CMorphism::identity(at.at(a).xi));
  auto covers = y.hasse().edges;
  for (auto e : covers)
    if (!cover_res.count(e)) throw ShapeMismatch("missing restriction on edge " + y.label(e.first) + " -> " + y.label(e.second));
  for (const auto& [e, m] : cover_res) {
    bool is_cover = std::find(covers.begin(), covers.end(), e) != covers.end();
    if (!is_cover) throw ShapeMismatch("restriction given on a non-covering pair " + y.label(e.first) + " -> " + y.label(e.second));
  }
  // Fill pairs in order of increasing height gap.
  auto h = y.heights();
  std::vector<std::pair<Elem, Elem>> pending;
  for (auto [a, b] : y.relations())
    if (a != b) pending.emplace_back(a, b);
  std::stable_sort(pending.begin(), pending.end(),
                   [&](auto p, auto q) { return h[p.second] - h[p.first] < h[q.second] - h[q.first]; });
  for (auto [a, b] : pending) {
    if (auto it = cover_res.find({a, b}); it != cover_res.end()) {
      res.emplace(std::make_pair(a, b), it->second);
      continue;
    }
    for (auto [c1, c2] : covers) {
      if (c1 != a || !y.leq(c2, b)) continue;
      res.emplace(std::make_pair(a, b), compose(res.at({c2, b}), cover_res.at({a, c2})));
      break;
    }
  }
  return Formula(std::move(base), std::move(target), std::move(at), std::move(res));
}

const CMorphism& Formula::res(Elem y, Elem y2) const {
  auto it = res_.find({y, y2});
  if (it == res_.end()) throw ShapeMismatch("no restriction " + target_->label(y) + " -> " + target_->label(y2));
  return it->second;
}

CheckReport check_formula_diagram(const Formula& f) {
  CheckReport r;
  const Poset& y = *f.target();
  for (Elem a = 0; a < y.size(); ++a) r.merge(check_formula(f.at(a)), "at " + y.label(a) + ": ");
  for (auto [a, b] : y.relations()) {
    r.merge(check_formula_morphism(f.res_morphism(a, b)), "res " + y.label(a) + "->" + y.label(b) + ": ");
    if (a == b && !f.res(a, a).is_identity()) r.add("res " + y.label(a) + "->" + y.label(a) + " is not the identity");
  }
  for (auto [a, b] : y.relations())
    for (Elem c = 0; c < y.size(); ++c) {
      if (a == b || b == c || !y.leq(b, c)) continue;
      if (!(compose(f.res(b, c), f.res(a, b)) == f.res(a, c)))
        r.add("res " + y.label(a) + "->" + y.label(c) + " != composite through " + y.label(b));
    }
  return r;
}

Formula identity_formula(const PosetPtr& x) { return translation_formula(x, 0); }

Formula translation_formula(const PosetPtr& x, int n) {
  std::vector<FormulaToPoint> at;
  for (Elem e = 0; e < x->size(); ++e) at.push_back(FormulaToPoint::make(CObject(x, {{e, n}}), IntMatrix{{1}}));
  std::map<std::pair<Elem, Elem>, CMorphism> res;
  for (auto [a, b] : x->relations()) res.emplace(std::make_pair(a, b), CMorphism(at[a].xi, at[b].xi, IntMatrix{{1}}));
  return Formula(x, x, std::move(at), std::move(res));
}

namespace {

CObject expand(const CObject& outer, const Formula& inner) {
  std::vector<CObject> parts;
  for (const auto& t : outer.entries()) parts.push_back(shift(inner.at(t.x).xi, t.deg));
  return concat(parts, inner.base());
}

}  // namespace

CMorphism substitute(const CMorphism& outer, const Formula& inner) {
  if (!same_base(outer.source().base(), inner.target()))
    throw BaseMismatch("substitute: outer formula is not over the inner formula's target");
  const CObject& src = outer.source();
  const CObject& tgt = outer.target();
  CObject new_src = expand(src, inner);
  CObject new_tgt = expand(tgt, inner);

  std::vector<std::size_t> col_off{0}, row_off{0};
  for (const auto& t : src.entries()) col_off.push_back(col_off.back() + inner.at(t.x).xi.size());
  for (const auto& t : tgt.entries()) row_off.push_back(row_off.back() + inner.at(t.x).xi.size());

  IntMatrix m(new_tgt.size(), new_src.size());
  for (std::size_t b = 0; b < tgt.size(); ++b)
    for (std::size_t a = 0; a < src.size(); ++a) {
      const std::int64_t c = outer(b, a);
      if (c == 0) continue;
      const Term& from = src[a];
      const Term& to = tgt[b];
      CMorphism r = shift(inner.res(from.x, to.x), from.deg);
      if (to.deg == from.deg + 1) r = compose(complex_shift(inner.at(to.x), from.deg).D, r);
      m.add_block(row_off[b], col_off[a], r.matrix().scaled(c));
    }
  return CMorphism(std::move(new_src), std::move(new_tgt), std::move(m));
}

FormulaToPoint substitute(const FormulaToPoint& outer, const Formula& inner) {
  FormulaToPoint f{expand(outer.xi, inner), substitute(outer.D, inner)};
  auto report = check_formula(f);
  if (!report.ok()) throw InvalidFormula("substitution produced an invalid formula: " + report.violations.front());
  return f;
}

FormulaMorphism substitute(const FormulaMorphism& outer, const Formula& inner) {
  return {substitute(outer.source, inner), substitute(outer.target, inner), substitute(outer.phi, inner)};
}

Formula compose(const Formula& outer, const Formula& inner) {
  if (!same_base(outer.base(), inner.target())) throw BaseMismatch("compose: formulas do not chain");
  std::vector<FormulaToPoint> at;
  for (Elem q = 0; q < outer.target()->size(); ++q) at.push_back(substitute(outer.at(q), inner));
  std::map<std::pair<Elem, Elem>, CMorphism> res;
  for (const auto& [key, m] : outer.all_res()) res.emplace(key, substitute(m, inner));
  return Formula(inner.base(), outer.target(), std::move(at), std::move(res));
}

CheckReport check_transformation(const FormulaTransformation& t) {
  CheckReport r;
  const Poset& y = *t.source.target();
  if (!same_base(t.source.target(), t.target.target()) || t.components.size() != y.size()) {
    r.add("transformation between formulas over different posets");
    return r;
  }
  for (Elem a = 0; a < y.size(); ++a)
    r.merge(check_formula_morphism({t.source.at(a), t.target.at(a), t.components[a]}), "at " + y.label(a) + ": ");
  if (!r.ok()) return r;
  for (auto [a, b] : y.relations()) {
    if (a == b) continue;
    auto lhs = compose(t.components[b], t.source.res(a, b));
    auto rhs = compose(t.target.res(a, b), t.components[a]);
    if (!(lhs == rhs)) {
      std::ostringstream os;
      os << "naturality fails on " << y.label(a) << " -> " << y.label(b) << ": " << lhs.matrix() << " vs "
         << rhs.matrix();
      r.add(os.str());
    }
  }
  return r;
}

CheckReport check_homotopy(const CMorphism& alpha, const CMorphism& beta, const CMorphism& h, const CMorphism& D) {
  CheckReport r;
  const CObject& xi = D.source();
  try {
    if (!(D.target() == shift(xi, 1))) throw ShapeMismatch("D must map xi to xi[1]");
    if (!(h.source() == xi) || !(h.target() == shift(xi, -1))) throw ShapeMismatch("h must map xi to xi[-1]");
    auto ba = compose(beta, alpha);
    if (!ba.is_identity()) {
      std::ostringstream os;
      os << "beta alpha = " << ba.matrix() << " is not the identity";
      r.add(os.str());
    }
    auto total = compose(alpha, beta) + compose(shift(h, 1), D) + compose(shift(star(D), -1), h);
    if (!total.is_identity()) {
      std::ostringstream os;
      os << "alpha beta + h[1] D + D*[-1] h = " << total.matrix() << " is not the identity";
      r.add(os.str());
    }
  } catch (const Error& e) {
    r.add(std::string("shape: ") + e.what());
  }
  return r;
}

}  // namespace udeq
