#include "udeq/complex.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "udeq/error.hpp"

namespace udeq {

namespace {

std::string shape(const IntMatrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

IntMatrix hcat(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(0, a.cols(), b);
  return out;
}

}  // namespace

VectComplex::VectComplex(const std::map<int, std::size_t>& dims, const std::map<int, IntMatrix>& d) {
  int lo = 0, hi = -1;
  bool any = false;
  for (const auto& [i, n] : dims) {
    if (n == 0) continue;
    if (!any) lo = hi = i;
    lo = std::min(lo, i);
    hi = std::max(hi, i);
    any = true;
  }
  auto dim_of = [&](int i) -> std::size_t {
    auto it = dims.find(i);
    return it == dims.end() ? 0 : it->second;
  };
  for (const auto& [i, m] : d) {
    if (m.rows() != dim_of(i + 1) || m.cols() != dim_of(i))
      throw InvalidComplex("differential in degree " + std::to_string(i) + " has shape " + shape(m) + ", expected " +
                           std::to_string(dim_of(i + 1)) + "x" + std::to_string(dim_of(i)));
  }
  if (!any) return;
  lo_ = lo;
  for (int i = lo; i <= hi; ++i) dims_.push_back(dim_of(i));
  for (int i = lo; i < hi; ++i) {
    auto it = d.find(i);
    d_.push_back(it == d.end() ? IntMatrix(dim_of(i + 1), dim_of(i)) : it->second);
  }
  trim_and_check();
}

VectComplex VectComplex::from_window(int lo, std::vector<std::size_t> dims, std::vector<IntMatrix> d) {
  std::map<int, std::size_t> dm;
  std::map<int, IntMatrix> mm;
  for (std::size_t k = 0; k < dims.size(); ++k) dm[lo + static_cast<int>(k)] = dims[k];
  for (std::size_t k = 0; k < d.size(); ++k) mm[lo + static_cast<int>(k)] = d[k];
  return VectComplex(dm, mm);
}

VectComplex VectComplex::stalk(int deg, std::size_t n) { return VectComplex({{deg, n}}, {}); }

void VectComplex::trim_and_check() {
  for (std::size_t k = 0; k + 2 < dims_.size(); ++k) {
    if (!(d_[k + 1] * d_[k]).is_zero())
      throw D2NotZero("d^" + std::to_string(lo_ + static_cast<int>(k) + 1) + " d^" +
                      std::to_string(lo_ + static_cast<int>(k)) + " != 0");
  }
}

std::size_t VectComplex::dim(int i) const {
  if (i < lo_ || i > hi()) return 0;
  return dims_[static_cast<std::size_t>(i - lo_)];
}

IntMatrix VectComplex::d(int i) const {
  if (i >= lo_ && i < hi()) return d_[static_cast<std::size_t>(i - lo_)];
  return IntMatrix(dim(i + 1), dim(i));
}

std::size_t VectComplex::total_dim() const {
  std::size_t t = 0;
  for (auto n : dims_) t += n;
  return t;
}

std::map<int, IntMatrix> ChainMap::prune(const VectComplex& s, const VectComplex& t, std::map<int, IntMatrix> f) {
  std::map<int, IntMatrix> out;
  for (auto& [i, m] : f) {
    if (m.rows() != t.dim(i) || m.cols() != s.dim(i))
      throw InvalidChainMap("component in degree " + std::to_string(i) + " has shape " + shape(m) + ", expected " +
                            std::to_string(t.dim(i)) + "x" + std::to_string(s.dim(i)));
    if (!m.empty()) out[i] = std::move(m);
  }
  for (int i = std::min(s.lo(), t.lo()); i <= std::max(s.hi(), t.hi()); ++i)
    if (s.dim(i) && t.dim(i) && !out.count(i)) out[i] = IntMatrix(t.dim(i), s.dim(i));
  return out;
}

ChainMap::ChainMap(VectComplex source, VectComplex target, std::map<int, IntMatrix> components)
    : source_(std::move(source)), target_(std::move(target)), f_(prune(source_, target_, std::move(components))) {
  if (!is_chain_map()) throw InvalidChainMap("f d != d f");
}

ChainMap ChainMap::unchecked(VectComplex source, VectComplex target, std::map<int, IntMatrix> components) {
  ChainMap m;
  m.f_ = prune(source, target, std::move(components));
  m.source_ = std::move(source);
  m.target_ = std::move(target);
  return m;
}

ChainMap ChainMap::identity(const VectComplex& k) {
  std::map<int, IntMatrix> f;
  for (int i = k.lo(); i <= k.hi(); ++i) f[i] = IntMatrix::identity(k.dim(i));
  return unchecked(k, k, std::move(f));
}

ChainMap ChainMap::zero(const VectComplex& k, const VectComplex& l) { return unchecked(k, l, {}); }

IntMatrix ChainMap::component(int i) const {
  auto it = f_.find(i);
  if (it != f_.end()) return it->second;
  return IntMatrix(target_.dim(i), source_.dim(i));
}

bool ChainMap::is_chain_map() const {
  const int lo = std::min(source_.lo(), target_.lo()) - 1;
  const int hi = std::max(source_.hi(), target_.hi()) + 1;
  for (int i = lo; i <= hi; ++i)
    if (!(component(i + 1) * source_.d(i) == target_.d(i) * component(i))) return false;
  return true;
}

bool operator==(const ChainMap& a, const ChainMap& b) {
  return a.source_ == b.source_ && a.target_ == b.target_ && a.f_ == b.f_;
}

ChainMap operator+(const ChainMap& a, const ChainMap& b) {
  if (!(a.source_ == b.source_) || !(a.target_ == b.target_)) throw ShapeMismatch("sum of maps with different ends");
  std::map<int, IntMatrix> f = a.f_;
  for (const auto& [i, m] : b.f_) f[i] = f.count(i) ? f[i] + m : m;
  return ChainMap::unchecked(a.source_, a.target_, std::move(f));
}

ChainMap operator-(const ChainMap& a) {
  std::map<int, IntMatrix> f;
  for (const auto& [i, m] : a.f_) f[i] = -m;
  return ChainMap::unchecked(a.source_, a.target_, std::move(f));
}

VectComplex shift(const VectComplex& k, int n) {
  std::map<int, std::size_t> dims;
  std::map<int, IntMatrix> d;
  const std::int64_t sign = (n % 2 == 0) ? 1 : -1;
  for (int i = k.lo(); i <= k.hi(); ++i) {
    dims[i - n] = k.dim(i);
    if (i < k.hi()) d[i - n] = k.d(i).scaled(sign);
  }
  return VectComplex(dims, d);
}

ChainMap shift(const ChainMap& f, int n) {
  std::map<int, IntMatrix> c;
  for (const auto& [i, m] : f.components()) c[i - n] = m;
  return ChainMap::unchecked(shift(f.source(), n), shift(f.target(), n), std::move(c));
}

VectComplex direct_sum(const VectComplex& a, const VectComplex& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  std::map<int, std::size_t> dims;
  std::map<int, IntMatrix> d;
  const int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
  for (int i = lo; i <= hi; ++i) {
    dims[i] = a.dim(i) + b.dim(i);
    if (i < hi) d[i] = IntMatrix::direct_sum(a.d(i), b.d(i));
  }
  return VectComplex(dims, d);
}

ChainMap direct_sum(const ChainMap& f, const ChainMap& g) {
  VectComplex s = direct_sum(f.source(), g.source()), t = direct_sum(f.target(), g.target());
  std::map<int, IntMatrix> c;
  for (int i = s.lo(); i <= s.hi(); ++i)
    if (t.dim(i)) c[i] = IntMatrix::direct_sum(f.component(i), g.component(i));
  return ChainMap::unchecked(std::move(s), std::move(t), std::move(c));
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  if (!(g.source() == f.target())) throw ShapeMismatch("composition of maps that do not meet");
  std::map<int, IntMatrix> c;
  for (const auto& [i, m] : f.components())
    if (g.target().dim(i)) c[i] = g.component(i) * m;
  return ChainMap::unchecked(f.source(), g.target(), std::move(c));
}

VectComplex cone(const ChainMap& f) {
  const VectComplex& k = f.source();
  const VectComplex& l = f.target();
  std::map<int, std::size_t> dims;
  std::map<int, IntMatrix> d;
  const int lo = std::min(k.lo() - 1, l.lo()), hi = std::max(k.hi() - 1, l.hi());
  for (int i = lo; i <= hi; ++i) dims[i] = k.dim(i + 1) + l.dim(i);
  for (int i = lo; i < hi; ++i) {
    IntMatrix m(dims[i + 1], dims[i]);
    const std::size_t k1 = k.dim(i + 1), k2 = k.dim(i + 2);
    m.set_block(0, 0, -k.d(i + 1));
    m.set_block(k2, 0, f.component(i + 1));
    m.set_block(k2, k1, l.d(i));
    d[i] = std::move(m);
  }
  return VectComplex(dims, d);
}

std::map<int, std::size_t> cohomology(const VectComplex& k, const Field& field) {
  std::map<int, std::size_t> h;
  std::size_t prev_rank = 0;
  for (int i = k.lo(); i <= k.hi(); ++i) {
    const std::size_t r = field.rank(k.d(i));
    const std::size_t dim = k.dim(i) - r - prev_rank;
    if (dim) h[i] = dim;
    prev_rank = r;
  }
  return h;
}

bool is_acyclic(const VectComplex& k, const Field& field) { return cohomology(k, field).empty(); }

long euler_characteristic(const VectComplex& k) {
  long chi = 0;
  for (int i = k.lo(); i <= k.hi(); ++i) chi += (i % 2 == 0 ? 1 : -1) * static_cast<long>(k.dim(i));
  return chi;
}

bool is_quasi_iso(const ChainMap& f, const Field& field) { return is_acyclic(cone(f), field); }

bool is_quasi_iso_by_induced_maps(const ChainMap& f, const Field& field) {
  const VectComplex& k = f.source();
  const VectComplex& l = f.target();
  const auto hk = cohomology(k, field), hl = cohomology(l, field);
  if (hk != hl) return false;
  for (const auto& [i, n] : hl) {
    const IntMatrix zk = field.nullspace(k.d(i));
    const IntMatrix bl = l.d(i - 1);
    const std::size_t zl = l.dim(i) - field.rank(l.d(i));
    const IntMatrix span = hcat(f.component(i) * zk, bl);
    if (field.rank(span) != zl) return false;
    (void)n;
  }
  return true;
}

bool is_short_exact(const ChainMap& f, const ChainMap& g, const Field& field) {
  if (!(f.target() == g.source())) return false;
  const VectComplex& b = f.target();
  std::set<int> degs;
  for (const auto* c : {&f.source(), &b, &g.target()})
    for (int i = c->lo(); i <= c->hi(); ++i) degs.insert(i);
  for (int i : degs) {
    const std::size_t a = f.source().dim(i), bb = b.dim(i), c = g.target().dim(i);
    if (a + c != bb) return false;
    if (field.rank(f.component(i)) != a || field.rank(g.component(i)) != c) return false;
    if (field.rank(g.component(i) * f.component(i)) != 0) return false;
  }
  return true;
}

bool is_degreewise_invertible(const ChainMap& f, const Field& field) {
  const int lo = std::min(f.source().lo(), f.target().lo()), hi = std::max(f.source().hi(), f.target().hi());
  for (int i = lo; i <= hi; ++i) {
    if (f.source().dim(i) != f.target().dim(i)) return false;
    if (field.rank(f.component(i)) != f.source().dim(i)) return false;
  }
  return true;
}

}  // namespace udeq
