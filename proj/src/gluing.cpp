#include "udeq/gluing.hpp"

#include <algorithm>
#include <set>

#include "udeq/error.hpp"

namespace udeq {

GluingData GluingData::validate(Poset x, Poset y, const std::map<std::string, std::vector<std::string>>& yx) {
  std::vector<std::vector<Elem>> idx(x.size());
  for (const auto& [key, ys] : yx) {
    const Elem xi = x.index_of(key);
    for (const auto& l : ys) idx[xi].push_back(y.index_of(l));
  }
  for (Elem xi = 0; xi < x.size(); ++xi)
    if (!yx.count(x.label(xi))) throw UnknownElement("Y_x missing for " + x.label(xi));
  return validate(std::move(x), std::move(y), std::move(idx));
}

GluingData GluingData::validate(Poset x, Poset y, std::vector<std::vector<Elem>> yx) {
  if (yx.size() != x.size()) throw InternalInconsistency("Y_x must be given for every element of X");
  GluingData g;
  g.x_ = std::move(x);
  g.y_ = std::move(y);
  g.yx_ = std::move(yx);
  const Poset& X = g.x_;
  const Poset& Y = g.y_;

  for (Elem xi = 0; xi < X.size(); ++xi) {
    const auto& ys = g.yx_[xi];
    for (Elem y : ys)
      if (y >= Y.size()) throw UnknownElement(std::to_string(y));
    for (std::size_t a = 0; a < ys.size(); ++a)
      for (std::size_t b = a + 1; b < ys.size(); ++b) {
        if (ys[a] == ys[b]) throw DuplicateElement(Y.label(ys[a]));
        for (Elem w = 0; w < Y.size(); ++w) {
          const bool common_up = Y.leq(ys[a], w) && Y.leq(ys[b], w);
          const bool common_down = Y.leq(w, ys[a]) && Y.leq(w, ys[b]);
          if (common_up || common_down)
            throw AntichainViolation(X.label(xi), Y.label(ys[a]), Y.label(ys[b]), Y.label(w));
        }
      }
  }

  for (auto [a, b] : X.relations()) {
    const auto& src = g.yx_[a];
    const auto& dst = g.yx_[b];
    std::vector<Elem> image;
    for (Elem y : src) {
      // Unique by the down-set half of the antichain condition on Y_b.
      auto it = std::find_if(dst.begin(), dst.end(), [&](Elem w) { return Y.leq(y, w); });
      if (it == dst.end()) throw PhiMissing(X.label(a), X.label(b), Y.label(y));
      image.push_back(*it);
    }
    std::set<Elem> distinct(image.begin(), image.end());
    if (distinct.size() != image.size() || image.size() != dst.size())
      throw PhiNotBijective(X.label(a), X.label(b));
    g.phi_[{a, b}] = std::move(image);
  }

  for (Elem a = 0; a < X.size(); ++a) {
    if (g.phi_.at({a, a}) != g.yx_[a]) throw CocycleViolation("phi_{x,x} is not the identity at " + X.label(a));
    for (Elem b = 0; b < X.size(); ++b) {
      if (!X.leq(a, b)) continue;
      for (Elem c = 0; c < X.size(); ++c) {
        if (!X.leq(b, c)) continue;
        for (std::size_t k = 0; k < g.yx_[a].size(); ++k) {
          const Elem y = g.yx_[a][k];
          if (g.phi_of(b, c, g.phi_of(a, b, y)) != g.phi_of(a, c, y))
            throw CocycleViolation("phi cocycle fails on " + X.label(a) + " <= " + X.label(b) + " <= " +
                                   X.label(c) + " at " + Y.label(y));
        }
      }
    }
  }
  return g;
}

std::size_t GluingData::position_in(Elem x, Elem y) const {
  const auto& ys = yx_.at(x);
  return static_cast<std::size_t>(std::find(ys.begin(), ys.end(), y) - ys.begin());
}

Elem GluingData::phi_of(Elem x, Elem x2, Elem y) const {
  const std::size_t k = position_in(x, y);
  if (k == yx_.at(x).size()) throw InternalInconsistency("element not in Y_x");
  return phi_.at({x, x2}).at(k);
}

std::optional<Elem> GluingData::witness_below(Elem x, Elem y) const {
  std::optional<Elem> w;
  for (Elem c : yx_.at(x))
    if (y_.leq(c, y)) {
      if (w) throw InternalInconsistency("witness below " + y_.label(y) + " is not unique");
      w = c;
    }
  return w;
}

std::optional<Elem> GluingData::witness_above(Elem x, Elem y) const {
  std::optional<Elem> w;
  for (Elem c : yx_.at(x))
    if (y_.leq(y, c)) {
      if (w) throw InternalInconsistency("witness above " + y_.label(y) + " is not unique");
      w = c;
    }
  return w;
}

GluedOrder build_order(const GluingPtr& g, Sign sign) {
  const Poset& X = g->X();
  const Poset& Y = g->Y();
  auto [lx, ly] = disjoint_labels(X, Y);
  std::vector<std::string> labels = lx;
  labels.insert(labels.end(), ly.begin(), ly.end());
  const std::size_t nx = X.size();
  const std::size_t n = nx + Y.size();

  std::vector<char> rel(n * n, 0);
  auto set = [&](Elem a, Elem b) { rel[a * n + b] = 1; };
  for (auto [a, b] : X.relations()) set(a, b);
  for (auto [a, b] : Y.relations()) set(nx + a, nx + b);
  for (Elem x = 0; x < nx; ++x)
    for (Elem y = 0; y < Y.size(); ++y) {
      if (sign == Sign::plus && g->witness_below(x, y)) set(x, nx + y);
      if (sign == Sign::minus && g->witness_above(x, y)) set(nx + y, x);
    }

  std::vector<std::pair<Elem, Elem>> pairs;
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (rel[a * n + b]) pairs.emplace_back(a, b);
  Poset p;
  try {
    p = Poset::from_index_pairs(labels, pairs);
  } catch (const CycleError& e) {
    throw InternalInconsistency(std::string("glued order is not antisymmetric: ") + e.what());
  }
  // The defining relation must already be transitive.
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (p.leq(a, b) != static_cast<bool>(rel[a * n + b]))
        throw InternalInconsistency("glued order needs extra relation " + labels[a] + " <= " + labels[b]);
  return GluedOrder{share(std::move(p)), sign, g};
}

GluedOrder build_plus(const GluingPtr& g) { return build_order(g, Sign::plus); }
GluedOrder build_minus(const GluingPtr& g) { return build_order(g, Sign::minus); }

GluingData from_function(Poset x, Poset y, const std::map<std::string, std::string>& f) {
  std::vector<std::vector<Elem>> yx(x.size());
  for (Elem xi = 0; xi < x.size(); ++xi) {
    auto it = f.find(x.label(xi));
    if (it == f.end()) throw UnknownElement("f undefined on " + x.label(xi));
    yx[xi] = {y.index_of(it->second)};
  }
  for (const auto& [k, v] : f) x.index_of(k);
  for (auto [a, b] : x.relations())
    if (!y.leq(yx[a][0], yx[b][0])) throw NotOrderPreserving(x.label(a), x.label(b));
  return GluingData::validate(std::move(x), std::move(y), std::move(yx));
}

GluingData from_bgp(Poset y, const std::vector<std::string>& y0, const std::string& star) {
  std::vector<Elem> idx;
  for (const auto& l : y0) idx.push_back(y.index_of(l));
  return GluingData::validate(Poset::point(star), std::move(y), std::vector<std::vector<Elem>>{idx});
}

OrdinalWitness ordinal_witness(const Poset& x, const Poset& z) {
  std::string bottom = "1";
  while (z.contains(bottom) || x.contains(bottom)) bottom += "'";
  Poset y = ordinal_sum(Poset::point(bottom), z);
  std::map<std::string, std::string> f;
  for (const auto& l : x.labels()) f[l] = bottom;
  const Poset one = Poset::point(bottom);
  OrdinalWitness w{from_function(x, y, f), ordinal_sum(ordinal_sum(x, one), z), ordinal_sum(one, direct_sum(x, z))};
  return w;
}

}  // namespace udeq
