#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "udeq/complex.hpp"
#include "udeq/poset.hpp"
#include "udeq/random.hpp"

namespace udeq {

/// Diagram of complexes over a poset: a complex per element and a chain map
/// for every relation x <= x'.
class PosetDiagram {
 public:
  PosetDiagram() = default;
  /// `res` may omit identities and pairs whose ends are both zero. Throws
  /// DiagramAxiomFailure unless identities and composites are respected.
  PosetDiagram(PosetPtr base, std::vector<VectComplex> stalks, std::map<std::pair<Elem, Elem>, ChainMap> res);
  /// Maps given on Hasse edges; composites are formed along a maximal chain and
  /// then checked on all other chains.
  static PosetDiagram from_covers(PosetPtr base, std::vector<VectComplex> stalks,
                                  const std::map<std::pair<Elem, Elem>, ChainMap>& cover_res);
  static PosetDiagram zero(PosetPtr base);

  const PosetPtr& base() const { return base_; }
  std::size_t size() const { return stalks_.size(); }
  const VectComplex& stalk(Elem x) const { return stalks_.at(x); }
  const std::vector<VectComplex>& stalks() const { return stalks_; }
  /// Throws UnknownElement unless x <= x2.
  const ChainMap& res(Elem x, Elem x2) const;

  friend bool operator==(const PosetDiagram& a, const PosetDiagram& b) {
    return *a.base_ == *b.base_ && a.stalks_ == b.stalks_ && a.res_ == b.res_;
  }

 private:
  PosetPtr base_;
  std::vector<VectComplex> stalks_;
  std::map<std::pair<Elem, Elem>, ChainMap> res_;
};

/// Family of chain maps f_x commuting with the restrictions.
class DiagramMap {
 public:
  DiagramMap() = default;
  /// Throws DiagramAxiomFailure on a non-commuting square.
  DiagramMap(PosetDiagram source, PosetDiagram target, std::vector<ChainMap> components);
  static DiagramMap identity(const PosetDiagram& k);

  const PosetDiagram& source() const { return source_; }
  const PosetDiagram& target() const { return target_; }
  const ChainMap& at(Elem x) const { return components_.at(x); }
  const std::vector<ChainMap>& components() const { return components_; }

 private:
  PosetDiagram source_, target_;
  std::vector<ChainMap> components_;
};

PosetDiagram shift(const PosetDiagram& k, int n);
DiagramMap shift(const DiagramMap& f, int n);
PosetDiagram direct_sum(const PosetDiagram& a, const PosetDiagram& b);
DiagramMap compose(const DiagramMap& g, const DiagramMap& f);
/// Pointwise cone; restrictions are the induced maps on cones.
PosetDiagram cone(const DiagramMap& f);

/// Per-element cohomology dimensions.
std::vector<std::map<int, std::size_t>> cohomology(const PosetDiagram& k, const Field& field);
bool is_quasi_iso_diagram(const DiagramMap& f, const Field& field);

/// Stalk `s` on the convex set {x : u <= x <= v} (v absent: the whole up-set of
/// u) with identity restrictions inside and zero outside.
PosetDiagram interval_diagram(const PosetPtr& base, Elem u, std::optional<Elem> v, const VectComplex& s);

struct RandomDiagramOptions {
  std::size_t max_dim = 3;  // per stalk and degree
  int lo = -2;
  int hi = 2;
  bool twist = true;  // random unitriangular change of basis at each stalk
};

/// Random complex within [lo, hi] built from one- and two-term atoms under a
/// unitriangular change of basis.
VectComplex random_complex(Rng& rng, std::size_t max_dim, int lo, int hi, bool contractible = false);

/// Direct sum of interval diagrams, each stalk optionally twisted.
PosetDiagram random_diagram(const PosetPtr& base, Rng& rng, const RandomDiagramOptions& opt = {});

/// A random degreewise invertible map K -> K' with K' isomorphic to K.
DiagramMap random_twist(const PosetDiagram& k, Rng& rng);

/// 0 -> K' -> K -> K'' -> 0 with K the sum K' ⊕ K'' under a twist.
std::pair<DiagramMap, DiagramMap> random_ses(const PosetPtr& base, Rng& rng, const RandomDiagramOptions& opt = {});

/// A quasi-isomorphism: inclusion into, or projection from, K plus a contractible
/// summand, followed by a twist.
DiagramMap random_qis(const PosetPtr& base, Rng& rng, const RandomDiagramOptions& opt = {});

/// A generally non-invertible map: projection A ⊕ B -> B, scaling on B, then
/// inclusion B -> B ⊕ C, with twists on both ends.
DiagramMap random_map(const PosetPtr& base, Rng& rng, const RandomDiagramOptions& opt = {});

}  // namespace udeq
