#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "udeq/field.hpp"
#include "udeq/matrix.hpp"

namespace udeq {

/// Bounded complex of finite-dimensional vector spaces. Differentials raise
/// degree: d(i) : K^i -> K^{i+1} is a dim(i+1) x dim(i) matrix. The support is
/// trimmed so that the lowest and highest stored degrees are nonzero.
class VectComplex {
 public:
  VectComplex() = default;
  /// Throws InvalidComplex on shape errors or d(i+1) d(i) != 0.
  VectComplex(const std::map<int, std::size_t>& dims, const std::map<int, IntMatrix>& d);
  /// `d[k]` maps degree lo+k to lo+k+1; the last one may be omitted.
  static VectComplex from_window(int lo, std::vector<std::size_t> dims, std::vector<IntMatrix> d);

  /// Single space k^n in degree `deg`.
  static VectComplex stalk(int deg, std::size_t n);

  std::size_t dim(int i) const;
  IntMatrix d(int i) const;
  /// Inclusive support bounds; hi() < lo() for the zero complex.
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
  bool is_zero() const { return dims_.empty(); }
  std::size_t total_dim() const;

  friend bool operator==(const VectComplex& a, const VectComplex& b) {
    return a.lo_ == b.lo_ && a.dims_ == b.dims_ && a.d_ == b.d_;
  }

 private:
  void trim_and_check();

  int lo_ = 0;
  std::vector<std::size_t> dims_;
  std::vector<IntMatrix> d_;  // d_[k] : lo+k -> lo+k+1, size dims_.size() - 1
};

/// Degree-preserving collection of maps f(i) : K^i -> L^i.
class ChainMap {
 public:
  ChainMap() = default;
  /// Throws InvalidChainMap on shape errors or when f[1] d_K != d_L f.
  ChainMap(VectComplex source, VectComplex target, std::map<int, IntMatrix> components);
  /// No chain-map check; used for graded maps such as homotopies.
  static ChainMap unchecked(VectComplex source, VectComplex target, std::map<int, IntMatrix> components);

  static ChainMap identity(const VectComplex& k);
  static ChainMap zero(const VectComplex& k, const VectComplex& l);

  const VectComplex& source() const { return source_; }
  const VectComplex& target() const { return target_; }
  IntMatrix component(int i) const;
  const std::map<int, IntMatrix>& components() const { return f_; }

  bool is_chain_map() const;

  friend bool operator==(const ChainMap& a, const ChainMap& b);
  friend ChainMap operator+(const ChainMap& a, const ChainMap& b);
  friend ChainMap operator-(const ChainMap& a);

 private:
  static std::map<int, IntMatrix> prune(const VectComplex& s, const VectComplex& t, std::map<int, IntMatrix> f);

  VectComplex source_, target_;
  std::map<int, IntMatrix> f_;
};

/// K[n]^i = K^{i+n}, d_{K[n]}^i = (-1)^n d_K^{i+n}.
VectComplex shift(const VectComplex& k, int n);
/// f[n]^i = f^{i+n} between the shifted complexes.
ChainMap shift(const ChainMap& f, int n);

VectComplex direct_sum(const VectComplex& a, const VectComplex& b);
ChainMap direct_sum(const ChainMap& f, const ChainMap& g);

/// g ∘ f.
ChainMap compose(const ChainMap& g, const ChainMap& f);

/// cone(f)^i = K^{i+1} ⊕ L^i with differential [[d_K[1], 0], [f[1], d_L]].
VectComplex cone(const ChainMap& f);

/// Nonzero cohomology dimensions, dim H^i = dim K^i - rank d^i - rank d^{i-1}.
std::map<int, std::size_t> cohomology(const VectComplex& k, const Field& field);
bool is_acyclic(const VectComplex& k, const Field& field);
long euler_characteristic(const VectComplex& k);

/// Via acyclicity of the cone.
bool is_quasi_iso(const ChainMap& f, const Field& field);
/// Independent route: H^i(f) has full rank between spaces of equal dimension,
/// computed from kernel bases and image spans.
bool is_quasi_iso_by_induced_maps(const ChainMap& f, const Field& field);

/// Degreewise exactness of 0 -> A -f-> B -g-> C -> 0.
bool is_short_exact(const ChainMap& f, const ChainMap& g, const Field& field);

/// Rank of each component of a graded map.
bool is_degreewise_invertible(const ChainMap& f, const Field& field);

}  // namespace udeq
