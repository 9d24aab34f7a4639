#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "udeq/poset.hpp"

namespace udeq {

/// The data (X, Y, {Y_x}, phi) from which the two glued orders are built.
///
/// Y_x is an ordered list of indices into Y; phi(x, x') for x <= x' lists, for
/// each position k of Y_x, the image of Y_x[k] in Y_{x'}. phi is inferred from
/// the orders and validated, never supplied.
class GluingData {
 public:
  /// Validates the antichain condition, infers phi, and checks bijectivity and
  /// the cocycle identity. `yx` maps every label of X to labels of Y.
  static GluingData validate(Poset x, Poset y, const std::map<std::string, std::vector<std::string>>& yx);
  static GluingData validate(Poset x, Poset y, std::vector<std::vector<Elem>> yx);

  const Poset& X() const { return x_; }
  const Poset& Y() const { return y_; }
  const std::vector<Elem>& Yx(Elem x) const { return yx_.at(x); }
  const std::vector<std::vector<Elem>>& all_Yx() const { return yx_; }

  /// Image indices (into Y) of Y_x under phi_{x,x'}; requires x <= x'.
  const std::vector<Elem>& phi(Elem x, Elem x2) const { return phi_.at({x, x2}); }
  Elem phi_of(Elem x, Elem x2, Elem y) const;

  /// Position of y inside Y_x, or Y_x.size() if absent.
  std::size_t position_in(Elem x, Elem y) const;

  /// The unique w in Y_x with y <= w (for sign minus) or w <= y (for sign plus).
  std::optional<Elem> witness_below(Elem x, Elem y) const;  // w <= y
  std::optional<Elem> witness_above(Elem x, Elem y) const;  // y <= w

  friend bool operator==(const GluingData& a, const GluingData& b) {
    return a.x_ == b.x_ && a.y_ == b.y_ && a.yx_ == b.yx_ && a.phi_ == b.phi_;
  }

 private:
  GluingData() = default;

  Poset x_, y_;
  std::vector<std::vector<Elem>> yx_;
  std::map<std::pair<Elem, Elem>, std::vector<Elem>> phi_;
};

using GluingPtr = std::shared_ptr<const GluingData>;

enum class Sign { plus, minus };

inline const char* to_string(Sign s) { return s == Sign::plus ? "plus" : "minus"; }

/// One of the two orders on X ⊔ Y. Elements of X come first (indices
/// 0..|X|-1), followed by the elements of Y.
struct GluedOrder {
  PosetPtr poset;
  Sign sign;
  GluingPtr gluing;

  Elem from_x(Elem x) const { return x; }
  Elem from_y(Elem y) const { return gluing->X().size() + y; }
  bool is_x(Elem e) const { return e < gluing->X().size(); }
  Elem to_x(Elem e) const { return e; }
  Elem to_y(Elem e) const { return e - gluing->X().size(); }
};

GluedOrder build_plus(const GluingPtr& g);
GluedOrder build_minus(const GluingPtr& g);
GluedOrder build_order(const GluingPtr& g, Sign sign);

/// Y_x = {f(x)}; throws NotOrderPreserving.
GluingData from_function(Poset x, Poset y, const std::map<std::string, std::string>& f);

/// X = {star}, Y_star = Y0.
GluingData from_bgp(Poset y, const std::vector<std::string>& y0, const std::string& star = "*");

struct OrdinalWitness {
  GluingData gluing;
  Poset expected_plus;   // X ⊕ 1 ⊕ Z
  Poset expected_minus;  // 1 ⊕ (X + Z)
};

/// Y = 1 ⊕ Z with f sending all of X to the bottom of Y.
OrdinalWitness ordinal_witness(const Poset& x, const Poset& z);

}  // namespace udeq
