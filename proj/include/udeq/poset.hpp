#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace udeq {

/// Index of an element inside a Poset's canonical enumeration.
using Elem = std::size_t;

/// Covering relations of a poset, stored as index pairs (a, b) with a < b.
struct HasseDiagram {
  std::vector<std::string> vertices;
  std::vector<std::pair<Elem, Elem>> edges;
};

/// A finite poset over opaque string labels.
///
/// The order is stored fully closed as a boolean matrix; element order is the
/// input order and is the canonical enumeration used by every matrix built on
/// top of the poset. Values are immutable after construction.
class Poset {
 public:
  Poset() = default;

  /// Reflexive-transitive closure of `generating_pairs` on `elements`.
  /// Throws UnknownElement, DuplicateElement, or CycleError.
  static Poset from_generators(const std::vector<std::string>& elements,
                               const std::vector<std::pair<std::string, std::string>>& generating_pairs);

  /// Same as from_generators but with index pairs.
  static Poset from_index_pairs(std::vector<std::string> elements,
                                const std::vector<std::pair<Elem, Elem>>& generating_pairs);

  static Poset chain(const std::vector<std::string>& elements);
  static Poset antichain(const std::vector<std::string>& elements);
  static Poset point(const std::string& label = "1") { return chain({label}); }

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Elem e) const { return labels_.at(e); }

  /// Throws UnknownElement.
  Elem index_of(const std::string& label) const;
  std::optional<Elem> find(const std::string& label) const;
  bool contains(const std::string& label) const { return find(label).has_value(); }

  bool leq(Elem a, Elem b) const { return leq_[a * size() + b] != 0; }
  bool less(Elem a, Elem b) const { return a != b && leq(a, b); }
  bool comparable(Elem a, Elem b) const { return leq(a, b) || leq(b, a); }

  std::vector<Elem> up_set(Elem e) const;
  std::vector<Elem> down_set(Elem e) const;

  /// All pairs (a, b) with a <= b, including a == b, in row-major order.
  std::vector<std::pair<Elem, Elem>> relations() const;

  HasseDiagram hasse() const;

  /// Length of the longest chain ending at each element (minimal elements get 0).
  std::vector<std::size_t> heights() const;
  /// Number of elements of the longest chain (0 for the empty poset).
  std::size_t height() const;

  std::vector<Elem> minimal_elements() const;
  std::vector<Elem> maximal_elements() const;

  /// Structural equality: same labels in the same order, same relation.
  friend bool operator==(const Poset& a, const Poset& b) {
    return a.labels_ == b.labels_ && a.leq_ == b.leq_;
  }

 private:
  Poset(std::vector<std::string> labels, std::vector<char> leq);
  void build_index();

  std::vector<std::string> labels_;
  std::vector<char> leq_;
  std::map<std::string, Elem> index_;
};

using PosetPtr = std::shared_ptr<const Poset>;

inline PosetPtr share(Poset p) { return std::make_shared<const Poset>(std::move(p)); }

/// Labels of a disjoint union: unchanged if the label sets are disjoint,
/// otherwise every label is prefixed with "L." / "R.".
std::pair<std::vector<std::string>, std::vector<std::string>> disjoint_labels(const Poset& p, const Poset& q);

Poset ordinal_sum(const Poset& p, const Poset& q);
Poset direct_sum(const Poset& p, const Poset& q);
Poset opposite(const Poset& p);
/// Componentwise order; labels are "(a,b)".
Poset product(const Poset& p, const Poset& q);

/// Sub-poset induced on `elements` (in the given order).
Poset induced(const Poset& p, const std::vector<Elem>& elements);

inline constexpr std::size_t kDefaultIsoLimit = 12;

/// Exhaustive search for an order isomorphism p -> q. The returned vector maps
/// each element of p to its image in q. Throws SizeLimit when both posets have
/// more than `limit` elements.
std::optional<std::vector<Elem>> is_isomorphic(const Poset& p, const Poset& q,
                                               std::size_t limit = kDefaultIsoLimit);

/// Graphviz rendering: one node per element, one edge per covering relation,
/// nodes of equal longest-chain height on the same rank.
std::string to_dot(const Poset& p, const std::string& graph_name = "poset");

}  // namespace udeq
