#include "udeq/poset.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "udeq/error.hpp"

namespace udeq {

Poset::Poset(std::vector<std::string> labels, std::vector<char> leq)
    : labels_(std::move(labels)), leq_(std::move(leq)) {
  build_index();
}

void Poset::build_index() {
  index_.clear();
  for (Elem i = 0; i < labels_.size(); ++i) {
    if (!index_.emplace(labels_[i], i).second) throw DuplicateElement(labels_[i]);
  }
}

Poset Poset::from_index_pairs(std::vector<std::string> elements,
                              const std::vector<std::pair<Elem, Elem>>& generating_pairs) {
  const std::size_t n = elements.size();
  std::vector<char> leq(n * n, 0);
  for (Elem i = 0; i < n; ++i) leq[i * n + i] = 1;
  for (auto [a, b] : generating_pairs) {
    if (a >= n || b >= n) throw UnknownElement(std::to_string(std::max(a, b)));
    leq[a * n + b] = 1;
  }
  // Warshall closure.
  for (Elem k = 0; k < n; ++k)
    for (Elem i = 0; i < n; ++i) {
      if (!leq[i * n + k]) continue;
      for (Elem j = 0; j < n; ++j)
        if (leq[k * n + j]) leq[i * n + j] = 1;
    }
  for (Elem i = 0; i < n; ++i)
    for (Elem j = i + 1; j < n; ++j)
      if (leq[i * n + j] && leq[j * n + i]) throw CycleError(elements[i], elements[j]);
  return Poset(std::move(elements), std::move(leq));
}

Poset Poset::from_generators(const std::vector<std::string>& elements,
                             const std::vector<std::pair<std::string, std::string>>& generating_pairs) {
  std::map<std::string, Elem> idx;
  for (Elem i = 0; i < elements.size(); ++i)
    if (!idx.emplace(elements[i], i).second) throw DuplicateElement(elements[i]);
  std::vector<std::pair<Elem, Elem>> pairs;
  pairs.reserve(generating_pairs.size());
  for (const auto& [a, b] : generating_pairs) {
    auto ia = idx.find(a);
    if (ia == idx.end()) throw UnknownElement(a);
    auto ib = idx.find(b);
    if (ib == idx.end()) throw UnknownElement(b);
    pairs.emplace_back(ia->second, ib->second);
  }
  return from_index_pairs(elements, pairs);
}

Poset Poset::chain(const std::vector<std::string>& elements) {
  std::vector<std::pair<Elem, Elem>> pairs;
  for (Elem i = 1; i < elements.size(); ++i) pairs.emplace_back(i - 1, i);
  return from_index_pairs(elements, pairs);
}

Poset Poset::antichain(const std::vector<std::string>& elements) { return from_index_pairs(elements, {}); }

Elem Poset::index_of(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw UnknownElement(label);
  return it->second;
}

std::optional<Elem> Poset::find(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Elem> Poset::up_set(Elem e) const {
  std::vector<Elem> out;
  for (Elem j = 0; j < size(); ++j)
    if (leq(e, j)) out.push_back(j);
  return out;
}

std::vector<Elem> Poset::down_set(Elem e) const {
  std::vector<Elem> out;
  for (Elem j = 0; j < size(); ++j)
    if (leq(j, e)) out.push_back(j);
  return out;
}

std::vector<std::pair<Elem, Elem>> Poset::relations() const {
  std::vector<std::pair<Elem, Elem>> out;
  for (Elem i = 0; i < size(); ++i)
    for (Elem j = 0; j < size(); ++j)
      if (leq(i, j)) out.emplace_back(i, j);
  return out;
}

HasseDiagram Poset::hasse() const {
  HasseDiagram h{labels_, {}};
  for (Elem a = 0; a < size(); ++a)
    for (Elem b = 0; b < size(); ++b) {
      if (!less(a, b)) continue;
      bool covered = true;
      for (Elem c = 0; c < size() && covered; ++c)
        if (less(a, c) && less(c, b)) covered = false;
      if (covered) h.edges.emplace_back(a, b);
    }
  return h;
}

std::vector<std::size_t> Poset::heights() const {
  // Elements sorted by down-set size form a linear extension.
  std::vector<Elem> order(size());
  std::iota(order.begin(), order.end(), Elem{0});
  std::vector<std::size_t> down(size());
  for (Elem e = 0; e < size(); ++e) down[e] = down_set(e).size();
  std::stable_sort(order.begin(), order.end(), [&](Elem a, Elem b) { return down[a] < down[b]; });
  std::vector<std::size_t> h(size(), 0);
  for (Elem b : order)
    for (Elem a = 0; a < size(); ++a)
      if (less(a, b)) h[b] = std::max(h[b], h[a] + 1);
  return h;
}

std::size_t Poset::height() const {
  if (size() == 0) return 0;
  auto h = heights();
  return *std::max_element(h.begin(), h.end()) + 1;
}

std::vector<Elem> Poset::minimal_elements() const {
  std::vector<Elem> out;
  for (Elem e = 0; e < size(); ++e)
    if (down_set(e).size() == 1) out.push_back(e);
  return out;
}

std::vector<Elem> Poset::maximal_elements() const {
  std::vector<Elem> out;
  for (Elem e = 0; e < size(); ++e)
    if (up_set(e).size() == 1) out.push_back(e);
  return out;
}

std::pair<std::vector<std::string>, std::vector<std::string>> disjoint_labels(const Poset& p, const Poset& q) {
  bool clash = false;
  for (const auto& l : p.labels())
    if (q.contains(l)) clash = true;
  if (!clash) return {p.labels(), q.labels()};
  std::pair<std::vector<std::string>, std::vector<std::string>> out;
  for (const auto& l : p.labels()) out.first.push_back("L." + l);
  for (const auto& l : q.labels()) out.second.push_back("R." + l);
  return out;
}

namespace {

Poset glue_disjoint(const Poset& p, const Poset& q, bool p_below_q) {
  auto [lp, lq] = disjoint_labels(p, q);
  std::vector<std::string> labels = lp;
  labels.insert(labels.end(), lq.begin(), lq.end());
  const std::size_t n = p.size();
  std::vector<std::pair<Elem, Elem>> pairs;
  for (auto [a, b] : p.relations()) pairs.emplace_back(a, b);
  for (auto [a, b] : q.relations()) pairs.emplace_back(n + a, n + b);
  if (p_below_q)
    for (Elem a = 0; a < p.size(); ++a)
      for (Elem b = 0; b < q.size(); ++b) pairs.emplace_back(a, n + b);
  return Poset::from_index_pairs(std::move(labels), pairs);
}

}  // namespace

Poset ordinal_sum(const Poset& p, const Poset& q) { return glue_disjoint(p, q, true); }

Poset direct_sum(const Poset& p, const Poset& q) { return glue_disjoint(p, q, false); }

Poset opposite(const Poset& p) {
  std::vector<std::pair<Elem, Elem>> pairs;
  for (auto [a, b] : p.relations()) pairs.emplace_back(b, a);
  return Poset::from_index_pairs(p.labels(), pairs);
}

Poset product(const Poset& p, const Poset& q) {
  std::vector<std::string> labels;
  for (const auto& a : p.labels())
    for (const auto& b : q.labels()) labels.push_back("(" + a + "," + b + ")");
  const std::size_t m = q.size();
  std::vector<std::pair<Elem, Elem>> pairs;
  for (auto [a1, a2] : p.relations())
    for (auto [b1, b2] : q.relations()) pairs.emplace_back(a1 * m + b1, a2 * m + b2);
  return Poset::from_index_pairs(std::move(labels), pairs);
}

Poset induced(const Poset& p, const std::vector<Elem>& elements) {
  std::vector<std::string> labels;
  for (Elem e : elements) labels.push_back(p.label(e));
  std::vector<std::pair<Elem, Elem>> pairs;
  for (Elem i = 0; i < elements.size(); ++i)
    for (Elem j = 0; j < elements.size(); ++j)
      if (p.leq(elements[i], elements[j])) pairs.emplace_back(i, j);
  return Poset::from_index_pairs(std::move(labels), pairs);
}

namespace {

// Per-element invariants preserved by any order isomorphism.
using Signature = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t, std::size_t, std::size_t>;

std::vector<Signature> signatures(const Poset& p) {
  auto h = p.heights();
  auto hop = opposite(p).heights();
  auto hd = p.hasse();
  std::vector<std::size_t> up_covers(p.size(), 0), down_covers(p.size(), 0);
  for (auto [a, b] : hd.edges) {
    ++up_covers[a];
    ++down_covers[b];
  }
  std::vector<Signature> s;
  for (Elem e = 0; e < p.size(); ++e)
    s.emplace_back(h[e], hop[e], p.up_set(e).size(), p.down_set(e).size(), up_covers[e], down_covers[e]);
  return s;
}

bool extend(const Poset& p, const Poset& q, const std::vector<Elem>& order,
            const std::vector<std::vector<Elem>>& candidates, std::size_t depth, std::vector<Elem>& image,
            std::vector<char>& used) {
  if (depth == order.size()) return true;
  const Elem e = order[depth];
  for (Elem c : candidates[e]) {
    if (used[c]) continue;
    bool ok = true;
    for (std::size_t k = 0; k < depth && ok; ++k) {
      const Elem a = order[k];
      ok = p.leq(a, e) == q.leq(image[a], c) && p.leq(e, a) == q.leq(c, image[a]);
    }
    if (!ok) continue;
    image[e] = c;
    used[c] = 1;
    if (extend(p, q, order, candidates, depth + 1, image, used)) return true;
    used[c] = 0;
  }
  return false;
}

}  // namespace

std::optional<std::vector<Elem>> is_isomorphic(const Poset& p, const Poset& q, std::size_t limit) {
  if (p.size() > limit && q.size() > limit)
    throw SizeLimit("isomorphism search capped at " + std::to_string(limit) + " elements");
  if (p.size() != q.size()) return std::nullopt;
  if (p.relations().size() != q.relations().size()) return std::nullopt;
  auto sp = signatures(p);
  auto sq = signatures(q);
  {
    auto a = sp, b = sq;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }
  std::vector<std::vector<Elem>> candidates(p.size());
  for (Elem e = 0; e < p.size(); ++e)
    for (Elem c = 0; c < q.size(); ++c)
      if (sp[e] == sq[c]) candidates[e].push_back(c);
  // Prefer the identity assignment first so p vs p returns the identity.
  for (Elem e = 0; e < p.size(); ++e) {
    auto& cs = candidates[e];
    auto it = std::find(cs.begin(), cs.end(), e);
    if (it != cs.end()) std::rotate(cs.begin(), it, it + 1);
  }
  std::vector<Elem> order(p.size());
  std::iota(order.begin(), order.end(), Elem{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Elem a, Elem b) { return candidates[a].size() < candidates[b].size(); });
  std::vector<Elem> image(p.size(), 0);
  std::vector<char> used(q.size(), 0);
  if (!extend(p, q, order, candidates, 0, image, used)) return std::nullopt;
  return image;
}

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_dot(const Poset& p, const std::string& graph_name) {
  std::ostringstream os;
  os << "digraph " << dot_quote(graph_name) << " {\n";
  os << "  rankdir=TB;\n";
  for (const auto& l : p.labels()) os << "  " << dot_quote(l) << ";\n";
  auto h = p.heights();
  std::map<std::size_t, std::vector<Elem>> ranks;
  for (Elem e = 0; e < p.size(); ++e) ranks[h[e]].push_back(e);
  for (const auto& [rank, elems] : ranks) {
    os << "  { rank=same;";
    for (Elem e : elems) os << ' ' << dot_quote(p.label(e)) << ';';
    os << " }\n";
  }
  for (auto [a, b] : p.hasse().edges) os << "  " << dot_quote(p.label(a)) << " -> " << dot_quote(p.label(b)) << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace udeq
