#include "udeq/io.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "udeq/builtins.hpp"
#include "udeq/error.hpp"

namespace udeq {

namespace {

template <class F>
auto guarded(const std::string& what, F f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(what + ": " + e.what());
  }
}

const json& need(const json& j, const char* key) {
  if (!j.is_object()) throw ParseError("expected an object with key '" + std::string(key) + "'");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError("missing key '" + std::string(key) + "'");
  return *it;
}

int degree_key(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw ParseError("degree key '" + s + "' is not an integer");
  return v;
}

std::map<int, IntMatrix> graded_matrices(const json& j, const std::function<std::pair<std::size_t, std::size_t>(int)>& shape) {
  std::map<int, IntMatrix> out;
  for (const auto& [k, v] : j.items()) {
    int d = degree_key(k);
    auto [r, c] = shape(d);
    out.emplace(d, matrix_from_json(v, r, c));
  }
  return out;
}

std::vector<Term> terms_from_json(const json& j, const Poset& p) {
  std::vector<Term> t;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) throw ParseError("terms are [element, degree] pairs");
    t.push_back({p.index_of(e[0].get<std::string>()), e[1].get<int>()});
  }
  return t;
}

}  // namespace

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_json(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

json to_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

IntMatrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols) {
  return guarded("matrix", [&] {
    if (!j.is_array()) throw ParseError("matrix must be an array of rows");
    if (j.size() != rows) throw ParseError("matrix has " + std::to_string(j.size()) + " rows, expected " + std::to_string(rows));
    IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      if (!j[r].is_array() || j[r].size() != cols)
        throw ParseError("matrix row " + std::to_string(r) + " should have " + std::to_string(cols) + " entries");
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = j[r][c].get<std::int64_t>();
    }
    return m;
  });
}

json to_json(const Poset& p) {
  json rel = json::array();
  for (auto [a, c] : p.hasse().edges) rel.push_back({p.label(a), p.label(c)});
  return {{"elements", p.labels()}, {"relations", rel}};
}

Poset poset_from_json(const json& j) {
  return guarded("poset", [&] {
    auto elems = need(j, "elements").get<std::vector<std::string>>();
    std::vector<std::pair<std::string, std::string>> rel;
    if (j.contains("relations"))
      for (const auto& r : j["relations"]) {
        if (!r.is_array() || r.size() != 2) throw ParseError("relations are [a, b] pairs");
        rel.emplace_back(r[0].get<std::string>(), r[1].get<std::string>());
      }
    return Poset::from_generators(elems, rel);
  });
}

GluingData gluing_from_json(const json& j) {
  return guarded("gluing", [&] {
    if (!j.is_object()) throw ParseError("gluing must be an object");
    if (j.contains("Y0")) {
      Poset y = poset_from_json(need(j, "Y"));
      auto y0 = j["Y0"].get<std::vector<std::string>>();
      return from_bgp(std::move(y), y0, j.value("star", std::string("*")));
    }
    Poset x = poset_from_json(need(j, "X"));
    Poset y = poset_from_json(need(j, "Y"));
    if (j.contains("f")) return from_function(std::move(x), std::move(y), j["f"].get<std::map<std::string, std::string>>());
    auto yx = need(j, "Yx").get<std::map<std::string, std::vector<std::string>>>();
    return GluingData::validate(std::move(x), std::move(y), yx);
  });
}

json to_json(const GluingData& g) {
  json yx = json::object();
  for (Elem x = 0; x < g.X().size(); ++x) {
    json ys = json::array();
    for (Elem y : g.Yx(x)) ys.push_back(g.Y().label(y));
    yx[g.X().label(x)] = ys;
  }
  return {{"X", to_json(g.X())}, {"Y", to_json(g.Y())}, {"Yx", yx}};
}

json to_json(const VectComplex& k) {
  json dims = json::object(), d = json::object();
  for (int i = k.lo(); i <= k.hi(); ++i) {
    dims[std::to_string(i)] = k.dim(i);
    if (i < k.hi()) d[std::to_string(i)] = to_json(k.d(i));
  }
  return {{"dims", dims}, {"d", d}};
}

VectComplex complex_from_json(const json& j) {
  return guarded("complex", [&] {
    std::map<int, std::size_t> dims;
    for (const auto& [k, v] : need(j, "dims").items()) {
      auto n = v.get<std::int64_t>();
      if (n < 0) throw ParseError("negative dimension");
      dims[degree_key(k)] = static_cast<std::size_t>(n);
    }
    auto dim = [&](int i) -> std::size_t {
      auto it = dims.find(i);
      return it == dims.end() ? 0 : it->second;
    };
    std::map<int, IntMatrix> d;
    if (j.contains("d"))
      d = graded_matrices(j["d"], [&](int i) { return std::make_pair(dim(i + 1), dim(i)); });
    return VectComplex(dims, d);
  });
}

json to_json(const PosetDiagram& k) {
  const Poset& p = *k.base();
  json stalks = json::object();
  for (Elem e = 0; e < p.size(); ++e) stalks[p.label(e)] = to_json(k.stalk(e));
  json maps = json::array();
  for (auto [a, c] : p.hasse().edges) {
    json f = json::object();
    for (const auto& [deg, m] : k.res(a, c).components()) f[std::to_string(deg)] = to_json(m);
    maps.push_back({{"from", p.label(a)}, {"to", p.label(c)}, {"f", f}});
  }
  return {{"poset", to_json(p)}, {"stalks", stalks}, {"maps", maps}};
}

PosetDiagram diagram_from_json(const json& j) {
  return guarded("diagram", [&] {
    auto base = share(poset_from_json(need(j, "poset")));
    std::vector<VectComplex> stalks(base->size());
    if (j.contains("stalks"))
      for (const auto& [l, c] : j["stalks"].items()) stalks[base->index_of(l)] = complex_from_json(c);
    std::map<std::pair<Elem, Elem>, ChainMap> res;
    if (j.contains("maps"))
      for (const auto& m : j["maps"]) {
        Elem a = base->index_of(need(m, "from").get<std::string>());
        Elem c = base->index_of(need(m, "to").get<std::string>());
        const auto& s = stalks[a];
        const auto& t = stalks[c];
        auto comps = graded_matrices(need(m, "f"), [&](int i) { return std::make_pair(t.dim(i), s.dim(i)); });
        res.emplace(std::make_pair(a, c), ChainMap(s, t, comps));
      }
    for (auto e : base->hasse().edges)
      if (!res.count(e)) res.emplace(e, ChainMap::zero(stalks[e.first], stalks[e.second]));
    return PosetDiagram::from_covers(base, stalks, res);
  });
}

TreeSpec tree_from_json(const json& j) {
  return guarded("tree", [&] {
    TreeSpec t;
    t.vertices = need(j, "vertices").get<std::vector<std::string>>();
    for (const auto& [name, edges] : need(j, "orientations").items()) {
      auto& out = t.orientations[name];
      for (const auto& e : edges) {
        if (!e.is_array() || e.size() != 2) throw ParseError("edges are [a, b] pairs");
        out.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
      }
    }
    return t;
  });
}

json to_json(const CObject& o) {
  json arr = json::array();
  for (const auto& t : o.entries()) arr.push_back({o.base()->label(t.x), t.deg});
  return arr;
}

json to_json(const FormulaToPoint& f) { return {{"xi", to_json(f.xi)}, {"D", to_json(f.D.matrix())}}; }

FormulaFile formula_from_json(const json& j) {
  return guarded("formula", [&]() -> FormulaFile {
    if (j.contains("builtin")) {
      namespace b = builtins;
      const auto name = j["builtin"].get<std::string>();
      if (name == "xi1") return b::xi1();
      if (name == "xi2") return b::xi2();
      if (name == "xi12") return b::xi12();
      if (name == "xi121") return b::xi121();
      if (name == "xi212") return b::xi212();
      if (name == "alpha1") return b::alpha1();
      if (name == "alpha2") return b::alpha2();
      if (name == "beta1") return b::beta1();
      if (name == "beta2") return b::beta2();
      if (name == "h" || name == "h1") return b::h1();
      if (name == "h2") return b::h2();
      if (name == "nu") return b::nu();
      throw ParseError("unknown builtin '" + name + "'");
    }
    auto base = share(poset_from_json(need(j, "poset")));
    if (j.contains("xi")) {
      CObject xi(base, terms_from_json(j["xi"], *base));
      return FormulaToPoint::make(xi, matrix_from_json(need(j, "D"), xi.size(), xi.size()), Strictness::strict);
    }
    CObject s(base, terms_from_json(need(j, "source"), *base));
    CObject t(base, terms_from_json(need(j, "target"), *base));
    return CMorphism(s, t, matrix_from_json(need(j, "matrix"), t.size(), s.size()), Strictness::strict);
  });
}

}  // namespace udeq
