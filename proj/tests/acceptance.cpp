// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "udeq/builtins.hpp"
#include "udeq/error.hpp"
#include "udeq/eval.hpp"
#include "udeq/harness.hpp"

using namespace udeq;
namespace b = udeq::builtins;

namespace {

using Clock = std::chrono::steady_clock;
using Edges = std::vector<std::pair<std::string, std::string>>;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int n, bool ok, const std::string& what) {
  std::cout << "criterion " << n << ": " << (ok ? "PASS" : "FAIL") << " - " << what << std::endl;
  if (!ok) ++failures;
}

VerifyOptions opts(std::size_t trials, std::uint64_t seed, const Field& f) {
  VerifyOptions o;
  o.trials = trials;
  o.seed = seed;
  o.field = f;
  o.diagram.max_dim = 3;
  o.diagram.lo = -2;
  o.diagram.hi = 2;
  o.jobs = 4;
  return o;
}

GluingPtr shared(GluingData g) { return std::make_shared<const GluingData>(std::move(g)); }

// Tables and verdicts of every trial, used to compare runs over two fields.
struct Fingerprint {
  std::vector<std::string> rows;
  void add(const EquivalenceCertificate& c) {
    for (const auto& t : c.trials) {
      std::ostringstream os;
      os << t.seed << " " << t.verdict();
      for (const auto* tab : {&t.k_shift, &t.rmrp, &t.l_shift, &t.rprm})
        for (const auto& h : *tab) {
          os << " |";
          for (auto [d, n] : h) os << " " << d << ":" << n;
        }
      rows.push_back(os.str());
    }
    rows.push_back(c.valid() ? "valid" : "invalid");
  }
  bool operator==(const Fingerprint& o) const { return rows == o.rows; }
};

// ---- criterion 4
struct TwoChainRun {
  bool ok;
  double secs;
  std::vector<std::string> rows;
};

TwoChainRun two_chain(const Field& f) {
  auto t0 = Clock::now();
  auto o = opts(100, 0, f);
  o.jobs = 1;
  auto rep = verify_two_chain(o);
  TwoChainRun r{rep.ok(), seconds_since(t0), {}};
  for (const auto& t : rep.trials) {
    std::ostringstream os;
    os << t.seed << " " << t.verdict();
    for (const auto* tab : {&t.k_shift, &t.cube})
      for (const auto& h : *tab)
        for (auto [d, n] : h) os << " " << d << ":" << n;
    r.rows.push_back(os.str());
  }
  return r;
}

// ---- criterion 5
struct TheoremRun {
  bool ok = true;
  bool shapes = true;
  std::size_t gluings = 0, checks = 0;
  std::set<std::string> categories;
  Fingerprint fp;
};

TheoremRun theorem_suite(const Field& f) {
  TheoremRun r;
  std::vector<GluingPtr> gs;
  for (auto [i, j] : b::figure1_pairs()) {
    auto in = b::figure1_gluing(i, j);
    auto g = shared(GluingData::validate(in.x, in.y, in.yx));
    r.shapes = r.shapes && is_isomorphic(*build_plus(g).poset, b::figure1_poset(i)).has_value() &&
               is_isomorphic(*build_minus(g).poset, b::figure1_poset(j)).has_value();
    gs.push_back(g);
  }
  for (std::uint64_t k = 0; k < 50; ++k) {
    Rng rng(Rng::derive(2024, k));
    gs.push_back(shared(random_gluing(rng, 8)));
  }
  for (std::size_t k = 0; k < gs.size(); ++k) {
    try {
      auto c = verify_equivalence(gs[k], opts(25, k, f));
      r.ok = r.ok && c.valid() && c.trials.size() == 25;
      r.checks += c.checks.size();
      for (const auto& s : c.checks) r.categories.insert(s.category);
      r.fp.add(c);
    } catch (const Error& e) {
      std::cout << "  gluing " << k << ": " << e.what() << "\n";
      r.ok = false;
      r.fp.rows.push_back(std::string("error ") + e.what());
    }
    ++r.gluings;
  }
  r.ok = r.ok && r.shapes;
  return r;
}

// ---- criterion 6
struct X1ZRun {
  bool ok = true;
  Fingerprint fp;
};

X1ZRun x1z_suite(const Field& f) {
  X1ZRun r;
  for (std::uint64_t k = 0; k < 20; ++k) {
    Rng rng(Rng::derive(6, k));
    auto x = random_poset(rng, 1 + rng.below(4), "x");
    auto z = random_poset(rng, 1 + rng.below(4), "z");
    auto rep = verify_x1z(x, z, opts(25, k, f));
    r.ok = r.ok && rep.ok();
    r.fp.add(rep.certificate);
    r.fp.rows.push_back(rep.plus_shape && rep.minus_shape ? "shapes" : "bad shapes");
  }
  return r;
}

// ---- criterion 7
std::vector<Edges> orientations(const Edges& base) {
  std::vector<Edges> out;
  for (unsigned bits = 0; bits < (1u << base.size()); ++bits) {
    Edges e = base;
    for (std::size_t i = 0; i < e.size(); ++i)
      if ((bits >> i) & 1) std::swap(e[i].first, e[i].second);
    out.push_back(e);
  }
  return out;
}

struct BgpRun {
  bool ok = true;
  std::size_t pairs = 0, steps = 0;
  Fingerprint fp;
};

BgpRun bgp_suite(const Field& f) {
  BgpRun r;
  const std::vector<std::pair<std::vector<std::string>, Edges>> trees{
      {{"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}}},
      {{"c", "1", "2", "3"}, {{"c", "1"}, {"c", "2"}, {"c", "3"}}}};
  std::uint64_t seed = 0;
  for (const auto& [v, base] : trees) {
    auto all = orientations(base);
    for (const auto& from : all)
      for (const auto& to : all) {
        auto rep = verify_bgp_path(v, from, to, opts(25, seed++, f));
        r.ok = r.ok && rep.ok();
        ++r.pairs;
        r.steps += rep.steps.size();
        for (const auto& s : rep.steps) {
          r.fp.add(s.certificate);
          r.fp.rows.push_back(s.vertex + (s.orders_match ? " match" : " differ"));
        }
      }
  }
  return r;
}

// ---- criterion 8
CObject random_object(Rng& rng, const PosetPtr& p) {
  std::vector<Term> t;
  const std::size_t n = 1 + rng.below(4);
  for (std::size_t i = 0; i < n; ++i) t.push_back({static_cast<Elem>(rng.below(p->size())), static_cast<int>(rng.uniform(-1, 1))});
  return CObject(p, std::move(t));
}

CMorphism random_morphism(Rng& rng, const CObject& s, const CObject& t) {
  IntMatrix m(t.size(), s.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) m(i, j) = rng.uniform(-2, 2);
  return CMorphism(s, t, m);
}

struct Instance {
  GluingPtr g;
  TheoremFormulas t;
};

Instance random_instance(std::uint64_t k) {
  Rng rng(Rng::derive(88, k));
  auto g = shared(random_gluing(rng, 6));
  return {g, build_theorem_formulas(g)};
}

std::size_t functor_laws(std::string& detail) {
  std::size_t func = 0, nat = 0, ses = 0, qis = 0, bad = 0;
  const Field q = Field::rationals();
  for (std::uint64_t k = 0; k < 200; ++k) {
    Rng rng(Rng::derive(8, k));
    auto inst = random_instance(k);
    const PosetPtr& p = inst.t.plus.poset;
    const auto& xi = (k % 2) ? inst.t.xi_plus : inst.t.xi_minus;
    const PosetPtr& base = (k % 2) ? inst.t.plus.poset : inst.t.minus.poset;
    (void)p;

    // Composition: η_{ψφ}(K) = η_ψ(K) η_φ(K) for arbitrary morphisms of 𝒞.
    {
      auto a = random_object(rng, base), c = random_object(rng, base), d = random_object(rng, base);
      auto f = random_morphism(rng, a, c), g = random_morphism(rng, c, d);
      auto kd = random_diagram(base, rng);
      if (eval_cmorphism(compose(g, f), kd) == compose(eval_cmorphism(g, kd), eval_cmorphism(f, kd))) ++func;
      else ++bad;
    }
    // Naturality in K of every restriction of the formula, through a random map of diagrams.
    {
      auto gm = random_map(base, rng);
      bool ok = true;
      for (auto [a, c] : xi.target()->relations()) {
        auto m = xi.res_morphism(a, c);
        auto lhs = compose(eval_point_map(m.target, gm), eval_point_morphism(m, gm.source()));
        auto rhs = compose(eval_point_morphism(m, gm.target()), eval_point_map(m.source, gm));
        ok = ok && lhs == rhs;
      }
      ok ? ++nat : ++bad;
    }
    // Exactness.
    {
      auto [f, g] = random_ses(base, rng);
      auto ff = eval_formula_map(xi, f), fg = eval_formula_map(xi, g);
      bool ok = true;
      for (Elem e = 0; e < xi.target()->size(); ++e) ok = ok && is_short_exact(ff.at(e), fg.at(e), q);
      ok ? ++ses : ++bad;
    }
    // Quasi-isomorphisms.
    {
      auto f = random_qis(base, rng);
      is_quasi_iso_diagram(eval_formula_map(xi, f), q) ? ++qis : ++bad;
    }
  }
  detail = "composition " + std::to_string(func) + ", naturality " + std::to_string(nat) + ", exactness " +
           std::to_string(ses) + ", quasi-isomorphisms " + std::to_string(qis) + " of 200 each";
  return bad == 0 && func >= 200 && nat >= 200 && ses >= 200 && qis >= 200;
}

}  // namespace

int main() {
  const Field Q = Field::rationals(), F5 = Field::prime(5);

  // 1
  {
    auto in = b::counterexample();
    std::string witness;
    auto t0 = Clock::now();
    try {
      GluingData::validate(in.x, in.y, in.yx);
    } catch (const AntichainViolation& e) {
      witness = e.witness;
    }
    double ms = seconds_since(t0) * 1e3;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f ms", ms);
    report(1, witness == "4" && ms < 1.0, "counterexample rejected, witness '" + witness + "', " + buf);
  }

  // 2
  {
    auto r1 = check_homotopy(b::alpha1(), b::beta1(), b::h1(), b::xi212().D);
    auto r2 = check_homotopy(b::alpha2(), b::beta2(), b::h2(), b::xi121().D);
    bool ba = compose(b::beta1(), b::alpha1()).matrix() == IntMatrix{{1}} &&
              compose(b::beta2(), b::alpha2()).matrix() == IntMatrix{{1}};
    report(2, r1.ok() && r2.ok() && ba, "homotopy identities for (alpha1, beta1, h1) and (alpha2, beta2, h2)");
  }

  // 3
  {
    auto p = b::two_chain();
    auto s121 = substitute(b::xi12(), b::xi_minus());
    auto s212 = substitute(b::xi12(), b::xi_plus());
    auto c121 = compose(b::xi_plus(), b::xi_minus()).at(1);
    auto c212 = compose(b::xi_minus(), b::xi_plus()).at(0);
    bool ok = s121.xi == CObject(p, {{0, 2}, {1, 1}, {0, 1}}) &&
              s121.D.matrix() == IntMatrix{{1, 0, 0}, {-1, 1, 0}, {1, 0, 1}} &&
              s212.xi == CObject(p, {{1, 1}, {0, 1}, {1, 0}}) &&
              s212.D.matrix() == IntMatrix{{1, 0, 0}, {0, 1, 0}, {1, 1, 1}} && c121 == s121 && c212 == s212;
    report(3, ok, "substitution gives xi121 = " + describe(s121.xi) + " and xi212 = " + describe(s212.xi));
  }

  // 4
  auto tq = two_chain(Q);
  {
    char buf[96];
    std::snprintf(buf, sizeof buf, "100 two-chain trials over Q in %.2f s", tq.secs);
    report(4, tq.ok && tq.secs < 10.0, buf);
  }

  // 5
  auto thq = theorem_suite(Q);
  {
    std::size_t composites = 0;
    for (const auto& c : thq.categories) composites += c.find("composite") != std::string::npos;
    report(5, thq.ok, std::to_string(thq.gluings) + " gluings, 25 trials each, " + std::to_string(thq.checks) +
                          " structural checks in " + std::to_string(thq.categories.size()) + " categories (" +
                          std::to_string(composites) + " composite patterns), figure 1 shapes " +
                          (thq.shapes ? "match" : "differ"));
  }

  // 6
  auto xq = x1z_suite(Q);
  report(6, xq.ok, "20 random (X, Z) pairs");

  // 7
  auto bq = bgp_suite(Q);
  report(7, bq.ok, std::to_string(bq.pairs) + " orientation pairs, " + std::to_string(bq.steps) + " reflections");

  // 8
  {
    std::string detail;
    bool ok = false;
    try {
      ok = functor_laws(detail);
    } catch (const Error& e) {
      detail = e.what();
    }
    report(8, ok, detail);
  }

  // 9
  {
    auto tf = two_chain(F5);
    auto thf = theorem_suite(F5);
    auto xf = x1z_suite(F5);
    auto bf = bgp_suite(F5);
    bool same = tf.rows == tq.rows && thf.fp == thq.fp && xf.fp == xq.fp && bf.fp == bq.fp;
    report(9, same && tf.ok && thf.ok && xf.ok && bf.ok, "criteria 4-7 over F5 match the Q tables and verdicts");
  }

  return failures == 0 ? 0 : 1;
}
