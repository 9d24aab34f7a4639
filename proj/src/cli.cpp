#include "udeq/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>

#include "udeq/builtins.hpp"
#include "udeq/error.hpp"
#include "udeq/harness.hpp"
#include "udeq/io.hpp"

namespace udeq::cli {

namespace {

namespace b = builtins;
namespace fs = std::filesystem;

struct Config {
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::string field = "q";
  std::size_t max_dim = 3;
  std::vector<int> window{-2, 2};
  bool json = false;
  std::string dot_dir;
  unsigned jobs = 1;

  std::vector<std::string> files;
  std::string op, mode = "plus", gluing, tree, from, to, x, z, demo;
};

VerifyOptions options(const Config& c) {
  if (c.trials < 1) throw Error("--trials must be at least 1");
  if (c.window.size() != 2 || c.window[0] > c.window[1]) throw Error("--window needs lo,hi with lo <= hi");
  if (c.max_dim < 1) throw Error("--max-dim must be at least 1");
  VerifyOptions o;
  o.trials = c.trials;
  o.seed = c.seed;
  o.field = Field::parse(c.field);
  o.diagram.max_dim = c.max_dim;
  o.diagram.lo = c.window[0];
  o.diagram.hi = c.window[1];
  o.jobs = std::max(1u, c.jobs);
  return o;
}

void write_dot(const Config& c, const std::string& name, const Poset& p) {
  if (c.dot_dir.empty()) return;
  fs::create_directories(c.dot_dir);
  std::ofstream f(fs::path(c.dot_dir) / (name + ".dot"));
  if (!f) throw Error("cannot write " + c.dot_dir);
  f << to_dot(p, name);
}

GluingPtr load_gluing(const std::string& path) {
  return std::make_shared<const GluingData>(gluing_from_json(read_json_file(path)));
}

GluingPtr from_input(const b::GluingInput& in) {
  return std::make_shared<const GluingData>(GluingData::validate(in.x, in.y, in.yx));
}

std::size_t passed_trials(const EquivalenceCertificate& c) {
  std::size_t n = 0;
  for (const auto& t : c.trials) n += t.verdict();
  return n;
}

void summarize(std::ostream& out, const std::string& title, const EquivalenceCertificate& c) {
  std::size_t ok_checks = 0;
  for (const auto& s : c.checks) ok_checks += s.passed;
  out << title << ": " << (c.valid() ? "PASS" : "FAIL") << " (structural " << ok_checks << "/" << c.checks.size()
      << ", trials " << passed_trials(c) << "/" << c.trials.size() << ", field " << c.field << ")\n";
  for (const auto& t : c.trials)
    if (!t.verdict())
      out << "  trial " << t.index << " seed " << t.seed << ": eps-+ qis " << t.mp_qis << ", eps+- qis " << t.pm_qis
          << ", euler " << t.euler_ok << ", composite " << t.composite_ok << "\n";
}

// One verification unit: a title plus a JSON report and verdict.
struct Outcome {
  std::string title;
  json report;
  bool ok;
  std::function<void(std::ostream&)> text;
};

int emit(const Config& c, std::ostream& out, const std::vector<Outcome>& all) {
  bool ok = true;
  for (const auto& o : all) ok = ok && o.ok;
  if (c.json) {
    if (all.size() == 1) {
      out << all[0].report.dump(2) << "\n";
    } else {
      json j = json::object();
      for (const auto& o : all) j[o.title] = o.report;
      j["ok"] = ok;
      out << j.dump(2) << "\n";
    }
  } else {
    for (const auto& o : all) o.text(out);
  }
  return ok ? ExitCode::ok : ExitCode::failed;
}

Outcome theorem_outcome(const std::string& title, const GluingPtr& g, const Config& c) {
  auto cert = std::make_shared<EquivalenceCertificate>(verify_equivalence(g, options(c)));
  write_dot(c, title + "_plus", *cert->formulas.plus.poset);
  write_dot(c, title + "_minus", *cert->formulas.minus.poset);
  return {title, cert->to_json(), cert->valid(), [title, cert](std::ostream& o) { summarize(o, title, *cert); }};
}

Outcome two_chain_outcome(const Config& c) {
  auto rep = std::make_shared<TwoChainReport>(verify_two_chain(options(c)));
  return {"two-chain", rep->to_json(), rep->ok(), [rep](std::ostream& o) {
            std::size_t n = 0;
            for (const auto& t : rep->trials) n += t.verdict();
            o << "two-chain: " << (rep->ok() ? "PASS" : "FAIL") << " (structural " << (all_passed(rep->checks) ? "ok" : "failed")
              << ", trials " << n << "/" << rep->trials.size() << ", field " << rep->field << ")\n";
            for (const auto& s : rep->checks)
              if (!s.passed) o << "  " << s.name << ": " << s.detail << "\n";
          }};
}

Outcome bgp_outcome(const std::string& title, const std::vector<std::string>& vertices,
                    const std::vector<std::pair<std::string, std::string>>& from,
                    const std::vector<std::pair<std::string, std::string>>& to, const Config& c) {
  auto rep = std::make_shared<BgpReport>(verify_bgp_path(vertices, from, to, options(c)));
  return {title, rep->to_json(), rep->ok(), [title, rep](std::ostream& o) {
            o << title << ": " << (rep->ok() ? "PASS" : "FAIL") << " (" << rep->steps.size() << " reflections)\n";
            for (const auto& s : rep->steps) {
              o << "  reflect at " << s.vertex << (s.source_to_sink ? " (source)" : " (sink)") << ": orders "
                << (s.orders_match ? "match" : "differ") << ", ";
              summarize(o, "equivalence", s.certificate);
            }
          }};
}

Outcome x1z_outcome(const std::string& title, const Poset& x, const Poset& z, const Config& c) {
  auto rep = std::make_shared<X1ZReport>(verify_x1z(x, z, options(c)));
  return {title, rep->to_json(), rep->ok(), [title, rep](std::ostream& o) {
            o << title << ": plus shape " << (rep->plus_shape ? "ok" : "wrong") << ", minus shape "
              << (rep->minus_shape ? "ok" : "wrong") << "\n  ";
            summarize(o, "equivalence", rep->certificate);
          }};
}

const std::vector<std::pair<std::string, std::string>>& orientation(const TreeSpec& t, const std::string& name) {
  auto it = t.orientations.find(name);
  if (it == t.orientations.end()) throw UnknownElement("orientation " + name);
  return it->second;
}

int cmd_poset(const Config& c, std::ostream& out, const std::string& sub) {
  if (sub == "check") {
    for (const auto& f : c.files) {
      auto p = poset_from_json(read_json_file(f));
      out << "OK: " << f << " (" << p.size() << " elements, " << p.hasse().edges.size() << " covering relations)\n";
    }
    return ExitCode::ok;
  }
  if (sub == "hasse") {
    auto p = poset_from_json(read_json_file(c.files.at(0)));
    out << to_dot(p);
    write_dot(c, "hasse", p);
    return ExitCode::ok;
  }
  if (sub == "iso") {
    if (c.files.size() != 2) throw Error("iso needs two poset files");
    auto p = poset_from_json(read_json_file(c.files[0]));
    auto q = poset_from_json(read_json_file(c.files[1]));
    auto m = is_isomorphic(p, q);
    if (!m) {
      out << "none\n";
    } else {
      for (Elem e = 0; e < p.size(); ++e) out << p.label(e) << " -> " << q.label((*m)[e]) << "\n";
    }
    return ExitCode::ok;
  }
  // op
  std::vector<Poset> ps;
  for (const auto& f : c.files) ps.push_back(poset_from_json(read_json_file(f)));
  const bool unary = c.op == "opposite";
  if (ps.size() != (unary ? 1u : 2u)) throw Error(c.op + " takes " + (unary ? "one poset" : "two posets"));
  Poset r;
  if (c.op == "ordinal-sum") r = ordinal_sum(ps[0], ps[1]);
  else if (c.op == "direct-sum") r = direct_sum(ps[0], ps[1]);
  else if (c.op == "product") r = product(ps[0], ps[1]);
  else r = opposite(ps[0]);
  out << to_json(r).dump(2) << "\n";
  write_dot(c, c.op, r);
  return ExitCode::ok;
}

int cmd_glue(const Config& c, std::ostream& out, const std::string& sub) {
  auto g = load_gluing(c.files.at(0));
  if (sub == "validate") {
    out << "OK: |X| = " << g->X().size() << ", |Y| = " << g->Y().size() << "\n";
    return ExitCode::ok;
  }
  auto o = build_order(g, c.mode == "plus" ? Sign::plus : Sign::minus);
  out << to_json(*o.poset).dump(2) << "\n";
  write_dot(c, c.mode, *o.poset);
  return ExitCode::ok;
}

int cmd_verify(const Config& c, std::ostream& out, const std::string& sub) {
  if (sub == "two-chain") return emit(c, out, {two_chain_outcome(c)});
  if (sub == "theorem") return emit(c, out, {theorem_outcome("theorem", load_gluing(c.gluing), c)});
  if (sub == "bgp") {
    auto t = tree_from_json(read_json_file(c.tree));
    return emit(c, out, {bgp_outcome("bgp", t.vertices, orientation(t, c.from), orientation(t, c.to), c)});
  }
  auto x = poset_from_json(read_json_file(c.x));
  auto z = poset_from_json(read_json_file(c.z));
  return emit(c, out, {x1z_outcome("x1z", x, z, c)});
}

int cmd_demo(const Config& c, std::ostream& out, std::ostream& err) {
  if (c.demo == "figure1") {
    std::vector<Outcome> all;
    for (auto [i, j] : b::figure1_pairs()) {
      auto g = from_input(b::figure1_gluing(i, j));
      const std::string t = "fig1_" + std::to_string(i) + std::to_string(j);
      bool shapes = is_isomorphic(*build_plus(g).poset, b::figure1_poset(i)).has_value() &&
                    is_isomorphic(*build_minus(g).poset, b::figure1_poset(j)).has_value();
      auto o = theorem_outcome(t, g, c);
      o.ok = o.ok && shapes;
      o.report["shapes_match"] = shapes;
      auto text = o.text;
      o.text = [=](std::ostream& s) {
        s << t << ": plus ~ X" << i << ", minus ~ X" << j << ": " << (shapes ? "yes" : "no") << "\n";
        text(s);
      };
      all.push_back(std::move(o));
    }
    return emit(c, out, all);
  }
  if (c.demo == "counterexample") {
    auto in = b::counterexample();
    from_input(in);
    err << "counterexample was accepted\n";
    return ExitCode::failed;
  }
  if (c.demo == "two-chain") return emit(c, out, {two_chain_outcome(c)});
  if (c.demo == "bgp-star") {
    std::vector<std::string> v{"c", "1", "2", "3"};
    return emit(c, out,
                {bgp_outcome("bgp-star", v, {{"c", "1"}, {"c", "2"}, {"c", "3"}}, {{"1", "c"}, {"2", "c"}, {"3", "c"}}, c)});
  }
  if (c.demo == "x1z") {
    auto x = Poset::from_generators({"a", "b", "c"}, {{"a", "b"}});
    auto z = Poset::chain({"p", "q"});
    return emit(c, out, {x1z_outcome("x1z", x, z, c)});
  }
  throw Error("unknown demo " + c.demo);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Glued poset orders and their derived equivalences", "udeq"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--trials", c.trials, "random diagrams per check")->capture_default_str();
  app.add_option("--seed", c.seed, "base seed")->capture_default_str();
  app.add_option("--field", c.field, "q or p:<prime>")->capture_default_str();
  app.add_option("--max-dim", c.max_dim, "largest stalk dimension")->capture_default_str();
  app.add_option("--window", c.window, "degree window lo,hi")->delimiter(',')->expected(2);
  app.add_flag("--json", c.json, "JSON report");
  app.add_option("--dot", c.dot_dir, "directory for DOT drawings");
  app.add_option("--jobs", c.jobs, "worker threads")->capture_default_str();

  auto* poset = app.add_subcommand("poset", "poset utilities")->require_subcommand(1);
  auto* p_check = poset->add_subcommand("check", "validate poset files");
  p_check->add_option("files", c.files)->required();
  auto* p_hasse = poset->add_subcommand("hasse", "Hasse diagram as DOT");
  p_hasse->add_option("file", c.files)->required()->expected(1);
  auto* p_op = poset->add_subcommand("op", "poset constructions");
  p_op->add_option("op", c.op)->required()->check(CLI::IsMember({"ordinal-sum", "direct-sum", "product", "opposite"}));
  p_op->add_option("files", c.files)->required();
  auto* p_iso = poset->add_subcommand("iso", "find an isomorphism");
  p_iso->add_option("files", c.files)->required()->expected(2);

  auto* glue = app.add_subcommand("glue", "gluing data")->require_subcommand(1);
  auto* g_val = glue->add_subcommand("validate", "check the gluing conditions");
  g_val->add_option("file", c.files)->required()->expected(1);
  auto* g_build = glue->add_subcommand("build", "glued order as JSON");
  g_build->add_option("file", c.files)->required()->expected(1);
  g_build->add_option("--mode", c.mode)->check(CLI::IsMember({"plus", "minus"}))->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run a verification")->require_subcommand(1);
  auto* v_two = verify->add_subcommand("two-chain", "the two-element chain");
  auto* v_thm = verify->add_subcommand("theorem", "equivalence for a gluing");
  v_thm->add_option("--gluing", c.gluing)->required();
  auto* v_bgp = verify->add_subcommand("bgp", "reflections between tree orientations");
  v_bgp->add_option("--tree", c.tree)->required();
  v_bgp->add_option("--from", c.from)->required();
  v_bgp->add_option("--to", c.to)->required();
  auto* v_x1z = verify->add_subcommand("x1z", "X + 1 + Z against 1 + (X + Z)");
  v_x1z->add_option("--x", c.x)->required();
  v_x1z->add_option("--z", c.z)->required();

  auto* demo = app.add_subcommand("demo", "bundled examples");
  demo->add_option("name", c.demo)
      ->required()
      ->check(CLI::IsMember({"figure1", "counterexample", "two-chain", "bgp-star", "x1z"}));

  auto* formula = app.add_subcommand("formula", "formula files")->require_subcommand(1);
  auto* f_check = formula->add_subcommand("check", "check a formula file");
  f_check->add_option("file", c.files)->required()->expected(1);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ExitCode::ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ExitCode::ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return ExitCode::invalid;
  }

  try {
    if (poset->parsed()) {
      const char* sub = p_check->parsed() ? "check" : p_hasse->parsed() ? "hasse" : p_iso->parsed() ? "iso" : "op";
      return cmd_poset(c, out, sub);
    }
    if (glue->parsed()) return cmd_glue(c, out, g_val->parsed() ? "validate" : "build");
    if (verify->parsed()) {
      options(c);
      const char* sub = v_two->parsed() ? "two-chain" : v_thm->parsed() ? "theorem" : v_bgp->parsed() ? "bgp" : "x1z";
      (void)v_x1z;
      return cmd_verify(c, out, sub);
    }
    if (demo->parsed()) {
      options(c);
      return cmd_demo(c, out, err);
    }
    auto f = formula_from_json(read_json_file(c.files.at(0)));
    CheckReport r;
    if (auto* p = std::get_if<FormulaToPoint>(&f)) {
      r = check_formula(*p);
      if (r.ok()) out << "formula " << describe(p->xi) << "\nD = " << p->D.matrix() << "\n";
    } else if (auto* m = std::get_if<CMorphism>(&f)) {
      out << "morphism " << describe(m->source()) << " -> " << describe(m->target()) << "\n" << m->matrix() << "\n";
    } else {
      r = check_formula_diagram(std::get<Formula>(f));
      if (r.ok()) out << "formula diagram over " << std::get<Formula>(f).target()->size() << " elements\n";
    }
    for (const auto& v : r.violations) err << v << "\n";
    if (r.ok()) out << "OK\n";
    return r.ok() ? ExitCode::ok : ExitCode::invalid;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return ExitCode::parse_error;
  } catch (const CommutativityFailure& e) {
    err << "verification failed: " << e.what() << "\n";
    return ExitCode::failed;
  } catch (const NaturalityFailure& e) {
    err << "verification failed: " << e.what() << "\n";
    return ExitCode::failed;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return ExitCode::invalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return ExitCode::invalid;
  }
}

}  // namespace udeq::cli
