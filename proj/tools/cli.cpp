#include "cli.hpp"

#include <cstdlib>
#include <functional>
#include <stdexcept>

#include "CLI11.hpp"
#include "io.hpp"
#include "spider/link_invariant.hpp"
#include "spider/periodicity.hpp"
#include "spider/rep_oracle.hpp"
#include "spider/sl3_clasp.hpp"
#include "spider/sl3_reduce.hpp"
#include "spider/sl3_webs.hpp"
#include "spider/sp4_clasp.hpp"
#include "spider/theta3j.hpp"
#include "spider/tl2.hpp"

namespace spider::cli {

namespace {

using io::json;

struct Config {
  std::string cache_dir;
  int max_weight = 8;
  int max_cable = 8;
  bool q_units = false;
};

// option storage for one invocation
struct Args {
  std::string file, pd, colors, nonseg, weight = "n0", sl3_triple, algebra = "sl3", weights, ideal = "sl3", gl, gbar, residue,
      suite = "all";
  bool trace = false, normalize = false, serial = false, verify = false;
  int a = 0, b = 0, n = 2, index = 6, exponent = 6, max = 4;
  long p = 2;
  std::vector<int> sl2, entry;
};

struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string poly_text(const LaurentPoly& p, const Config& c) { return p.str(c.q_units); }
std::string rat_text(const RatFunc& r, const Config& c) { return r.str(c.q_units); }

void print_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

rep::Algebra algebra_from(const std::string& s) {
  if (s == "sl3") return rep::Algebra::sl3;
  if (s == "sp4") return rep::Algebra::sp4;
  throw std::invalid_argument("algebra must be sl3 or sp4, got '" + s + "'");
}

// one line per checked family; failures are listed and make the command fail
struct Verifier {
  std::ostream& out;
  long failed = 0;
  void report(const std::string& what, const Report& r) {
    out << (r.ok() ? "ok   " : "FAIL ") << what << " (" << r.checked << " checks)\n";
    for (const std::string& f : r.failures) out << "     " << f << '\n';
    if (!r.ok()) ++failed;
  }
};

void suite_sl3_recurrences(Verifier& v, int max) {
  for (int n = 1; n <= std::max(max, 1); ++n) v.report("single recurrences n=" + std::to_string(n), sl3::verify_single_recurrences(n));
  for (int a = 1; a <= max; ++a)
    for (int b = 1; b <= max; ++b)
      v.report("non-segregated recurrences (" + std::to_string(a) + "," + std::to_string(b) + ")", sl3::verify_nonseg_recurrences(a, b));
}

void suite_sl3_clasps(Verifier& v, int max, const sl3::ClaspOptions& co) {
  for (int n = 1; n <= max; ++n)
    v.report("clasp axioms (" + std::to_string(n) + ",0)",
             sl3::verify_clasp_axioms(sl3::clasp(n, 0, co), std::string(static_cast<std::size_t>(n), '+')));
  for (int a = 1; a < max; ++a)
    for (int b = 1; a + b <= max; ++b) {
      Report r;
      r.expect(sl3::clasp(a, b, co) == sl3::clasp_by_double(a, b, co), "quadruple and double expansions differ");
      v.report("quadruple = double (" + std::to_string(a) + "," + std::to_string(b) + ")", r);
    }
}

void suite_sp4(Verifier& v, int max) {
  for (int n = 2; n <= max; ++n) {
    v.report("sp4 recurrences (" + std::to_string(n) + ",0)", sp4::verify_b2_recurrences_n0(n));
    v.report("sp4 recurrences (0," + std::to_string(n) + ")", sp4::verify_b2_recurrences_0n(n));
  }
}

void suite_tl2(Verifier& v, int max) {
  for (int n = 1; n <= max; ++n) {
    Report r;
    tl::Element p = tl::jw(n);
    r.expect(tl::tl_mult(p, p) == p, "not idempotent");
    for (int i = 1; i < n; ++i) {
      tl::Element u = tl::Element::of(tl::e(n, i));
      r.expect(tl::tl_mult(p, u).is_zero() && tl::tl_mult(u, p).is_zero(), "U-turn " + std::to_string(i) + " survives");
    }
    v.report("projector n=" + std::to_string(n), r);
  }
  Report t;
  int top = std::min(max, 3);
  for (int i = 0; i <= top; ++i)
    for (int j = 0; j <= top; ++j)
      for (int k = 0; k <= top; ++k)
        t.expect(tl::theta_sl2(i, j, k) == tl::theta_sl2_diagram(i, j, k),
                 "theta (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")");
  v.report("sl2 theta formula against diagrams", t);
}

sl3::ClaspOptions clasp_options(const Config& c) {
  sl3::ClaspOptions co;
  co.max_weight = c.max_weight;
  return co;
}

void add_eval_graph(CLI::App& app, Config& cfg, Args& x, std::ostream& out, std::function<void()>& action) {
  auto* cmd = app.add_subcommand("eval-graph", "evaluate a closed web or a cubic bipartite plane graph");
  cmd->add_option("file", x.file, "JSON web or graph")->required();
  cmd->add_flag("--trace", x.trace, "emit the reduction steps as JSON");
  cmd->callback([&, cmd] {
    (void)cmd;
    action = [&] {
      json j = io::parse_json(io::read_file(x.file));
      Web w = j.contains("boundary") ? io::web_from_json(j) : sl3::orient_graph(io::graph_from_json(j));
      if (w.num_boundary() != 0) throw std::invalid_argument("eval-graph needs a closed web");
      if (!x.trace) {
        out << poly_text(sl3::evaluate_closed(w), cfg) << '\n';
        return;
      }
      std::vector<sl3::TraceStep> steps;
      sl3::ReduceOptions ro;
      ro.parallel = false;
      ro.trace = &steps;
      WebSum r = sl3::reduce(WebSum::of(w), ro);
      RatFunc value = r.coeff(encode(empty_web()));
      json js = json::array();
      for (const auto& s : steps) js.push_back({{"rule", sl3::rule_name(s.rule)}, {"face", s.face}, {"depth", s.depth}, {"web", s.web}});
      print_json(out, {{"value", rat_text(value, cfg)}, {"trace", js}});
    };
  });
}

void add_eval_link(CLI::App& app, Config& cfg, Args& x, std::ostream& out, std::function<void()>& action) {
  auto* cmd = app.add_subcommand("eval-link", "colored sl3 invariant of a PD diagram");
  cmd->add_option("--pd", x.pd, "PD file")->required();
  cmd->add_option("--colors", x.colors, "a,b;a,b;... per component");
  cmd->add_flag("--normalize-writhe", x.normalize, "divide by the kink factor to the writhe");
  cmd->add_flag("--serial", x.serial, "use the serial state loop");
  cmd->callback([&] {
    action = [&] {
      link::LinkDiagram d = link::parse_pd(io::read_file(x.pd));
      if (!x.colors.empty()) {
        d.colors = link::parse_colors(x.colors);
        if (static_cast<int>(d.colors.size()) != d.num_components())
          throw std::invalid_argument("expected " + std::to_string(d.num_components()) + " colors");
      }
      link::G3Options o;
      o.max_cable = cfg.max_cable;
      o.clasp = clasp_options(cfg);
      LaurentPoly g = x.serial ? link::G3_reference(d, o) : link::G3(d, o);
      if (x.normalize) g = link::normalize_writhe(d, g);
      out << poly_text(g, cfg) << '\n';
    };
  });
}

void add_clasp_expand(CLI::App& app, Config& cfg, Args& x, std::ostream& out, std::function<void()>& action) {
  auto* cmd = app.add_subcommand("clasp-expand", "expansion of the sl3 clasp of weight (a,b)");
  cmd->add_option("--a", x.a)->required()->check(CLI::NonNegativeNumber);
  cmd->add_option("--b", x.b)->required()->check(CLI::NonNegativeNumber);
  cmd->add_option("--nonseg", x.nonseg, "target sign pattern");
  cmd->callback([&] {
    action = [&] {
      if (x.a + x.b == 0) throw std::invalid_argument("weight (0,0) has no clasp");
      WebSum c = sl3::clasp(x.a, x.b, clasp_options(cfg));
      std::string sig = sl3::segregated(x.a, x.b);
      if (!x.nonseg.empty()) {
        c = sl3::nonsegregate(c, x.nonseg);
        sig = x.nonseg;
      }
      print_json(out, {{"a", x.a}, {"b", x.b}, {"signature", sig}, {"terms", io::websum_to_json(c, cfg.q_units)}});
    };
  });
}

void add_sp4(CLI::App& app, Config& cfg, Args& x, std::ostream& out, std::function<void()>& action) {
  auto* cmd = app.add_subcommand("sp4-coeffs", "sp4 single-clasp coefficients");
  cmd->add_option("--weight", x.weight)->check(CLI::IsMember({"n0", "0n"}));
  cmd->add_option("--n", x.n)->required()->check(CLI::Range(2, 64));
  cmd->add_flag("--verify", x.verify);
  cmd->callback([&] {
    action = [&] {
      bool n0 = x.weight == "n0";
      sp4::CoeffTable t = n0 ? sp4::b2_coeffs_n0(x.n) : sp4::b2_coeffs_0n(x.n);
      json rows = json::array();
      for (const auto& [ij, val] : t.a) rows.push_back({{"i", ij.first}, {"j", ij.second}, {"value", rat_text(val, cfg)}});
      json j = {{"weight", x.weight}, {"n", x.n}, {"coefficients", rows}};
      bool failed = false;
      if (x.verify) {
        Report r = n0 ? sp4::verify_b2_recurrences_n0(x.n) : sp4::verify_b2_recurrences_0n(x.n);
        j["verified"] = r.ok();
        j["checks"] = r.checked;
        j["failures"] = r.failures;
        failed = !r.ok();
      }
      print_json(out, j);
      if (failed) throw VerificationFailure("sp4 recurrences failed");
    };
  });
}

void add_theta(CLI::App& app, Config& cfg, Args& x, std::ostream& out, std::function<void()>& action) {
  auto* cmd = app.add_subcommand("theta", "trihedron coefficients");
  auto* o3 = cmd->add_option("--sl3", x.sl3_triple, "a1,b1;a2,b2;a3,b3");
  auto* o2 = cmd->add_option("--sl2", x.sl2, "i j k")->expected(3);
  o3->excludes(o2);
  cmd->add_option("--entry", x.entry, "i j")->expected(2)->needs(o3);
  cmd->callback([&, o2, o3] {
    action = [&, o2, o3] {
      if (o2->count()) {
        out << rat_text(tl::theta_sl2(x.sl2[0], x.sl2[1], x.sl2[2]), cfg) << '\n';
        return;
      }
      if (!o3->count()) throw std::invalid_argument("theta needs --sl3 or --sl2");
      theta::Triple t = theta::parse_triple(x.sl3_triple);
      std::optional<theta::AdmissibleTriple> a = theta::admissible(t);
      json tj = json::array();
      for (const auto& w : t) tj.push_back({w.a, w.b});
      if (!a) {
        print_json(out, {{"triple", tj}, {"admissible", false}});
        return;
      }
      theta::ThetaOptions opt;
      opt.max_weight = cfg.max_weight;
      json j = {{"triple", tj},
                {"admissible", true},
                {"d", a->d},
                {"parameters", {{"k", a->k}, {"l", a->l}, {"m", a->m}, {"n", a->n}, {"o", a->o}, {"p", a->p}, {"q", a->q}}}};
      if (!x.entry.empty()) {
        j["entry"] = {x.entry[0], x.entry[1]};
        j["value"] = rat_text(theta::theta_entry(t, x.entry[0], x.entry[1], opt), cfg);
      } else {
        json m = json::array();
        for (const auto& row : theta::theta_matrix(t, opt)) {
          json r = json::array();
          for (const RatFunc& x : row) r.push_back(rat_text(x, cfg));
          m.push_back(r);
        }
        j["matrix"] = m;
      }
      print_json(out, j);
    };
  });
}

void add_inv_dim(CLI::App& app, Args& x, std::ostream& out, std::function<void()>& action) {
  auto* cmd = app.add_subcommand("inv-dim", "dimension of the invariant space of a tensor product");
  cmd->add_option("--algebra", x.algebra)->check(CLI::IsMember({"sl3", "sp4"}));
  cmd->add_option("--weights", x.weights, "a,b;a,b;...")->required();
  cmd->callback([&] {
    action = [&] { out << rep::inv_dim(algebra_from(x.algebra), link::parse_colors(x.weights)) << '\n'; };
  });
}

void add_period(CLI::App& app, Config& cfg, Args& x, std::ostream& out, std::function<void()>& action) {
  auto* cmd = app.add_subcommand("period-check", "periodicity congruence and power-residue tests");
  cmd->add_option("--p", x.p, "prime period");
  cmd->add_option("--ideal", x.ideal)->check(CLI::IsMember({"sl3", "sp4"}));
  auto* ogl = cmd->add_option("--gl", x.gl, "invariant of the link");
  auto* ogb = cmd->add_option("--gbar", x.gbar, "invariant of the factor link");
  auto* ores = cmd->add_option("--residue", x.residue, "decide whether this is an exponent-th power modulo (index, [3]^index - [3])");
  cmd->add_option("--index", x.index);
  cmd->add_option("--exponent", x.exponent);
  ogl->needs(ogb);
  ores->excludes(ogl);
  cmd->callback([&, ores] {
    action = [&, ores] {
      (void)cfg;
      if (ores->count()) {
        link::ResidueReport r = link::power_residue_mod_ideal(LaurentPoly::parse(x.residue), x.index, x.exponent);
        print_json(out, {{"index", x.index}, {"exponent", x.exponent}, {"status", link::solvability_name(r.status)}, {"reason", r.reason}});
        return;
      }
      if (x.gl.empty()) throw std::invalid_argument("period-check needs --gl and --gbar, or --residue");
      link::IdealKind k = x.ideal == "sl3" ? link::IdealKind::sl3 : link::IdealKind::sp4;
      bool c = link::period_check(LaurentPoly::parse(x.gl), LaurentPoly::parse(x.gbar), x.p, k);
      print_json(out, {{"p", x.p}, {"ideal", x.ideal}, {"congruent", c}});
    };
  });
}

void add_verify(CLI::App& app, Config& cfg, Args& x, std::ostream& out, std::function<void()>& action) {
  auto* cmd = app.add_subcommand("verify", "run recurrence and axiom suites");
  cmd->add_option("--suite", x.suite)->check(CLI::IsMember({"all", "sl3-recurrences", "sl3-clasps", "sp4-recurrences", "tl2"}));
  cmd->add_option("--max", x.max)->check(CLI::Range(1, 20));
  cmd->callback([&] {
    action = [&] {
      Verifier v{out};
      if (x.suite == "all" || x.suite == "sl3-recurrences") suite_sl3_recurrences(v, x.max);
      if (x.suite == "all" || x.suite == "sl3-clasps") suite_sl3_clasps(v, std::min(x.max, cfg.max_weight), clasp_options(cfg));
      if (x.suite == "all" || x.suite == "sp4-recurrences") suite_sp4(v, x.max);
      if (x.suite == "all" || x.suite == "tl2") suite_tl2(v, std::min(x.max, tl::kJwGuardrail));
      if (v.failed) throw VerificationFailure(std::to_string(v.failed) + " families failed");
    };
  });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact evaluation of sl3 and sp4 webs, clasps and link invariants"};
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--cache-dir", cfg.cache_dir, "clasp cache directory (overrides SPIDER_CACHE)");
  app.add_option("--max-weight", cfg.max_weight, "guardrail on clasp weight a+b")->check(CLI::PositiveNumber);
  app.add_option("--max-cable", cfg.max_cable, "guardrail on cable width per component")->check(CLI::PositiveNumber);
  app.add_flag("--q-units", cfg.q_units, "print q^(k/2) instead of v^k");

  Args args_store;
  std::function<void()> action;
  add_eval_graph(app, cfg, args_store, out, action);
  add_eval_link(app, cfg, args_store, out, action);
  add_clasp_expand(app, cfg, args_store, out, action);
  add_sp4(app, cfg, args_store, out, action);
  add_theta(app, cfg, args_store, out, action);
  add_inv_dim(app, args_store, out, action);
  add_period(app, cfg, args_store, out, action);
  add_verify(app, cfg, args_store, out, action);

  std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return input_error;
  }
  if (!cfg.cache_dir.empty()) setenv("SPIDER_CACHE", cfg.cache_dir.c_str(), 1);
  try {
    action();
  } catch (const VerificationFailure& e) {
    err << "verification failed: " << e.what() << '\n';
    return verification_failed;
  } catch (const sl3::GuardrailError& e) {
    err << "guardrail: " << e.what() << '\n';
    return guardrail;
  } catch (const std::length_error& e) {
    err << "guardrail: " << e.what() << '\n';
    return guardrail;
  } catch (const std::exception& e) {
    err << "input error: " << e.what() << '\n';
    return input_error;
  }
  return ok;
}

}  // namespace spider::cli
