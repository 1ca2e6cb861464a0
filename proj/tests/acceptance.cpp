// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "io.hpp"
#include "random_web.hpp"
#include "spider/link_invariant.hpp"
#include "spider/periodicity.hpp"
#include "spider/rep_oracle.hpp"
#include "spider/sl3_clasp.hpp"
#include "spider/sl3_reduce.hpp"
#include "spider/sl3_webs.hpp"
#include "spider/sp4_clasp.hpp"
#include "spider/tl2.hpp"

using namespace spider;

namespace {

// Collects failed checks; the first few are echoed with the verdict.
struct Check {
  std::vector<std::string> failures;
  void operator()(bool cond, const std::string& what) {
    if (!cond) failures.push_back(what);
  }
  void report(const Report& r, const std::string& what) {
    if (!r.ok()) failures.push_back(what + ": " + r.failures.front());
  }
};

struct Criterion {
  int id;
  std::string title;
  double limit_s;  // 0 for no time bound
  std::function<void(Check&)> body;
};

std::vector<RatFunc> coeffs_of(const WebSum& s) {
  std::vector<RatFunc> v;
  for (const auto& [k, t] : s.terms) v.push_back(t.coeff);
  return v;
}

bool same_multiset(std::vector<RatFunc> got, const std::vector<RatFunc>& want) {
  if (got.size() != want.size()) return false;
  for (const RatFunc& w : want) {
    auto it = std::find(got.begin(), got.end(), w);
    if (it == got.end()) return false;
    got.erase(it);
  }
  return true;
}

std::string pair_str(int a, int b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

void example_expansions(Check& c) {
  for (auto [a, want] : {std::pair{2, std::vector<RatFunc>{RatFunc(1), qr(2).inv()}},
                         {3, std::vector<RatFunc>{RatFunc(1), qr(2) / qr(3), qr(2) / qr(3), qr(1) / qr(3), qr(1) / qr(3),
                                                  (qr(2) * qr(3)).inv()}}}) {
    std::ostringstream out, err;
    int code = cli::run({"spider", "clasp-expand", "--a", std::to_string(a), "--b", "0"}, out, err);
    c(code == 0, "clasp-expand exit code");
    if (code != 0) continue;
    WebSum s = io::websum_from_json(io::parse_json(out.str())["terms"]);
    c(same_multiset(coeffs_of(s), want), "coefficients of " + pair_str(a, 0));
  }
}

void clasp_axioms(Check& c) {
  for (int n = 1; n <= 5; ++n)
    c.report(sl3::verify_clasp_axioms(sl3::clasp(n, 0), std::string(static_cast<std::size_t>(n), '+')), pair_str(n, 0));
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; a + b <= 5; ++b) c(sl3::clasp(a, b) == sl3::clasp_by_double(a, b), "quadruple vs double " + pair_str(a, b));
}

void sl3_recurrences(Check& c) {
  for (int n = 1; n <= 20; ++n) c.report(sl3::verify_single_recurrences(n), "single n=" + std::to_string(n));
  for (int a = 1; a <= 6; ++a)
    for (int b = 1; b <= 6; ++b) c.report(sl3::verify_nonseg_recurrences(a, b), "nonseg " + pair_str(a, b));
}

void sp4_recurrences(Check& c) {
  using sp4::b2_coeffs_0n;
  using sp4::b2_coeffs_n0;
  for (int n = 2; n <= 8; ++n) {
    c.report(sp4::verify_b2_recurrences_n0(n), "n0 n=" + std::to_string(n));
    c.report(sp4::verify_b2_recurrences_0n(n), "0n n=" + std::to_string(n));
  }
  sp4::CoeffTable t = b2_coeffs_n0(2);
  c(t.at(0, 1).is_one(), "a01 = 1");
  c(t.at(0, 2) == qr(2).pow(-2), "a02 = 1/[2]^2");
  c(t.at(1, 2) == qr(4) * qr(3) / (qr(2).pow(2) * qr(6)), "a12 = [4][3]/([2]^2[6])");
  sp4::CoeffTable t3 = b2_coeffs_n0(3);
  auto a = [&](int i, int j) { return t3.at(i, j); };
  RatFunc s2 = qr(2).pow(2);
  c((a(0, 2) - s2 * a(0, 3)).is_zero(), "n=3 relation a02 = [2]^2 a03");
  c((a(1, 2) - s2 * a(1, 3)).is_zero(), "n=3 relation a12 = [2]^2 a13");
  c((a(0, 1) - s2 * a(0, 2) + s2 * a(0, 3)).is_zero(), "n=3 relation on a01");
  c((s2 * a(0, 3) - s2 * a(1, 3) + a(2, 3)).is_zero(), "n=3 relation on a23");
}

void graph_invariant(Check& c) {
  LaurentPoly two = qint(2), three = qint(3);
  c(sl3::evaluate_closed(sl3::circle()) == three, "circle");
  std::string dir = std::string(SPIDER_DATA_DIR) + "/graphs/";
  auto load = [&](const char* name) { return io::graph_from_json(io::parse_json(io::read_file(dir + name))); };
  c(sl3::graph_invariant(load("theta.json")) == -(two * three), "theta");
  c(sl3::graph_invariant(load("prime_6_1.json")) == two.pow(4) * three + LaurentPoly(2) * two.pow(2) * three, "6_1");
}

// writhe-normalized value of the closure of sigma^k on two strands, from the
// skein recursion a P(k) = a^-1 P(k-2) + z P(k-1), a = v^3, P(unknot) = [3]
LaurentPoly torus_skein(int k) {
  LaurentPoly ainv = LaurentPoly::var(-3), z = LaurentPoly::var(1) - LaurentPoly::var(-1);
  LaurentPoly p0 = qint(3) * qint(3), p1 = qint(3);
  if (k == 0) return p0;
  for (int i = 2; i <= k; ++i) {
    LaurentPoly p2 = ainv * (ainv * p0 + z * p1);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

std::vector<int> random_word(std::mt19937_64& rng, int strands, int len) {
  std::vector<int> w;
  for (int i = 0; i < len; ++i) {
    int g = gen::uniform(rng, 1, strands - 1);
    w.push_back(gen::uniform(rng, 0, 1) ? g : -g);
  }
  return w;
}

void link_invariant(Check& c) {
  using namespace spider::link;
  LaurentPoly z = LaurentPoly::var(1) - LaurentPoly::var(-1);
  c(G3(parse_pd("O")) == qint(3), "unknot");

  // every word of length <= 3 in sigma_1^{+-1}
  std::vector<std::vector<int>> words{{}};
  for (std::size_t i = 0; i < words.size(); ++i)
    if (words[i].size() < 3)
      for (int s : {1, -1}) {
        std::vector<int> w = words[i];
        w.push_back(s);
        words.push_back(w);
      }
  for (const auto& w : words) {
    LinkDiagram d = braid_closure(2, w);
    for (int x = 0; x < static_cast<int>(d.crossings.size()); ++x) {
      LinkDiagram lp = d.crossings[static_cast<std::size_t>(x)].sign > 0 ? d : switch_crossing(d, x);
      LinkDiagram lm = switch_crossing(lp, x), l0 = smooth_crossing(lp, x);
      LaurentPoly gp = G3(lp), gm = G3(lm), g0 = G3(l0);
      c(gp - gm == z * g0, "framed skein on a word of length " + std::to_string(w.size()));
      c(LaurentPoly::var(3) * normalize_writhe(lp, gp) - LaurentPoly::var(-3) * normalize_writhe(lm, gm) == z * normalize_writhe(l0, g0),
        "normalized skein on a word of length " + std::to_string(w.size()));
    }
  }

  LinkDiagram trefoil = parse_pd(io::read_file(std::string(SPIDER_DATA_DIR) + "/links/trefoil.pd"));
  c(normalize_writhe(trefoil, G3(trefoil)) == torus_skein(3), "trefoil against skein recursion");

  std::mt19937_64 rng(2024);
  int pairs = 0;
  for (int trial = 0; trial < 24; ++trial) {
    int strands = gen::uniform(rng, 3, 4);
    std::vector<int> w = random_word(rng, strands, gen::uniform(rng, 0, 3));
    auto pos = static_cast<long>(gen::uniform(rng, 0, static_cast<int>(w.size())));
    std::vector<int> before = w, after = w;
    if (trial % 2 == 0) {
      int s = gen::uniform(rng, 0, 1) ? 1 : -1, h = gen::uniform(rng, 1, strands - 1);
      after.insert(after.begin() + pos, {s * h, -s * h});
    } else {
      int g = gen::uniform(rng, 1, strands - 2);
      bool mixed = gen::uniform(rng, 0, 1);
      std::vector<int> lhs = mixed ? std::vector<int>{-g, g + 1, g} : std::vector<int>{g, g + 1, g};
      std::vector<int> rhs = mixed ? std::vector<int>{g + 1, g, -(g + 1)} : std::vector<int>{g + 1, g, g + 1};
      before.insert(before.begin() + pos, lhs.begin(), lhs.end());
      after.insert(after.begin() + pos, rhs.begin(), rhs.end());
    }
    c(G3(braid_closure(strands, before)) == G3(braid_closure(strands, after)), "Reidemeister pair " + std::to_string(trial));
    ++pairs;
  }
  c(pairs >= 20, "at least 20 Reidemeister pairs");
}

void confluence(Check& c) {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 50; ++trial) {
    Web w = gen::random_closed_web(rng, 12);
    sl3::clear_closed_cache();
    sl3::ReduceOptions fixed;
    fixed.parallel = false;
    RatFunc base = sl3::reduce(WebSum::of(w), fixed).coeff(encode(empty_web()));
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      sl3::ReduceOptions shuffled;
      shuffled.shuffle_seed = seed * 104729 + static_cast<std::uint64_t>(trial);
      c(sl3::reduce(WebSum::of(w), shuffled).coeff(encode(empty_web())) == base, "web " + std::to_string(trial));
    }
    c(sl3::reduce_reference(WebSum::of(w)).coeff(encode(empty_web())) == base, "reference order, web " + std::to_string(trial));
  }
}

void dimensions(Check& c) {
  using rep::Algebra;
  using rep::Weight;
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b) {
      if (a + b == 0) continue;
      long want;
      std::vector<Weight> fs;
      if (b == 0 || a == 0) {
        // (n,0): lambda1^n, lambda2, V((n-1) lambda2), and its dual for (0,n)
        int n = a + b;
        want = n;
        fs.assign(static_cast<std::size_t>(n), a ? Weight{1, 0} : Weight{0, 1});
        fs.push_back(a ? Weight{0, 1} : Weight{1, 0});
        fs.push_back(a ? Weight{0, n - 1} : Weight{n - 1, 0});
      } else {
        want = static_cast<long>(a + 1) * b;
        fs.assign(static_cast<std::size_t>(a + 1), Weight{1, 0});
        fs.insert(fs.end(), static_cast<std::size_t>(b), Weight{0, 1});
        fs.push_back({b - 1, a});
      }
      long oracle = rep::inv_dim(Algebra::sl3, fs);
      sl3::BasisCount bc = sl3::single_expansion_count(a, b);
      c(oracle == want, "inv_dim " + pair_str(a, b));
      c(bc.webs == oracle && bc.rank == oracle, "basis webs " + pair_str(a, b) + ": " + std::to_string(bc.webs) + " webs, rank " +
                                                    std::to_string(bc.rank) + ", oracle " + std::to_string(oracle));
    }
  for (int n = 1; n <= 6; ++n) {
    std::vector<Weight> f1(static_cast<std::size_t>(n + 1), Weight{1, 0}), f2(static_cast<std::size_t>(n + 1), Weight{0, 1});
    f1.push_back({n - 1, 0});
    f2.push_back({0, n - 1});
    c(rep::inv_dim(Algebra::sp4, f1) == n * (n + 1) / 2, "sp4 (n,0) n=" + std::to_string(n));
    c(rep::inv_dim(Algebra::sp4, f2) == n * (n + 1) / 2, "sp4 (0,n) n=" + std::to_string(n));
  }
}

void sl2_oracle(Check& c) {
  for (int n = 1; n <= 6; ++n) {
    tl::Element p = tl::jw(n);
    c(tl::tl_mult(p, p) == p, "jw idempotent n=" + std::to_string(n));
    for (int i = 1; i < n; ++i) {
      tl::Element u = tl::Element::of(tl::e(n, i));
      c(tl::tl_mult(p, u).is_zero() && tl::tl_mult(u, p).is_zero(), "jw annihilates e_" + std::to_string(i));
    }
  }
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= 3; ++j)
      for (int k = 0; k <= 3; ++k)
        c(tl::theta_sl2(i, j, k) == tl::theta_sl2_diagram(i, j, k), "theta " + std::to_string(i) + std::to_string(j) + std::to_string(k));
}

void ideal_arithmetic(Check& c) {
  using namespace spider::link;
  LinkDiagram trefoil = braid_closure(2, {1, 1, 1}), hopf = braid_closure(2, {1, 1}), fig8 = braid_closure(3, {1, -2, 1, -2});
  for (long p : {2L, 3L, 5L}) {
    IdealSpec ideal = make_ideal(IdealKind::sl3, p);
    c(ideal_member(qint(3).pow(static_cast<unsigned>(p)) - qint(3), ideal), "[3]^p - [3] in I_3, p=" + std::to_string(p));
    c(!ideal_member(LaurentPoly(1), ideal), "1 not in I_3, p=" + std::to_string(p));
    for (const LinkDiagram& base : {parse_pd("O"), hopf, trefoil, fig8}) {
      LinkDiagram all = base;
      for (long i = 1; i < p; ++i) all = disjoint_union(all, base);
      c(period_check(G3(all), G3(base), p, IdealKind::sl3), "copies of a link, p=" + std::to_string(p));
    }
  }
}

void sixth_root(Check& c) {
  using namespace spider::link;
  LaurentPoly value = qint(2).pow(4) * qint(3) + LaurentPoly(2) * qint(2).pow(2) * qint(3);
  ResidueReport r2 = power_residue_check(value, 2, 6, 6), r3 = power_residue_check(value, 3, 6, 6);
  ResidueReport all = power_residue_mod_ideal(value, 6, 6);
  c(r2.status != Solvability::undecided && r3.status != Solvability::undecided, "both primes decided");
  c(all.status == Solvability::none, std::string("mod I_6: ") + solvability_name(all.status) + " " + all.reason);
}

}  // namespace

int main() {
  unsetenv("SPIDER_CACHE");
  std::vector<Criterion> criteria{
      {1, "example clasp expansions (2,0) and (3,0)", 1, example_expansions},
      {2, "clasp axioms and quadruple/double agreement", 120, clasp_axioms},
      {3, "sl3 coefficient recurrences", 10, sl3_recurrences},
      {4, "sp4 coefficient recurrences and base values", 10, sp4_recurrences},
      {5, "graph invariant of circle, theta and 6_1", 30, graph_invariant},
      {6, "link invariant: unknot, skein identity, trefoil, Reidemeister II/III", 120, link_invariant},
      {7, "confluence on 50 random closed webs", 60, confluence},
      {8, "basis-web counts against rep-oracle dimensions", 0, dimensions},
      {9, "sl2 projectors and theta formula", 0, sl2_oracle},
      {10, "ideal arithmetic and period check on disjoint copies", 0, ideal_arithmetic},
      {11, "no sixth root of the 6_1 value modulo I_6", 0, sixth_root},
  };
  int failed = 0;
  for (const Criterion& cr : criteria) {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      cr.body(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cr.limit_s > 0 && secs > cr.limit_s) c.failures.push_back("over the " + std::to_string(static_cast<int>(cr.limit_s)) + " s budget");
    bool ok = c.failures.empty();
    failed += !ok;
    std::printf("criterion %2d: %s  %-68s %8.2f s\n", cr.id, ok ? "PASS" : "FAIL", cr.title.c_str(), secs);
    for (std::size_t i = 0; i < std::min<std::size_t>(c.failures.size(), 3); ++i) std::printf("    %s\n", c.failures[i].c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
