#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spider/planar_web.hpp"
#include "spider/qpoly.hpp"
#include "spider/report.hpp"

namespace spider::sl3 {

struct GuardrailError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Coefficient families: a_i is stored at (i,0), a_{i,j} at (i,j), a_k at (k,0).
struct CoeffTable {
  std::map<std::pair<int, int>, RatFunc> a;
  const RatFunc& at(int i, int j = 0) const;
  std::size_t size() const { return a.size(); }
};

// a_1 = 1, a_i = [n+1-i]/[n]
CoeffTable single_coeffs_n0(int n);
// a_{i,j} = [b-i+1][b+j+1]/([b][a+b+1]) for i = 1..b, j = 0..a
CoeffTable nonseg_coeffs(int a, int b);
// a_k = (-1)^k [a]![b]![a+b-k+1]!/([a-k]![b-k]![k]![a+b+1]!) for k = 0..min(a,b)
CoeffTable quad_coeffs(int a, int b);

// the n-1 linear equations from capping the single expansion of weight (n,0)
Report verify_single_recurrences(int n);
// the exceptional equation and the three families for weight (a,b)
Report verify_nonseg_recurrences(int a, int b);

struct ClaspOptions {
  int max_weight = 8;       // guardrail on a+b
  bool disk_cache = true;   // only used when SPIDER_CACHE is set
};

// Expansion of the segregated clasp on +^a -^b into non-elliptic webs.
// (n,0) by the single expansion, (0,n) by arrow reversal, mixed weights by
// the quadruple expansion.
WebSum clasp(int a, int b, const ClaspOptions& opt = {});
// Same clasp obtained by iterating the double-clasp expansion in b.
WebSum clasp_by_double(int a, int b, const ClaspOptions& opt = {});

// Webs D_1..D_n of the single expansion of weight (n,0); D_i is a chain of
// i-1 H's moving the last strand i-1 places to the left.
std::vector<Web> single_expansion_webs(int n);

// Basis of a single expansion with the clasp of the next lower weight on top.
// (n,0): the webs D_i. a,b >= 1: the non-elliptic webs of End(+^a -^b) with no
// Y or U-turn against the first a+b-1 upper points. `rank` is the dimension
// they span once clasped, over F_p at a fixed v.
struct BasisCount {
  long webs = 0;
  long rank = 0;
};
BasisCount single_expansion_count(int a, int b, const ClaspOptions& opt = {});

// Idempotency and annihilation by every Y or U-turn along both sides.
Report verify_clasp_axioms(const WebSum& c, const std::string& sig);

// Conjugate a segregated clasp by the H's that walk each - strand, leftmost
// first, to its place in `target`.
WebSum nonsegregate(const WebSum& c, const std::string& target);
// the H-web used by nonsegregate, lower side segregated, upper side target
Web nonsegregation_web(const std::string& target);

// Rank over F_p of WebSums read as vectors over their keys, with v set to `point`.
// Returns -1 when some coefficient has a vanishing denominator there.
long rank_mod_p(const std::vector<WebSum>& vectors, unsigned long p, unsigned long point);

void clear_clasp_cache();

}  // namespace spider::sl3
