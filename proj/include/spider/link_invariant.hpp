#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spider/planar_web.hpp"
#include "spider/qpoly.hpp"
#include "spider/rep_oracle.hpp"
#include "spider/sl3_clasp.hpp"

namespace spider::link {

struct PdError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// X(a,b,c,d): arcs counterclockwise from the incoming under-strand, so the
// under-strand runs a -> c. The over-strand runs d -> b when sign = +1 and
// b -> d when sign = -1.
struct Crossing {
  std::array<int, 4> arcs{};
  int sign = 1;
};

struct LinkDiagram {
  std::vector<Crossing> crossings;
  int free_loops = 0;  // crossing-free unknots drawn apart from everything else
  // Components in canonical order: those through crossings first, ordered by
  // their first arc in crossing order, then the free loops. Filled by finalize().
  std::vector<std::vector<int>> components;  // arcs in order of travel
  std::vector<rep::Weight> colors;           // one per component, default (1,0)

  int num_components() const { return static_cast<int>(components.size()) + free_loops; }
};

// Checks arc pairing and orientation, then identifies components. Colors are
// reset to (1,0) unless they already match the component count.
void finalize(LinkDiagram& d);

// One X(a,b,c,d)+ or X(a,b,c,d)- per line, "O" for a free loop, '#' comments.
LinkDiagram parse_pd(std::string_view text);
std::string to_pd(const LinkDiagram& d);
// "a,b;a,b;..." in component order
std::vector<rep::Weight> parse_colors(std::string_view text);

int writhe(const LinkDiagram& d);
// component index of each crossing's under and over strand
std::array<int, 2> crossing_components(const LinkDiagram& d, int crossing);

// Closure of a braid on `strands` strands; letter +i is the generator crossing
// strands i and i+1 (1-based) with the left one over, -i its inverse.
LinkDiagram braid_closure(int strands, const std::vector<int>& word);
LinkDiagram disjoint_union(const LinkDiagram& x, const LinkDiagram& y);
LinkDiagram switch_crossing(const LinkDiagram& d, int crossing);
// oriented smoothing of one crossing
LinkDiagram smooth_crossing(const LinkDiagram& d, int crossing);
LinkDiagram mirror(const LinkDiagram& d);

// Local expansion of a crossing of two upward strands:
// v^sign * identity("++") + h_web('+').
WebSum expand_crossing(int sign);

struct G3Options {
  bool parallel = true;
  int max_cable = 8;            // guardrail on a_i + b_i per component
  long max_states = 1L << 22;   // guardrail on crossing states times clasp terms
  sl3::ClaspOptions clasp;
};

// Framed (blackboard) colored invariant, normalized so that the empty link is 1.
LaurentPoly G3(const LinkDiagram& d, const G3Options& opt = {});
// serial state loop; the testing reference
LaurentPoly G3_reference(const LinkDiagram& d, const G3Options& opt = {});

// trace of the clasp of weight (a,b)
LaurentPoly quantum_dimension(rep::Weight w);
// value of a positive curl relative to the straight strand, for vector colors
LaurentPoly kink_factor(rep::Weight w);
// framed value times kink^-writhe; every component must be vector-colored
LaurentPoly normalize_writhe(const LinkDiagram& d, const LaurentPoly& framed);

}  // namespace spider::link
