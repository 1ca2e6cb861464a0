#pragma once

#include <map>
#include <vector>

#include "spider/qpoly.hpp"

namespace spider::tl {

// Non-crossing perfect matching of 2n points: 0..n-1 bottom (left to right),
// n..2n-1 top (left to right). match[p] is the partner of p.
struct Chord {
  std::vector<int> match;
  int strands() const { return static_cast<int>(match.size()) / 2; }
  auto operator<=>(const Chord&) const = default;
};

Chord identity(int n);
// U-turn between strands i and i+1 (1-based, 1 <= i < n)
Chord e(int n, int i);
// x then y stacked above; returns the diagram and the number of closed loops
std::pair<Chord, int> compose(const Chord& x, const Chord& y);

struct Element {
  int n = 0;
  std::map<Chord, RatFunc> terms;
  static Element unit(int n);
  static Element of(const Chord& c, const RatFunc& coeff = RatFunc(1));
  void add(const Chord& c, const RatFunc& coeff);
  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const Element& a, const Element& b);
  Element& operator+=(const Element& o);
  Element scaled(const RatFunc& s) const;
  // place this element on the left n strands of an (n+extra)-strand algebra
  Element widen(int extra) const;
};

// product with loop value -[2]; x below y
Element tl_mult(const Element& x, const Element& y);

inline constexpr int kJwGuardrail = 8;
Element jw(int n, int guardrail = kJwGuardrail);
// coefficients [n+1-i]/[n], i = 1..n (index 0 unused)
std::vector<RatFunc> jw_single_coeffs(int n);
// f_n assembled from f_{n-1} and the single-expansion coefficients
Element jw_from_single(int n);

RatFunc theta_sl2(int i, int j, int k);
// projector-decorated theta network evaluated with loops = -[2]
RatFunc theta_sl2_diagram(int i, int j, int k);

}  // namespace spider::tl
