#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "spider/planar_web.hpp"
#include "spider/qpoly.hpp"
#include "spider/rep_oracle.hpp"

namespace spider::theta {

using Triple = std::array<rep::Weight, 3>;

// Parameters of the trihedron web. The figure needs the minimum d on a1, so the
// input is first moved there by a rotation of the three edges, optionally
// composed with reversing their cyclic order and dualizing every weight.
struct AdmissibleTriple {
  Triple input;
  Triple normalized;
  int rotation = 0;
  bool reversed = false;
  bool dual = false;
  int d = 0, k = 0, l = 0, m = 0, n = 0, o = 0, p = 0, q = 0;
};

std::optional<AdmissibleTriple> admissible(const Triple& t);

// "a1,b1;a2,b2;a3,b3"
Triple parse_triple(const std::string& text);

// Upper half of the trihedron for basis index i: a web from the concatenated
// edge signatures to the empty signature. Each edge reads, left to right, an
// outer arc block, the m strands of the hexagonal triangle, an inner arc block.
Web trihedron_half(const AdmissibleTriple& t, int i);
// signature of edge e (0,1,2) under the upper half with index i
std::string edge_signature(const AdmissibleTriple& t, int e, int i);
// triangular cut-out of the hexagonal tiling with m outgoing strands per side,
// boundary read counterclockwise from the apex: left side, base, right side
Web hex_triangle(int m);

struct ThetaOptions {
  int max_weight = 6;  // guardrail on a_e + b_e per edge
  bool parallel = true;
};

// entry (i,j): upper half i over the three clasps over the flipped upper half j
RatFunc theta_entry(const Triple& t, int i, int j, const ThetaOptions& opt = {});
std::vector<std::vector<RatFunc>> theta_matrix(const Triple& t, const ThetaOptions& opt = {});

}  // namespace spider::theta
