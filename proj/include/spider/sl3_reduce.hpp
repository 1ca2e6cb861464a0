#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spider/planar_web.hpp"
#include "spider/qpoly.hpp"

namespace spider::sl3 {

enum class Rule { Loop, Closed, Bigon, Square };
const char* rule_name(Rule r);

struct TraceStep {
  Rule rule;
  int face;   // least canonical half-edge of the face, -1 for loops and closed parts
  int depth;  // rewrite round
  std::string web;
};

struct ReduceOptions {
  bool parallel = true;
  // when nonzero, elliptic faces are picked at random instead of lowest id first
  std::uint64_t shuffle_seed = 0;
  std::vector<TraceStep>* trace = nullptr;
};

// Rewrite every web to the non-elliptic basis: loops, then closed parts, then
// bigons (-[2]), then squares (sum of the two smoothings).
WebSum reduce(const WebSum& s, const ReduceOptions& opt = {});
// Plain depth-first recursion with fixed rule order; the testing reference.
WebSum reduce_reference(const WebSum& s);

bool is_non_elliptic(const Web& w);

// Scalar of a web with empty boundary; throws if a denominator survives.
LaurentPoly evaluate_closed(const Web& w, const ReduceOptions& opt = {});

// Cubic planar graph with a rotation system; orientation is not part of the input.
struct PlaneGraph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> rot;  // counterclockwise edge ids at each vertex
  int circles = 0;
};

// Orient from one bipartition class to the other; the class holding the
// least vertex of each component becomes the sources unless flipped.
Web orient_graph(const PlaneGraph& g, bool flip_classes = false);
LaurentPoly graph_invariant(const PlaneGraph& g, const ReduceOptions& opt = {});

void clear_closed_cache();

}  // namespace spider::sl3
