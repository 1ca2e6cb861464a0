#pragma once

#include <random>
#include <string>

#include "gen.hpp"
#include "spider/sl3_webs.hpp"

namespace gen {

using namespace spider;
using namespace spider::sl3;

// Random closed web: grow from the empty signature by cups, Y-splits and H's,
// then close with caps and Y-merges chosen at random.
inline spider::Web random_closed_web(std::mt19937_64& rng, int max_vertices) {
  Web w = empty_web();
  std::string sig;
  int verts = 0;
  auto apply = [&](const Web& g, int at, int width) {
    std::string left = sig.substr(0, static_cast<std::size_t>(at)), right = sig.substr(static_cast<std::size_t>(at + width));
    w = glue(place(g, left, right), w);
    sig = w.upper_signature();
  };
  int grow = uniform(rng, 2, 8);
  for (int step = 0; step < grow; ++step) {
    int n = static_cast<int>(sig.size());
    int move = uniform(rng, 0, 3);
    if (n == 0) move = 0;
    if (move == 0) {
      apply(cup(uniform(rng, 0, 1) ? "+-" : "-+"), uniform(rng, 0, n), 0);
    } else if (move == 1 && verts + 1 <= max_vertices - 1) {
      int at = uniform(rng, 0, n - 1);
      std::string one = sig.substr(static_cast<std::size_t>(at), 1);
      apply(y_split('+').lower_signature() == one ? y_split('+') : y_split('-'), at, 1);
      ++verts;
    } else if (move >= 2 && n >= 2 && verts + 2 <= max_vertices - 2) {
      int at = uniform(rng, 0, n - 2);
      std::string pair = sig.substr(static_cast<std::size_t>(at), 2);
      apply(pair[0] == pair[1] ? h_web(pair[0]) : h_mixed(pair), at, 2);
      verts += 2;
    }
  }
  while (!sig.empty()) {
    std::vector<int> spots;
    for (int i = 0; i + 1 < static_cast<int>(sig.size()); ++i) spots.push_back(i);
    int at = spots[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(spots.size()) - 1))];
    std::string pair = sig.substr(static_cast<std::size_t>(at), 2);
    if (pair[0] != pair[1])
      apply(cap(pair), at, 2);
    else
      apply(y_merge(pair[0]), at, 2);
  }
  return w;
}

inline int trivalent(const Web& w) {
  int n = 0;
  for (VKind k : w.kind) n += (k == VKind::Source || k == VKind::Sink);
  return n;
}

}  // namespace gen
