#include <random>

#include "doctest.h"
#include "random_web.hpp"
#include "io.hpp"
#include "spider/sl3_reduce.hpp"
#include "spider/sl3_webs.hpp"

using namespace spider;
using namespace spider::sl3;

namespace {

PlaneGraph load_graph(const std::string& name) {
  return io::graph_from_json(io::parse_json(io::read_file(std::string(SPIDER_DATA_DIR) + "/graphs/" + name)));
}

LaurentPoly value_by_reduce(const Web& w, const ReduceOptions& opt) {
  RatFunc c = reduce(WebSum::of(w), opt).coeff(encode(empty_web()));
  REQUIRE(c.is_poly());
  return c.num();
}

}  // namespace

TEST_CASE("graph invariant of the theta and the prime web 6_1") {
  LaurentPoly two = qint(2), three = qint(3);
  PlaneGraph th = load_graph("theta.json");
  CHECK(graph_invariant(th) == -(two * three));
  PlaneGraph g = load_graph("prime_6_1.json");
  CHECK(g.num_vertices == 12);
  LaurentPoly expect = two.pow(4) * three + LaurentPoly(2) * two.pow(2) * three;
  CHECK(graph_invariant(g) == expect);
  // either bipartition class may be the sources
  CHECK(evaluate_closed(orient_graph(g, true)) == expect);
  g.circles = 1;
  CHECK(graph_invariant(g) == three * expect);
}

TEST_CASE("graph input is checked") {
  PlaneGraph k4;
  k4.num_vertices = 4;
  k4.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 3}, {3, 1}};
  k4.rot = {{0, 1, 2}, {0, 4, 3}, {1, 3, 4}, {2, 5, 4}};
  CHECK_THROWS(graph_invariant(k4));
  PlaneGraph path;
  path.num_vertices = 2;
  path.edges = {{0, 1}};
  path.rot = {{0}, {0}};
  CHECK_THROWS(graph_invariant(path));
}

TEST_CASE("confluence under randomized reduction orders") {
  std::mt19937_64 rng(777);
  int webs = 0, nontrivial = 0;
  for (int trial = 0; trial < 50; ++trial) {
    Web w = gen::random_closed_web(rng, 12);
    REQUIRE(w.num_boundary() == 0);
    CHECK(gen::trivalent(w) <= 12);
    clear_closed_cache();
    ReduceOptions fixed;
    fixed.parallel = false;
    LaurentPoly base = value_by_reduce(w, fixed);
    CHECK(evaluate_closed(w) == base);
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      ReduceOptions shuffled;
      shuffled.shuffle_seed = seed * 7919 + static_cast<std::uint64_t>(trial);
      CHECK_MESSAGE(value_by_reduce(w, shuffled) == base, "trial " << trial << " seed " << seed);
    }
    CHECK(reduce_reference(WebSum::of(w)).coeff(encode(empty_web())) == RatFunc(base));
    CHECK(evaluate_closed(reverse_arrows(w)) == base);
    CHECK(base == base.bar());
    ++webs;
    nontrivial += gen::trivalent(w) >= 6;
  }
  CHECK(webs == 50);
  CHECK(nontrivial >= 10);
}

TEST_CASE("web JSON round trip") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    Web w = gen::random_closed_web(rng, 12);
    std::string text = io::web_to_json(w).dump();
    Web back = io::web_from_json(io::parse_json(text));
    CHECK(io::web_to_json(back).dump() == text);
    CHECK(encode(back) == encode(w));
  }
  Web open = glue(place(h_mixed("-+"), "+", ""), place(h_mixed("-+"), "", "+"));
  CHECK(io::web_to_json(io::web_from_json(io::web_to_json(open))) == io::web_to_json(open));
  CHECK_THROWS(io::web_from_json(io::parse_json(R"({"boundary":[],"vertices":[{"kind":"source","halfedges":[0]}],"edges":[]})")));
  CHECK_THROWS(io::parse_json("{"));
}
