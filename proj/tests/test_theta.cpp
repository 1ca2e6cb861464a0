#include "doctest.h"
#include "spider/rep_oracle.hpp"
#include "spider/sl3_clasp.hpp"
#include "spider/sl3_reduce.hpp"
#include "spider/theta3j.hpp"

using namespace spider;
using namespace spider::theta;

namespace {

std::vector<Triple> small_triples(int max_edge) {
  std::vector<rep::Weight> ws;
  for (int a = 0; a <= max_edge; ++a)
    for (int b = 0; a + b <= max_edge; ++b) ws.push_back({a, b});
  std::vector<Triple> out;
  for (auto x : ws)
    for (auto y : ws)
      for (auto z : ws) out.push_back({x, y, z});
  return out;
}

Triple rotate(const Triple& t) { return {t[1], t[2], t[0]}; }

// determinant by Bareiss elimination over the rational functions
RatFunc det(std::vector<std::vector<RatFunc>> m) {
  std::size_t n = m.size();
  RatFunc sign(1), prev(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv][k].is_zero()) ++piv;
    if (piv == n) return RatFunc(0);
    if (piv != k) {
      std::swap(m[piv], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace

TEST_CASE("admissibility matches the invariant dimension") {
  long admissible_count = 0;
  for (const Triple& t : small_triples(3)) {
    long dim = rep::inv_dim(rep::Algebra::sl3, {t[0], t[1], t[2]});
    std::optional<AdmissibleTriple> a = admissible(t);
    CHECK((dim > 0) == a.has_value());
    if (!a) continue;
    ++admissible_count;
    CHECK(dim == a->d + 1);
    const Triple& w = a->normalized;
    int d = a->d;
    CHECK(d == std::min({w[0].a, w[0].b, w[1].a, w[1].b, w[2].a, w[2].b}));
    CHECK(w[0].a == d);
    CHECK(w[1].a == d + a->l + a->p);
    CHECK(w[2].a == d + a->n + a->q);
    CHECK(w[0].b == d + a->k + a->p);
    CHECK(w[1].b == d + a->m + a->q);
    CHECK(w[2].b == d + a->o);
    CHECK(a->k - a->n == a->m);
    CHECK(a->o - a->l == a->m);
  }
  CHECK(admissible_count > 100);

  auto y = admissible({rep::Weight{1, 0}, {1, 0}, {1, 0}});
  REQUIRE(y);
  CHECK(y->d == 0);
  CHECK(y->m == 1);
  CHECK_FALSE(admissible({rep::Weight{1, 0}, {0, 0}, {0, 0}}));
  auto ad = admissible({rep::Weight{1, 1}, {1, 1}, {1, 1}});
  REQUIRE(ad);
  CHECK(ad->d == 1);
  CHECK_THROWS(admissible({rep::Weight{-1, 0}, {0, 0}, {0, 0}}));
}

TEST_CASE("triangle of the hexagonal tiling") {
  for (int m = 1; m <= 4; ++m) {
    Web t = hex_triangle(m);
    CHECK(t.lower_signature() == std::string(static_cast<std::size_t>(3 * m), '-'));
    CHECK(t.num_vertices() == 3 * m + m * (m + 1) / 2 + m * (m - 1) / 2);
    CHECK(sl3::is_non_elliptic(t));
    CHECK(num_components(t) == 1);
  }
}

TEST_CASE("trihedron halves") {
  for (const Triple& t : small_triples(2)) {
    std::optional<AdmissibleTriple> a = admissible(t);
    if (!a) continue;
    for (int i = 0; i <= a->d; ++i) {
      Web h = trihedron_half(*a, i);
      CHECK(h.n_upper() == 0);
      CHECK(sl3::is_non_elliptic(h));
      for (int e = 0; e < 3; ++e) {
        std::string s = edge_signature(*a, e, i);
        const auto& w = a->normalized[static_cast<std::size_t>(e)];
        CHECK(std::count(s.begin(), s.end(), '+') == w.a);
        CHECK(std::count(s.begin(), s.end(), '-') == w.b);
      }
    }
  }
}

TEST_CASE("theta entries") {
  RatFunc y_theta = -(qr(2) * qr(3));
  CHECK(theta_entry({rep::Weight{1, 0}, {1, 0}, {1, 0}}, 0, 0) == y_theta);
  CHECK(theta_entry({rep::Weight{0, 1}, {0, 1}, {0, 1}}, 0, 0) == y_theta);
  CHECK(theta_matrix({rep::Weight{1, 0}, {1, 0}, {1, 0}}).size() == 1);
  // a single edge of weight (1,0) and its dual closes to a circle
  CHECK(theta_entry({rep::Weight{1, 0}, {0, 1}, {0, 0}}, 0, 0) == qr(3));
  CHECK_THROWS_AS(theta_entry({rep::Weight{1, 0}, {0, 0}, {0, 0}}, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(theta_entry({rep::Weight{1, 1}, {1, 1}, {1, 1}}, 0, 2), std::out_of_range);
  ThetaOptions small;
  small.max_weight = 1;
  CHECK_THROWS_AS(theta_entry({rep::Weight{1, 1}, {1, 1}, {1, 1}}, 0, 0, small), sl3::GuardrailError);
}

TEST_CASE("trihedron matrices: symmetry, bar invariance, rotation") {
  std::vector<Triple> cases = {
      {rep::Weight{1, 1}, {1, 1}, {1, 1}}, {rep::Weight{2, 0}, {2, 0}, {2, 0}}, {rep::Weight{1, 1}, {1, 0}, {0, 1}},
      {rep::Weight{2, 1}, {1, 1}, {0, 1}}, {rep::Weight{1, 1}, {2, 0}, {0, 2}}, {rep::Weight{1, 2}, {1, 2}, {1, 2}},
  };
  for (const Triple& t : cases) {
    CAPTURE(t[0].a);
    CAPTURE(t[0].b);
    CAPTURE(t[1].a);
    CAPTURE(t[1].b);
    std::optional<AdmissibleTriple> a = admissible(t);
    REQUIRE(a);
    auto m = theta_matrix(t);
    REQUIRE(m.size() == static_cast<std::size_t>(a->d + 1));
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j) {
        CHECK(m[i][j] == m[j][i]);
        CHECK(m[i][j] == m[i][j].bar());
        // denominators are palindromic; centred, they clear to a bar-invariant numerator
        const LaurentPoly& den = m[i][j].den();
        REQUIRE(den.hi() % 2 == 0);
        RatFunc cleared = m[i][j] * RatFunc(den.shift(-den.hi() / 2));
        REQUIRE(cleared.is_poly());
        CHECK(cleared.num() == cleared.num().bar());
      }
    // the clasped halves form a basis, so the pairing is nondegenerate
    CHECK_FALSE(det(m).is_zero());
    Triple r = t;
    for (int k = 0; k < 2; ++k) {
      r = rotate(r);
      CHECK(theta_matrix(r) == m);
    }
  }
}

TEST_CASE("rotation between distinct figure placements") {
  // both rotations put the minimum on the first a, so the figures differ
  Triple t{rep::Weight{0, 2}, {0, 3}, {1, 2}};
  std::optional<AdmissibleTriple> a = admissible(t), b = admissible(rotate(t));
  REQUIRE(a);
  REQUIRE(b);
  CHECK(a->rotation == 0);
  CHECK(b->rotation == 0);
  CHECK(theta_entry(t, 0, 0) == theta_entry(rotate(t), 0, 0));
  Triple u{rep::Weight{1, 1}, {1, 2}, {2, 1}};
  auto mu = theta_matrix(u), mr = theta_matrix(rotate(u)), mrr = theta_matrix(rotate(rotate(u)));
  REQUIRE(admissible(rotate(u))->rotation == 0);
  CHECK(mu == mr);
  CHECK(mu == mrr);
}
