#include <algorithm>
#include <cstdlib>
#include <filesystem>

#include "doctest.h"
#include "spider/rep_oracle.hpp"
#include "spider/sl3_clasp.hpp"
#include "spider/sl3_reduce.hpp"
#include "spider/sl3_webs.hpp"

using namespace spider;
using namespace spider::sl3;

namespace {

std::vector<RatFunc> sorted_coeffs(const WebSum& s) {
  std::vector<RatFunc> v;
  for (const auto& [k, t] : s.terms) v.push_back(t.coeff);
  return v;
}

// multiset equality of exact coefficients
bool same_coeffs(std::vector<RatFunc> got, std::vector<RatFunc> want) {
  if (got.size() != want.size()) return false;
  for (const RatFunc& w : want) {
    auto it = std::find(got.begin(), got.end(), w);
    if (it == got.end()) return false;
    got.erase(it);
  }
  return true;
}

}  // namespace

TEST_CASE("single expansion coefficients") {
  CoeffTable t2 = single_coeffs_n0(2);
  CHECK(t2.at(1) == RatFunc(1));
  CHECK(t2.at(2) == qr(2).inv());
  CHECK(single_coeffs_n0(3).at(2) == qr(2) / qr(3));
  for (int n = 1; n <= 20; ++n) {
    CHECK(single_coeffs_n0(n).at(n) == qr(n).inv());
    CHECK(verify_single_recurrences(n).ok());
  }
  CHECK_THROWS(single_coeffs_n0(0));
}

TEST_CASE("non-segregated coefficients") {
  CHECK(nonseg_coeffs(1, 1).at(1, 0) == qr(2) / qr(3));
  for (int a = 1; a <= 6; ++a)
    for (int b = 1; b <= 6; ++b) {
      CHECK(nonseg_coeffs(a, b).at(1, a) == RatFunc(1));
      CHECK(nonseg_coeffs(a, b).size() == static_cast<std::size_t>((a + 1) * b));
      Report r = verify_nonseg_recurrences(a, b);
      CHECK_MESSAGE(r.ok(), (r.ok() ? "" : r.failures.front()));
    }
  CHECK_THROWS(nonseg_coeffs(0, 2));
}

TEST_CASE("quadruple coefficients") {
  CHECK(quad_coeffs(3, 2).at(0) == RatFunc(1));
  CHECK(quad_coeffs(1, 1).at(1) == -qr(3).inv());
  // [2]![1]![3]!/([1]![0]![1]![4]!) = [2]/[4]
  CHECK(quad_coeffs(2, 1).at(1) == -(qr(2) / qr(4)));
  CHECK(quad_coeffs(4, 0).size() == 1);
}

TEST_CASE("worked clasp expansions") {
  WebSum p1 = clasp(1, 0);
  CHECK(p1 == WebSum::of(identity_web("+")));
  WebSum p2 = clasp(2, 0);
  WebSum e2 = WebSum::of(identity_web("++"));
  e2.add(h_web('+'), qr(2).inv());
  CHECK(p2 == e2);
  WebSum p3 = clasp(3, 0);
  CHECK(same_coeffs(sorted_coeffs(p3), {RatFunc(1), qr(2) / qr(3), qr(2) / qr(3), qr(3).inv(), qr(3).inv(), (qr(2) * qr(3)).inv()}));
  for (const auto& [k, t] : p3.terms) CHECK(is_non_elliptic(t.web));
  CHECK(clasp(0, 3) == map_webs(p3, reverse_arrows));
  CHECK_THROWS_AS(clasp(5, 4), GuardrailError);
}

TEST_CASE("clasp axioms for (n,0)") {
  for (int n = 1; n <= 5; ++n) {
    Report r = verify_clasp_axioms(clasp(n, 0), std::string(static_cast<std::size_t>(n), '+'));
    CHECK_MESSAGE(r.ok(), "n=" << n << (r.ok() ? "" : ": " + r.failures.front()));
  }
  Report r = verify_clasp_axioms(clasp(0, 3), "---");
  CHECK(r.ok());
}

TEST_CASE("clasp axioms for mixed weights") {
  for (auto [a, b] : {std::pair{1, 1}, {2, 1}, {1, 2}, {2, 2}}) {
    std::string sig = segregated(a, b);
    Report r = verify_clasp_axioms(clasp(a, b), sig);
    CHECK_MESSAGE(r.ok(), a << "," << b << (r.ok() ? "" : ": " + r.failures.front()));
  }
}

TEST_CASE("quadruple and double constructions agree") {
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; a + b <= 5; ++b) {
      WebSum q = clasp(a, b), d = clasp_by_double(a, b);
      CHECK_MESSAGE(q == d, "(" << a << "," << b << ") sizes " << q.size() << " vs " << d.size());
    }
}

TEST_CASE("non-segregated clasps") {
  WebSum p = clasp(1, 1);
  CHECK(nonsegregate(p, "+-") == p);
  WebSum n = nonsegregate(p, "-+");
  Report r = verify_clasp_axioms(n, "-+");
  CHECK(r.ok());
  Web s = nonsegregation_web("-+-+-");
  CHECK(s.lower_signature() == "++---");
  CHECK(s.upper_signature() == "-+-+-");
  // three H's: the first - walks two places, the second one place
  CHECK(s.num_vertices() - s.num_boundary() == 6);
  WebSum n23 = nonsegregate(clasp(2, 3), "-+-+-");
  Report r23 = verify_clasp_axioms(n23, "-+-+-");
  CHECK_MESSAGE(r23.ok(), (r23.ok() ? "" : r23.failures.front()));
  CHECK_THROWS(nonsegregate(p, "++"));
}

TEST_CASE("single expansion webs span a space of the predicted dimension") {
  for (int n = 1; n <= 5; ++n) {
    std::vector<Web> ds = single_expansion_webs(n);
    REQUIRE(ds.size() == static_cast<std::size_t>(n));
    std::vector<WebSum> vecs;
    std::string sig(static_cast<std::size_t>(n), '+');
    WebSum top = tensor(clasp(n - 1, 0), WebSum::of(identity_web("+")));
    for (const Web& d : ds) {
      CHECK(is_non_elliptic(d));
      vecs.push_back(reduce(glue(top, WebSum::of(d), sig)));
    }
    long rk = rank_mod_p(vecs, 1000003, 7919);
    using rep::Weight;
    std::vector<Weight> fs(static_cast<std::size_t>(n), Weight{1, 0});
    fs.push_back(Weight{0, 1});
    fs.push_back(Weight{0, n - 1});
    CHECK(rk == rep::inv_dim(rep::Algebra::sl3, fs));
    CHECK(rk == n);
  }
}

TEST_CASE("single expansion basis counts for mixed weights") {
  for (auto [a, b] : {std::pair{1, 1}, {2, 1}, {1, 2}, {2, 2}, {3, 2}, {2, 3}, {0, 3}}) {
    BasisCount c = single_expansion_count(a, b);
    long want = b == 0 || a == 0 ? a + b : (a + 1) * b;
    CHECK(c.webs == want);
    CHECK(c.rank == want);
  }
}

TEST_CASE("disk cache round trip") {
  auto dir = std::filesystem::temp_directory_path() / "spider-cache-test";
  std::filesystem::remove_all(dir);
  setenv("SPIDER_CACHE", dir.c_str(), 1);
  clear_clasp_cache();
  WebSum first = clasp(3, 1);
  CHECK(std::filesystem::exists(dir / "clasp-sl3-v1-3-1.tsv"));
  clear_clasp_cache();
  WebSum again = clasp(3, 1);  // read back from disk
  CHECK(first == again);
  unsetenv("SPIDER_CACHE");
  std::filesystem::remove_all(dir);
  clear_clasp_cache();
}

TEST_CASE("decode inverts encode") {
  for (const auto& [k, t] : clasp(3, 1).terms) CHECK(encode(decode(k)) == k);
  CHECK_THROWS_AS(decode("1,0,2,0"), WebError);
}
