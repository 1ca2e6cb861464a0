#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "io.hpp"
#include "spider/qpoly.hpp"

using namespace spider;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "spider");
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& rel) { return std::string(SPIDER_DATA_DIR) + "/" + rel; }

}  // namespace

TEST_CASE("clasp-expand emits re-readable JSON") {
  Result r = run({"clasp-expand", "--a", "2", "--b", "0"});
  REQUIRE(r.code == 0);
  io::json j = io::parse_json(r.out);
  REQUIRE(j["terms"].size() == 2);
  std::vector<RatFunc> coeffs;
  for (const auto& t : j["terms"]) coeffs.push_back(RatFunc::parse(t["coeff"].get<std::string>()));
  CHECK(std::count(coeffs.begin(), coeffs.end(), RatFunc(1)) == 1);
  CHECK(std::count(coeffs.begin(), coeffs.end(), qr(2).inv()) == 1);
  WebSum back = io::websum_from_json(j["terms"]);
  CHECK(io::websum_to_json(back).dump(2) == j["terms"].dump(2));
  CHECK(run({"clasp-expand", "--a", "2", "--b", "0"}).out == r.out);

  Result q = run({"--q-units", "clasp-expand", "--a", "1", "--b", "1", "--nonseg", "-+"});
  REQUIRE(q.code == 0);
  io::json jq = io::parse_json(q.out);
  CHECK(jq["signature"] == "-+");
  WebSum qb = io::websum_from_json(jq["terms"]);
  CHECK(io::websum_to_json(qb, true).dump() == jq["terms"].dump());
}

TEST_CASE("eval-graph") {
  Result r = run({"eval-graph", data("graphs/theta.json")});
  CHECK(r.code == 0);
  CHECK(r.out == "-v^3 - 2v - 2v^-1 - v^-3\n");
  Result six = run({"eval-graph", data("graphs/prime_6_1.json")});
  LaurentPoly two = qint(2), three = qint(3);
  CHECK(LaurentPoly::parse(six.out) == two.pow(4) * three + LaurentPoly(2) * two.pow(2) * three);
  Result t = run({"eval-graph", "--trace", data("graphs/theta.json")});
  REQUIRE(t.code == 0);
  io::json j = io::parse_json(t.out);
  CHECK(RatFunc::parse(j["value"].get<std::string>()) == -(qr(2) * qr(3)));
  CHECK_FALSE(j["trace"].empty());
  CHECK(run({"eval-graph", "--trace", data("graphs/theta.json")}).out == t.out);
}

TEST_CASE("eval-link and the remaining commands") {
  Result u = run({"eval-link", "--pd", data("links/unknot.pd")});
  CHECK(LaurentPoly::parse(u.out) == qint(3));
  Result t = run({"eval-link", "--pd", data("links/trefoil.pd"), "--normalize-writhe"});
  REQUIRE(t.code == 0);
  Result ts = run({"eval-link", "--pd", data("links/trefoil.pd"), "--normalize-writhe", "--serial"});
  CHECK(t.out == ts.out);
  Result h = run({"eval-link", "--pd", data("links/hopf.pd"), "--colors", "1,0;0,1"});
  CHECK(h.code == 0);
  CHECK(run({"eval-link", "--pd", data("links/hopf.pd"), "--colors", "1,0"}).code == cli::input_error);

  CHECK(run({"inv-dim", "--weights", "1,1;1,1;1,1"}).out == "2\n");
  CHECK(run({"inv-dim", "--algebra", "sp4", "--weights", "1,0;1,0"}).out == "1\n");

  Result th = run({"theta", "--sl3", "1,0;1,0;1,0", "--entry", "0", "0"});
  REQUIRE(th.code == 0);
  CHECK(RatFunc::parse(io::parse_json(th.out)["value"].get<std::string>()) == -(qr(2) * qr(3)));
  CHECK(io::parse_json(run({"theta", "--sl3", "1,0;0,0;0,0"}).out)["admissible"] == false);
  CHECK(RatFunc::parse(run({"theta", "--sl2", "1", "1", "1"}).out) == -(qr(4) * qr(3) / qr(2).pow(2)));

  Result sp = run({"sp4-coeffs", "--weight", "n0", "--n", "3", "--verify"});
  REQUIRE(sp.code == 0);
  CHECK(io::parse_json(sp.out)["verified"] == true);

  Result pc = run({"period-check", "--p", "3", "--gl", "v^2", "--gbar", "v^2"});
  REQUIRE(pc.code == 0);
  CHECK(io::parse_json(pc.out).contains("congruent"));
  LaurentPoly two = qint(2), three = qint(3);
  LaurentPoly c = two.pow(4) * three + LaurentPoly(2) * two.pow(2) * three;
  Result res = run({"period-check", "--residue", c.str(), "--index", "6", "--exponent", "6"});
  REQUIRE(res.code == 0);
  CHECK(io::parse_json(res.out)["status"] == "none");
}

TEST_CASE("verify suites and exit codes") {
  Result v = run({"verify", "--suite", "sl3-recurrences", "--max", "6"});
  CHECK(v.code == 0);
  CHECK(v.out.find("FAIL") == std::string::npos);
  CHECK(run({"verify", "--suite", "tl2", "--max", "2"}).code == 0);
  CHECK(run({"verify", "--suite", "sp4-recurrences", "--max", "4"}).code == 0);
  CHECK(run({"verify", "--suite", "sl3-clasps", "--max", "3"}).code == 0);

  CHECK(run({"frobnicate"}).code == cli::input_error);
  CHECK(run({}).code == cli::input_error);
  CHECK(run({"eval-graph", "/nonexistent.json"}).code == cli::input_error);
  CHECK(run({"eval-link", "--pd", data("graphs/theta.json")}).code == cli::input_error);
  CHECK(run({"--max-weight", "3", "clasp-expand", "--a", "4", "--b", "0"}).code == cli::guardrail);
  CHECK(run({"--max-cable", "1", "eval-link", "--pd", data("links/unknot.pd"), "--colors", "1,1"}).code == cli::guardrail);
  CHECK(run({"--max-weight", "2", "theta", "--sl3", "1,2;1,2;1,2"}).code == cli::guardrail);
  CHECK(run({"theta", "--sl3", "1,1;1,1;1,1", "--entry", "0", "5"}).code == cli::input_error);
  CHECK(run({"--help"}).code == 0);
}
