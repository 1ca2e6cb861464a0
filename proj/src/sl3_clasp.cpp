#include "spider/sl3_clasp.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "spider/sl3_reduce.hpp"
#include "spider/sl3_webs.hpp"

namespace spider::sl3 {

const RatFunc& CoeffTable::at(int i, int j) const {
  auto it = a.find({i, j});
  if (it == a.end()) throw std::out_of_range("coefficient index (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
  return it->second;
}

CoeffTable single_coeffs_n0(int n) {
  if (n < 1) throw std::invalid_argument("single expansion needs n >= 1");
  CoeffTable t;
  for (int i = 1; i <= n; ++i) t.a[{i, 0}] = qr(n + 1 - i) / qr(n);
  return t;
}

CoeffTable nonseg_coeffs(int a, int b) {
  if (a < 1 || b < 1) throw std::invalid_argument("non-segregated expansion needs a, b >= 1");
  CoeffTable t;
  RatFunc den = qr(b) * qr(a + b + 1);
  for (int i = 1; i <= b; ++i)
    for (int j = 0; j <= a; ++j) t.a[{i, j}] = qr(b - i + 1) * qr(b + j + 1) / den;
  return t;
}

CoeffTable quad_coeffs(int a, int b) {
  if (a < 0 || b < 0) throw std::invalid_argument("weights must be nonnegative");
  CoeffTable t;
  for (int k = 0; k <= std::min(a, b); ++k) {
    RatFunc c = qfr(a) * qfr(b) * qfr(a + b - k + 1) / (qfr(a - k) * qfr(b - k) * qfr(k) * qfr(a + b + 1));
    t.a[{k, 0}] = k % 2 ? -c : c;
  }
  return t;
}

Report verify_single_recurrences(int n) {
  Report r;
  if (n < 2) return r;
  CoeffTable t = single_coeffs_n0(n);
  auto a = [&](int i) { return t.at(i); };
  r.expect(a(n - 1) - qr(2) * a(n) == RatFunc(0), "n=" + std::to_string(n) + ": a_{n-1} - [2]a_n != 0");
  for (int i = 1; i <= n - 2; ++i)
    r.expect(a(i) - qr(2) * a(i + 1) + a(i + 2) == RatFunc(0),
             "n=" + std::to_string(n) + ": a_i - [2]a_{i+1} + a_{i+2} != 0 at i=" + std::to_string(i));
  return r;
}

Report verify_nonseg_recurrences(int a, int b) {
  Report r;
  CoeffTable t = nonseg_coeffs(a, b);
  auto c = [&](int i, int j) { return t.at(i, j); };
  std::string w = "(" + std::to_string(a) + "," + std::to_string(b) + ") ";
  r.expect(c(1, a) == RatFunc(1), w + "a_{1,a} != 1");
  RatFunc x = qr(b + 1) / qr(a + b + 1);
  for (int i = 1; i <= b; ++i)
    for (int j = 0; j <= a; ++j)
      r.expect(c(i, j) == qr(b - i + 1) * qr(b + j + 1) / (qr(b) * qr(b + 1)) * x,
               w + "lemma form fails at (" + std::to_string(i) + "," + std::to_string(j) + ")");
  if (b >= 2) {
    r.expect(qr(3) * c(1, 0) - qr(2) * c(1, 1) - qr(2) * c(2, 0) + c(2, 1) == RatFunc(0), w + "exceptional equation fails");
    for (int j = 0; j <= a; ++j)
      r.expect(c(b - 1, j) - qr(2) * c(b, j) == RatFunc(0), w + "type I fails at j=" + std::to_string(j));
  }
  for (int i = 1; i <= b - 2; ++i)
    for (int j = 0; j <= a; ++j)
      r.expect(c(i, j) - qr(2) * c(i + 1, j) + c(i + 2, j) == RatFunc(0),
               w + "type II fails at (" + std::to_string(i) + "," + std::to_string(j) + ")");
  for (int i = 1; i <= b; ++i)
    for (int j = 0; j <= a - 2; ++j)
      r.expect(c(i, j) - qr(2) * c(i, j + 1) + c(i, j + 2) == RatFunc(0),
               w + "type III fails at (" + std::to_string(i) + "," + std::to_string(j) + ")");
  return r;
}

namespace {

std::string plus(int n) { return std::string(static_cast<std::size_t>(n), '+'); }
std::string minus(int n) { return std::string(static_cast<std::size_t>(n), '-'); }

// ---------------------------------------------------------------- cache

constexpr const char* kEngineVersion = "v1";

std::mutex mem_mu;
std::map<std::pair<int, int>, WebSum>& mem_cache() {
  static std::map<std::pair<int, int>, WebSum> m;
  return m;
}

std::filesystem::path cache_file(int a, int b) {
  const char* dir = std::getenv("SPIDER_CACHE");
  if (!dir || !*dir) return {};
  return std::filesystem::path(dir) /
         ("clasp-sl3-" + std::string(kEngineVersion) + "-" + std::to_string(a) + "-" + std::to_string(b) + ".tsv");
}

bool load_disk(const std::filesystem::path& f, WebSum& out) {
  std::ifstream in(f);
  if (!in) return false;
  WebSum s;
  std::string line;
  try {
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto tab = line.find('\t');
      if (tab == std::string::npos) return false;
      s.add(decode(line.substr(0, tab)), RatFunc::parse(line.substr(tab + 1)));
    }
  } catch (const std::exception&) {
    return false;  // unreadable entries are recomputed
  }
  out = std::move(s);
  return true;
}

void store_disk(const std::filesystem::path& f, const WebSum& s) {
  std::error_code ec;
  std::filesystem::create_directories(f.parent_path(), ec);
  std::ostringstream tid;
  tid << std::this_thread::get_id();
  std::filesystem::path tmp = f;
  tmp += ".tmp." + tid.str() + "." + std::to_string(std::random_device{}());
  {
    std::ofstream out(tmp);
    if (!out) return;
    for (const auto& [k, t] : s.terms) out << k << '\t' << t.coeff.str() << '\n';
    if (!out) {
      std::filesystem::remove(tmp, ec);
      return;
    }
  }
  // readers only ever see complete files
  std::filesystem::rename(tmp, f, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

// ---------------------------------------------------------------- construction

WebSum reduced(const WebSum& s) { return reduce(s); }

WebSum build_n0(int n, const ClaspOptions& opt);

WebSum clasp_impl(int a, int b, const ClaspOptions& opt, bool via_double);

// product of the two sides of a tensor square (P_a (x) P_b), used around the middle webs
WebSum sandwich(const WebSum& outer, const Web& middle, const std::string& sig) {
  WebSum m = reduced(glue(WebSum::of(middle), outer, sig));
  return reduced(glue(outer, m, sig));
}

// innermost k +/- pairs closed from below: +^k -^k -> empty
Web nested_cap(int k) {
  Web w = cap("+-");
  for (int i = 2; i <= k; ++i) w = glue(w, place(cap("+-"), plus(i - 1), minus(i - 1)));
  return w;
}

// Each U_k factors through +^(a-k) -^(b-k) as cups over caps; the clasps are
// self-adjoint, so the upper half of every term is the flip of the lower half.
WebSum build_quad(int a, int b, const ClaspOptions& opt) {
  std::string sig = plus(a) + minus(b);
  WebSum outer = tensor(clasp_impl(a, 0, opt, false), clasp_impl(0, b, opt, false));
  CoeffTable t = quad_coeffs(a, b);
  WebSum out = outer;  // k = 0 term: P (x) P is already idempotent
  for (int k = 1; k <= std::min(a, b); ++k) {
    Web c = place(nested_cap(k), plus(a - k), minus(b - k));
    WebSum lower = reduced(glue(WebSum::of(c), outer, sig));
    WebSum upper = map_webs(lower, flip);
    out += reduced(glue(upper, lower, plus(a - k) + minus(b - k))).scaled(t.at(k));
  }
  return out;
}

// the last + walks right past the first b-1 - strands and closes with the last -
Web lower_half_x(int a, int b) {
  Web w = identity_web(plus(a) + minus(b));
  for (int k = 0; k < b - 1; ++k) w = glue(place(h_mixed("+-"), plus(a - 1) + minus(k), minus(b - k - 1)), w);
  return glue(place(cap("+-"), plus(a - 1) + minus(b - 1), ""), w);
}

WebSum build_double(int a, int b, const ClaspOptions& opt) {
  std::string sig = plus(a) + minus(b);
  WebSum prev = tensor(clasp_impl(a, b - 1, opt, true), WebSum::of(identity_web("-")));
  WebSum out = prev;
  if (b >= 2) {
    Web h = place(h_web('-'), plus(a) + minus(b - 2), "");
    out += sandwich(prev, h, sig).scaled(qr(b - 1) / qr(b));
  }
  if (a >= 1) {
    Web lo = lower_half_x(a, b);
    Web x = glue(flip(lo), lo);
    out += sandwich(prev, x, sig).scaled(-(qr(a) / (qr(b) * qr(a + b + 1))));
  }
  return out;
}

WebSum build_n0(int n, const ClaspOptions& opt) {
  WebSum top = tensor(clasp_impl(n - 1, 0, opt, false), WebSum::of(identity_web("+")));
  CoeffTable t = single_coeffs_n0(n);
  std::vector<Web> ds = single_expansion_webs(n);
  WebSum s;
  for (int i = 1; i <= n; ++i) s.add(ds[static_cast<std::size_t>(i - 1)], t.at(i));
  return reduced(glue(top, s, plus(n)));
}

WebSum clasp_impl(int a, int b, const ClaspOptions& opt, bool via_double) {
  if (a < 0 || b < 0) throw std::invalid_argument("clasp weights must be nonnegative");
  if (a + b > opt.max_weight)
    throw GuardrailError("clasp weight " + std::to_string(a + b) + " exceeds the guardrail " + std::to_string(opt.max_weight));
  if (a + b <= 1) return WebSum::of(identity_web(plus(a) + minus(b)));
  // both constructions agree, so only the quadruple one is cached for mixed weights
  bool cacheable = !(via_double && a > 0 && b > 0);
  if (cacheable) {
    std::lock_guard<std::mutex> lk(mem_mu);
    auto it = mem_cache().find({a, b});
    if (it != mem_cache().end()) return it->second;
  }
  std::filesystem::path f = cacheable && opt.disk_cache ? cache_file(a, b) : std::filesystem::path{};
  WebSum s;
  if (f.empty() || !load_disk(f, s)) {
    if (b == 0)
      s = build_n0(a, opt);
    else if (a == 0)
      s = map_webs(clasp_impl(b, 0, opt, false), reverse_arrows);
    else
      s = via_double ? build_double(a, b, opt) : build_quad(a, b, opt);
    if (!f.empty()) store_disk(f, s);
  }
  if (cacheable) {
    std::lock_guard<std::mutex> lk(mem_mu);
    mem_cache().emplace(std::make_pair(a, b), s);
  }
  return s;
}

}  // namespace

std::vector<Web> single_expansion_webs(int n) {
  if (n < 1) throw std::invalid_argument("single expansion needs n >= 1");
  std::vector<Web> ds;
  Web d = identity_web(plus(n));
  ds.push_back(d);
  // D_{i+1} puts one more H below D_i
  for (int i = 2; i <= n; ++i) {
    int k = n - i;  // H on 0-indexed strands k, k+1
    d = glue(d, place(h_web('+'), plus(k), plus(n - k - 2)));
    ds.push_back(d);
  }
  return ds;
}

WebSum clasp(int a, int b, const ClaspOptions& opt) { return clasp_impl(a, b, opt, false); }

WebSum clasp_by_double(int a, int b, const ClaspOptions& opt) {
  if (a > 0 && b > 0 && a + b <= opt.max_weight) return build_double(a, b, opt);
  return clasp_impl(a, b, opt, true);
}

void clear_clasp_cache() {
  std::lock_guard<std::mutex> lk(mem_mu);
  mem_cache().clear();
}

Report verify_clasp_axioms(const WebSum& c, const std::string& sig) {
  Report r;
  r.expect(reduce(glue(c, c, sig)) == c, "not idempotent");
  const int m = static_cast<int>(sig.size());
  for (int p = 0; p + 1 < m; ++p) {
    std::string l = sig.substr(0, static_cast<std::size_t>(p)), rr = sig.substr(static_cast<std::size_t>(p) + 2);
    char s0 = sig[static_cast<std::size_t>(p)], s1 = sig[static_cast<std::size_t>(p) + 1];
    Web top = s0 == s1 ? y_merge(s0) : cap(sig.substr(static_cast<std::size_t>(p), 2));
    Web bottom = s0 == s1 ? y_split(s0) : cup(sig.substr(static_cast<std::size_t>(p), 2));
    std::string what = s0 == s1 ? "Y" : "U-turn";
    r.expect(reduce(glue(WebSum::of(place(top, l, rr)), c, sig)).is_zero(),
             what + " on top at strands " + std::to_string(p) + "," + std::to_string(p + 1) + " survives");
    r.expect(reduce(glue(c, WebSum::of(place(bottom, l, rr)), sig)).is_zero(),
             what + " below at strands " + std::to_string(p) + "," + std::to_string(p + 1) + " survives");
  }
  return r;
}

Web nonsegregation_web(const std::string& target) {
  int a = 0, b = 0;
  for (char ch : target) {
    if (ch == '+')
      ++a;
    else if (ch == '-')
      ++b;
    else
      throw WebError(std::string("bad sign '") + ch + "' in target signature");
  }
  std::string cur = plus(a) + minus(b);
  Web w = identity_web(cur);
  int placed = 0;  // - strands already at their target
  for (int p = 0; p < a + b; ++p) {
    if (target[static_cast<std::size_t>(p)] != '-') continue;
    int from = a + placed;
    for (int q = from; q > p; --q) {
      // (+,-) at q-1,q becomes (-,+)
      w = glue(place(h_mixed("+-"), cur.substr(0, static_cast<std::size_t>(q - 1)), cur.substr(static_cast<std::size_t>(q) + 1)), w);
      std::swap(cur[static_cast<std::size_t>(q - 1)], cur[static_cast<std::size_t>(q)]);
    }
    ++placed;
  }
  return w;
}

WebSum nonsegregate(const WebSum& c, const std::string& target) {
  int a = 0, b = 0;
  for (char ch : target) (ch == '+' ? a : b) += 1;
  std::string seg = plus(a) + minus(b);
  for (const auto& [k, t] : c.terms)
    if (t.web.lower_signature() != seg || t.web.upper_signature() != seg)
      throw WebError("nonsegregate needs a clasp on " + seg);
  if (target == seg) return c;
  Web s = nonsegregation_web(target);
  WebSum up = reduce(glue(WebSum::of(s), c, seg));
  return reduce(glue(up, WebSum::of(flip(s)), seg));
}

namespace {

std::uint64_t mulmod(std::uint64_t x, std::uint64_t y, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * y % p);
}

std::uint64_t powmod(std::uint64_t x, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  for (x %= p; e; e >>= 1, x = mulmod(x, x, p))
    if (e & 1) r = mulmod(r, x, p);
  return r;
}

std::uint64_t eval_mod(const LaurentPoly& f, std::uint64_t p, std::uint64_t t) {
  ModPoly m = coeffs_mod_p(f, static_cast<std::int64_t>(p));
  if (m.is_zero()) return 0;
  std::uint64_t acc = 0;
  for (std::size_t i = m.c.size(); i-- > 0;) acc = (mulmod(acc, t, p) + static_cast<std::uint64_t>(m.c[i])) % p;
  std::uint64_t base = m.lo >= 0 ? powmod(t, static_cast<std::uint64_t>(m.lo), p) : powmod(powmod(t, p - 2, p), static_cast<std::uint64_t>(-m.lo), p);
  return mulmod(acc, base, p);
}

}  // namespace

long rank_mod_p(const std::vector<WebSum>& vectors, unsigned long p, unsigned long point) {
  std::map<std::string, std::size_t> col;
  for (const WebSum& s : vectors)
    for (const auto& [k, t] : s.terms) col.emplace(k, col.size());
  std::vector<std::vector<std::uint64_t>> m;
  for (const WebSum& s : vectors) {
    std::vector<std::uint64_t> row(col.size(), 0);
    for (const auto& [k, t] : s.terms) {
      std::uint64_t d = eval_mod(t.coeff.den(), p, point);
      if (d == 0) return -1;
      row[col[k]] = mulmod(eval_mod(t.coeff.num(), p, point), powmod(d, p - 2, p), p);
    }
    m.push_back(std::move(row));
  }
  long rank = 0;
  for (std::size_t c = 0; c < col.size() && rank < static_cast<long>(m.size()); ++c) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[static_cast<std::size_t>(rank)]);
    auto& pr = m[static_cast<std::size_t>(rank)];
    std::uint64_t inv = powmod(pr[c], p - 2, p);
    for (auto& x : pr) x = mulmod(x, inv, p);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == static_cast<std::size_t>(rank) || m[r][c] == 0) continue;
      std::uint64_t f = m[r][c];
      for (std::size_t j = 0; j < col.size(); ++j) m[r][j] = (m[r][j] + p - mulmod(f, pr[j], p)) % p;
    }
    ++rank;
  }
  return rank;
}

namespace {

// two adjacent upper points among the first m meet at a vertex or close a U-turn
bool capped_on_top(const Web& w, int m) {
  for (int p = 0; p + 1 < m; ++p) {
    int x = w.upper_vertex(p), y = w.upper_vertex(p + 1);
    int tx = w.he_twin[static_cast<std::size_t>(w.rot[static_cast<std::size_t>(x)][0])];
    int ty = w.he_twin[static_cast<std::size_t>(w.rot[static_cast<std::size_t>(y)][0])];
    if (w.he_vert[static_cast<std::size_t>(tx)] == y || w.he_vert[static_cast<std::size_t>(tx)] == w.he_vert[static_cast<std::size_t>(ty)]) return true;
  }
  return false;
}

constexpr unsigned long kRankPrime = 1000003, kRankPoint = 7919;

}  // namespace

BasisCount single_expansion_count(int a, int b, const ClaspOptions& opt) {
  if (a < 0 || b < 0 || a + b < 1) throw std::invalid_argument("single expansion needs a nonzero weight");
  if (a == 0) return single_expansion_count(b, 0, opt);
  std::string sig = plus(a) + minus(b);
  std::vector<WebSum> vecs;
  BasisCount c;
  if (b == 0) {
    WebSum top = tensor(clasp(a - 1, 0, opt), WebSum::of(identity_web("+")));
    for (const Web& d : single_expansion_webs(a)) vecs.push_back(reduce(glue(top, WebSum::of(d), sig)));
  } else {
    // the expansion of the clasp itself lists every basis web of End(+^a -^b)
    WebSum top = tensor(clasp(a, b - 1, opt), WebSum::of(identity_web("-")));
    for (const auto& [k, t] : clasp(a, b, opt).terms)
      if (!capped_on_top(t.web, a + b - 1)) vecs.push_back(reduce(glue(top, WebSum::of(t.web), sig)));
  }
  c.webs = static_cast<long>(vecs.size());
  c.rank = rank_mod_p(vecs, kRankPrime, kRankPoint);
  return c;
}

}  // namespace spider::sl3
