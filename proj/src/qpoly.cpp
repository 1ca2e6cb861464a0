#include "spider/qpoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace spider {

LaurentPoly::LaurentPoly(long c) {
  if (c != 0) c_.emplace_back(c);
}

LaurentPoly::LaurentPoly(const mpz_class& c) {
  if (c != 0) c_.push_back(c);
}

LaurentPoly LaurentPoly::monomial(const mpz_class& c, int e) {
  LaurentPoly p(c);
  if (!p.is_zero()) p.lo_ = e;
  return p;
}

LaurentPoly LaurentPoly::from_dense(int lo, std::vector<mpz_class> c) {
  LaurentPoly p;
  p.lo_ = lo;
  p.c_ = std::move(c);
  p.trim();
  return p;
}

void LaurentPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
  std::size_t k = 0;
  while (k < c_.size() && c_[k] == 0) ++k;
  if (k) {
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(k));
    lo_ += static_cast<int>(k);
  }
  if (c_.empty()) lo_ = 0;
}

bool LaurentPoly::is_one() const { return lo_ == 0 && c_.size() == 1 && c_[0] == 1; }

mpz_class LaurentPoly::coeff(int e) const {
  if (e < lo_ || e > hi() || c_.empty()) return 0;
  return c_[static_cast<std::size_t>(e - lo_)];
}

std::size_t LaurentPoly::num_terms() const {
  return static_cast<std::size_t>(std::count_if(c_.begin(), c_.end(), [](const mpz_class& x) { return x != 0; }));
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  int nlo = std::min(lo_, o.lo_);
  int nhi = std::max(hi(), o.hi());
  if (nlo < lo_) c_.insert(c_.begin(), static_cast<std::size_t>(lo_ - nlo), mpz_class(0));
  lo_ = nlo;
  c_.resize(static_cast<std::size_t>(nhi - nlo + 1), mpz_class(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[static_cast<std::size_t>(o.lo_ - lo_) + i] += o.c_[i];
  trim();
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  LaurentPoly r;
  r.lo_ = a.lo_ + b.lo_;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, mpz_class(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
  }
  r.trim();
  return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

LaurentPoly LaurentPoly::pow(unsigned k) const {
  LaurentPoly r(1), b = *this;
  while (k) {
    if (k & 1u) r *= b;
    k >>= 1u;
    if (k) b *= b;
  }
  return r;
}

LaurentPoly LaurentPoly::shift(int e) const {
  LaurentPoly r = *this;
  if (!r.is_zero()) r.lo_ += e;
  return r;
}

LaurentPoly LaurentPoly::bar() const {
  LaurentPoly r;
  if (is_zero()) return r;
  r.c_.assign(c_.rbegin(), c_.rend());
  r.lo_ = -hi();
  return r;
}

mpz_class LaurentPoly::content() const {
  mpz_class g = 0;
  for (const auto& x : c_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

LaurentPoly LaurentPoly::div_scalar(const mpz_class& d) const {
  LaurentPoly r = *this;
  for (auto& x : r.c_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
  return r;
}

mpz_class LaurentPoly::at_one() const {
  mpz_class s = 0;
  for (const auto& x : c_) s += x;
  return s;
}

namespace {

std::string exponent_text(int e, bool q_units) {
  if (!q_units) {
    if (e == 1) return "v";
    return "v^" + std::to_string(e);
  }
  if (e % 2 == 0) {
    if (e == 2) return "q";
    return "q^" + std::to_string(e / 2);
  }
  return "q^(" + std::to_string(e) + "/2)";
}

}  // namespace

std::string LaurentPoly::str(bool q_units) const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (int e = hi(); e >= lo_; --e) {
    mpz_class c = coeff(e);
    if (c == 0) continue;
    bool neg = c < 0;
    mpz_class a = neg ? mpz_class(-c) : c;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    if (e == 0) {
      out += a.get_str();
    } else {
      if (a != 1) out += a.get_str();
      out += exponent_text(e, q_units);
    }
  }
  return out;
}

namespace {

struct Cursor {
  std::string_view s;
  std::size_t i = 0;
  void ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  bool at_end() {
    ws();
    return i >= s.size();
  }
  char peek() {
    ws();
    return i < s.size() ? s[i] : '\0';
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw DomainError("polynomial parse error at " + std::to_string(i) + ": " + what);
  }
  long integer() {
    ws();
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
    std::size_t st = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (st == i) fail("expected integer");
    long v = std::stol(std::string(s.substr(st, i - st)));
    return neg ? -v : v;
  }
  mpz_class big() {
    ws();
    std::size_t st = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    return mpz_class(std::string(s.substr(st, i - st)));
  }
};

// exponent in v units after the variable letter
int parse_exponent(Cursor& c, bool is_q) {
  if (!c.eat('^')) return is_q ? 2 : 1;
  if (c.eat('(')) {
    long num = c.integer();
    long den = 1;
    if (c.eat('/')) den = c.integer();
    if (!c.eat(')')) c.fail("expected )");
    long e = is_q ? 2 * num : num;
    if (e % den != 0) c.fail("fractional exponent");
    return static_cast<int>(e / den);
  }
  long e = c.integer();
  return static_cast<int>(is_q ? 2 * e : e);
}

LaurentPoly parse_sum(Cursor& c, bool stop_at_paren) {
  LaurentPoly acc;
  bool first = true;
  while (true) {
    if (c.at_end()) break;
    if (stop_at_paren && c.peek() == ')') break;
    int sign = 1;
    char ch = c.peek();
    if (ch == '+' || ch == '-') {
      c.eat(ch);
      sign = ch == '-' ? -1 : 1;
    } else if (!first) {
      c.fail("expected + or -");
    }
    first = false;
    mpz_class coef = 1;
    bool had_num = false;
    if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
      coef = c.big();
      had_num = true;
      c.eat('*');
    }
    int e = 0;
    char var = c.peek();
    if (var == 'v' || var == 'q') {
      c.eat(var);
      e = parse_exponent(c, var == 'q');
    } else if (!had_num) {
      c.fail("expected term");
    }
    acc += LaurentPoly::monomial(sign * coef, e);
  }
  if (first) c.fail("empty polynomial");
  return acc;
}

}  // namespace

LaurentPoly LaurentPoly::parse(std::string_view text) {
  Cursor c{text};
  LaurentPoly p = parse_sum(c, false);
  if (!c.at_end()) c.fail("trailing input");
  return p;
}

// ---- polynomial gcd in Z[v] ----

namespace {

using Dense = std::vector<mpz_class>;

void dtrim(Dense& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

mpz_class dcontent(const Dense& a) {
  mpz_class g = 0;
  for (const auto& x : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

void dprimitive(Dense& a) {
  dtrim(a);
  if (a.empty()) return;
  mpz_class g = dcontent(a);
  if (a.back() < 0) g = -g;
  if (g != 1)
    for (auto& x : a) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

// pseudo-remainder of a by b (b nonzero)
Dense prem(Dense a, const Dense& b) {
  std::size_t db = b.size() - 1;
  const mpz_class& lb = b.back();
  while (a.size() >= b.size()) {
    mpz_class la = a.back();
    std::size_t off = a.size() - 1 - db;
    for (auto& x : a) x *= lb;
    for (std::size_t j = 0; j <= db; ++j) a[off + j] -= la * b[j];
    dtrim(a);
    dprimitive(a);
  }
  return a;
}

Dense to_dense(const LaurentPoly& p) { return p.dense(); }

}  // namespace

LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero()) {
    Dense d = to_dense(b);
    dprimitive(d);
    return LaurentPoly::from_dense(0, d);
  }
  if (b.is_zero()) return poly_gcd(b, a);
  Dense x = to_dense(a), y = to_dense(b);
  dprimitive(x);
  dprimitive(y);
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    if (y.size() == 1) return LaurentPoly(1);
    Dense r = prem(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  dprimitive(x);
  return LaurentPoly::from_dense(0, x);
}

LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw DomainError("division by zero polynomial");
  if (a.is_zero()) return {};
  Dense r = a.dense();
  const Dense& d = b.dense();
  if (r.size() < d.size()) throw DomainError("inexact polynomial division");
  Dense q(r.size() - d.size() + 1);
  const mpz_class& ld = d.back();
  for (std::size_t k = q.size(); k-- > 0;) {
    mpz_class& top = r[k + d.size() - 1];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), ld.get_mpz_t())) throw DomainError("inexact polynomial division");
    mpz_class t;
    mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), ld.get_mpz_t());
    q[k] = t;
    for (std::size_t j = 0; j < d.size(); ++j) r[k + j] -= t * d[j];
  }
  for (const auto& x : r)
    if (x != 0) throw DomainError("inexact polynomial division");
  return LaurentPoly::from_dense(a.lo() - b.lo(), q);
}

// ---- RatFunc ----

RatFunc::RatFunc(const LaurentPoly& n, const LaurentPoly& d) : num_(n), den_(d) {
  if (den_.is_zero()) throw DomainError("zero denominator");
  normalize();
}

void RatFunc::normalize_monomial() {
  if (num_.is_zero()) {
    den_ = LaurentPoly(1);
    return;
  }
  mpz_class g = gcd(num_.content(), den_.content());
  if (den_.dense().back() < 0) g = -g;
  if (g != 1) {
    num_ = num_.div_scalar(g);
    den_ = den_.div_scalar(g);
  }
  int s = den_.lo();
  if (s != 0) {
    num_ = num_.shift(-s);
    den_ = den_.shift(-s);
  }
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = LaurentPoly(1);
    return;
  }
  if (den_.dense().size() > 1 && num_.dense().size() > 1) {
    LaurentPoly g = poly_gcd(num_, den_);
    if (g.dense().size() > 1) {
      num_ = exact_div(num_, g);
      den_ = exact_div(den_, g);
    }
  }
  normalize_monomial();
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::inv() const {
  if (is_zero()) throw DomainError("inverse of zero");
  RatFunc r;
  r.num_ = den_;
  r.den_ = num_;
  r.normalize_monomial();
  return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    normalize();
    return *this;
  }
  LaurentPoly g = poly_gcd(den_, o.den_);
  LaurentPoly d1 = exact_div(den_, g), d2 = exact_div(o.den_, g);
  num_ = num_ * d2 + o.num_ * d1;
  den_ = d1 * o.den_;
  normalize();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = RatFunc();
  if (o.is_one()) return *this;
  if (is_one()) return *this = o;
  if (den_.is_one() && o.den_.is_one()) {
    num_ *= o.num_;
    normalize_monomial();
    return *this;
  }
  // cross-cancel before multiplying keeps intermediate sizes down
  LaurentPoly a = num_, b = den_, c = o.num_, d = o.den_;
  LaurentPoly g1 = poly_gcd(a, d);
  if (g1.dense().size() > 1) {
    a = exact_div(a, g1);
    d = exact_div(d, g1);
  }
  LaurentPoly g2 = poly_gcd(c, b);
  if (g2.dense().size() > 1) {
    c = exact_div(c, g2);
    b = exact_div(b, g2);
  }
  num_ = a * c;
  den_ = b * d;
  normalize_monomial();
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this *= o.inv(); }

bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ * b.den_ == b.num_ * a.den_; }

RatFunc RatFunc::pow(int k) const {
  if (k < 0) return inv().pow(-k);
  RatFunc r(1), b = *this;
  while (k) {
    if (k & 1) r *= b;
    k >>= 1;
    if (k) b *= b;
  }
  return r;
}

RatFunc RatFunc::bar() const { return RatFunc(num_.bar(), den_.bar()); }

mpq_class RatFunc::at_one() const {
  mpz_class d = den_.at_one();
  if (d == 0) throw DomainError("denominator vanishes at v = 1");
  mpq_class r(num_.at_one(), d);
  r.canonicalize();
  return r;
}

std::string RatFunc::str(bool q_units) const {
  if (den_.is_one()) return num_.str(q_units);
  return "(" + num_.str(q_units) + ")/(" + den_.str(q_units) + ")";
}

RatFunc RatFunc::parse(std::string_view text) {
  Cursor c{text};
  auto group = [&]() {
    if (c.eat('(')) {
      LaurentPoly p = parse_sum(c, true);
      if (!c.eat(')')) c.fail("expected )");
      return p;
    }
    return parse_sum(c, false);
  };
  LaurentPoly n = group();
  LaurentPoly d(1);
  if (c.eat('/')) d = group();
  if (!c.at_end()) c.fail("trailing input");
  if (d.is_zero()) throw DomainError("zero denominator");
  return RatFunc(n, d);
}

LaurentPoly qint(int n) {
  if (n < 0) throw DomainError("qint of negative integer");
  if (n == 0) return {};
  std::vector<mpz_class> c(static_cast<std::size_t>(2 * n - 1), mpz_class(0));
  for (std::size_t i = 0; i < c.size(); i += 2) c[i] = 1;
  return LaurentPoly::from_dense(1 - n, c);
}

LaurentPoly qfact(int n) {
  if (n < 0) throw DomainError("qfact of negative integer");
  LaurentPoly r(1);
  for (int k = 2; k <= n; ++k) r *= qint(k);
  return r;
}

RatFunc qr(int n) { return n >= 0 ? RatFunc(qint(n)) : -RatFunc(qint(-n)); }

RatFunc qfr(int n) { return RatFunc(qfact(n)); }

ModPoly coeffs_mod_p(const LaurentPoly& f, std::int64_t p) {
  if (p < 2) throw DomainError("modulus must be at least 2");
  ModPoly r;
  if (f.is_zero()) return r;
  r.lo = f.lo();
  mpz_class mp(static_cast<long>(p));
  for (const auto& x : f.dense()) {
    mpz_class m;
    mpz_fdiv_r(m.get_mpz_t(), x.get_mpz_t(), mp.get_mpz_t());
    r.c.push_back(m.get_si());
  }
  while (!r.c.empty() && r.c.back() == 0) r.c.pop_back();
  std::size_t k = 0;
  while (k < r.c.size() && r.c[k] == 0) ++k;
  r.c.erase(r.c.begin(), r.c.begin() + static_cast<long>(k));
  r.lo = r.c.empty() ? 0 : r.lo + static_cast<int>(k);
  return r;
}

}  // namespace spider
