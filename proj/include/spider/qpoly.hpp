#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spider {

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Laurent polynomial in v with big-integer coefficients.
// Stored densely from exponent lo(); both end coefficients are nonzero.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(long c);  // NOLINT(google-explicit-constructor)
  LaurentPoly(const mpz_class& c);  // NOLINT(google-explicit-constructor)

  static LaurentPoly monomial(const mpz_class& c, int e);
  static LaurentPoly var(int e = 1) { return monomial(1, e); }
  static LaurentPoly from_dense(int lo, std::vector<mpz_class> c);

  bool is_zero() const { return c_.empty(); }
  bool is_one() const;
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(c_.size()) - 1; }
  mpz_class coeff(int e) const;
  const std::vector<mpz_class>& dense() const { return c_; }
  std::size_t num_terms() const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.lo_ == b.lo_ && a.c_ == b.c_;
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  LaurentPoly pow(unsigned k) const;
  LaurentPoly shift(int e) const;
  // v -> v^-1
  LaurentPoly bar() const;
  mpz_class content() const;
  // divide every coefficient by an exact divisor
  LaurentPoly div_scalar(const mpz_class& d) const;
  // value at v = 1
  mpz_class at_one() const;

  std::string str(bool q_units = false) const;
  static LaurentPoly parse(std::string_view text);

 private:
  void trim();
  int lo_ = 0;
  std::vector<mpz_class> c_;
};

// Normalized quotient num/den.
// Invariants: den != 0, gcd(num, den) = 1 up to units of Z[v^±1],
// den.lo() == 0, leading coefficient of den positive.
class RatFunc {
 public:
  RatFunc() : num_(0), den_(1) {}
  RatFunc(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(const LaurentPoly& p) : num_(p), den_(1) { normalize_monomial(); }  // NOLINT
  RatFunc(const LaurentPoly& n, const LaurentPoly& d);

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_poly() const { return den_.is_one(); }

  RatFunc operator-() const;
  RatFunc inv() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  // field equality by cross-multiplication
  friend bool operator==(const RatFunc& a, const RatFunc& b);
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  RatFunc pow(int k) const;
  RatFunc bar() const;
  // value at v = 1; throws if the denominator vanishes there
  mpq_class at_one() const;

  std::string str(bool q_units = false) const;
  static RatFunc parse(std::string_view text);

 private:
  void normalize();
  void normalize_monomial();
  LaurentPoly num_, den_;
};

// quantum integer [n] = v^(n-1) + v^(n-3) + ... + v^(1-n)
LaurentPoly qint(int n);
// [n]! = [n][n-1]...[1]
LaurentPoly qfact(int n);
// [n] as a RatFunc; negative n allowed here with [-n] = -[n]
RatFunc qr(int n);
RatFunc qfr(int n);

// Laurent polynomial over Z/p: lo exponent plus dense residues in [0,p).
struct ModPoly {
  int lo = 0;
  std::vector<std::int64_t> c;
  bool is_zero() const { return c.empty(); }
  friend bool operator==(const ModPoly&, const ModPoly&) = default;
};
ModPoly coeffs_mod_p(const LaurentPoly& f, std::int64_t p);

// Primitive gcd in Z[v] of two polynomials given with lo() >= 0 semantics
// (exponents shifted away); result has positive leading coefficient.
LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b);
// exact quotient a / b in Z[v^±1]; throws if b does not divide a
LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b);

}  // namespace spider
