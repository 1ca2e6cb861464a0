#pragma once

// Dense polynomials over a prime field, coefficients low to high, no trailing zeros.

#include <cstdint>
#include <utility>
#include <vector>

#include "spider/qpoly.hpp"

namespace spider::fp {

using Coeffs = std::vector<std::int64_t>;

struct Field {
  std::int64_t p;
  std::int64_t add(std::int64_t a, std::int64_t b) const { return (a + b) % p; }
  std::int64_t sub(std::int64_t a, std::int64_t b) const { return (a - b + p) % p; }
  std::int64_t mul(std::int64_t a, std::int64_t b) const { return static_cast<std::int64_t>(static_cast<__int128>(a) * b % p); }
  std::int64_t inv(std::int64_t a) const;
};

bool is_prime(long n);

void trim(Coeffs& a);
int degree(const Coeffs& a);  // -1 for zero
Coeffs add(const Field& f, const Coeffs& a, const Coeffs& b);
Coeffs sub(const Field& f, const Coeffs& a, const Coeffs& b);
Coeffs mul(const Field& f, const Coeffs& a, const Coeffs& b);
// quotient and remainder; b nonzero
std::pair<Coeffs, Coeffs> divmod(const Field& f, const Coeffs& a, const Coeffs& b);
Coeffs rem(const Field& f, const Coeffs& a, const Coeffs& b);
Coeffs monic(const Field& f, const Coeffs& a);
Coeffs gcd(const Field& f, Coeffs a, Coeffs b);  // monic, zero if both zero
Coeffs derivative(const Field& f, const Coeffs& a);
// a^e mod m
Coeffs powmod(const Field& f, Coeffs a, std::uint64_t e, const Coeffs& m);
// a^(p^k) mod m
Coeffs frobenius(const Field& f, const Coeffs& a, int k, const Coeffs& m);

// Laurent polynomial reduced mod p and shifted so the constant term is the lowest one.
// v is a unit, so this is a generator of the same ideal of F_p[v^±1].
Coeffs from_laurent(const Field& f, const LaurentPoly& x);

// g = prod S_j^j with S_j square-free and pairwise coprime; entry j holds S_j (index 0 unused)
std::vector<Coeffs> squarefree_decomposition(const Field& f, const Coeffs& g);
// square-free input: product of the irreducible factors of each degree d (index d)
std::vector<Coeffs> distinct_degree(const Field& f, const Coeffs& g);

}  // namespace spider::fp
