#pragma once

// Hand-rolled random generators for property tests.

#include <random>

#include "spider/qpoly.hpp"

namespace gen {

inline int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline spider::LaurentPoly laurent(std::mt19937_64& rng, int span = 6, int mag = 20) {
  spider::LaurentPoly p;
  int terms = uniform(rng, 0, 5);
  for (int t = 0; t < terms; ++t) p += spider::LaurentPoly::monomial(uniform(rng, -mag, mag), uniform(rng, -span, span));
  return p;
}

// products of quantum integers over small polynomials, the shapes that occur in expansions
inline spider::RatFunc ratfunc(std::mt19937_64& rng) {
  spider::LaurentPoly num = laurent(rng, 4, 5);
  spider::RatFunc r(num);
  int k = uniform(rng, 0, 3);
  for (int t = 0; t < k; ++t) r /= spider::qr(uniform(rng, 1, 7));
  if (uniform(rng, 0, 1)) r *= spider::qr(uniform(rng, 1, 5));
  return r;
}

}  // namespace gen
