#pragma once

// Congruence arithmetic in Z[v^±1] modulo ideals (p, g_1, ..., g_r).

#include <string>
#include <vector>

#include "spider/qpoly.hpp"

namespace spider::link {

enum class IdealKind { sl3, sp4 };

struct IdealSpec {
  long p = 2;
  std::vector<LaurentPoly> generators;
};

// (p, [3]^p - [3]) or (p, (-[6][2]/[3])^p + [6][2]/[3], ([6][5]/([3][2]))^p - [6][5]/([3][2]))
IdealSpec make_ideal(IdealKind kind, long p);

// f mod p divisible by the gcd of the generators mod p in F_p[v^±1]; p must be prime
bool ideal_member(const LaurentPoly& f, const IdealSpec& ideal);

bool period_check(const LaurentPoly& gl, const LaurentPoly& gbar, long p, IdealKind kind);

enum class Solvability { exists, none, undecided };
const char* solvability_name(Solvability s);

struct ResidueReport {
  Solvability status = Solvability::undecided;
  std::string reason;
};

// Is there alpha with alpha^exponent = c in F_p[v^±1]/(g), g = [3]^index - [3]?
// With exponent = p^s e and p not dividing e, alpha^(p^s) ranges over the
// subring generated by v^(p^s), and e-th roots there lift through repeated
// factors, so the answer is decided by a subring membership test followed by
// valuation and residue-field tests on each factor.
ResidueReport power_residue_check(const LaurentPoly& c, long p, int index, int exponent);

// Same question modulo (index, [3]^index - [3]) over Z, with the square-free
// index split into primes by the Chinese remainder theorem.
ResidueReport power_residue_mod_ideal(const LaurentPoly& c, int index, int exponent);

}  // namespace spider::link
