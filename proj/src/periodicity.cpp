#include "spider/periodicity.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "spider/fp_poly.hpp"

namespace spider::link {

namespace {

using fp::Coeffs;
using fp::Field;

void require_prime(long p) {
  if (!fp::is_prime(p)) throw DomainError("ideal arithmetic needs a prime p, got " + std::to_string(p));
}

LaurentPoly as_poly(const RatFunc& r) {
  if (!r.is_poly()) throw DomainError("ideal generator is not a Laurent polynomial");
  return r.num();
}

unsigned long long field_size(long p, int d) {
  unsigned __int128 q = 1;
  for (int i = 0; i < d; ++i) {
    q *= static_cast<unsigned __int128>(p);
    if (q > (static_cast<unsigned __int128>(1) << 62)) throw DomainError("residue field too large for the power test");
  }
  return static_cast<unsigned long long>(q);
}

// c is an e-th power modulo every irreducible factor of the square-free a;
// on failure, the degree of an offending factor is written to bad_degree
bool residues_are_powers(const Field& f, const Coeffs& c, const Coeffs& a, int e, int& bad_degree) {
  std::vector<Coeffs> dd = fp::distinct_degree(f, a);
  for (std::size_t d = 1; d < dd.size(); ++d) {
    if (fp::degree(dd[d]) < 1) continue;
    unsigned long long q = field_size(f.p, static_cast<int>(d));
    unsigned long long ex = (q - 1) / std::gcd(static_cast<unsigned long long>(e), q - 1);
    Coeffs r = fp::powmod(f, c, ex, dd[d]);
    if (r != Coeffs{1}) {
      bad_degree = static_cast<int>(d);
      return false;
    }
  }
  return true;
}

// Minimal polynomial m of w in F_p[v]/(g), and c written as q(w) when c lies in F_p[w].
std::optional<std::pair<Coeffs, Coeffs>> express_in_subring(const Field& f, const Coeffs& w, const Coeffs& g, const Coeffs& c) {
  std::size_t n = static_cast<std::size_t>(fp::degree(g));
  auto dense = [&](Coeffs x) {
    x.resize(n, 0);
    return x;
  };
  // echelon rows: reduced vector, its expression over powers of w, pivot column
  struct Row {
    Coeffs vec, combo;
    std::size_t pivot;
  };
  std::vector<Row> rows;
  auto reduce = [&](Coeffs vec, Coeffs combo) {
    for (const Row& r : rows) {
      std::int64_t a = vec[r.pivot];
      if (!a) continue;
      for (std::size_t i = 0; i < n; ++i) vec[i] = f.sub(vec[i], f.mul(a, r.vec[i]));
      combo = fp::sub(f, combo, fp::mul(f, Coeffs{a}, r.combo));
    }
    return std::pair{vec, combo};
  };
  Coeffs m, power{1};
  for (std::size_t i = 0; i <= n; ++i) {
    Coeffs unit(i + 1, 0);
    unit[i] = 1;
    auto [vec, combo] = reduce(dense(power), unit);
    auto nz = std::find_if(vec.begin(), vec.end(), [](std::int64_t x) { return x != 0; });
    if (nz == vec.end()) {
      m = combo;
      break;
    }
    std::size_t piv = static_cast<std::size_t>(nz - vec.begin());
    std::int64_t inv = f.inv(vec[piv]);
    for (auto& x : vec) x = f.mul(x, inv);
    combo = fp::mul(f, combo, Coeffs{inv});
    // keep earlier rows reduced at the new pivot
    for (Row& r : rows) {
      std::int64_t a = r.vec[piv];
      if (!a) continue;
      for (std::size_t k = 0; k < n; ++k) r.vec[k] = f.sub(r.vec[k], f.mul(a, vec[k]));
      r.combo = fp::sub(f, r.combo, fp::mul(f, Coeffs{a}, combo));
    }
    rows.push_back({vec, combo, piv});
    power = fp::rem(f, fp::mul(f, power, w), g);
  }
  auto [left, combo] = reduce(dense(c), Coeffs{});
  if (std::any_of(left.begin(), left.end(), [](std::int64_t x) { return x != 0; })) return std::nullopt;
  // c - sum combo_i w^i reduced to zero, so c = -combo(w)
  return std::pair{fp::monic(f, m), fp::sub(f, Coeffs{}, combo)};
}

}  // namespace

IdealSpec make_ideal(IdealKind kind, long p) {
  require_prime(p);
  IdealSpec s;
  s.p = p;
  auto up = static_cast<unsigned>(p);
  if (kind == IdealKind::sl3) {
    s.generators.push_back(qint(3).pow(up) - qint(3));
  } else {
    LaurentPoly x = as_poly(-(qr(6) * qr(2) / qr(3)));
    LaurentPoly y = as_poly(qr(6) * qr(5) / (qr(3) * qr(2)));
    s.generators.push_back(x.pow(up) - x);
    s.generators.push_back(y.pow(up) - y);
  }
  return s;
}

bool ideal_member(const LaurentPoly& f, const IdealSpec& ideal) {
  require_prime(ideal.p);
  Field fld{ideal.p};
  Coeffs g;
  for (const LaurentPoly& gen : ideal.generators) g = fp::gcd(fld, g, fp::from_laurent(fld, gen));
  Coeffs fr = fp::from_laurent(fld, f);
  if (g.empty()) return fr.empty();
  return fp::rem(fld, fr, g).empty();
}

bool period_check(const LaurentPoly& gl, const LaurentPoly& gbar, long p, IdealKind kind) {
  IdealSpec s = make_ideal(kind, p);
  return ideal_member(gl - gbar.pow(static_cast<unsigned>(p)), s);
}

const char* solvability_name(Solvability s) {
  switch (s) {
    case Solvability::exists: return "exists";
    case Solvability::none: return "none";
    default: return "undecided";
  }
}

ResidueReport power_residue_check(const LaurentPoly& c, long p, int index, int exponent) {
  require_prime(p);
  if (exponent < 1 || index < 1) throw DomainError("index and exponent must be positive");
  Field f{p};
  Coeffs g = fp::from_laurent(f, qint(3).pow(static_cast<unsigned>(index)) - qint(3));
  std::string where = "mod " + std::to_string(p) + ": ";
  if (g.empty()) return {Solvability::undecided, where + "generator vanishes, the quotient is infinite"};
  if (fp::degree(g) == 0) return {Solvability::exists, where + "quotient ring is zero"};
  g = fp::monic(f, g);

  // c as a polynomial representative; v is a unit because g(0) != 0
  ModPoly cm = coeffs_mod_p(c, p);
  Coeffs cc(cm.c.begin(), cm.c.end());
  fp::trim(cc);
  Coeffs shift;
  if (cm.lo >= 0) {
    shift = fp::powmod(f, Coeffs{0, 1}, static_cast<std::uint64_t>(cm.lo), g);
  } else {
    Coeffs h(g.begin() + 1, g.end());  // g = g0 + v h, so 1/v = -h/g0
    Coeffs vinv = fp::mul(f, h, Coeffs{f.sub(0, f.inv(g[0]))});
    shift = fp::powmod(f, vinv, static_cast<std::uint64_t>(-cm.lo), g);
  }
  cc = fp::rem(f, fp::mul(f, cc, shift), g);

  // exponent = p^s * e with p not dividing e; the p^s-th powers are the
  // image of Frobenius, the subring generated by w = v^(p^s)
  int e = exponent;
  std::uint64_t ps = 1;
  while (e % p == 0) {
    e /= static_cast<int>(p);
    ps *= static_cast<std::uint64_t>(p);
  }
  Coeffs w = fp::powmod(f, Coeffs{0, 1}, ps, g);
  std::optional<std::pair<Coeffs, Coeffs>> sub = express_in_subring(f, w, g, cc);
  if (!sub) return {Solvability::none, where + "no root of order " + std::to_string(ps) + " (outside the image of Frobenius)"};
  const auto& [m, q] = *sub;

  // e-th roots in F_p[w]/(m) lift through repeated factors since p does not divide e
  std::vector<Coeffs> parts = fp::squarefree_decomposition(f, m);
  for (std::size_t j = 1; j < parts.size(); ++j) {
    if (fp::degree(parts[j]) < 1) continue;
    Coeffs cur = parts[j], rest = q;
    // factors h of cur are peeled off by the exact h-adic valuation k of q
    for (std::size_t k = 0; k < j; ++k) {
      Coeffs t = fp::gcd(f, cur, rest);
      Coeffs exact = fp::divmod(f, cur, t).first;
      if (fp::degree(exact) >= 1) {
        if (k % static_cast<std::size_t>(e) != 0)
          return {Solvability::none, where + "valuation " + std::to_string(k) + " below multiplicity " + std::to_string(j) +
                                         " is not divisible by " + std::to_string(e)};
        Coeffs unit = q;
        for (std::size_t i = 0; i < k; ++i) unit = fp::divmod(f, unit, exact).first;
        int bad = 0;
        if (!residues_are_powers(f, unit, exact, e, bad))
          return {Solvability::none, where + "no root of order " + std::to_string(e) + " in a residue field of degree " +
                                         std::to_string(bad)};
      }
      if (fp::degree(t) < 1) break;
      rest = fp::divmod(f, rest, t).first;
      cur = t;
    }
  }
  return {Solvability::exists, where + "every local factor has a root"};
}

ResidueReport power_residue_mod_ideal(const LaurentPoly& c, int index, int exponent) {
  if (index < 2) throw DomainError("index must be at least 2");
  std::vector<long> primes;
  int n = index;
  for (int d = 2; d <= n; ++d) {
    if (n % d) continue;
    n /= d;
    if (n % d == 0) return {Solvability::undecided, "index is not square-free; Z/p^2 needs lifting"};
    primes.push_back(d);
  }
  ResidueReport out{Solvability::exists, ""};
  for (long p : primes) {
    ResidueReport r = power_residue_check(c, p, index, exponent);
    if (!out.reason.empty()) out.reason += "; ";
    out.reason += r.reason;
    if (r.status == Solvability::none) return {Solvability::none, r.reason};
    if (r.status == Solvability::undecided) out.status = Solvability::undecided;
  }
  return out;
}

}  // namespace spider::link
