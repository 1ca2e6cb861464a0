#include "spider/fp_poly.hpp"

#include <stdexcept>

namespace spider::fp {

std::int64_t Field::inv(std::int64_t a) const {
  if (a % p == 0) throw std::domain_error("inverse of zero mod p");
  // Fermat; p is prime
  std::int64_t r = 1, b = a % p;
  for (std::int64_t e = p - 2; e > 0; e >>= 1, b = mul(b, b))
    if (e & 1) r = mul(r, b);
  return r;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Coeffs& a) { return static_cast<int>(a.size()) - 1; }

Coeffs add(const Field& f, const Coeffs& a, const Coeffs& b) {
  Coeffs r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = f.add(r[i], b[i]);
  trim(r);
  return r;
}

Coeffs sub(const Field& f, const Coeffs& a, const Coeffs& b) {
  Coeffs r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = f.sub(r[i], b[i]);
  trim(r);
  return r;
}

Coeffs mul(const Field& f, const Coeffs& a, const Coeffs& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

std::pair<Coeffs, Coeffs> divmod(const Field& f, const Coeffs& a, const Coeffs& b) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  Coeffs r = a, q;
  trim(r);
  if (r.size() < b.size()) return {q, r};
  q.assign(r.size() - b.size() + 1, 0);
  std::int64_t lead = f.inv(b.back());
  for (std::size_t k = r.size(); k-- >= b.size();) {
    std::int64_t c = f.mul(r[k], lead);
    std::size_t s = k + 1 - b.size();
    q[s] = c;
    if (c)
      for (std::size_t j = 0; j < b.size(); ++j) r[s + j] = f.sub(r[s + j], f.mul(c, b[j]));
    if (k == b.size() - 1) break;
  }
  trim(q);
  trim(r);
  return {q, r};
}

Coeffs rem(const Field& f, const Coeffs& a, const Coeffs& b) { return divmod(f, a, b).second; }

Coeffs monic(const Field& f, const Coeffs& a) {
  if (a.empty()) return a;
  std::int64_t l = f.inv(a.back());
  Coeffs r = a;
  for (auto& c : r) c = f.mul(c, l);
  return r;
}

Coeffs gcd(const Field& f, Coeffs a, Coeffs b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Coeffs r = rem(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(f, a);
}

Coeffs derivative(const Field& f, const Coeffs& a) {
  Coeffs r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(f.mul(a[i], static_cast<std::int64_t>(i) % f.p));
  trim(r);
  return r;
}

Coeffs powmod(const Field& f, Coeffs a, std::uint64_t e, const Coeffs& m) {
  Coeffs r = rem(f, Coeffs{1}, m);
  a = rem(f, a, m);
  for (; e; e >>= 1) {
    if (e & 1) r = rem(f, mul(f, r, a), m);
    if (e > 1) a = rem(f, mul(f, a, a), m);
  }
  return r;
}

Coeffs frobenius(const Field& f, const Coeffs& a, int k, const Coeffs& m) {
  Coeffs r = rem(f, a, m);
  for (int i = 0; i < k; ++i) r = powmod(f, r, static_cast<std::uint64_t>(f.p), m);
  return r;
}

Coeffs from_laurent(const Field& f, const LaurentPoly& x) {
  ModPoly m = coeffs_mod_p(x, f.p);
  Coeffs r(m.c.begin(), m.c.end());
  trim(r);
  std::size_t z = 0;
  while (z < r.size() && r[z] == 0) ++z;
  r.erase(r.begin(), r.begin() + static_cast<long>(z));
  return r;
}

namespace {

// a(v) = b(v^p) in characteristic p; returns b
Coeffs pth_root(const Field& f, const Coeffs& a) {
  Coeffs b;
  for (std::size_t i = 0; i < a.size(); i += static_cast<std::size_t>(f.p)) b.push_back(a[i]);
  trim(b);
  return b;
}

void squarefree_rec(const Field& f, const Coeffs& g, std::size_t mult, std::vector<Coeffs>& out) {
  if (degree(g) < 1) return;
  Coeffs d = derivative(f, g);
  if (d.empty()) {
    squarefree_rec(f, pth_root(f, g), mult * static_cast<std::size_t>(f.p), out);
    return;
  }
  // Yun's algorithm over the part coprime to p-th powers
  Coeffs c = gcd(f, g, d);
  Coeffs w = divmod(f, g, c).first;
  std::size_t i = 1;
  while (degree(w) >= 1) {
    Coeffs y = gcd(f, w, c);
    Coeffs z = divmod(f, w, y).first;
    if (degree(z) >= 1) {
      std::size_t j = i * mult;
      if (out.size() <= j) out.resize(j + 1);
      out[j] = out[j].empty() ? monic(f, z) : mul(f, out[j], monic(f, z));
    }
    w = y;
    c = divmod(f, c, y).first;
    ++i;
  }
  // what is left of c is a p-th power
  if (degree(c) >= 1) squarefree_rec(f, pth_root(f, c), mult * static_cast<std::size_t>(f.p), out);
}

}  // namespace

std::vector<Coeffs> squarefree_decomposition(const Field& f, const Coeffs& g) {
  std::vector<Coeffs> out(1);
  squarefree_rec(f, monic(f, g), 1, out);
  return out;
}

std::vector<Coeffs> distinct_degree(const Field& f, const Coeffs& g) {
  std::vector<Coeffs> out(1);
  Coeffs rest = monic(f, g);
  Coeffs x{0, 1};
  Coeffs h = rem(f, x, rest);
  for (int d = 1; 2 * d <= degree(rest); ++d) {
    h = powmod(f, h, static_cast<std::uint64_t>(f.p), rest);
    Coeffs fd = gcd(f, sub(f, h, x), rest);
    out.resize(static_cast<std::size_t>(d) + 1);
    if (degree(fd) >= 1) {
      out[static_cast<std::size_t>(d)] = fd;
      rest = divmod(f, rest, fd).first;
      h = rem(f, h, rest);
    }
  }
  if (degree(rest) >= 1) {
    std::size_t d = static_cast<std::size_t>(degree(rest));
    if (out.size() <= d) out.resize(d + 1);
    out[d] = rest;
  }
  return out;
}

}  // namespace spider::fp
