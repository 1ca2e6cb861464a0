#include "spider/tl2.hpp"

#include <numeric>

namespace spider::tl {

Chord identity(int n) {
  Chord c;
  c.match.resize(static_cast<std::size_t>(2 * n));
  for (int i = 0; i < n; ++i) {
    c.match[static_cast<std::size_t>(i)] = n + i;
    c.match[static_cast<std::size_t>(n + i)] = i;
  }
  return c;
}

Chord e(int n, int i) {
  if (i < 1 || i >= n) throw DomainError("U-turn index out of range");
  Chord c = identity(n);
  auto& m = c.match;
  int a = i - 1, b = i;
  m[static_cast<std::size_t>(a)] = b;
  m[static_cast<std::size_t>(b)] = a;
  m[static_cast<std::size_t>(n + a)] = n + b;
  m[static_cast<std::size_t>(n + b)] = n + a;
  return c;
}

std::pair<Chord, int> compose(const Chord& x, const Chord& y) {
  int n = x.strands();
  if (y.strands() != n) throw DomainError("strand count mismatch");
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  auto X = [&](int p) { return x.match[static_cast<std::size_t>(p)]; };
  auto Y = [&](int p) { return y.match[static_cast<std::size_t>(p)]; };
  auto follow = [&](bool in_x, int p) {
    while (true) {
      if (in_x) {
        int q = X(p);
        if (q < n) return q;
        seen[static_cast<std::size_t>(q - n)] = 1;
        in_x = false;
        p = q - n;
      } else {
        int q = Y(p);
        if (q >= n) return q;
        seen[static_cast<std::size_t>(q)] = 1;
        in_x = true;
        p = n + q;
      }
    }
  };
  Chord r;
  r.match.assign(static_cast<std::size_t>(2 * n), -1);
  for (int i = 0; i < n; ++i) {
    if (r.match[static_cast<std::size_t>(i)] < 0) {
      int q = follow(true, i);
      r.match[static_cast<std::size_t>(i)] = q;
      r.match[static_cast<std::size_t>(q)] = i;
    }
    if (r.match[static_cast<std::size_t>(n + i)] < 0) {
      int q = follow(false, n + i);
      r.match[static_cast<std::size_t>(n + i)] = q;
      r.match[static_cast<std::size_t>(q)] = n + i;
    }
  }
  int loops = 0;
  for (int m = 0; m < n; ++m) {
    if (seen[static_cast<std::size_t>(m)]) continue;
    ++loops;
    int cur = m;
    do {
      seen[static_cast<std::size_t>(cur)] = 1;
      int up = Y(cur);        // middle point cur seen from y: partner is a middle point
      seen[static_cast<std::size_t>(up)] = 1;
      cur = X(n + up) - n;    // back down through x to another middle point
    } while (cur != m);
  }
  return {r, loops};
}

Element Element::unit(int n) { return of(identity(n)); }

Element Element::of(const Chord& c, const RatFunc& coeff) {
  Element r;
  r.n = c.strands();
  r.add(c, coeff);
  return r;
}

void Element::add(const Chord& c, const RatFunc& coeff) {
  if (coeff.is_zero()) return;
  auto [it, fresh] = terms.emplace(c, coeff);
  if (!fresh) {
    it->second += coeff;
    if (it->second.is_zero()) terms.erase(it);
  }
}

bool operator==(const Element& a, const Element& b) {
  if (a.terms.size() != b.terms.size()) return false;
  for (auto ia = a.terms.begin(), ib = b.terms.begin(); ia != a.terms.end(); ++ia, ++ib)
    if (ia->first != ib->first || ia->second != ib->second) return false;
  return true;
}

Element& Element::operator+=(const Element& o) {
  if (n == 0) n = o.n;
  for (const auto& [c, k] : o.terms) add(c, k);
  return *this;
}

Element Element::scaled(const RatFunc& s) const {
  Element r;
  r.n = n;
  if (s.is_zero()) return r;
  for (const auto& [c, k] : terms) r.terms.emplace(c, k * s);
  return r;
}

Element Element::widen(int extra) const {
  Element r;
  r.n = n + extra;
  for (const auto& [c, k] : terms) {
    Chord w;
    int m = n + extra;
    w.match.assign(static_cast<std::size_t>(2 * m), -1);
    auto remap = [&](int p) { return p < n ? p : p - n + m; };
    for (int p = 0; p < 2 * n; ++p) w.match[static_cast<std::size_t>(remap(p))] = remap(c.match[static_cast<std::size_t>(p)]);
    for (int s = n; s < m; ++s) {
      w.match[static_cast<std::size_t>(s)] = m + s;
      w.match[static_cast<std::size_t>(m + s)] = s;
    }
    r.terms.emplace(w, k);
  }
  return r;
}

Element tl_mult(const Element& x, const Element& y) {
  if (x.n != y.n) throw DomainError("strand count mismatch");
  Element r;
  r.n = x.n;
  RatFunc loop = -qr(2);
  for (const auto& [cx, kx] : x.terms)
    for (const auto& [cy, ky] : y.terms) {
      auto [c, loops] = compose(cx, cy);
      r.add(c, kx * ky * loop.pow(loops));
    }
  return r;
}

Element jw(int n, int guardrail) {
  if (n < 1) throw DomainError("projector size must be positive");
  if (n > guardrail) throw std::length_error("projector size exceeds guardrail");
  Element f = Element::unit(1);
  for (int m = 2; m <= n; ++m) {
    Element g = f.widen(1);
    Element mid = tl_mult(tl_mult(g, Element::of(e(m, m - 1))), g);
    g += mid.scaled(qr(m - 1) / qr(m));
    f = std::move(g);
  }
  return f;
}

std::vector<RatFunc> jw_single_coeffs(int n) {
  if (n < 1) throw DomainError("projector size must be positive");
  std::vector<RatFunc> a(static_cast<std::size_t>(n + 1));
  for (int i = 1; i <= n; ++i) a[static_cast<std::size_t>(i)] = qr(n + 1 - i) / qr(n);
  return a;
}

Element jw_from_single(int n) {
  if (n == 1) return Element::unit(1);
  Element base = jw(n - 1).widen(1);
  auto a = jw_single_coeffs(n);
  Element r = base;
  Element walk = base;
  for (int i = 2; i <= n; ++i) {
    walk = tl_mult(walk, Element::of(e(n, n + 1 - i)));
    r += walk.scaled(a[static_cast<std::size_t>(i)]);
  }
  return r;
}

RatFunc theta_sl2(int i, int j, int k) {
  if (i < 0 || j < 0 || k < 0) throw DomainError("negative theta label");
  RatFunc r = qfr(i + j + k + 1) * qfr(i) * qfr(j) * qfr(k) / (qfr(i + j) * qfr(j + k) * qfr(i + k));
  return (i + j + k) % 2 ? -r : r;
}

namespace {

// planar matching on N points seen from above (cups); match[p] = partner
using Cups = std::vector<int>;

// Apply a diagram on m strands at [off, off+m) of a cup state.
std::pair<Cups, int> act(const Cups& c, const Chord& d, int off) {
  int N = static_cast<int>(c.size()), m = d.strands();
  auto inside = [&](int p) { return p >= off && p < off + m; };
  std::vector<char> seen(static_cast<std::size_t>(m), 0);
  // from a top point of d, walk down until leaving through another top point or an outside point
  auto walk_from_top = [&](int t) {
    int p = d.match[static_cast<std::size_t>(m + t)];
    while (true) {
      if (p >= m) return off + (p - m);  // new position of that top point
      seen[static_cast<std::size_t>(p)] = 1;
      int q = c[static_cast<std::size_t>(off + p)];
      if (!inside(q)) return q;
      seen[static_cast<std::size_t>(q - off)] = 1;
      p = d.match[static_cast<std::size_t>(q - off)];
    }
  };
  Cups r(static_cast<std::size_t>(N), -1);
  for (int p = 0; p < N; ++p) {
    if (inside(p) || r[static_cast<std::size_t>(p)] >= 0) continue;
    int q = c[static_cast<std::size_t>(p)];
    int end;
    if (!inside(q)) {
      end = q;
    } else {
      seen[static_cast<std::size_t>(q - off)] = 1;
      int s = d.match[static_cast<std::size_t>(q - off)];
      while (s < m) {
        seen[static_cast<std::size_t>(s)] = 1;
        int u = c[static_cast<std::size_t>(off + s)];
        if (!inside(u)) break;
        seen[static_cast<std::size_t>(u - off)] = 1;
        s = d.match[static_cast<std::size_t>(u - off)];
      }
      if (s >= m) {
        end = off + (s - m);
      } else {
        end = c[static_cast<std::size_t>(off + s)];
      }
    }
    r[static_cast<std::size_t>(p)] = end;
    r[static_cast<std::size_t>(end)] = p;
  }
  for (int t = 0; t < m; ++t) {
    if (r[static_cast<std::size_t>(off + t)] >= 0) continue;
    int end = walk_from_top(t);
    r[static_cast<std::size_t>(off + t)] = end;
    r[static_cast<std::size_t>(end)] = off + t;
  }
  int loops = 0;
  for (int b = 0; b < m; ++b) {
    if (seen[static_cast<std::size_t>(b)]) continue;
    ++loops;
    int cur = b;
    do {
      seen[static_cast<std::size_t>(cur)] = 1;
      int q = c[static_cast<std::size_t>(off + cur)] - off;
      seen[static_cast<std::size_t>(q)] = 1;
      cur = d.match[static_cast<std::size_t>(q)];
    } while (cur != b);
  }
  return {r, loops};
}

int pair_loops(const Cups& a, const Cups& b) {
  std::vector<char> seen(a.size(), 0);
  int loops = 0;
  for (std::size_t p = 0; p < a.size(); ++p) {
    if (seen[p]) continue;
    ++loops;
    std::size_t cur = p;
    do {
      seen[cur] = 1;
      std::size_t q = static_cast<std::size_t>(a[cur]);
      seen[q] = 1;
      cur = static_cast<std::size_t>(b[q]);
    } while (cur != p);
  }
  return loops;
}

}  // namespace

RatFunc theta_sl2_diagram(int i, int j, int k) {
  // Three edges carrying i+j, j+k, k+i strands side by side; the lower
  // vertex pairs adjacent edges, the upper vertex pairs them the other way.
  int L = i + j, M = j + k, R = k + i, N = L + M + R;
  if (N == 0) return RatFunc(1);
  Cups below(static_cast<std::size_t>(N)), above(static_cast<std::size_t>(N));
  auto join = [](Cups& c, int a, int b) {
    c[static_cast<std::size_t>(a)] = b;
    c[static_cast<std::size_t>(b)] = a;
  };
  // below: j strands L|M, k strands M|R, i strands outer L..R
  for (int t = 0; t < j; ++t) join(below, L - 1 - t, L + t);
  for (int t = 0; t < k; ++t) join(below, L + M - 1 - t, L + M + t);
  for (int t = 0; t < i; ++t) join(below, t, N - 1 - t);
  // above: mirror image of the same pairing
  above = below;
  // Numerators stay in Z[v^±1]: each projector is scaled by a common
  // denominator of its coefficients, and the product of those is divided out once.
  std::map<Cups, LaurentPoly> state{{below, LaurentPoly(1)}};
  LaurentPoly loop = -qint(2), denom(1);
  std::vector<LaurentPoly> loop_pow{LaurentPoly(1)};
  auto loop_power = [&](int count) -> const LaurentPoly& {
    while (static_cast<int>(loop_pow.size()) <= count) loop_pow.push_back(loop_pow.back() * loop);
    return loop_pow[static_cast<std::size_t>(count)];
  };
  int off = 0;
  for (int len : {L, M, R}) {
    if (len > 0) {
      Element f = jw(len);
      LaurentPoly d(1);
      for (const auto& [c, r] : f.terms) d *= (RatFunc(r.den()) / RatFunc(d)).num();
      std::vector<std::pair<Chord, LaurentPoly>> scaled;
      for (const auto& [c, r] : f.terms) scaled.emplace_back(c, (r * RatFunc(d)).num());
      denom *= d;
      std::map<Cups, LaurentPoly> next;
      for (const auto& [c, k0] : state)
        for (const auto& [e, ke] : scaled) {
          auto [c2, loops] = act(c, e, off);
          LaurentPoly w = k0 * ke * loop_power(loops);
          auto [it, fresh] = next.emplace(c2, w);
          if (!fresh) it->second += w;
        }
      state.clear();
      for (auto& [c, w] : next)
        if (!w.is_zero()) state.emplace(c, w);
    }
    off += len;
  }
  LaurentPoly total;
  for (const auto& [c, w] : state) total += w * loop_power(pair_loops(c, above));
  return RatFunc(total, denom);
}

}  // namespace spider::tl
