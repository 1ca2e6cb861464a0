#include "spider/theta3j.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <regex>
#include <stdexcept>

#include "spider/sl3_clasp.hpp"
#include "spider/sl3_reduce.hpp"
#include "spider/sl3_webs.hpp"

namespace spider::theta {

namespace {

Triple transform(const Triple& t, int rotation, bool reversed, bool dual) {
  Triple r;
  for (int e = 0; e < 3; ++e) r[static_cast<std::size_t>(e)] = t[static_cast<std::size_t>((e + rotation) % 3)];
  if (reversed) std::swap(r[1], r[2]);
  if (dual)
    for (auto& w : r) std::swap(w.a, w.b);
  return r;
}

// the linear system with a1 = d; nullopt unless every unknown is a nonnegative integer
std::optional<AdmissibleTriple> solve(const Triple& w) {
  int a1 = w[0].a, b1 = w[0].b, a2 = w[1].a, b2 = w[1].b, a3 = w[2].a, b3 = w[2].b;
  int d = std::min({a1, b1, a2, b2, a3, b3});
  if (a1 != d) return std::nullopt;
  int o = b3 - d;
  int three_m = b1 + b2 + b3 - d - a2 - a3;
  if (three_m < 0 || three_m % 3) return std::nullopt;
  AdmissibleTriple s;
  s.normalized = w;
  s.d = d;
  s.o = o;
  s.m = three_m / 3;
  s.l = o - s.m;
  s.n = s.m + a3 - b2;
  s.k = s.n + s.m;
  s.p = a2 - d - s.l;
  s.q = a3 - d - s.n;
  for (int x : {s.k, s.l, s.m, s.n, s.o, s.p, s.q})
    if (x < 0) return std::nullopt;
  if (b1 != d + s.k + s.p || b2 != d + s.m + s.q) return std::nullopt;
  return s;
}

std::string run(char c, int n) { return std::string(static_cast<std::size_t>(n), c); }

void check_index(const AdmissibleTriple& t, int i) {
  if (i < 0 || i > t.d) throw std::out_of_range("basis index " + std::to_string(i) + " outside 0.." + std::to_string(t.d));
}

// lengths of the outer, triangle and inner blocks of each edge
struct Blocks {
  std::array<int, 3> left, mid, right;
};

Blocks blocks(const AdmissibleTriple& t) {
  int d = t.d;
  return {{d + t.n, d + t.p, d + t.l + t.q}, {t.m, t.m, t.m}, {d + t.p, d + t.l + t.q, d + t.n}};
}

WebSum placed(const WebSum& s, const std::string& left, const std::string& right) {
  WebSum out;
  for (const auto& [k, term] : s.terms) out.add(sl3::place(term.web, left, right), term.coeff);
  return out;
}

}  // namespace

std::optional<AdmissibleTriple> admissible(const Triple& t) {
  for (const auto& w : t)
    if (w.a < 0 || w.b < 0) throw std::invalid_argument("weights must be nonnegative");
  for (bool dual : {false, true})
    for (bool reversed : {false, true})
      for (int rotation = 0; rotation < 3; ++rotation) {
        std::optional<AdmissibleTriple> s = solve(transform(t, rotation, reversed, dual));
        if (!s) continue;
        s->input = t;
        s->rotation = rotation;
        s->reversed = reversed;
        s->dual = dual;
        return s;
      }
  return std::nullopt;
}

Triple parse_triple(const std::string& text) {
  static const std::regex re(R"(\s*(\d+)\s*,\s*(\d+)\s*;\s*(\d+)\s*,\s*(\d+)\s*;\s*(\d+)\s*,\s*(\d+)\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw std::invalid_argument("expected a1,b1;a2,b2;a3,b3, got '" + text + "'");
  Triple t;
  for (std::size_t e = 0; e < 3; ++e) t[e] = {std::stoi(m[2 * e + 1]), std::stoi(m[2 * e + 2])};
  return t;
}

std::string edge_signature(const AdmissibleTriple& t, int e, int i) {
  check_index(t, i);
  int d = t.d;
  switch (e) {
    case 0: return run('+', i) + run('-', t.n + d - i) + run('-', t.m) + run('+', d - i) + run('-', i + t.p);
    case 1: return run('+', i + t.p) + run('-', d - i) + run('-', t.m) + run('+', t.l + d - i) + run('-', i + t.q);
    case 2: return run('+', i + t.q) + run('-', t.l + d - i) + run('-', t.m) + run('+', t.n + d - i) + run('-', i);
    default: throw std::out_of_range("edge index must be 0, 1 or 2");
  }
}

Web hex_triangle(int m) {
  if (m < 1) throw std::invalid_argument("triangle needs at least one strand per side");
  // sources on a triangular grid, apex first; a sink inside every downward cell
  struct P {
    double x, y;
  };
  const double h = std::sqrt(3.0) / 2;
  auto src_pos = [&](int r, int c) { return P{c - r / 2.0, -r * h}; };
  WebBuilder b;
  std::vector<std::vector<int>> src(static_cast<std::size_t>(m)), snk(static_cast<std::size_t>(m));
  std::vector<std::vector<std::vector<std::pair<double, int>>>> src_nbr(static_cast<std::size_t>(m));
  for (int r = 0; r < m; ++r) {
    src_nbr[static_cast<std::size_t>(r)].resize(static_cast<std::size_t>(r + 1));
    for (int c = 0; c <= r; ++c) src[static_cast<std::size_t>(r)].push_back(b.add_vertex(VKind::Source, 3));
  }
  for (int r = 0; r + 1 < m; ++r)
    for (int c = 0; c <= r; ++c) snk[static_cast<std::size_t>(r)].push_back(b.add_vertex(VKind::Sink, 3));

  // neighbor tokens: >= 0 sink vertex id, -1 left side, -2 base, -3 right side
  auto angle = [](P from, P to) { return std::atan2(to.y - from.y, to.x - from.x); };
  const double left_out = std::atan2(0.5, -h), right_out = std::atan2(0.5, h), base_out = std::atan2(-1.0, 0.0);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c <= r; ++c) {
      auto& nb = src_nbr[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      P s = src_pos(r, c);
      auto sink_at = [&](int rr, int cc) {
        P a = src_pos(rr, cc), b1 = src_pos(rr + 1, cc), b2 = src_pos(rr + 1, cc + 1);
        P centre{(a.x + b1.x + b2.x) / 3, (a.y + b1.y + b2.y) / 3};
        nb.push_back({angle(s, centre), snk[static_cast<std::size_t>(rr)][static_cast<std::size_t>(cc)]});
      };
      if (r + 1 < m) sink_at(r, c);
      if (r >= 1 && c >= 1) sink_at(r - 1, c - 1);
      if (r >= 1 && c <= r - 1) sink_at(r - 1, c);
      if (c == 0) nb.push_back({left_out, -1});
      if (r == m - 1) nb.push_back({base_out, -2});
      if (c == r) nb.push_back({right_out, -3});
      std::sort(nb.begin(), nb.end());
    }
  auto slot_of = [](const std::vector<std::pair<double, int>>& nb, int token) {
    for (std::size_t k = 0; k < nb.size(); ++k)
      if (nb[k].second == token) return static_cast<int>(k);
    throw std::logic_error("hex_triangle: missing neighbor");
  };

  // each sink sees its three sources; slots by angle
  for (int r = 0; r + 1 < m; ++r)
    for (int c = 0; c <= r; ++c) {
      int t = snk[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      std::array<std::pair<int, int>, 3> corners{{{r, c}, {r + 1, c}, {r + 1, c + 1}}};
      P a = src_pos(r, c), b1 = src_pos(r + 1, c), b2 = src_pos(r + 1, c + 1);
      P centre{(a.x + b1.x + b2.x) / 3, (a.y + b1.y + b2.y) / 3};
      std::vector<std::pair<double, int>> around;
      for (int k = 0; k < 3; ++k)
        around.push_back({angle(centre, src_pos(corners[static_cast<std::size_t>(k)].first, corners[static_cast<std::size_t>(k)].second)), k});
      std::sort(around.begin(), around.end());
      for (int slot = 0; slot < 3; ++slot) {
        auto [rr, cc] = corners[static_cast<std::size_t>(around[static_cast<std::size_t>(slot)].second)];
        const auto& nb = src_nbr[static_cast<std::size_t>(rr)][static_cast<std::size_t>(cc)];
        b.connect(src[static_cast<std::size_t>(rr)][static_cast<std::size_t>(cc)], slot_of(nb, t), t, slot);
      }
    }

  // boundary counterclockwise from the apex: left side down, base left to right, right side up
  std::vector<int> ccw;
  auto out_edge = [&](int r, int c, int token) {
    int bv = b.add_vertex(VKind::Boundary, 1);
    b.connect(src[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)],
              slot_of(src_nbr[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)], token), bv, 0);
    ccw.push_back(bv);
  };
  for (int r = 0; r < m; ++r) out_edge(r, 0, -1);
  for (int c = 0; c < m; ++c) out_edge(m - 1, c, -2);
  for (int r = m - 1; r >= 0; --r) out_edge(r, r, -3);
  b.set_boundary(ccw, static_cast<int>(ccw.size()));
  return b.finish();
}

Web trihedron_half(const AdmissibleTriple& t, int i) {
  check_index(t, i);
  std::array<std::string, 3> sig;
  for (int e = 0; e < 3; ++e) sig[static_cast<std::size_t>(e)] = edge_signature(t, e, i);
  Blocks bl = blocks(t);

  WebBuilder b;
  std::array<std::vector<int>, 3> pts;
  std::vector<int> ccw;
  for (int e = 0; e < 3; ++e)
    for (std::size_t k = 0; k < sig[static_cast<std::size_t>(e)].size(); ++k) {
      int v = b.add_vertex(VKind::Boundary, 1);
      pts[static_cast<std::size_t>(e)].push_back(v);
      ccw.push_back(v);
    }
  auto sign = [&](int e, int k) { return sig[static_cast<std::size_t>(e)][static_cast<std::size_t>(k)]; };
  // fully nested arcs between the right block of edge x and the left block of edge y
  auto nest = [&](int x, int xfrom, int y, int yfrom, int len) {
    for (int s = 0; s < len; ++s) {
      int kx = xfrom + s, ky = yfrom + len - 1 - s;
      int vx = pts[static_cast<std::size_t>(x)][static_cast<std::size_t>(kx)];
      int vy = pts[static_cast<std::size_t>(y)][static_cast<std::size_t>(ky)];
      if (sign(x, kx) == sign(y, ky)) throw std::logic_error("trihedron arc joins like signs");
      if (sign(x, kx) == '+')
        b.connect(vx, 0, vy, 0);
      else
        b.connect(vy, 0, vx, 0);
    }
  };
  auto size = [&](int e) { return static_cast<int>(sig[static_cast<std::size_t>(e)].size()); };
  nest(0, 0, 2, size(2) - bl.right[2], bl.left[0]);
  nest(0, size(0) - bl.right[0], 1, 0, bl.right[0]);
  nest(1, size(1) - bl.right[1], 2, 0, bl.right[1]);

  if (t.m > 0) {
    std::vector<int> tri = b.embed(hex_triangle(t.m));
    std::size_t next = 0;
    for (int e = 0; e < 3; ++e)
      for (int s = 0; s < t.m; ++s) {
        int v = pts[static_cast<std::size_t>(e)][static_cast<std::size_t>(bl.left[static_cast<std::size_t>(e)] + s)];
        b.connect(tri[next++], 1, v, 0);
      }
  }
  b.set_boundary(ccw, static_cast<int>(ccw.size()));
  return b.finish();
}

RatFunc theta_entry(const Triple& input, int i, int j, const ThetaOptions& opt) {
  std::optional<AdmissibleTriple> t = admissible(input);
  if (!t) throw std::invalid_argument("triple is not admissible");
  for (const auto& w : t->normalized)
    if (w.a + w.b > opt.max_weight)
      throw sl3::GuardrailError("edge weight " + std::to_string(w.a + w.b) + " exceeds the limit " + std::to_string(opt.max_weight));
  check_index(*t, i);
  check_index(*t, j);
  sl3::ReduceOptions ro;
  ro.parallel = opt.parallel;
  sl3::ClaspOptions co;
  co.max_weight = opt.max_weight;

  std::array<std::string, 3> lo, hi;
  for (int e = 0; e < 3; ++e) {
    lo[static_cast<std::size_t>(e)] = edge_signature(*t, e, j);
    hi[static_cast<std::size_t>(e)] = edge_signature(*t, e, i);
  }
  WebSum x = WebSum::of(flip(trihedron_half(*t, j)));
  // current upper signature: edges before e already clasped, the rest still at j
  for (int e = 0; e < 3; ++e) {
    const auto& w = t->normalized[static_cast<std::size_t>(e)];
    if (w.a + w.b == 0) continue;
    std::string left, right;
    for (int f = 0; f < e; ++f) left += hi[static_cast<std::size_t>(f)];
    for (int f = e + 1; f < 3; ++f) right += lo[static_cast<std::size_t>(f)];
    std::string seg = sl3::segregated(w.a, w.b);
    std::string cur = left + lo[static_cast<std::size_t>(e)] + right;
    x = sl3::reduce(glue(WebSum::of(sl3::place(flip(sl3::nonsegregation_web(lo[static_cast<std::size_t>(e)])), left, right)), x, cur), ro);
    cur = left + seg + right;
    x = sl3::reduce(glue(placed(sl3::clasp(w.a, w.b, co), left, right), x, cur), ro);
    x = sl3::reduce(glue(WebSum::of(sl3::place(sl3::nonsegregation_web(hi[static_cast<std::size_t>(e)]), left, right)), x, cur), ro);
  }
  WebSum closed = glue(WebSum::of(trihedron_half(*t, i)), x, hi[0] + hi[1] + hi[2]);
  RatFunc total;
  for (const auto& [k, term] : closed.terms) total += term.coeff * RatFunc(sl3::evaluate_closed(term.web, ro));
  return total;
}

std::vector<std::vector<RatFunc>> theta_matrix(const Triple& input, const ThetaOptions& opt) {
  std::optional<AdmissibleTriple> t = admissible(input);
  if (!t) throw std::invalid_argument("triple is not admissible");
  int n = t->d + 1;
  std::vector<std::vector<RatFunc>> out(static_cast<std::size_t>(n), std::vector<RatFunc>(static_cast<std::size_t>(n)));
  std::exception_ptr err;
  ThetaOptions inner = opt;
  inner.parallel = false;
#pragma omp parallel for schedule(dynamic) if (opt.parallel)
  for (int idx = 0; idx < n * n; ++idx) {
    try {
      out[static_cast<std::size_t>(idx / n)][static_cast<std::size_t>(idx % n)] = theta_entry(input, idx / n, idx % n, inner);
    } catch (...) {
#pragma omp critical(theta_error)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return out;
}

}  // namespace spider::theta
