#include "spider/sl3_reduce.hpp"

#include <exception>
#include <functional>
#include <mutex>
#include <random>
#include <unordered_map>

namespace spider::sl3 {

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Loop:
      return "loop";
    case Rule::Closed:
      return "closed";
    case Rule::Bigon:
      return "bigon";
    case Rule::Square:
      return "square";
  }
  return "?";
}

namespace {

struct Elliptic {
  std::vector<int> bigons, squares;  // indices into the face list
};

Elliptic elliptic_faces(const Web& w, const std::vector<Face>& fs) {
  Elliptic e;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const Face& f = fs[i];
    if (f.touches_boundary) continue;
    if (f.size() == 2) {
      int u = w.he_vert[static_cast<std::size_t>(f.halfedges[0])], v = w.he_vert[static_cast<std::size_t>(f.halfedges[1])];
      if (u != v) e.bigons.push_back(static_cast<int>(i));
    } else if (f.size() == 4) {
      int v[4];
      for (int k = 0; k < 4; ++k) v[k] = w.he_vert[static_cast<std::size_t>(f.halfedges[static_cast<std::size_t>(k)])];
      bool distinct = v[0] != v[1] && v[0] != v[2] && v[0] != v[3] && v[1] != v[2] && v[1] != v[3] && v[2] != v[3];
      if (distinct) e.squares.push_back(static_cast<int>(i));
    }
  }
  return e;
}

std::mutex cache_mu;
std::unordered_map<std::string, LaurentPoly>& closed_cache() {
  static std::unordered_map<std::string, LaurentPoly> c;
  return c;
}

// components larger than this are evaluated without memoizing
constexpr int kCacheLimit = 48;

LaurentPoly eval_component(const Web& c, const ReduceOptions& opt);

struct Outcome {
  bool done = false;
  std::vector<std::pair<Web, RatFunc>> next;
  std::vector<std::string> keys;  // canonical keys of `next`, filled by the worker
  Rule rule = Rule::Loop;
  int face = -1;
};

Outcome step(const Web& w, const std::string& key, int depth, const ReduceOptions& opt) {
  Outcome o;
  if (w.loops > 0) {
    Web r = w;
    r.loops = 0;
    o.next.emplace_back(std::move(r), RatFunc(qint(3).pow(static_cast<unsigned>(w.loops))));
    o.rule = Rule::Loop;
    return o;
  }
  if (w.num_vertices() == 0) {
    o.done = true;
    return o;
  }
  std::vector<Web> closed;
  Web rest = split_closed(w, closed);
  bool single_closed = w.boundary.empty() && closed.size() == 1;
  if (!closed.empty() && !single_closed) {
    LaurentPoly s(1);
    for (const Web& c : closed) s *= eval_component(c, opt);
    o.next.emplace_back(std::move(rest), RatFunc(s));
    o.rule = Rule::Closed;
    return o;
  }
  std::vector<Face> fs = faces(w);
  Elliptic e = elliptic_faces(w, fs);
  if (e.bigons.empty() && e.squares.empty()) {
    o.done = true;
    return o;
  }
  int pick;
  if (opt.shuffle_seed) {
    std::mt19937_64 rng(opt.shuffle_seed ^ std::hash<std::string>{}(key) ^ (static_cast<std::uint64_t>(depth) * 0x9e3779b97f4a7c15ULL));
    std::size_t n = e.bigons.size() + e.squares.size();
    std::size_t k = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    pick = k < e.bigons.size() ? e.bigons[k] : e.squares[k - e.bigons.size()];
  } else {
    pick = e.bigons.empty() ? e.squares.front() : e.bigons.front();
  }
  const Face& f = fs[static_cast<std::size_t>(pick)];
  o.face = f.halfedges.front();
  if (f.size() == 2) {
    o.rule = Rule::Bigon;
    o.next.emplace_back(delete_edges(w, {f.halfedges[0]}), RatFunc(-qint(2)));
  } else {
    o.rule = Rule::Square;
    o.next.emplace_back(delete_edges(w, {f.halfedges[0], f.halfedges[2]}), RatFunc(1));
    o.next.emplace_back(delete_edges(w, {f.halfedges[1], f.halfedges[3]}), RatFunc(1));
  }
  return o;
}

LaurentPoly scalar_of(const WebSum& r) {
  if (r.is_zero()) return LaurentPoly(0);
  if (r.size() != 1 || r.terms.begin()->second.web.num_vertices() != 0 || r.terms.begin()->second.web.loops != 0)
    throw std::logic_error("closed web did not reduce to a scalar");
  const RatFunc& c = r.terms.begin()->second.coeff;
  if (!c.is_poly()) throw std::logic_error("closed web value kept a denominator: " + c.str());
  return c.num();
}

LaurentPoly eval_component(const Web& c, const ReduceOptions& opt) {
  bool cacheable = c.num_vertices() <= kCacheLimit && !opt.shuffle_seed;
  std::string key;
  if (cacheable) {
    key = encode(c);
    std::lock_guard<std::mutex> lk(cache_mu);
    auto it = closed_cache().find(key);
    if (it != closed_cache().end()) return it->second;
  }
  ReduceOptions inner = opt;
  inner.parallel = false;
  inner.trace = nullptr;
  LaurentPoly v = scalar_of(reduce(WebSum::of(c), inner));
  if (cacheable) {
    std::lock_guard<std::mutex> lk(cache_mu);
    closed_cache().emplace(key, v);
  }
  return v;
}

}  // namespace

void clear_closed_cache() {
  std::lock_guard<std::mutex> lk(cache_mu);
  closed_cache().clear();
}

WebSum reduce(const WebSum& s, const ReduceOptions& opt) {
  WebSum result;
  WebSum pending = s;
  int depth = 0;
  while (!pending.is_zero()) {
    std::vector<const std::pair<const std::string, WebSum::Term>*> items;
    items.reserve(pending.size());
    for (const auto& kv : pending.terms) items.push_back(&kv);
    const long n = static_cast<long>(items.size());
    std::vector<Outcome> outs(static_cast<std::size_t>(n));
    std::vector<std::exception_ptr> errs(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic) if (opt.parallel && n > 1)
    for (long i = 0; i < n; ++i) {
      try {
        Outcome& o = outs[static_cast<std::size_t>(i)];
        o = step(items[static_cast<std::size_t>(i)]->second.web, items[static_cast<std::size_t>(i)]->first, depth, opt);
        for (auto& [w, c] : o.next) {
          auto [k, cw] = keyed(w);
          o.keys.push_back(std::move(k));
          w = std::move(cw);
          c = items[static_cast<std::size_t>(i)]->second.coeff * c;
        }
      } catch (...) {
        errs[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
    for (auto& e : errs)
      if (e) std::rethrow_exception(e);
    // merge in key order so the result does not depend on thread timing
    WebSum next;
    for (long i = 0; i < n; ++i) {
      const auto& [key, term] = *items[static_cast<std::size_t>(i)];
      Outcome& o = outs[static_cast<std::size_t>(i)];
      if (o.done) {
        result.add_keyed(key, term.web, term.coeff);
        continue;
      }
      if (opt.trace) opt.trace->push_back({o.rule, o.face, depth, key});
      for (std::size_t j = 0; j < o.next.size(); ++j) next.add_keyed(o.keys[j], o.next[j].first, o.next[j].second);
    }
    pending = std::move(next);
    ++depth;
  }
  return result;
}

namespace {

void reference_rec(const Web& w, const RatFunc& c, WebSum& out) {
  if (w.loops > 0) {
    Web r = w;
    r.loops = 0;
    reference_rec(r, c * RatFunc(qint(3).pow(static_cast<unsigned>(w.loops))), out);
    return;
  }
  std::vector<Face> fs = faces(w);
  Elliptic e = elliptic_faces(w, fs);
  if (!e.bigons.empty()) {
    const Face& f = fs[static_cast<std::size_t>(e.bigons.front())];
    reference_rec(delete_edges(w, {f.halfedges[0]}), c * RatFunc(-qint(2)), out);
    return;
  }
  if (!e.squares.empty()) {
    const Face& f = fs[static_cast<std::size_t>(e.squares.front())];
    reference_rec(delete_edges(w, {f.halfedges[0], f.halfedges[2]}), c, out);
    reference_rec(delete_edges(w, {f.halfedges[1], f.halfedges[3]}), c, out);
    return;
  }
  out.add(w, c);
}

}  // namespace

WebSum reduce_reference(const WebSum& s) {
  WebSum out;
  for (const auto& [k, t] : s.terms) reference_rec(t.web, t.coeff, out);
  return out;
}

bool is_non_elliptic(const Web& w) {
  if (w.loops > 0) return false;
  std::vector<Face> fs = faces(w);
  for (const Face& f : fs)
    if (!f.touches_boundary && f.size() < 6) return false;
  // a closed component always has an elliptic face, but an empty face list hides it
  std::vector<Web> closed;
  split_closed(w, closed);
  return closed.empty();
}

LaurentPoly evaluate_closed(const Web& w, const ReduceOptions& opt) {
  if (!w.boundary.empty()) throw WebError("evaluate_closed needs an empty boundary");
  return scalar_of(reduce(WebSum::of(w), opt));
}

Web orient_graph(const PlaneGraph& g, bool flip_classes) {
  const int n = g.num_vertices;
  if (static_cast<int>(g.rot.size()) != n) throw WebError("rotation table size mismatch");
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n));
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    auto [a, b] = g.edges[e];
    if (a < 0 || b < 0 || a >= n || b >= n) throw WebError("edge endpoint out of range");
    if (a == b) throw WebError("graph is not bipartite: self-loop at vertex " + std::to_string(a));
    adj[static_cast<std::size_t>(a)].push_back({b, static_cast<int>(e)});
    adj[static_cast<std::size_t>(b)].push_back({a, static_cast<int>(e)});
  }
  for (int v = 0; v < n; ++v)
    if (adj[static_cast<std::size_t>(v)].size() != 3 || g.rot[static_cast<std::size_t>(v)].size() != 3)
      throw WebError("graph is not cubic at vertex " + std::to_string(v));
  std::vector<int> color(static_cast<std::size_t>(n), -1);
  for (int s = 0; s < n; ++s) {
    if (color[static_cast<std::size_t>(s)] >= 0) continue;
    color[static_cast<std::size_t>(s)] = flip_classes ? 1 : 0;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (auto [u, e] : adj[static_cast<std::size_t>(v)]) {
        if (color[static_cast<std::size_t>(u)] < 0) {
          color[static_cast<std::size_t>(u)] = 1 - color[static_cast<std::size_t>(v)];
          stack.push_back(u);
        } else if (color[static_cast<std::size_t>(u)] == color[static_cast<std::size_t>(v)]) {
          throw WebError("graph is not bipartite");
        }
      }
    }
  }
  WebBuilder b;
  for (int v = 0; v < n; ++v) b.add_vertex(color[static_cast<std::size_t>(v)] == 0 ? VKind::Source : VKind::Sink, 3);
  // slot of edge e at vertex v; a multi-edge appears once per end
  auto slot = [&](int v, int e) {
    const auto& r = g.rot[static_cast<std::size_t>(v)];
    for (int k = 0; k < 3; ++k)
      if (r[static_cast<std::size_t>(k)] == e) return k;
    throw WebError("edge " + std::to_string(e) + " missing from the rotation at vertex " + std::to_string(v));
  };
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    auto [a, bb] = g.edges[e];
    if (color[static_cast<std::size_t>(a)] != 0) std::swap(a, bb);
    b.connect(a, slot(a, static_cast<int>(e)), bb, slot(bb, static_cast<int>(e)));
  }
  b.add_loops(g.circles);
  b.set_boundary({}, 0);
  return b.finish();
}

LaurentPoly graph_invariant(const PlaneGraph& g, const ReduceOptions& opt) {
  return evaluate_closed(orient_graph(g), opt);
}

}  // namespace spider::sl3
