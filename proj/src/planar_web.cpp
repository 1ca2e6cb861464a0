#include "spider/planar_web.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace spider {

namespace {

bool trivalent(VKind k) { return k == VKind::Source || k == VKind::Sink || k == VKind::Sp4Tri; }

int expected_degree(VKind k) {
  switch (k) {
    case VKind::Source:
    case VKind::Sink:
    case VKind::Sp4Tri:
      return 3;
    case VKind::Sp4Tetra:
      return 4;
    case VKind::Boundary:
      return 1;
    case VKind::Pass:
      return 2;
  }
  return -1;
}

char sign_char(const Web& w, int v, bool upper) {
  int h = w.rot[static_cast<std::size_t>(v)][0];
  if (!w.oriented) return w.he_type[static_cast<std::size_t>(h)] ? 'd' : 's';
  bool out = w.he_out[static_cast<std::size_t>(h)];
  return (out != upper) ? '+' : '-';
}

// union-find over vertices joined by edges
std::vector<int> component_ids(const Web& w, int* count) {
  std::vector<int> comp(w.kind.size(), -1);
  int c = 0;
  std::vector<int> stack;
  for (int s = 0; s < w.num_vertices(); ++s) {
    if (comp[static_cast<std::size_t>(s)] >= 0) continue;
    comp[static_cast<std::size_t>(s)] = c;
    stack.push_back(s);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int h : w.rot[static_cast<std::size_t>(v)]) {
        int u = w.he_vert[static_cast<std::size_t>(w.he_twin[static_cast<std::size_t>(h)])];
        if (comp[static_cast<std::size_t>(u)] < 0) {
          comp[static_cast<std::size_t>(u)] = c;
          stack.push_back(u);
        }
      }
    }
    ++c;
  }
  if (count) *count = c;
  return comp;
}

}  // namespace

std::string Web::lower_signature() const {
  std::string s;
  for (int i = 0; i < n_lower; ++i) s += sign_char(*this, lower_vertex(i), false);
  return s;
}

std::string Web::upper_signature() const {
  std::string s;
  for (int i = 0; i < n_upper(); ++i) s += sign_char(*this, upper_vertex(i), true);
  return s;
}

int Web::pos_in_rot(int h) const {
  const auto& r = rot[static_cast<std::size_t>(he_vert[static_cast<std::size_t>(h)])];
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i] == h) return static_cast<int>(i);
  throw WebError("half-edge missing from its rotation");
}

int Web::next_ccw(int h) const {
  const auto& r = rot[static_cast<std::size_t>(he_vert[static_cast<std::size_t>(h)])];
  int p = pos_in_rot(h);
  return r[static_cast<std::size_t>((p + 1) % static_cast<int>(r.size()))];
}

// ---------------------------------------------------------------- builder

int WebBuilder::add_vertex(VKind k, int degree) {
  int v = w_.num_vertices();
  w_.kind.push_back(k);
  std::vector<int> r;
  for (int i = 0; i < degree; ++i) {
    int h = w_.num_halfedges();
    w_.he_vert.push_back(v);
    w_.he_twin.push_back(-1);
    w_.he_out.push_back(0);
    w_.he_type.push_back(0);
    r.push_back(h);
  }
  w_.rot.push_back(std::move(r));
  return v;
}

void WebBuilder::connect(int v1, int slot1, int v2, int slot2, EdgeType t) {
  int h1 = w_.rot.at(static_cast<std::size_t>(v1)).at(static_cast<std::size_t>(slot1));
  int h2 = w_.rot.at(static_cast<std::size_t>(v2)).at(static_cast<std::size_t>(slot2));
  if (w_.he_twin[static_cast<std::size_t>(h1)] >= 0 || w_.he_twin[static_cast<std::size_t>(h2)] >= 0)
    throw WebError("slot already connected");
  w_.he_twin[static_cast<std::size_t>(h1)] = h2;
  w_.he_twin[static_cast<std::size_t>(h2)] = h1;
  w_.he_out[static_cast<std::size_t>(h1)] = 1;
  w_.he_out[static_cast<std::size_t>(h2)] = 0;
  w_.he_type[static_cast<std::size_t>(h1)] = w_.he_type[static_cast<std::size_t>(h2)] = static_cast<std::uint8_t>(t);
}

std::vector<int> WebBuilder::embed(const Web& w) {
  int voff = w_.num_vertices(), hoff = w_.num_halfedges();
  for (int h = 0; h < w.num_halfedges(); ++h) {
    w_.he_vert.push_back(w.he_vert[static_cast<std::size_t>(h)] + voff);
    w_.he_twin.push_back(w.he_twin[static_cast<std::size_t>(h)] + hoff);
    w_.he_out.push_back(w.he_out[static_cast<std::size_t>(h)]);
    w_.he_type.push_back(w.he_type[static_cast<std::size_t>(h)]);
  }
  for (int v = 0; v < w.num_vertices(); ++v) {
    w_.kind.push_back(w.kind[static_cast<std::size_t>(v)]);
    std::vector<int> r = w.rot[static_cast<std::size_t>(v)];
    for (int& h : r) h += hoff;
    w_.rot.push_back(std::move(r));
  }
  w_.loops += w.loops;
  w_.double_loops += w.double_loops;
  std::vector<int> b;
  for (int v : w.boundary) {
    int nv = v + voff;
    // open a second slot: the vertex becomes a pass-through point
    w_.kind[static_cast<std::size_t>(nv)] = VKind::Pass;
    int h = w_.num_halfedges();
    w_.he_vert.push_back(nv);
    w_.he_twin.push_back(-1);
    w_.he_out.push_back(0);
    w_.he_type.push_back(w_.he_type[static_cast<std::size_t>(w_.rot[static_cast<std::size_t>(nv)][0])]);
    w_.rot[static_cast<std::size_t>(nv)].push_back(h);
    b.push_back(nv);
  }
  return b;
}

void WebBuilder::set_boundary(std::vector<int> ccw_vertices, int n_lower) {
  w_.boundary = std::move(ccw_vertices);
  w_.n_lower = n_lower;
}

void WebBuilder::add_loops(int k, EdgeType t) {
  if (t == EdgeType::Single)
    w_.loops += k;
  else
    w_.double_loops += k;
}

namespace {

// Dissolve every pass vertex into the strand running through it, drop dead
// half-edges, and compact the tables. Orientation flags on pass-owned
// half-edges are overwritten; flags between real ends must already agree.
Web dissolve(Web& w, std::vector<char> dead_h) {
  std::vector<char> is_bd(w.kind.size(), 0);
  for (int v : w.boundary) is_bd[static_cast<std::size_t>(v)] = 1;
  std::vector<char> dead_v(w.kind.size(), 0);
  auto is_pass_owned = [&](int h) { return w.kind[static_cast<std::size_t>(w.he_vert[static_cast<std::size_t>(h)])] == VKind::Pass; };
  for (int p = 0; p < w.num_vertices(); ++p) {
    if (w.kind[static_cast<std::size_t>(p)] != VKind::Pass) continue;
    if (is_bd[static_cast<std::size_t>(p)]) throw WebError("boundary point on a pass vertex");
    const auto& r = w.rot[static_cast<std::size_t>(p)];
    if (r.size() != 2) throw WebError("pass vertex must be bivalent");
    int a = r[0], b = r[1];
    int ta = w.he_twin[static_cast<std::size_t>(a)], tb = w.he_twin[static_cast<std::size_t>(b)];
    if (w.he_type[static_cast<std::size_t>(a)] != w.he_type[static_cast<std::size_t>(b)])
      throw WebError("strand type changes through a pass vertex");
    dead_v[static_cast<std::size_t>(p)] = 1;
    dead_h[static_cast<std::size_t>(a)] = dead_h[static_cast<std::size_t>(b)] = 1;
    w.kind[static_cast<std::size_t>(p)] = VKind::Boundary;  // retired
    if (ta == b) {
      if (w.he_type[static_cast<std::size_t>(a)])
        ++w.double_loops;
      else
        ++w.loops;
      continue;
    }
    w.he_twin[static_cast<std::size_t>(ta)] = tb;
    w.he_twin[static_cast<std::size_t>(tb)] = ta;
    if (!w.oriented) continue;
    bool pa = is_pass_owned(ta), pb = is_pass_owned(tb);
    if (!pa && !pb) {
      if (w.he_out[static_cast<std::size_t>(ta)] == w.he_out[static_cast<std::size_t>(tb)])
        throw WebError("orientation mismatch along a strand");
    } else if (pa && !pb) {
      w.he_out[static_cast<std::size_t>(ta)] = !w.he_out[static_cast<std::size_t>(tb)];
    } else {
      w.he_out[static_cast<std::size_t>(tb)] = !w.he_out[static_cast<std::size_t>(ta)];
    }
  }
  std::vector<int> vmap(w.kind.size(), -1), hmap(w.he_vert.size(), -1);
  Web out;
  out.oriented = w.oriented;
  out.loops = w.loops;
  out.double_loops = w.double_loops;
  out.n_lower = w.n_lower;
  for (int v = 0; v < w.num_vertices(); ++v)
    if (!dead_v[static_cast<std::size_t>(v)]) {
      vmap[static_cast<std::size_t>(v)] = out.num_vertices();
      out.kind.push_back(w.kind[static_cast<std::size_t>(v)]);
      out.rot.emplace_back();
    }
  int live = 0;
  for (int h = 0; h < w.num_halfedges(); ++h)
    if (!dead_h[static_cast<std::size_t>(h)]) hmap[static_cast<std::size_t>(h)] = live++;
  out.he_vert.resize(static_cast<std::size_t>(live));
  out.he_twin.resize(static_cast<std::size_t>(live));
  out.he_out.resize(static_cast<std::size_t>(live));
  out.he_type.resize(static_cast<std::size_t>(live));
  for (int h = 0; h < w.num_halfedges(); ++h) {
    int nh = hmap[static_cast<std::size_t>(h)];
    if (nh < 0) continue;
    out.he_vert[static_cast<std::size_t>(nh)] = vmap[static_cast<std::size_t>(w.he_vert[static_cast<std::size_t>(h)])];
    out.he_twin[static_cast<std::size_t>(nh)] = hmap[static_cast<std::size_t>(w.he_twin[static_cast<std::size_t>(h)])];
    out.he_out[static_cast<std::size_t>(nh)] = w.he_out[static_cast<std::size_t>(h)];
    out.he_type[static_cast<std::size_t>(nh)] = w.he_type[static_cast<std::size_t>(h)];
  }
  for (int v = 0; v < w.num_vertices(); ++v) {
    int nv = vmap[static_cast<std::size_t>(v)];
    if (nv < 0) continue;
    for (int h : w.rot[static_cast<std::size_t>(v)]) out.rot[static_cast<std::size_t>(nv)].push_back(hmap[static_cast<std::size_t>(h)]);
  }
  for (int v : w.boundary) out.boundary.push_back(vmap[static_cast<std::size_t>(v)]);
  return out;
}

}  // namespace

Web WebBuilder::finish(bool check) {
  for (int h = 0; h < w_.num_halfedges(); ++h)
    if (w_.he_twin[static_cast<std::size_t>(h)] < 0) throw WebError("unconnected slot");
  Web out = dissolve(w_, std::vector<char>(w_.he_vert.size(), 0));
  w_ = Web{};
  w_.oriented = out.oriented;
  if (check) validate(out);
  return out;
}

Web delete_edges(const Web& w, const std::vector<int>& halfedges) {
  Web c = w;
  std::vector<char> dead(c.he_vert.size(), 0);
  for (int h : halfedges) {
    dead[static_cast<std::size_t>(h)] = 1;
    dead[static_cast<std::size_t>(c.he_twin[static_cast<std::size_t>(h)])] = 1;
  }
  for (int v = 0; v < c.num_vertices(); ++v) {
    auto& r = c.rot[static_cast<std::size_t>(v)];
    std::size_t before = r.size();
    r.erase(std::remove_if(r.begin(), r.end(), [&](int h) { return dead[static_cast<std::size_t>(h)] != 0; }), r.end());
    if (r.size() == before) continue;
    if (r.size() != 2 || !trivalent(c.kind[static_cast<std::size_t>(v)]))
      throw WebError("edge deletion must leave bivalent trivalent vertices");
    c.kind[static_cast<std::size_t>(v)] = VKind::Pass;
  }
  return dissolve(c, dead);
}

// ---------------------------------------------------------------- validation

int num_components(const Web& w) {
  int c = 0;
  component_ids(w, &c);
  return c;
}

std::vector<Face> faces(const Web& w) {
  std::vector<Face> fs;
  std::vector<char> seen(w.he_vert.size(), 0);
  for (int s = 0; s < w.num_halfedges(); ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    Face f;
    int h = s;
    do {
      seen[static_cast<std::size_t>(h)] = 1;
      f.halfedges.push_back(h);
      if (w.kind[static_cast<std::size_t>(w.he_vert[static_cast<std::size_t>(h)])] == VKind::Boundary) f.touches_boundary = true;
      h = w.next_ccw(w.he_twin[static_cast<std::size_t>(h)]);
    } while (h != s);
    fs.push_back(std::move(f));
  }
  return fs;
}

bool euler_ok(const Web& w) {
  int c = 0;
  std::vector<int> comp = component_ids(w, &c);
  std::vector<long> chi(static_cast<std::size_t>(c), 0);
  for (int v = 0; v < w.num_vertices(); ++v) chi[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])] += 1;
  for (int h = 0; h < w.num_halfedges(); ++h)
    if (h < w.he_twin[static_cast<std::size_t>(h)]) chi[static_cast<std::size_t>(comp[static_cast<std::size_t>(w.he_vert[static_cast<std::size_t>(h)])])] -= 1;
  for (const Face& f : faces(w)) chi[static_cast<std::size_t>(comp[static_cast<std::size_t>(w.he_vert[static_cast<std::size_t>(f.halfedges[0])])])] += 1;
  return std::all_of(chi.begin(), chi.end(), [](long x) { return x == 2; });
}

void validate(const Web& w) {
  const int V = w.num_vertices(), H = w.num_halfedges();
  if (w.rot.size() != w.kind.size()) throw WebError("rotation table size mismatch");
  if (static_cast<int>(w.he_twin.size()) != H || static_cast<int>(w.he_out.size()) != H || static_cast<int>(w.he_type.size()) != H)
    throw WebError("half-edge table size mismatch");
  std::vector<int> owner(static_cast<std::size_t>(H), -1);
  for (int v = 0; v < V; ++v) {
    VKind k = w.kind[static_cast<std::size_t>(v)];
    if (k == VKind::Pass) throw WebError("unresolved pass vertex");
    if (w.oriented && (k == VKind::Sp4Tri || k == VKind::Sp4Tetra)) throw WebError("sp4 vertex in an oriented web");
    if (!w.oriented && (k == VKind::Source || k == VKind::Sink)) throw WebError("oriented vertex in an sp4 web");
    const auto& r = w.rot[static_cast<std::size_t>(v)];
    if (static_cast<int>(r.size()) != expected_degree(k)) throw WebError("vertex " + std::to_string(v) + " has wrong degree");
    for (int h : r) {
      if (h < 0 || h >= H || owner[static_cast<std::size_t>(h)] >= 0) throw WebError("rotation is not a permutation");
      owner[static_cast<std::size_t>(h)] = v;
    }
  }
  for (int h = 0; h < H; ++h) {
    if (owner[static_cast<std::size_t>(h)] != w.he_vert[static_cast<std::size_t>(h)]) throw WebError("half-edge vertex mismatch");
    int t = w.he_twin[static_cast<std::size_t>(h)];
    if (t < 0 || t >= H || t == h || w.he_twin[static_cast<std::size_t>(t)] != h) throw WebError("twin is not a fixed-point-free involution");
    if (w.he_type[static_cast<std::size_t>(h)] != w.he_type[static_cast<std::size_t>(t)]) throw WebError("edge type differs between its ends");
    if (w.oriented) {
      if (w.he_type[static_cast<std::size_t>(h)] != 0) throw WebError("double edge in an sl3 web");
      if (w.he_out[static_cast<std::size_t>(h)] == w.he_out[static_cast<std::size_t>(t)]) throw WebError("edge without a consistent direction");
    }
  }
  for (int v = 0; v < V; ++v) {
    VKind k = w.kind[static_cast<std::size_t>(v)];
    const auto& r = w.rot[static_cast<std::size_t>(v)];
    if (k == VKind::Source || k == VKind::Sink) {
      for (int h : r)
        if (static_cast<bool>(w.he_out[static_cast<std::size_t>(h)]) != (k == VKind::Source))
          throw WebError("trivalent vertex " + std::to_string(v) + " is neither all-in nor all-out");
    } else if (k == VKind::Sp4Tri) {
      int d = 0;
      for (int h : r) d += w.he_type[static_cast<std::size_t>(h)];
      if (d != 1) throw WebError("sp4 trivalent vertex needs exactly one double strand");
    } else if (k == VKind::Sp4Tetra) {
      for (int h : r)
        if (w.he_type[static_cast<std::size_t>(h)]) throw WebError("sp4 tetravalent vertex takes single strands");
    }
  }
  // boundary list
  std::vector<int> bidx(static_cast<std::size_t>(V), -1);
  for (std::size_t i = 0; i < w.boundary.size(); ++i) {
    int v = w.boundary[i];
    if (v < 0 || v >= V || w.kind[static_cast<std::size_t>(v)] != VKind::Boundary || bidx[static_cast<std::size_t>(v)] >= 0)
      throw WebError("bad boundary list");
    bidx[static_cast<std::size_t>(v)] = static_cast<int>(i);
  }
  for (int v = 0; v < V; ++v)
    if (w.kind[static_cast<std::size_t>(v)] == VKind::Boundary && bidx[static_cast<std::size_t>(v)] < 0) throw WebError("boundary vertex not listed");
  if (w.n_lower < 0 || w.n_lower > w.num_boundary()) throw WebError("bad lower count");
  if (!euler_ok(w)) throw WebError("map is not planar");
  // each component meets the disk boundary in one face, in counterclockwise order
  int c = 0;
  std::vector<int> comp = component_ids(w, &c);
  std::vector<std::vector<int>> per_comp(static_cast<std::size_t>(c));
  for (const Face& f : faces(w)) {
    std::vector<int> seq;
    for (int h : f.halfedges) {
      int b = bidx[static_cast<std::size_t>(w.he_vert[static_cast<std::size_t>(h)])];
      if (b >= 0) seq.push_back(b);
    }
    if (seq.empty()) continue;
    auto& pc = per_comp[static_cast<std::size_t>(comp[static_cast<std::size_t>(w.he_vert[static_cast<std::size_t>(f.halfedges[0])])])];
    if (!pc.empty()) throw WebError("boundary points of one component lie in different faces");
    int descents = 0;
    for (std::size_t i = 0; i < seq.size(); ++i)
      if (seq[i] > seq[(i + 1) % seq.size()]) ++descents;
    if (seq.size() > 1 && descents != 1) throw WebError("boundary points out of cyclic order");
    pc = seq;
    std::sort(pc.begin(), pc.end());
  }
  // distinct components may not interleave along the boundary
  std::vector<int> label(w.boundary.size(), -1);
  for (int k = 0; k < c; ++k)
    for (int b : per_comp[static_cast<std::size_t>(k)]) label[static_cast<std::size_t>(b)] = k;
  for (int k = 0; k < c; ++k) {
    const auto& pc = per_comp[static_cast<std::size_t>(k)];
    if (pc.size() < 2) continue;
    // between consecutive own points, any foreign component must stay within one gap
    std::vector<int> gap_of(static_cast<std::size_t>(c), -1);
    for (std::size_t g = 0; g < pc.size(); ++g) {
      int lo = pc[g], hi = g + 1 < pc.size() ? pc[g + 1] : pc[0] + w.num_boundary();
      for (int x = lo + 1; x < hi; ++x) {
        int o = label[static_cast<std::size_t>(x % w.num_boundary())];
        if (o < 0 || o == k) continue;
        if (gap_of[static_cast<std::size_t>(o)] >= 0 && gap_of[static_cast<std::size_t>(o)] != static_cast<int>(g))
          throw WebError("components interleave along the boundary");
        gap_of[static_cast<std::size_t>(o)] = static_cast<int>(g);
      }
    }
  }
}

// ---------------------------------------------------------------- canonical form

namespace {

struct Traversal {
  std::vector<int> code;
  std::vector<int> order;  // vertices in discovery order
  std::vector<int> entry;  // entry half-edge per discovered vertex (parallel to order)
};

// breadth-first walk of one component; rotations are read from the entry half-edge
Traversal walk(const Web& w, int start, const std::vector<int>& bidx) {
  Traversal t;
  std::vector<int> local(w.kind.size(), -1);
  std::vector<int> entry_of(w.kind.size(), -1);
  int v0 = w.he_vert[static_cast<std::size_t>(start)];
  local[static_cast<std::size_t>(v0)] = 0;
  entry_of[static_cast<std::size_t>(v0)] = start;
  t.order.push_back(v0);
  for (std::size_t i = 0; i < t.order.size(); ++i) {
    int v = t.order[i];
    const auto& r = w.rot[static_cast<std::size_t>(v)];
    int deg = static_cast<int>(r.size());
    int e = entry_of[static_cast<std::size_t>(v)];
    int k = 0;
    while (r[static_cast<std::size_t>(k)] != e) ++k;
    t.entry.push_back(e);
    t.code.push_back(static_cast<int>(w.kind[static_cast<std::size_t>(v)]));
    if (w.kind[static_cast<std::size_t>(v)] == VKind::Boundary) t.code.push_back(bidx[static_cast<std::size_t>(v)]);
    for (int s = 0; s < deg; ++s) {
      int h = r[static_cast<std::size_t>((k + s) % deg)];
      int th = w.he_twin[static_cast<std::size_t>(h)];
      int u = w.he_vert[static_cast<std::size_t>(th)];
      if (local[static_cast<std::size_t>(u)] < 0) {
        local[static_cast<std::size_t>(u)] = static_cast<int>(t.order.size());
        entry_of[static_cast<std::size_t>(u)] = th;
        t.order.push_back(u);
      }
      const auto& ru = w.rot[static_cast<std::size_t>(u)];
      int du = static_cast<int>(ru.size());
      int pe = 0, pt = 0;
      for (int j = 0; j < du; ++j) {
        if (ru[static_cast<std::size_t>(j)] == entry_of[static_cast<std::size_t>(u)]) pe = j;
        if (ru[static_cast<std::size_t>(j)] == th) pt = j;
      }
      t.code.push_back(local[static_cast<std::size_t>(u)]);
      t.code.push_back((pt - pe + du) % du);
      t.code.push_back(w.he_out[static_cast<std::size_t>(h)] * 2 + w.he_type[static_cast<std::size_t>(h)]);
    }
  }
  return t;
}

struct CanonPlan {
  std::vector<Traversal> comps;  // boundary components by least boundary index, then closed ones sorted
  std::vector<int> head;         // header fields
};

CanonPlan plan(const Web& w) {
  std::vector<int> bidx(w.kind.size(), -1);
  for (std::size_t i = 0; i < w.boundary.size(); ++i) bidx[static_cast<std::size_t>(w.boundary[i])] = static_cast<int>(i);
  int c = 0;
  std::vector<int> comp = component_ids(w, &c);
  std::vector<char> done(static_cast<std::size_t>(c), 0);
  CanonPlan p;
  p.head = {w.oriented ? 1 : 0, w.n_lower, w.num_boundary(), w.loops, w.double_loops};
  for (int v : w.boundary) {
    int k = comp[static_cast<std::size_t>(v)];
    if (done[static_cast<std::size_t>(k)]) continue;
    done[static_cast<std::size_t>(k)] = 1;
    p.comps.push_back(walk(w, w.rot[static_cast<std::size_t>(v)][0], bidx));
  }
  // closed components: minimal code over starts at the rarest vertex kind
  std::vector<std::vector<int>> members(static_cast<std::size_t>(c));
  for (int v = 0; v < w.num_vertices(); ++v) members[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])].push_back(v);
  std::vector<Traversal> closed;
  for (int k = 0; k < c; ++k) {
    if (done[static_cast<std::size_t>(k)]) continue;
    std::map<VKind, int> count;
    for (int v : members[static_cast<std::size_t>(k)]) ++count[w.kind[static_cast<std::size_t>(v)]];
    VKind rare = count.begin()->first;
    int best = count.begin()->second;
    for (auto [kk, n] : count)
      if (n < best) rare = kk, best = n;
    bool have = false;
    Traversal pick;
    for (int v : members[static_cast<std::size_t>(k)]) {
      if (w.kind[static_cast<std::size_t>(v)] != rare) continue;
      for (int h : w.rot[static_cast<std::size_t>(v)]) {
        Traversal t = walk(w, h, bidx);
        if (!have || t.code < pick.code) pick = std::move(t), have = true;
      }
    }
    closed.push_back(std::move(pick));
  }
  std::sort(closed.begin(), closed.end(), [](const Traversal& a, const Traversal& b) { return a.code < b.code; });
  for (auto& t : closed) p.comps.push_back(std::move(t));
  return p;
}

std::string key_of(const CanonPlan& p) {
  std::string s;
  s.reserve(64);
  auto put = [&](int x) {
    s += std::to_string(x);
    s += ',';
  };
  for (int x : p.head) put(x);
  for (const Traversal& t : p.comps) {
    s += '|';
    for (int x : t.code) put(x);
  }
  return s;
}

Web relabel(const Web& w, const CanonPlan& p) {
  Web out;
  out.oriented = w.oriented;
  out.loops = w.loops;
  out.double_loops = w.double_loops;
  out.n_lower = w.n_lower;
  std::vector<int> vmap(w.kind.size(), -1), hmap(w.he_vert.size(), -1);
  int nv = 0, nh = 0;
  for (const Traversal& t : p.comps) {
    for (std::size_t i = 0; i < t.order.size(); ++i) {
      int v = t.order[i];
      vmap[static_cast<std::size_t>(v)] = nv++;
      const auto& r = w.rot[static_cast<std::size_t>(v)];
      int deg = static_cast<int>(r.size());
      int k = 0;
      while (r[static_cast<std::size_t>(k)] != t.entry[i]) ++k;
      for (int s = 0; s < deg; ++s) hmap[static_cast<std::size_t>(r[static_cast<std::size_t>((k + s) % deg)])] = nh++;
    }
  }
  out.kind.resize(static_cast<std::size_t>(nv));
  out.rot.resize(static_cast<std::size_t>(nv));
  out.he_vert.resize(static_cast<std::size_t>(nh));
  out.he_twin.resize(static_cast<std::size_t>(nh));
  out.he_out.resize(static_cast<std::size_t>(nh));
  out.he_type.resize(static_cast<std::size_t>(nh));
  for (int v = 0; v < w.num_vertices(); ++v) {
    int m = vmap[static_cast<std::size_t>(v)];
    out.kind[static_cast<std::size_t>(m)] = w.kind[static_cast<std::size_t>(v)];
    auto& r = out.rot[static_cast<std::size_t>(m)];
    for (int h : w.rot[static_cast<std::size_t>(v)]) r.push_back(hmap[static_cast<std::size_t>(h)]);
    std::rotate(r.begin(), std::min_element(r.begin(), r.end()), r.end());
  }
  for (int h = 0; h < w.num_halfedges(); ++h) {
    int m = hmap[static_cast<std::size_t>(h)];
    out.he_vert[static_cast<std::size_t>(m)] = vmap[static_cast<std::size_t>(w.he_vert[static_cast<std::size_t>(h)])];
    out.he_twin[static_cast<std::size_t>(m)] = hmap[static_cast<std::size_t>(w.he_twin[static_cast<std::size_t>(h)])];
    out.he_out[static_cast<std::size_t>(m)] = w.he_out[static_cast<std::size_t>(h)];
    out.he_type[static_cast<std::size_t>(m)] = w.he_type[static_cast<std::size_t>(h)];
  }
  for (int v : w.boundary) out.boundary.push_back(vmap[static_cast<std::size_t>(v)]);
  return out;
}

}  // namespace

Web canonicalize(const Web& w) { return relabel(w, plan(w)); }

std::string encode(const Web& w) { return key_of(plan(w)); }

std::pair<std::string, Web> keyed(const Web& w) {
  CanonPlan p = plan(w);
  return {key_of(p), relabel(w, p)};
}

std::string canonical_key(const Web& w) {
  if (w.loops > 0 || w.double_loops > 0) throw WebError("free loops must be reduced before keying");
  return encode(w);
}

namespace {

int degree_of(VKind k) {
  switch (k) {
    case VKind::Boundary:
      return 1;
    case VKind::Pass:
      return 2;
    case VKind::Sp4Tetra:
      return 4;
    default:
      return 3;
  }
}

}  // namespace

Web decode(const std::string& key) {
  std::vector<std::vector<int>> parts(1);
  std::size_t i = 0;
  while (i < key.size()) {
    if (key[i] == '|') {
      parts.emplace_back();
      ++i;
      continue;
    }
    std::size_t j = key.find(',', i);
    if (j == std::string::npos) throw WebError("truncated web key");
    try {
      parts.back().push_back(std::stoi(key.substr(i, j - i)));
    } catch (const std::exception&) {
      throw WebError("bad number in web key");
    }
    i = j + 1;
  }
  const auto& head = parts[0];
  if (head.size() != 5) throw WebError("bad web key header");
  Web w;
  w.oriented = head[0] != 0;
  w.n_lower = head[1];
  w.boundary.assign(static_cast<std::size_t>(head[2]), -1);
  w.loops = head[3];
  w.double_loops = head[4];
  for (std::size_t c = 1; c < parts.size(); ++c) {
    const auto& code = parts[c];
    struct V {
      VKind kind;
      int bidx;
      std::size_t at;  // first edge triple in code
      int deg;
    };
    std::vector<V> vs;
    std::size_t p = 0;
    while (p < code.size()) {
      int k = code[p++];
      if (k < 0 || k > static_cast<int>(VKind::Sp4Tetra)) throw WebError("bad vertex kind in web key");
      V v{static_cast<VKind>(k), -1, 0, degree_of(static_cast<VKind>(k))};
      if (v.kind == VKind::Boundary) {
        if (p >= code.size()) throw WebError("truncated web key");
        v.bidx = code[p++];
      }
      v.at = p;
      p += static_cast<std::size_t>(3 * v.deg);
      if (p > code.size()) throw WebError("truncated web key");
      vs.push_back(v);
    }
    int vbase = w.num_vertices(), hbase = w.num_halfedges();
    std::vector<int> first(vs.size());
    int nh = 0;
    for (std::size_t x = 0; x < vs.size(); ++x) first[x] = hbase + nh, nh += vs[x].deg;
    w.he_vert.resize(static_cast<std::size_t>(hbase + nh));
    w.he_twin.resize(static_cast<std::size_t>(hbase + nh));
    w.he_out.resize(static_cast<std::size_t>(hbase + nh));
    w.he_type.resize(static_cast<std::size_t>(hbase + nh));
    for (std::size_t x = 0; x < vs.size(); ++x) {
      const V& v = vs[x];
      w.kind.push_back(v.kind);
      std::vector<int> r;
      for (int s = 0; s < v.deg; ++s) {
        int h = first[x] + s;
        std::size_t q = v.at + static_cast<std::size_t>(3 * s);
        int u = code[q], off = code[q + 1], flags = code[q + 2];
        if (u < 0 || u >= static_cast<int>(vs.size()) || off < 0 || off >= vs[static_cast<std::size_t>(u)].deg)
          throw WebError("bad edge in web key");
        w.he_vert[static_cast<std::size_t>(h)] = vbase + static_cast<int>(x);
        w.he_twin[static_cast<std::size_t>(h)] = first[static_cast<std::size_t>(u)] + off;
        w.he_out[static_cast<std::size_t>(h)] = static_cast<std::uint8_t>(flags >> 1);
        w.he_type[static_cast<std::size_t>(h)] = static_cast<std::uint8_t>(flags & 1);
        r.push_back(h);
      }
      w.rot.push_back(std::move(r));
      if (v.bidx >= 0) {
        if (v.bidx >= head[2]) throw WebError("boundary index out of range in web key");
        w.boundary[static_cast<std::size_t>(v.bidx)] = vbase + static_cast<int>(x);
      }
    }
  }
  for (int b : w.boundary)
    if (b < 0) throw WebError("web key misses a boundary point");
  validate(w);
  return w;
}

// ---------------------------------------------------------------- operations

namespace {

Web extract(const Web& w, const std::vector<int>& comp, int which) {
  Web out;
  out.oriented = w.oriented;
  std::vector<int> vmap(w.kind.size(), -1), hmap(w.he_vert.size(), -1);
  for (int v = 0; v < w.num_vertices(); ++v) {
    if (comp[static_cast<std::size_t>(v)] != which) continue;
    vmap[static_cast<std::size_t>(v)] = out.num_vertices();
    out.kind.push_back(w.kind[static_cast<std::size_t>(v)]);
    out.rot.emplace_back();
    for (int h : w.rot[static_cast<std::size_t>(v)]) {
      hmap[static_cast<std::size_t>(h)] = out.num_halfedges();
      out.he_vert.push_back(vmap[static_cast<std::size_t>(v)]);
      out.he_twin.push_back(-1);
      out.he_out.push_back(w.he_out[static_cast<std::size_t>(h)]);
      out.he_type.push_back(w.he_type[static_cast<std::size_t>(h)]);
      out.rot.back().push_back(hmap[static_cast<std::size_t>(h)]);
    }
  }
  for (int h = 0; h < w.num_halfedges(); ++h)
    if (hmap[static_cast<std::size_t>(h)] >= 0)
      out.he_twin[static_cast<std::size_t>(hmap[static_cast<std::size_t>(h)])] = hmap[static_cast<std::size_t>(w.he_twin[static_cast<std::size_t>(h)])];
  for (int v : w.boundary)
    if (vmap[static_cast<std::size_t>(v)] >= 0) out.boundary.push_back(vmap[static_cast<std::size_t>(v)]);
  return out;
}

}  // namespace

Web split_closed(const Web& w, std::vector<Web>& closed) {
  int c = 0;
  std::vector<int> comp = component_ids(w, &c);
  std::vector<char> open(static_cast<std::size_t>(c), 0);
  for (int v : w.boundary) open[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])] = 1;
  bool any = false;
  for (int k = 0; k < c; ++k)
    if (!open[static_cast<std::size_t>(k)]) {
      closed.push_back(extract(w, comp, k));
      any = true;
    }
  if (!any) return w;
  // relabel the open part by collapsing all open components into one label
  std::vector<int> keep(comp.size());
  for (std::size_t v = 0; v < comp.size(); ++v) keep[v] = open[static_cast<std::size_t>(comp[v])] ? 0 : 1;
  Web rest = extract(w, keep, 0);
  rest.n_lower = w.n_lower;
  rest.loops = w.loops;
  rest.double_loops = w.double_loops;
  return rest;
}

Web reverse_arrows(const Web& w) {
  Web r = w;
  if (!r.oriented) return r;
  for (auto& o : r.he_out) o = !o;
  for (auto& k : r.kind) {
    if (k == VKind::Source)
      k = VKind::Sink;
    else if (k == VKind::Sink)
      k = VKind::Source;
  }
  return r;
}

Web flip(const Web& w) {
  Web r = reverse_arrows(w);
  for (auto& rr : r.rot) std::reverse(rr.begin(), rr.end());
  std::reverse(r.boundary.begin(), r.boundary.end());
  r.n_lower = w.n_upper();
  return r;
}

Web empty_web() { return Web{}; }

Web identity_web(const std::string& sig) {
  bool oriented = sig.find_first_of("sd") == std::string::npos;
  WebBuilder b(oriented);
  int n = static_cast<int>(sig.size());
  std::vector<int> lo(static_cast<std::size_t>(n)), up(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    lo[static_cast<std::size_t>(i)] = b.add_vertex(VKind::Boundary, 1);
    up[static_cast<std::size_t>(i)] = b.add_vertex(VKind::Boundary, 1);
  }
  for (int i = 0; i < n; ++i) {
    char c = sig[static_cast<std::size_t>(i)];
    if (c != '+' && c != '-' && c != 's' && c != 'd') throw WebError(std::string("bad signature character '") + c + "'");
    EdgeType t = c == 'd' ? EdgeType::Double : EdgeType::Single;
    if (c == '-')
      b.connect(up[static_cast<std::size_t>(i)], 0, lo[static_cast<std::size_t>(i)], 0, t);
    else
      b.connect(lo[static_cast<std::size_t>(i)], 0, up[static_cast<std::size_t>(i)], 0, t);
  }
  std::vector<int> ccw = lo;
  for (int i = n - 1; i >= 0; --i) ccw.push_back(up[static_cast<std::size_t>(i)]);
  b.set_boundary(ccw, n);
  return b.finish();
}

namespace {

// join the open slot of pass vertex p (an upper point of the lower piece) to q (a lower point of the upper piece)
void join_vertical(WebBuilder& b, const Web& lower_piece, int lower_ccw, int p, int q) {
  int v = lower_piece.boundary[static_cast<std::size_t>(lower_ccw)];
  int h = lower_piece.rot[static_cast<std::size_t>(v)][0];
  auto t = static_cast<EdgeType>(lower_piece.he_type[static_cast<std::size_t>(h)]);
  bool up = !lower_piece.oriented || !lower_piece.he_out[static_cast<std::size_t>(h)];
  if (up)
    b.connect(p, 1, q, 1, t);
  else
    b.connect(q, 1, p, 1, t);
}

}  // namespace

Web glue(const Web& top, const Web& bottom) {
  if (top.oriented != bottom.oriented) throw WebError("cannot glue sl3 and sp4 webs");
  if (bottom.upper_signature() != top.lower_signature())
    throw WebError("interface mismatch: " + bottom.upper_signature() + " vs " + top.lower_signature());
  WebBuilder b(top.oriented);
  std::vector<int> bb = b.embed(bottom), tb = b.embed(top);
  int m = top.n_lower, nb = bottom.num_boundary();
  for (int i = 0; i < m; ++i) join_vertical(b, bottom, nb - 1 - i, bb[static_cast<std::size_t>(nb - 1 - i)], tb[static_cast<std::size_t>(i)]);
  // surviving boundary points revert from pass vertices; rebuild them as fresh boundary vertices
  std::vector<int> ccw;
  auto keep = [&](const Web& piece, int ccw_idx, int pv) {
    int v = piece.boundary[static_cast<std::size_t>(ccw_idx)];
    int h = piece.rot[static_cast<std::size_t>(v)][0];
    auto t = static_cast<EdgeType>(piece.he_type[static_cast<std::size_t>(h)]);
    int nbv = b.add_vertex(VKind::Boundary, 1);
    bool into_piece = !piece.oriented || piece.he_out[static_cast<std::size_t>(h)];
    if (into_piece)
      b.connect(nbv, 0, pv, 1, t);
    else
      b.connect(pv, 1, nbv, 0, t);
    ccw.push_back(nbv);
  };
  for (int i = 0; i < bottom.n_lower; ++i) keep(bottom, i, bb[static_cast<std::size_t>(i)]);
  for (int i = m; i < top.num_boundary(); ++i) keep(top, i, tb[static_cast<std::size_t>(i)]);
  b.set_boundary(ccw, bottom.n_lower);
  return b.finish();
}

Web tensor(const Web& left, const Web& right) {
  if (left.oriented != right.oriented) throw WebError("cannot tensor sl3 and sp4 webs");
  Web out = left;
  int voff = left.num_vertices(), hoff = left.num_halfedges();
  for (int h = 0; h < right.num_halfedges(); ++h) {
    out.he_vert.push_back(right.he_vert[static_cast<std::size_t>(h)] + voff);
    out.he_twin.push_back(right.he_twin[static_cast<std::size_t>(h)] + hoff);
    out.he_out.push_back(right.he_out[static_cast<std::size_t>(h)]);
    out.he_type.push_back(right.he_type[static_cast<std::size_t>(h)]);
  }
  for (int v = 0; v < right.num_vertices(); ++v) {
    out.kind.push_back(right.kind[static_cast<std::size_t>(v)]);
    std::vector<int> r = right.rot[static_cast<std::size_t>(v)];
    for (int& h : r) h += hoff;
    out.rot.push_back(std::move(r));
  }
  out.loops += right.loops;
  out.double_loops += right.double_loops;
  out.boundary.clear();
  for (int i = 0; i < left.n_lower; ++i) out.boundary.push_back(left.boundary[static_cast<std::size_t>(i)]);
  for (int i = 0; i < right.num_boundary(); ++i) out.boundary.push_back(right.boundary[static_cast<std::size_t>(i)] + voff);
  for (int i = left.n_lower; i < left.num_boundary(); ++i) out.boundary.push_back(left.boundary[static_cast<std::size_t>(i)]);
  out.n_lower = left.n_lower + right.n_lower;
  return out;
}

Web close_up(const Web& w) {
  if (w.lower_signature() != w.upper_signature()) throw WebError("trace needs equal lower and upper signatures");
  WebBuilder b(w.oriented);
  std::vector<int> bv = b.embed(w);
  int n = w.n_lower, nb = w.num_boundary();
  for (int i = 0; i < n; ++i) join_vertical(b, w, nb - 1 - i, bv[static_cast<std::size_t>(nb - 1 - i)], bv[static_cast<std::size_t>(i)]);
  b.set_boundary({}, 0);
  return b.finish();
}

// ---------------------------------------------------------------- sums

WebSum WebSum::of(const Web& w, const RatFunc& c) {
  WebSum s;
  s.add(w, c);
  return s;
}

void WebSum::add(const Web& w, const RatFunc& c) {
  if (c.is_zero()) return;
  CanonPlan p = plan(w);
  std::string k = key_of(p);
  auto it = terms.find(k);
  if (it == terms.end()) {
    terms.emplace(std::move(k), Term{relabel(w, p), c});
    return;
  }
  it->second.coeff += c;
  if (it->second.coeff.is_zero()) terms.erase(it);
}

void WebSum::add_keyed(const std::string& key, const Web& w, const RatFunc& c) {
  if (c.is_zero()) return;
  auto it = terms.find(key);
  if (it == terms.end()) {
    terms.emplace(key, Term{w, c});
    return;
  }
  it->second.coeff += c;
  if (it->second.coeff.is_zero()) terms.erase(it);
}

WebSum& WebSum::operator+=(const WebSum& o) {
  for (const auto& [k, t] : o.terms) add_keyed(k, t.web, t.coeff);
  return *this;
}

WebSum WebSum::scaled(const RatFunc& s) const {
  WebSum r;
  if (s.is_zero()) return r;
  for (const auto& [k, t] : terms) r.terms.emplace(k, Term{t.web, t.coeff * s});
  return r;
}

RatFunc WebSum::coeff(const std::string& key) const {
  auto it = terms.find(key);
  return it == terms.end() ? RatFunc(0) : it->second.coeff;
}

bool operator==(const WebSum& a, const WebSum& b) {
  if (a.terms.size() != b.terms.size()) return false;
  for (auto ia = a.terms.begin(), ib = b.terms.begin(); ia != a.terms.end(); ++ia, ++ib)
    if (ia->first != ib->first || !(ia->second.coeff == ib->second.coeff)) return false;
  return true;
}

WebSum glue(const WebSum& top, const WebSum& bottom, const std::string& interface) {
  std::vector<const WebSum::Term*> tops, bottoms;
  for (const auto& [kb, b] : bottom.terms) {
    if (b.web.upper_signature() != interface) throw WebError("interface mismatch on the lower factor");
    bottoms.push_back(&b);
  }
  for (const auto& [kt, t] : top.terms) {
    if (t.web.lower_signature() != interface) throw WebError("interface mismatch on the upper factor");
    tops.push_back(&t);
  }
  const long n = static_cast<long>(tops.size() * bottoms.size());
  std::vector<std::pair<std::string, Web>> webs(static_cast<std::size_t>(n));
  std::vector<RatFunc> coeffs(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic, 16) if (n > 64)
  for (long i = 0; i < n; ++i) {
    const WebSum::Term& b = *bottoms[static_cast<std::size_t>(i) / tops.size()];
    const WebSum::Term& t = *tops[static_cast<std::size_t>(i) % tops.size()];
    webs[static_cast<std::size_t>(i)] = keyed(glue(t.web, b.web));
    coeffs[static_cast<std::size_t>(i)] = t.coeff * b.coeff;
  }
  // merged in a fixed order so sums do not depend on thread timing
  WebSum r;
  for (long i = 0; i < n; ++i)
    r.add_keyed(webs[static_cast<std::size_t>(i)].first, webs[static_cast<std::size_t>(i)].second, coeffs[static_cast<std::size_t>(i)]);
  return r;
}

WebSum tensor(const WebSum& left, const WebSum& right) {
  WebSum r;
  for (const auto& [kl, l] : left.terms)
    for (const auto& [kr, rr] : right.terms) r.add(tensor(l.web, rr.web), l.coeff * rr.coeff);
  return r;
}

WebSum map_webs(const WebSum& s, Web (*f)(const Web&)) {
  WebSum r;
  for (const auto& [k, t] : s.terms) r.add(f(t.web), t.coeff);
  return r;
}

}  // namespace spider
