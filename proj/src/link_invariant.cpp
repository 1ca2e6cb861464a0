#include "spider/link_invariant.hpp"

#include <omp.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <regex>
#include <sstream>

#include "spider/sl3_reduce.hpp"
#include "spider/sl3_webs.hpp"

namespace spider::link {

namespace {

using rep::Weight;

// slot through which each strand enters / leaves a crossing
bool is_in_slot(const Crossing& c, int s) { return s == 0 || (c.sign > 0 ? s == 3 : s == 1); }
int paired_out_slot(const Crossing& c, int s) {
  if (s == 0) return 2;
  return c.sign > 0 ? 1 : 3;
}

struct Ends {
  std::map<int, std::pair<int, int>> tail, head;  // arc -> (crossing, slot)
};

Ends arc_ends(const LinkDiagram& d) {
  Ends e;
  for (std::size_t i = 0; i < d.crossings.size(); ++i) {
    const Crossing& c = d.crossings[i];
    if (c.sign != 1 && c.sign != -1) throw PdError("crossing sign must be + or -");
    for (int s = 0; s < 4; ++s) {
      int arc = c.arcs[static_cast<std::size_t>(s)];
      auto& m = is_in_slot(c, s) ? e.head : e.tail;
      if (!m.emplace(arc, std::pair{static_cast<int>(i), s}).second)
        throw PdError("arc " + std::to_string(arc) + " enters or leaves crossings twice (inconsistent orientation)");
    }
  }
  for (const auto& [arc, _] : e.tail)
    if (!e.head.count(arc)) throw PdError("arc " + std::to_string(arc) + " has no head");
  for (const auto& [arc, _] : e.head)
    if (!e.tail.count(arc)) throw PdError("arc " + std::to_string(arc) + " has no tail");
  return e;
}

std::map<int, int> component_of_arc(const LinkDiagram& d) {
  std::map<int, int> m;
  for (std::size_t k = 0; k < d.components.size(); ++k)
    for (int a : d.components[k]) m[a] = static_cast<int>(k);
  return m;
}

std::string trim(std::string s) {
  auto hash = s.find('#');
  if (hash != std::string::npos) s.erase(hash);
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// colors of `to` taken from `from` through shared arcs; free loops keep theirs by position
void carry_colors(LinkDiagram& to, const LinkDiagram& from) {
  auto cm = component_of_arc(from);
  std::vector<Weight> colors;
  for (const auto& comp : to.components) colors.push_back(from.colors[static_cast<std::size_t>(cm.at(comp.front()))]);
  for (int i = 0; i < to.free_loops; ++i)
    colors.push_back(from.colors[from.components.size() + static_cast<std::size_t>(i)]);
  to.colors = std::move(colors);
}

}  // namespace

void finalize(LinkDiagram& d) {
  if (d.free_loops < 0) throw PdError("negative loop count");
  Ends e = arc_ends(d);
  d.components.clear();
  std::map<int, char> seen;
  for (const Crossing& c : d.crossings)
    for (int start : c.arcs) {
      if (seen[start]) continue;
      std::vector<int> comp;
      int arc = start;
      do {
        seen[arc] = 1;
        comp.push_back(arc);
        auto [ci, s] = e.head.at(arc);
        const Crossing& x = d.crossings[static_cast<std::size_t>(ci)];
        arc = x.arcs[static_cast<std::size_t>(paired_out_slot(x, s))];
      } while (arc != start);
      d.components.push_back(std::move(comp));
    }
  if (static_cast<int>(d.colors.size()) != d.num_components())
    d.colors.assign(static_cast<std::size_t>(d.num_components()), Weight{1, 0});
}

LinkDiagram parse_pd(std::string_view text) {
  static const std::regex x_re(R"(X\(\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*([+-]))");
  LinkDiagram d;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    if (line == "O") {
      ++d.free_loops;
      continue;
    }
    std::smatch m;
    if (!std::regex_match(line, m, x_re)) throw PdError("line " + std::to_string(lineno) + ": expected X(a,b,c,d)+, X(a,b,c,d)- or O");
    Crossing c;
    for (std::size_t i = 0; i < 4; ++i) c.arcs[i] = std::stoi(m[static_cast<int>(i) + 1].str());
    c.sign = m[5].str() == "+" ? 1 : -1;
    d.crossings.push_back(c);
  }
  finalize(d);
  return d;
}

std::string to_pd(const LinkDiagram& d) {
  std::ostringstream os;
  for (const Crossing& c : d.crossings)
    os << "X(" << c.arcs[0] << ',' << c.arcs[1] << ',' << c.arcs[2] << ',' << c.arcs[3] << ')' << (c.sign > 0 ? '+' : '-') << '\n';
  for (int i = 0; i < d.free_loops; ++i) os << "O\n";
  return os.str();
}

std::vector<Weight> parse_colors(std::string_view text) {
  std::vector<Weight> out;
  std::string s(text);
  std::istringstream in(s);
  std::string item;
  static const std::regex c_re(R"(\s*(\d+)\s*,\s*(\d+)\s*)");
  while (std::getline(in, item, ';')) {
    std::smatch m;
    if (!std::regex_match(item, m, c_re)) throw PdError("color must look like a,b");
    out.push_back(Weight{std::stoi(m[1].str()), std::stoi(m[2].str())});
  }
  return out;
}

int writhe(const LinkDiagram& d) {
  int w = 0;
  for (const Crossing& c : d.crossings) w += c.sign;
  return w;
}

std::array<int, 2> crossing_components(const LinkDiagram& d, int crossing) {
  auto cm = component_of_arc(d);
  const Crossing& c = d.crossings.at(static_cast<std::size_t>(crossing));
  return {cm.at(c.arcs[0]), cm.at(c.arcs[1])};
}

LinkDiagram braid_closure(int strands, const std::vector<int>& word) {
  if (strands < 1) throw PdError("a braid needs at least one strand");
  std::vector<int> cur(static_cast<std::size_t>(strands));
  std::iota(cur.begin(), cur.end(), 1);
  int next = strands + 1;
  LinkDiagram d;
  for (int g : word) {
    int i = std::abs(g) - 1;
    if (g == 0 || i + 1 >= strands) throw PdError("braid letter out of range");
    int lin = cur[static_cast<std::size_t>(i)], rin = cur[static_cast<std::size_t>(i) + 1];
    int lout = next++, rout = next++;  // lout leaves on the right, rout on the left
    Crossing c;
    if (g > 0)
      c = Crossing{{rin, lout, rout, lin}, 1};
    else
      c = Crossing{{lin, rin, lout, rout}, -1};
    d.crossings.push_back(c);
    cur[static_cast<std::size_t>(i)] = rout;
    cur[static_cast<std::size_t>(i) + 1] = lout;
  }
  // closing strands identify the final labels with the initial ones
  std::map<int, int> rename;
  for (int i = 0; i < strands; ++i) rename[cur[static_cast<std::size_t>(i)]] = i + 1;
  std::vector<char> used(static_cast<std::size_t>(strands) + 1, 0);
  for (Crossing& c : d.crossings)
    for (int& a : c.arcs) {
      if (auto it = rename.find(a); it != rename.end()) a = it->second;
      if (a <= strands) used[static_cast<std::size_t>(a)] = 1;
    }
  for (int i = 1; i <= strands; ++i)
    if (!used[static_cast<std::size_t>(i)]) ++d.free_loops;
  finalize(d);
  return d;
}

LinkDiagram disjoint_union(const LinkDiagram& x, const LinkDiagram& y) {
  int off = 0;
  for (const Crossing& c : x.crossings)
    for (int a : c.arcs) off = std::max(off, a);
  int ymin = 0;
  bool first = true;
  for (const Crossing& c : y.crossings)
    for (int a : c.arcs) {
      ymin = first ? a : std::min(ymin, a);
      first = false;
    }
  LinkDiagram u;
  u.crossings = x.crossings;
  for (Crossing c : y.crossings) {
    for (int& a : c.arcs) a = a - ymin + off + 1;
    u.crossings.push_back(c);
  }
  u.free_loops = x.free_loops + y.free_loops;
  finalize(u);
  std::vector<Weight> colors(x.colors.begin(), x.colors.begin() + static_cast<long>(x.components.size()));
  colors.insert(colors.end(), y.colors.begin(), y.colors.begin() + static_cast<long>(y.components.size()));
  colors.insert(colors.end(), x.colors.begin() + static_cast<long>(x.components.size()), x.colors.end());
  colors.insert(colors.end(), y.colors.begin() + static_cast<long>(y.components.size()), y.colors.end());
  u.colors = std::move(colors);
  return u;
}

LinkDiagram switch_crossing(const LinkDiagram& d, int crossing) {
  LinkDiagram out = d;
  Crossing& c = out.crossings.at(static_cast<std::size_t>(crossing));
  auto [a, b, cc, dd] = c.arcs;
  // the old over-strand becomes the under-strand; list from its incoming arc
  if (c.sign > 0)
    c = Crossing{{dd, a, b, cc}, -1};
  else
    c = Crossing{{b, cc, dd, a}, 1};
  finalize(out);
  carry_colors(out, d);
  return out;
}

LinkDiagram smooth_crossing(const LinkDiagram& d, int crossing) {
  for (const Weight& w : d.colors)
    if (w != d.colors.front()) throw PdError("smoothing needs every component in the same color");
  const Crossing c = d.crossings.at(static_cast<std::size_t>(crossing));
  auto [a, b, cc, dd] = c.arcs;
  // in-arc continues into the out-arc on the same side
  std::map<int, int> parent;
  auto find = [&](int x) {
    while (parent.count(x) && parent[x] != x) x = parent[x];
    return x;
  };
  auto unite = [&](int x, int y) {
    x = find(x);
    y = find(y);
    if (x != y) parent[std::max(x, y)] = std::min(x, y);
  };
  if (c.sign > 0) {
    unite(dd, cc);
    unite(a, b);
  } else {
    unite(a, dd);
    unite(b, cc);
  }
  LinkDiagram out;
  out.free_loops = d.free_loops;
  std::map<int, char> present;
  for (std::size_t i = 0; i < d.crossings.size(); ++i) {
    if (static_cast<int>(i) == crossing) continue;
    Crossing x = d.crossings[i];
    for (int& arc : x.arcs) {
      arc = find(arc);
      present[arc] = 1;
    }
    out.crossings.push_back(x);
  }
  std::map<int, char> counted;
  for (int arc : c.arcs) {
    int r = find(arc);
    if (!present.count(r) && !counted[r]) {
      counted[r] = 1;
      ++out.free_loops;
    }
  }
  finalize(out);
  if (!d.colors.empty()) out.colors.assign(static_cast<std::size_t>(out.num_components()), d.colors.front());
  return out;
}

LinkDiagram mirror(const LinkDiagram& d) {
  LinkDiagram out = d;
  for (std::size_t i = 0; i < out.crossings.size(); ++i) out = switch_crossing(out, static_cast<int>(i));
  return out;
}

WebSum expand_crossing(int sign) {
  WebSum s = WebSum::of(identity_web("++"), RatFunc(LaurentPoly::var(sign > 0 ? 1 : -1)));
  s.add(sl3::h_web('+'), RatFunc(1));
  return s;
}

// ------------------------------------------------------------------ cabling

namespace {

enum Dir { S = 0, E = 1, N = 2, W = 3 };

struct Node {
  int sign = 1;
  int first_in = 0;  // s_p: in-ports are s_p and s_p+1 (ccw)
};

// an edge endpoint: a node port, or a clasp boundary point
struct End {
  enum Kind { Port, Lower, Upper } kind;
  int a;  // node, or component
  int b;  // direction, or copy index
};

struct Model {
  std::vector<Node> nodes;
  std::vector<std::pair<End, End>> edges;  // tail -> head
  std::vector<std::vector<std::pair<Web, RatFunc>>> clasps;  // per crossing component
  LaurentPoly loop_factor{1};
};

Model build_model(const LinkDiagram& d, const G3Options& opt) {
  if (static_cast<int>(d.colors.size()) != d.num_components()) throw PdError("one color per component expected");
  Model m;
  for (const Weight& w : d.colors) {
    if (w.a < 0 || w.b < 0 || w.a + w.b == 0) throw PdError("colors must be nonzero dominant weights");
    if (w.a + w.b > opt.max_cable) throw sl3::GuardrailError("cable width exceeds the guardrail");
  }
  for (int i = 0; i < d.free_loops; ++i) m.loop_factor *= quantum_dimension(d.colors[d.components.size() + static_cast<std::size_t>(i)]);

  auto cm = component_of_arc(d);
  auto width = [&](int comp) { return d.colors[static_cast<std::size_t>(comp)].a + d.colors[static_cast<std::size_t>(comp)].b; };
  auto plus = [&](int comp) { return d.colors[static_cast<std::size_t>(comp)].a; };

  struct Grid {
    int base, na, nb, under, over, sign;
  };
  std::vector<Grid> grids;
  for (const Crossing& c : d.crossings) {
    Grid g{static_cast<int>(m.nodes.size()), 0, 0, cm.at(c.arcs[0]), cm.at(c.arcs[1]), c.sign};
    g.na = width(g.under);
    g.nb = width(g.over);
    int ap = plus(g.under), bp = plus(g.over);
    auto node = [&](int x, int y) { return g.base + y * g.na + x; };
    for (int y = 0; y < g.nb; ++y)
      for (int x = 0; x < g.na; ++x) {
        int dy = x < ap ? 1 : -1;
        int lb = c.sign > 0 ? g.nb - 1 - y : y;
        int dx = (c.sign > 0 ? 1 : -1) * (lb < bp ? 1 : -1);
        bool in[4] = {dy > 0, dx < 0, dy < 0, dx > 0};
        Node nd;
        nd.sign = dx * dy;
        for (int p = 0; p < 4; ++p)
          if (in[p] && in[(p + 1) % 4]) nd.first_in = p;
        m.nodes.push_back(nd);
        if (y + 1 < g.nb) {
          End lo{End::Port, node(x, y), N}, hi{End::Port, node(x, y + 1), S};
          m.edges.push_back(dy > 0 ? std::pair{lo, hi} : std::pair{hi, lo});
        }
        if (x + 1 < g.na) {
          End l{End::Port, node(x, y), E}, r{End::Port, node(x + 1, y), W};
          m.edges.push_back(dx > 0 ? std::pair{l, r} : std::pair{r, l});
        }
      }
    grids.push_back(g);
  }

  auto port = [&](int crossing, int slot, int copy) {
    const Grid& g = grids[static_cast<std::size_t>(crossing)];
    int yb = g.sign > 0 ? g.nb - 1 - copy : copy;
    switch (slot) {
      case 0: return End{End::Port, g.base + copy, S};
      case 2: return End{End::Port, g.base + (g.nb - 1) * g.na + copy, N};
      case 1: return End{End::Port, g.base + yb * g.na + g.na - 1, E};
      default: return End{End::Port, g.base + yb * g.na, W};
    }
  };

  Ends e = arc_ends(d);
  for (const auto& [arc, t] : e.tail) {
    auto h = e.head.at(arc);
    int comp = cm.at(arc);
    bool clasped = d.components[static_cast<std::size_t>(comp)].front() == arc;
    for (int l = 0; l < width(comp); ++l) {
      End from = port(t.first, t.second, l), to = port(h.first, h.second, l);
      bool fwd = l < plus(comp);
      if (clasped) {
        End lo{End::Lower, comp, l}, up{End::Upper, comp, l};
        if (fwd) {
          m.edges.push_back({from, lo});
          m.edges.push_back({up, to});
        } else {
          m.edges.push_back({to, up});
          m.edges.push_back({lo, from});
        }
      } else {
        m.edges.push_back(fwd ? std::pair{from, to} : std::pair{to, from});
      }
    }
  }

  for (std::size_t k = 0; k < d.components.size(); ++k) {
    const Weight& w = d.colors[k];
    std::vector<std::pair<Web, RatFunc>> terms;
    for (const auto& [key, t] : sl3::clasp(w.a, w.b, opt.clasp).terms) terms.emplace_back(t.web, t.coeff);
    m.clasps.push_back(std::move(terms));
  }
  return m;
}

struct Slot {
  int v = -1, s = -1;
};

Web state_web(const Model& m, unsigned long bits, const std::vector<std::size_t>& choice, int& smooth_exp) {
  WebBuilder b;
  std::vector<Slot> ports(m.nodes.size() * 4);
  smooth_exp = 0;
  for (std::size_t i = 0; i < m.nodes.size(); ++i) {
    const Node& nd = m.nodes[i];
    auto at = [&](int k) -> Slot& { return ports[i * 4 + static_cast<std::size_t>((nd.first_in + k) % 4)]; };
    if ((bits >> i) & 1UL) {
      smooth_exp += nd.sign;
      int p1 = b.add_vertex(VKind::Pass, 2), p2 = b.add_vertex(VKind::Pass, 2);
      at(0) = {p1, 0};
      at(3) = {p1, 1};
      at(1) = {p2, 0};
      at(2) = {p2, 1};
    } else {
      int x = b.add_vertex(VKind::Sink, 3), y = b.add_vertex(VKind::Source, 3);
      at(1) = {x, 0};
      at(0) = {x, 2};
      b.connect(y, 0, x, 1);
      at(2) = {y, 1};
      at(3) = {y, 2};
    }
  }
  std::vector<std::vector<int>> bv(m.clasps.size());
  for (std::size_t k = 0; k < m.clasps.size(); ++k) bv[k] = b.embed(m.clasps[k][choice[k]].first);
  auto resolve = [&](const End& e) -> Slot {
    if (e.kind == End::Port) return ports[static_cast<std::size_t>(e.a) * 4 + static_cast<std::size_t>(e.b)];
    const auto& v = bv[static_cast<std::size_t>(e.a)];
    std::size_t idx = e.kind == End::Lower ? static_cast<std::size_t>(e.b) : v.size() - 1 - static_cast<std::size_t>(e.b);
    return {v[idx], 1};
  };
  for (const auto& [t, h] : m.edges) {
    Slot a = resolve(t), c = resolve(h);
    b.connect(a.v, a.s, c.v, c.s);
  }
  return b.finish();
}

LaurentPoly state_sum(const LinkDiagram& d, const G3Options& opt, bool parallel) {
  Model m = build_model(d, opt);
  if (m.nodes.size() >= 63) throw sl3::GuardrailError("too many crossing states");
  unsigned long n_bits = 1UL << m.nodes.size();
  std::vector<std::size_t> radix;
  unsigned long combos = 1;
  for (const auto& c : m.clasps) {
    radix.push_back(c.size());
    combos *= c.size();
    if (combos * n_bits > static_cast<unsigned long>(opt.max_states)) throw sl3::GuardrailError("state count exceeds the guardrail");
  }
  if (combos * n_bits > static_cast<unsigned long>(opt.max_states)) throw sl3::GuardrailError("state count exceeds the guardrail");
  unsigned long total = combos * n_bits;

  int threads = parallel ? omp_get_max_threads() : 1;
  std::vector<std::vector<LaurentPoly>> acc(static_cast<std::size_t>(threads), std::vector<LaurentPoly>(combos));
  sl3::ReduceOptions ro;
  ro.parallel = false;
  auto work = [&](unsigned long t, std::vector<LaurentPoly>& mine) {
    unsigned long combo = t / n_bits, bits = t % n_bits;
    std::vector<std::size_t> choice(radix.size());
    unsigned long r = combo;
    for (std::size_t k = 0; k < radix.size(); ++k) {
      choice[k] = r % radix[k];
      r /= radix[k];
    }
    int e = 0;
    Web w = state_web(m, bits, choice, e);
    mine[combo] += sl3::evaluate_closed(w, ro).shift(e);
  };
  if (parallel) {
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
    for (long t = 0; t < static_cast<long>(total); ++t) {
      try {
        work(static_cast<unsigned long>(t), acc[static_cast<std::size_t>(omp_get_thread_num())]);
      } catch (...) {
#pragma omp critical
        err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
  } else {
    for (unsigned long t = 0; t < total; ++t) work(t, acc[0]);
  }

  RatFunc sum;
  for (unsigned long combo = 0; combo < combos; ++combo) {
    LaurentPoly part;
    for (const auto& a : acc) part += a[combo];
    if (part.is_zero()) continue;
    RatFunc coeff(1);
    unsigned long r = combo;
    for (std::size_t k = 0; k < radix.size(); ++k) {
      coeff *= m.clasps[k][r % radix[k]].second;
      r /= radix[k];
    }
    sum += coeff * RatFunc(part);
  }
  sum *= RatFunc(m.loop_factor);
  if (!sum.is_poly()) throw DomainError("colored invariant is not a Laurent polynomial");
  return sum.num();
}

// Groups of components joined through crossings. A closed web evaluates
// multiplicatively over its connected pieces, so each group is summed alone.
std::vector<LinkDiagram> split_pieces(const LinkDiagram& d) {
  std::size_t nc = d.components.size();
  std::vector<std::size_t> parent(nc);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int c = 0; c < static_cast<int>(d.crossings.size()); ++c) {
    auto [u, o] = crossing_components(d, c);
    parent[find(static_cast<std::size_t>(u))] = find(static_cast<std::size_t>(o));
  }
  std::map<std::size_t, LinkDiagram> groups;
  auto cm = component_of_arc(d);
  for (const Crossing& c : d.crossings) groups[find(static_cast<std::size_t>(cm.at(c.arcs[0])))].crossings.push_back(c);
  std::vector<LinkDiagram> out;
  for (auto& [root, g] : groups) {
    finalize(g);
    carry_colors(g, d);
    out.push_back(std::move(g));
  }
  if (d.free_loops > 0) {
    LinkDiagram loops;
    loops.free_loops = d.free_loops;
    loops.colors.assign(d.colors.begin() + static_cast<long>(nc), d.colors.end());
    out.push_back(std::move(loops));
  }
  return out;
}

LaurentPoly split_sum(const LinkDiagram& d, const G3Options& opt, bool parallel) {
  if (d.colors.size() != static_cast<std::size_t>(d.num_components())) return state_sum(d, opt, parallel);
  std::vector<LinkDiagram> pieces = split_pieces(d);
  if (pieces.size() <= 1) return state_sum(d, opt, parallel);
  LaurentPoly total(1);
  for (const LinkDiagram& piece : pieces) total *= state_sum(piece, opt, parallel);
  return total;
}

}  // namespace

LaurentPoly G3(const LinkDiagram& d, const G3Options& opt) { return split_sum(d, opt, opt.parallel); }

LaurentPoly G3_reference(const LinkDiagram& d, const G3Options& opt) { return state_sum(d, opt, false); }

LaurentPoly quantum_dimension(Weight w) {
  static std::mutex mu;
  static std::map<Weight, LaurentPoly> memo;
  {
    std::lock_guard<std::mutex> lk(mu);
    if (auto it = memo.find(w); it != memo.end()) return it->second;
  }
  RatFunc sum;
  if (w.a + w.b == 0) {
    sum = RatFunc(1);
  } else {
    for (const auto& [k, t] : sl3::clasp(w.a, w.b).terms) sum += t.coeff * RatFunc(sl3::evaluate_closed(close_up(t.web)));
  }
  if (!sum.is_poly()) throw DomainError("clasp trace is not a Laurent polynomial");
  std::lock_guard<std::mutex> lk(mu);
  memo.emplace(w, sum.num());
  return sum.num();
}

LaurentPoly kink_factor(Weight w) {
  if (w.a + w.b != 1) throw DomainError("kink factor is only defined here for vector colors");
  LinkDiagram k = parse_pd("X(1,1,2,2)+");
  k.colors = {w};
  return exact_div(G3(k), quantum_dimension(w));
}

LaurentPoly normalize_writhe(const LinkDiagram& d, const LaurentPoly& framed) {
  if (d.colors.empty()) return framed;
  LaurentPoly k = kink_factor(d.colors.front());
  for (const Weight& w : d.colors)
    if (kink_factor(w) != k) throw DomainError("components need equal kink factors");
  if (k.num_terms() != 1 || k.coeff(k.lo()) != 1) throw DomainError("kink factor is not a unit monomial");
  return framed.shift(-k.lo() * writhe(d));
}

}  // namespace spider::link
