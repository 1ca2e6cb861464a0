#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spider/qpoly.hpp"

namespace spider {

struct WebError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Pass vertices are bivalent placeholders that only exist while a web is
// being assembled; they are dissolved before validation.
enum class VKind : std::uint8_t { Source, Sink, Boundary, Pass, Sp4Tri, Sp4Tetra };

enum class EdgeType : std::uint8_t { Single = 0, Double = 1 };

// Boundary-anchored planar combinatorial map.
// Boundary vertices are listed counterclockwise: lower points left to right,
// then upper points right to left. rot[v] lists half-edges counterclockwise.
// Signs are read upward: a lower point is '+' when its strand enters the web,
// an upper point is '+' when its strand leaves it.
struct Web {
  std::vector<int> he_vert, he_twin;
  std::vector<std::uint8_t> he_out, he_type;
  std::vector<VKind> kind;
  std::vector<std::vector<int>> rot;
  std::vector<int> boundary;
  int n_lower = 0;
  int loops = 0;         // free loops of single strands
  int double_loops = 0;  // free loops of double strands (sp4 only)
  bool oriented = true;  // false for sp4 webs

  int num_vertices() const { return static_cast<int>(kind.size()); }
  int num_halfedges() const { return static_cast<int>(he_vert.size()); }
  int num_boundary() const { return static_cast<int>(boundary.size()); }
  int n_upper() const { return num_boundary() - n_lower; }
  // boundary vertex of the i-th lower / upper point, counted left to right
  int lower_vertex(int i) const { return boundary[static_cast<std::size_t>(i)]; }
  int upper_vertex(int i) const { return boundary[static_cast<std::size_t>(num_boundary() - 1 - i)]; }
  std::string lower_signature() const;
  std::string upper_signature() const;
  int next_ccw(int h) const;
  int pos_in_rot(int h) const;
};

// Incremental construction; vertices get a fixed number of rotation slots.
class WebBuilder {
 public:
  explicit WebBuilder(bool oriented = true) { w_.oriented = oriented; }
  int add_vertex(VKind k, int degree);
  // edge with its tail at (v1, slot1) and head at (v2, slot2)
  void connect(int v1, int slot1, int v2, int slot2, EdgeType t = EdgeType::Single);
  // copy a web in; returns the vertex ids of its boundary points in ccw order,
  // each turned into a pass vertex with its slot 1 left open
  std::vector<int> embed(const Web& w);
  void set_boundary(std::vector<int> ccw_vertices, int n_lower);
  void add_loops(int k, EdgeType t = EdgeType::Single);
  // dissolve pass vertices, then validate
  Web finish(bool validate = true);

 private:
  Web w_;
};

void validate(const Web& w);
// Euler characteristic check V - E + F = 1 + #components on the disk
bool euler_ok(const Web& w);
int num_components(const Web& w);

struct Face {
  std::vector<int> halfedges;  // orbit of next_ccw(twin(h)), starting at the least index
  bool touches_boundary = false;
  int size() const { return static_cast<int>(halfedges.size()); }
};
std::vector<Face> faces(const Web& w);

// Canonical relabeling: vertices and half-edges numbered in traversal order.
Web canonicalize(const Web& w);
// Key including the free-loop count; valid for any web.
std::string encode(const Web& w);
// Key for webs without free loops (throws otherwise).
std::string canonical_key(const Web& w);
// encode(w) together with w in canonical numbering
std::pair<std::string, Web> keyed(const Web& w);
// inverse of encode; the result is in canonical numbering
Web decode(const std::string& key);

// Move components that do not touch the boundary into `closed` (one web each,
// without loops); returns the rest, which keeps the free-loop counters.
Web split_closed(const Web& w, std::vector<Web>& closed);

// delete the edges of the listed half-edges; vertices left bivalent are
// dissolved into the strand through them
Web delete_edges(const Web& w, const std::vector<int>& halfedges);

Web reverse_arrows(const Web& w);
// vertical reflection composed with arrow reversal: a map A -> B becomes B -> A
Web flip(const Web& w);
// side by side, left then right
Web tensor(const Web& left, const Web& right);
// stack top over bottom; bottom's upper signature must equal top's lower signature
Web glue(const Web& top, const Web& bottom);
// close a web whose lower and upper signatures agree (trace)
Web close_up(const Web& w);

// generators
Web identity_web(const std::string& signature);
Web empty_web();

// Formal combination of webs keyed by encode(); zero coefficients are never stored.
struct WebSum {
  struct Term {
    Web web;
    RatFunc coeff;
  };
  std::map<std::string, Term> terms;

  static WebSum of(const Web& w, const RatFunc& c = RatFunc(1));
  void add(const Web& w, const RatFunc& c);
  void add_keyed(const std::string& key, const Web& w, const RatFunc& c);
  WebSum& operator+=(const WebSum& o);
  WebSum scaled(const RatFunc& s) const;
  bool is_zero() const { return terms.empty(); }
  std::size_t size() const { return terms.size(); }
  // coefficient of a key, zero when absent
  RatFunc coeff(const std::string& key) const;
  friend bool operator==(const WebSum& a, const WebSum& b);
};

// bilinear stacking; interface is bottom's upper signature
WebSum glue(const WebSum& top, const WebSum& bottom, const std::string& interface);
WebSum tensor(const WebSum& left, const WebSum& right);
WebSum map_webs(const WebSum& s, Web (*f)(const Web&));

}  // namespace spider
