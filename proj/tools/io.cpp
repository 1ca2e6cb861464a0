#include "io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace spider::io {

namespace {

const char* kind_name(VKind k) {
  switch (k) {
    case VKind::Source: return "source";
    case VKind::Sink: return "sink";
    case VKind::Boundary: return "boundary";
    default: throw WebError("only sl3 webs have a JSON form");
  }
}

VKind kind_from(const std::string& s) {
  if (s == "source") return VKind::Source;
  if (s == "sink") return VKind::Sink;
  if (s == "boundary") return VKind::Boundary;
  throw WebError("unknown vertex kind '" + s + "'");
}

}  // namespace

json web_to_json(const Web& input) {
  Web w = canonicalize(input);
  json verts = json::array();
  for (int v = 0; v < w.num_vertices(); ++v)
    verts.push_back({{"kind", kind_name(w.kind[static_cast<std::size_t>(v)])}, {"halfedges", w.rot[static_cast<std::size_t>(v)]}});
  json edges = json::array();
  for (int h = 0; h < w.num_halfedges(); ++h)
    if (w.he_out[static_cast<std::size_t>(h)]) edges.push_back({h, w.he_twin[static_cast<std::size_t>(h)]});
  return {{"boundary", w.boundary}, {"n_lower", w.n_lower}, {"loops", w.loops}, {"vertices", verts}, {"edges", edges}};
}

Web web_from_json(const json& j) {
  Web w;
  w.boundary = j.at("boundary").get<std::vector<int>>();
  w.n_lower = j.value("n_lower", static_cast<int>(w.boundary.size()));
  w.loops = j.value("loops", 0);
  int H = 0;
  for (const json& v : j.at("vertices")) H += static_cast<int>(v.at("halfedges").size());
  w.he_vert.assign(static_cast<std::size_t>(H), -1);
  w.he_twin.assign(static_cast<std::size_t>(H), -1);
  w.he_out.assign(static_cast<std::size_t>(H), 0);
  w.he_type.assign(static_cast<std::size_t>(H), 0);
  for (const json& v : j.at("vertices")) {
    int id = w.num_vertices();
    w.kind.push_back(kind_from(v.at("kind").get<std::string>()));
    std::vector<int> r = v.at("halfedges").get<std::vector<int>>();
    for (int h : r) {
      if (h < 0 || h >= H || w.he_vert[static_cast<std::size_t>(h)] >= 0) throw WebError("half-edge ids must be a permutation");
      w.he_vert[static_cast<std::size_t>(h)] = id;
    }
    w.rot.push_back(std::move(r));
  }
  for (const json& e : j.at("edges")) {
    int t = e.at(0).get<int>(), h = e.at(1).get<int>();
    if (t < 0 || t >= H || h < 0 || h >= H) throw WebError("edge refers to a missing half-edge");
    if (w.he_twin[static_cast<std::size_t>(t)] >= 0 || w.he_twin[static_cast<std::size_t>(h)] >= 0)
      throw WebError("half-edge used by two edges");
    w.he_twin[static_cast<std::size_t>(t)] = h;
    w.he_twin[static_cast<std::size_t>(h)] = t;
    w.he_out[static_cast<std::size_t>(t)] = 1;
  }
  for (int b : w.boundary)
    if (b < 0 || b >= w.num_vertices() || w.kind[static_cast<std::size_t>(b)] != VKind::Boundary)
      throw WebError("boundary list names a non-boundary vertex");
  validate(w);
  return w;
}

json graph_to_json(const sl3::PlaneGraph& g) {
  json edges = json::array();
  for (auto [u, v] : g.edges) edges.push_back({u, v});
  return {{"vertices", g.num_vertices}, {"edges", edges}, {"rotation", g.rot}, {"circles", g.circles}};
}

sl3::PlaneGraph graph_from_json(const json& j) {
  sl3::PlaneGraph g;
  g.num_vertices = j.at("vertices").get<int>();
  for (const json& e : j.at("edges")) g.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  g.rot = j.at("rotation").get<std::vector<std::vector<int>>>();
  g.circles = j.value("circles", 0);
  return g;
}

json websum_to_json(const WebSum& s, bool q_units) {
  json out = json::array();
  for (const auto& [key, term] : s.terms) out.push_back({{"key", key}, {"coeff", term.coeff.str(q_units)}});
  return out;
}

WebSum websum_from_json(const json& j) {
  WebSum s;
  for (const json& t : j) {
    std::string key = t.at("key").get<std::string>();
    s.add(decode(key), RatFunc::parse(t.at("coeff").get<std::string>()));
  }
  return s;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace spider::io
