#pragma once

// JSON readers and writers for webs, plane graphs and web sums. Writers
// canonicalize first, so equal objects always serialize to the same bytes.

#include <string>

#include "json.hpp"
#include "spider/planar_web.hpp"
#include "spider/sl3_reduce.hpp"

namespace spider::io {

using nlohmann::json;

// {boundary, n_lower, loops, vertices: [{kind, halfedges}], edges: [[tail, head]]}
json web_to_json(const Web& w);
Web web_from_json(const json& j);

// {vertices, edges: [[u, v]], rotation: [[edge ids ccw]], circles}
json graph_to_json(const sl3::PlaneGraph& g);
sl3::PlaneGraph graph_from_json(const json& j);

// [{key, coeff}] in key order
json websum_to_json(const WebSum& s, bool q_units = false);
WebSum websum_from_json(const json& j);

json parse_json(const std::string& text);
std::string read_file(const std::string& path);

}  // namespace spider::io
