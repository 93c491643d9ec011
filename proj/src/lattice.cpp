#include "qdg/lattice.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qdg::lattice {

namespace {

int axis_index(char a) {
  switch (a) {
    case 'x':
      return 0;
    case 'y':
      return 1;
    case 'z':
      return 2;
  }
  throw std::invalid_argument(std::string("bad axis '") + a + "'");
}

std::string coord_id(const std::string& prefix, std::array<int, 3> p, int dim) {
  std::string s = prefix + std::to_string(p[0]) + "," + std::to_string(p[1]);
  if (dim == 3) s += "," + std::to_string(p[2]);
  return s;
}

std::array<int, 3> shifted(std::array<int, 3> p, int axis, int by) {
  p[axis] += by;
  return p;
}

// Adds the face with lower-left corner p in the plane spanned by axes a (horizontal) and b (vertical).
void try_face(Graph& g, std::array<int, 3> p, char a, char b, const std::string& plane) {
  const int ia = axis_index(a), ib = axis_index(b);
  const int bottom = g.edge_at(a, p);
  const int top = g.edge_at(a, shifted(p, ib, 1));
  const int left = g.edge_at(b, p);
  const int right = g.edge_at(b, shifted(p, ia, 1));
  if (bottom < 0 || top < 0 || left < 0 || right < 0) return;
  Face f;
  f.id = "f" + plane + ":" + coord_id("", p, g.dimension);
  f.plane = plane;
  f.pos = p;
  f.edges = {top, left, bottom, right};
  const auto& E = g.edges();
  // top runs TR -> TL, left runs TL -> BL, bottom and right run the other way round.
  f.corners = {E[top].origin, E[top].terminus, E[left].terminus, E[bottom].origin};
  g.add_face(std::move(f));
}

}  // namespace

Path Path::reversed() const {
  Path r;
  r.vertices.assign(vertices.rbegin(), vertices.rend());
  r.edges.assign(edges.rbegin(), edges.rend());
  for (auto it = signs.rbegin(); it != signs.rend(); ++it) r.signs.push_back(-*it);
  return r;
}

int Graph::add_vertex(std::string id, std::array<int, 3> pos) {
  vertices_.push_back({std::move(id), pos, {-1, -1, -1, -1, -1, -1}});
  return static_cast<int>(vertices_.size()) - 1;
}

int Graph::add_edge(std::string id, int origin, int terminus, char axis, std::array<int, 3> pos) {
  if (origin == terminus) throw std::invalid_argument("edge '" + id + "' would be a self-loop");
  const int e = static_cast<int>(edges_.size());
  edges_.push_back({std::move(id), origin, terminus, axis, pos});
  const int ia = axis_index(axis);
  // The edge leaves its origin in the -axis direction and reaches its terminus from +axis.
  vertices_[origin].legs[2 * ia] = e;
  vertices_[terminus].legs[2 * ia + 1] = e;
  return e;
}

std::vector<int> Graph::edges_from(int v) const {
  std::vector<int> out;
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e)
    if (edges_[e].origin == v) out.push_back(e);
  return out;
}

std::vector<int> Graph::edges_to(int v) const {
  std::vector<int> out;
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e)
    if (edges_[e].terminus == v) out.push_back(e);
  return out;
}

std::vector<int> Graph::incident(int v) const {
  auto a = edges_from(v);
  const auto b = edges_to(v);
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

int Graph::vertex_at(std::array<int, 3> pos) const {
  for (int i = 0; i < 3; ++i)
    if (periodic[i]) pos[i] = ((pos[i] % extent[i]) + extent[i]) % extent[i];
  for (int v = 0; v < static_cast<int>(vertices_.size()); ++v)
    if (vertices_[v].pos == pos) return v;
  return -1;
}

int Graph::edge_at(char axis, std::array<int, 3> pos) const {
  for (int i = 0; i < 3; ++i)
    if (periodic[i]) pos[i] = ((pos[i] % extent[i]) + extent[i]) % extent[i];
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e)
    if (edges_[e].axis == axis && edges_[e].pos == pos) return e;
  return -1;
}

int Graph::find_edge(const std::string& id) const {
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e)
    if (edges_[e].id == id) return e;
  return -1;
}

int Graph::find_vertex(const std::string& id) const {
  for (int v = 0; v < static_cast<int>(vertices_.size()); ++v)
    if (vertices_[v].id == id) return v;
  return -1;
}

bool Graph::complete_star(int v) const {
  const auto& legs = vertices_[v].legs;
  const int axes = dimension;
  for (int a = 0; a < axes; ++a)
    for (int s = 0; s < 2; ++s) {
      if (legs[2 * a + s] >= 0) continue;
      // A smooth bottom boundary lacks only the downward leg.
      if (kind == "smooth-bottom" && a == 1 && s == 0 && vertices_[v].pos[1] == 0) continue;
      return false;
    }
  return true;
}

void Graph::validate() const {
  std::set<std::string> ids;
  for (const auto& e : edges_) {
    if (e.origin == e.terminus) throw std::logic_error("self-loop " + e.id);
    if (!ids.insert(e.id).second) throw std::logic_error("duplicate edge id " + e.id);
  }
  for (int v = 0; v < static_cast<int>(vertices_.size()); ++v) {
    const auto o = edges_from(v), t = edges_to(v), all = incident(v);
    if (o.size() + t.size() != all.size()) throw std::logic_error("incidence partition broken at " + vertices_[v].id);
  }
}

Graph build_square_lattice(int w, int h, const std::string& boundary, bool dangling_top) {
  if (boundary != "periodic" && boundary != "smooth-bottom")
    throw std::invalid_argument("unsupported boundary '" + boundary + "'");
  if (w < 2 || h < (boundary == "periodic" ? 2 : 1))
    throw std::invalid_argument("square lattice needs w >= 2 (and h >= 2 when periodic) to avoid self-loops");
  Graph g;
  g.kind = boundary;
  g.dimension = 2;
  const bool torus = boundary == "periodic";
  const int vrows = torus ? h : (dangling_top ? h + 1 : h);
  g.extent = {w, vrows, 1};
  g.periodic = {true, torus, false};
  for (int y = 0; y < vrows; ++y)
    for (int x = 0; x < w; ++x) g.add_vertex(coord_id("v:", {x, y, 0}, 2), {x, y, 0});
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      g.add_edge(coord_id("x:", {x, y, 0}, 2), g.vertex_at({x + 1, y, 0}), g.vertex_at({x, y, 0}), 'x', {x, y, 0});
  const int vert_rows = torus ? h : (dangling_top ? h : h - 1);
  for (int y = 0; y < vert_rows; ++y)
    for (int x = 0; x < w; ++x)
      g.add_edge(coord_id("y:", {x, y, 0}, 2), g.vertex_at({x, y + 1, 0}), g.vertex_at({x, y, 0}), 'y', {x, y, 0});
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) try_face(g, {x, y, 0}, 'x', 'y', "xy");
  g.validate();
  return g;
}

Graph build_cubic_lattice(int w, int h, int d, bool periodic) {
  if (w < 2 || h < 2 || d < 1) throw std::invalid_argument("cubic lattice needs w, h >= 2 and d >= 1");
  Graph g;
  g.kind = periodic ? "cubic-periodic" : "cubic-open";
  g.dimension = 3;
  g.extent = {w, h, d};
  g.periodic = {periodic, periodic, periodic && d >= 2};
  for (int z = 0; z < d; ++z)
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) g.add_vertex(coord_id("v:", {x, y, z}, 3), {x, y, z});
  auto edges_along = [&](char a, int ia, int n) {
    for (int z = 0; z < d; ++z)
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
          std::array<int, 3> p{x, y, z};
          if (!g.periodic[ia] && p[ia] + 1 >= n) continue;
          const int o = g.vertex_at(shifted(p, ia, 1));
          if (o < 0 || o == g.vertex_at(p)) continue;
          g.add_edge(coord_id(std::string(1, a) + ":", p, 3), o, g.vertex_at(p), a, p);
        }
  };
  edges_along('x', 0, w);
  edges_along('y', 1, h);
  edges_along('z', 2, d);
  for (int z = 0; z < d; ++z)
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        try_face(g, {x, y, z}, 'x', 'y', "xy");
        try_face(g, {x, y, z}, 'x', 'z', "xz");
        try_face(g, {x, y, z}, 'y', 'z', "yz");
      }
  g.validate();
  return g;
}

Graph build_cubic_slab(int w, int h, int layers) {
  if (w < 2 || h < 2 || layers < 1) throw std::invalid_argument("slab needs w, h >= 2 and at least one layer");
  Graph g;
  g.kind = "cubic-slab";
  g.dimension = 3;
  // Vertex layers -1 and `layers` only anchor the dangling z-edges.
  g.extent = {w, h, layers + 2};
  g.periodic = {true, true, false};
  for (int z = -1; z <= layers; ++z)
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) g.add_vertex(coord_id("v:", {x, y, z}, 3), {x, y, z});
  for (int z = 0; z < layers; ++z)
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        g.add_edge(coord_id("x:", {x, y, z}, 3), g.vertex_at({x + 1, y, z}), g.vertex_at({x, y, z}), 'x', {x, y, z});
        g.add_edge(coord_id("y:", {x, y, z}, 3), g.vertex_at({x, y + 1, z}), g.vertex_at({x, y, z}), 'y', {x, y, z});
      }
  for (int z = -1; z < layers; ++z)
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x)
        g.add_edge(coord_id("z:", {x, y, z}, 3), g.vertex_at({x, y, z + 1}), g.vertex_at({x, y, z}), 'z', {x, y, z});
  for (int z = -1; z < layers; ++z)
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        try_face(g, {x, y, z}, 'x', 'y', "xy");
        try_face(g, {x, y, z}, 'x', 'z', "xz");
        try_face(g, {x, y, z}, 'y', 'z', "yz");
      }
  g.validate();
  return g;
}

Graph lattice_from_json(const nlohmann::json& j) {
  const std::string kind = j.value("kind", "");
  if (kind == "square")
    return build_square_lattice(j.at("w").get<int>(), j.at("h").get<int>(), j.value("boundary", "periodic"),
                                j.value("dangling_top", false));
  if (kind == "cubic") return build_cubic_lattice(j.at("w"), j.at("h"), j.at("d"), j.value("periodic", true));
  if (kind == "slab") return build_cubic_slab(j.at("w"), j.at("h"), j.value("layers", 1));
  throw std::invalid_argument("lattice.kind: unsupported '" + kind + "'");
}

Path face_loop(const Graph& g, int face) {
  const Face& f = g.faces().at(face);
  Path p;
  p.vertices = {f.corners[0], f.corners[1], f.corners[2], f.corners[3], f.corners[0]};
  p.edges = {f.edges[0], f.edges[1], f.edges[2], f.edges[3]};
  p.signs = path_signs(g, p);
  return p;
}

std::vector<int> path_signs(const Graph& g, const Path& p) {
  if (p.vertices.size() != p.edges.size() + 1) throw std::invalid_argument("path: vertex/edge count mismatch");
  std::vector<int> s;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    const Edge& e = g.edges().at(p.edges[i]);
    const int a = p.vertices[i], b = p.vertices[i + 1];
    if (e.origin == a && e.terminus == b)
      s.push_back(+1);
    else if (e.origin == b && e.terminus == a)
      s.push_back(-1);
    else
      throw std::invalid_argument("path: edge " + e.id + " does not join consecutive vertices");
  }
  return s;
}

Path make_path(const Graph& g, const std::vector<int>& vertices) {
  if (vertices.size() < 2) throw std::invalid_argument("path needs at least two vertices");
  Path p;
  p.vertices = vertices;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    int found = -1;
    for (int e = 0; e < static_cast<int>(g.edges().size()) && found < 0; ++e)
      if (g.edges()[e].origin == vertices[i] && g.edges()[e].terminus == vertices[i + 1]) found = e;
    for (int e = 0; e < static_cast<int>(g.edges().size()) && found < 0; ++e)
      if (g.edges()[e].terminus == vertices[i] && g.edges()[e].origin == vertices[i + 1]) found = e;
    if (found < 0) throw std::invalid_argument("path: vertices are not adjacent");
    p.edges.push_back(found);
  }
  p.signs = path_signs(g, p);
  return p;
}

Path straight_loop(const Graph& g, int v, char axis) {
  const int ia = axis_index(axis);
  if (!g.periodic[ia]) throw std::invalid_argument("straight loop needs a periodic direction");
  Path p;
  p.vertices.push_back(v);
  int cur = v;
  for (int step = 0; step < g.extent[ia]; ++step) {
    const int e = g.vertices()[cur].legs[2 * ia];
    if (e < 0) throw std::invalid_argument("straight loop: missing edge");
    p.edges.push_back(e);
    cur = g.edges()[e].terminus;
    p.vertices.push_back(cur);
  }
  p.signs = path_signs(g, p);
  return p;
}

}  // namespace qdg::lattice
