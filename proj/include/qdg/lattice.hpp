#pragma once

#include <array>
#include <string>
#include <vector>

#include "json.hpp"

namespace qdg::lattice {

// Leg slots of a vertex, in the order -x, +x, -y, +y, -z, +z.
enum Dir { XMinus = 0, XPlus, YMinus, YPlus, ZMinus, ZPlus };

struct Vertex {
  std::string id;
  std::array<int, 3> pos{};
  std::array<int, 6> legs{-1, -1, -1, -1, -1, -1};
};

// Edges point toward decreasing coordinate: an axis-a edge at p runs from p + ê_a to p.
struct Edge {
  std::string id;
  int origin = -1;
  int terminus = -1;
  char axis = 'x';
  std::array<int, 3> pos{};
};

struct Path {
  std::vector<int> vertices;  // v_1..v_n (closed paths repeat v_1 at the end)
  std::vector<int> edges;
  std::vector<int> signs;     // +1 iff the step follows the edge orientation

  bool closed() const { return !vertices.empty() && vertices.front() == vertices.back(); }
  Path reversed() const;
};

struct Face {
  std::string id;
  std::string plane;  // "xy", "xz" or "yz"
  std::array<int, 3> pos{};
  std::array<int, 4> edges{};  // top, left, bottom, right in the face's plane
  std::array<int, 4> corners{};  // top-right, top-left, bottom-left, bottom-right
};

class Graph {
 public:
  int add_vertex(std::string id, std::array<int, 3> pos);
  int add_edge(std::string id, int origin, int terminus, char axis, std::array<int, 3> pos);
  void add_face(Face f) { faces_.push_back(std::move(f)); }

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Face>& faces() const { return faces_; }
  std::vector<Vertex>& vertices_mut() { return vertices_; }

  std::vector<int> edges_from(int v) const;  // E_v^o
  std::vector<int> edges_to(int v) const;    // E_v^t
  std::vector<int> incident(int v) const;    // E_v
  int vertex_at(std::array<int, 3> pos) const;
  int edge_at(char axis, std::array<int, 3> pos) const;
  int find_edge(const std::string& id) const;
  int find_vertex(const std::string& id) const;

  // Complete stars have every leg the lattice geometry allows in the interior.
  bool complete_star(int v) const;
  void validate() const;

  std::array<int, 3> extent{1, 1, 1};
  std::array<bool, 3> periodic{false, false, false};
  int dimension = 2;
  std::string kind;

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<Face> faces_;
};

// "periodic" is a w×h torus; "smooth-bottom" is periodic in x with rows 0..h-1 of horizontal edges,
// verticals between consecutive rows, and with dangling_top an extra vertical row above the last.
Graph build_square_lattice(int w, int h, const std::string& boundary, bool dangling_top = false);
Graph build_cubic_lattice(int w, int h, int d, bool periodic);
// Periodic in x,y; layers 0..layers-1 of in-plane edges, with dangling z-edges below the bottom and
// above the top layer.
Graph build_cubic_slab(int w, int h, int layers);
Graph lattice_from_json(const nlohmann::json& j);

Path face_loop(const Graph& g, int face);
std::vector<int> path_signs(const Graph& g, const Path& p);
// Builds a path from a vertex sequence, choosing for each step an edge joining the pair.
Path make_path(const Graph& g, const std::vector<int>& vertices);
// The loop along one axis through vertex v, for periodic directions.
Path straight_loop(const Graph& g, int v, char axis);

}  // namespace qdg::lattice
