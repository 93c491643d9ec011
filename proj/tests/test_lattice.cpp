#include <gtest/gtest.h>

#include "qdg/lattice.hpp"

using namespace qdg::lattice;

TEST(Lattice, TorusCounts) {
  const auto g = build_square_lattice(2, 2, "periodic");
  EXPECT_EQ(g.vertices().size(), 4u);
  EXPECT_EQ(g.edges().size(), 8u);
  EXPECT_EQ(g.faces().size(), 4u);
  EXPECT_EQ(int(g.vertices().size()) - int(g.edges().size()) + int(g.faces().size()), 0);
  EXPECT_NO_THROW(g.validate());
  for (std::size_t v = 0; v < g.vertices().size(); ++v) EXPECT_EQ(g.incident(int(v)).size(), 4u);
}

TEST(Lattice, DegenerateTorusRejected) { EXPECT_ANY_THROW(build_square_lattice(1, 1, "periodic")); }

TEST(Lattice, SmoothBottomDegree) {
  const auto g = build_square_lattice(2, 2, "smooth-bottom");
  for (std::size_t v = 0; v < g.vertices().size(); ++v)
    if (g.vertices()[v].pos[1] == 0) {
      EXPECT_EQ(g.incident(int(v)).size(), 3u);
      EXPECT_TRUE(g.complete_star(int(v)));
    }
}

TEST(Lattice, EdgeOrientation) {
  const auto g = build_square_lattice(3, 3, "periodic");
  for (const auto& e : g.edges()) {
    const auto& o = g.vertices()[e.origin].pos;
    const auto& t = g.vertices()[e.terminus].pos;
    const int a = e.axis - 'x';
    EXPECT_EQ(t, e.pos);
    EXPECT_EQ(o[a], (t[a] + 1) % 3);
  }
}

TEST(Lattice, CubicCounts) {
  // A single periodic z layer would need self-loop rungs, which the oriented graph excludes.
  const auto g = build_cubic_lattice(2, 2, 1, true);
  EXPECT_EQ(g.vertices().size(), 4u);
  EXPECT_EQ(g.edges().size(), 8u);
  for (const auto& e : g.edges()) EXPECT_NE(e.origin, e.terminus);
  int xy = 0;
  for (const auto& f : g.faces()) xy += f.plane == "xy";
  EXPECT_EQ(xy, 4);
  const auto c = build_cubic_lattice(2, 2, 2, true);
  EXPECT_EQ(c.vertices().size(), 8u);
  EXPECT_EQ(c.edges().size(), 24u);
  EXPECT_EQ(c.faces().size(), 24u);
  EXPECT_NO_THROW(c.validate());
}

TEST(Lattice, FaceLoopSigns) {
  const auto g = build_square_lattice(2, 2, "periodic");
  for (std::size_t f = 0; f < g.faces().size(); ++f) {
    const auto p = face_loop(g, int(f));
    EXPECT_TRUE(p.closed());
    int plus = 0, minus = 0;
    for (int s : p.signs) (s > 0 ? plus : minus)++;
    EXPECT_EQ(plus, 2);
    EXPECT_EQ(minus, 2);
    EXPECT_EQ(path_signs(g, p), p.signs);
    const auto r = p.reversed();
    for (std::size_t i = 0; i < r.signs.size(); ++i) EXPECT_EQ(r.signs[i], -p.signs[p.signs.size() - 1 - i]);
  }
}

TEST(Lattice, BacktrackingPath) {
  const auto g = build_square_lattice(3, 3, "periodic");
  const int v = g.vertex_at({0, 0, 0}), w = g.vertex_at({1, 0, 0});
  const auto p = make_path(g, {v, w, v});
  ASSERT_EQ(p.signs.size(), 2u);
  EXPECT_EQ(p.signs[0], -p.signs[1]);
  EXPECT_EQ(p.edges[0], p.edges[1]);
  EXPECT_EQ(p.signs[0], -1);  // v -> w runs against the edge from w to v
}

TEST(Lattice, StraightLoopWraps) {
  const auto g = build_square_lattice(3, 2, "periodic");
  const auto p = straight_loop(g, g.vertex_at({0, 0, 0}), 'x');
  EXPECT_TRUE(p.closed());
  EXPECT_EQ(p.edges.size(), 3u);
  for (int s : p.signs) EXPECT_EQ(s, 1);
}

TEST(Lattice, SlabLayers) {
  const auto g = build_cubic_slab(2, 2, 1);
  int z = 0, inplane = 0;
  for (const auto& e : g.edges()) (e.axis == 'z' ? z : inplane)++;
  EXPECT_EQ(inplane, 8);
  EXPECT_EQ(z, 8);
}

TEST(Lattice, FromJson) {
  EXPECT_EQ(lattice_from_json({{"kind", "square"}, {"w", 2}, {"h", 2}}).faces().size(), 4u);
  EXPECT_ANY_THROW(lattice_from_json({{"kind", "hexagonal"}}));
}
