#include <gtest/gtest.h>

#include <random>
#include <unsupported/Eigen/KroneckerProduct>

#include "qdg/qdouble.hpp"

using namespace qdg;
using namespace qdg::qd;

namespace {

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Mat kron_power(const Mat& m, std::size_t n) {
  Mat out = Mat::Identity(1, 1);
  for (std::size_t i = 0; i < n; ++i) out = Eigen::kroneckerProduct(out, m).eval();
  return out;
}

StabilizerSet torus(const char* group) {
  const auto g = build_group(group);
  return make_stabilizers(lattice::build_square_lattice(2, 2, "periodic"), g, trivial_cocycle(g.order));
}

struct Strip {
  DenseState state;
  StabilizerSet stab;
};

Strip iterated_strip(const char* group, const char* k, const char* beta = "trivial") {
  const auto g = build_group(group);
  const auto sub = subgroup_from_descriptor(g, k);
  const auto b = cocycle_from_descriptor(subgroup_as_group(sub), beta);
  const auto in = chain::boundary_input_state(sub, b, g, 4);
  const auto tau = trivial_cocycle(g.order);
  auto it = chain::iterate_gauging(in.psi, in.carriers, tau, 2, chain::boundary_layout(in));
  return {std::move(it.state), strip_from_layout(it.layout, g, tau, sub, b)};
}

bool passes(const Report& r) {
  for (const auto& c : r.checks)
    if (!c.pass) {
      ADD_FAILURE() << c.id << " at " << c.site << " residual " << c.residual;
      return false;
    }
  return true;
}

}  // namespace

TEST(Placement, TableEntries) {
  EXPECT_EQ(leg_rep("bulk2d", 'x', true), "tauR");
  EXPECT_EQ(leg_rep("bulk2d", 'x', false), "taubarL");
  EXPECT_EQ(leg_rep("bulk2d", 'y', true), "R");
  EXPECT_EQ(leg_rep("bulk2d", 'y', false), "L");
  EXPECT_EQ(leg_rep("boundary2d", 'x', true), "alphaR");
  EXPECT_EQ(leg_rep("boundary2d", 'x', false), "alphabarL");
  EXPECT_EQ(leg_rep("bulk3d", 'z', true), "R");
  EXPECT_EQ(leg_rep("bulk3d", 'x', false), "L");
  EXPECT_ANY_THROW(leg_rep("bulk2d", 'z', true));
}

TEST(Placement, ToricCodeLimit) {
  const auto s = torus("Z2");
  Mat x(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  z << 1, 0, 0, -1;
  for (int v : s.star_vertices()) {
    const auto a = star_operator(s, v, 1);
    EXPECT_EQ(a.support.size(), 4u);
    EXPECT_LT(max_abs(a.dense() - kron_power(x, 4)), 1e-14);
    EXPECT_LT(max_abs(star_operator(s, v, 0).dense() - Mat::Identity(16, 16)), 1e-14);
  }
  for (int f : s.all_faces()) {
    const auto irr = face_irreps(s, f);
    EXPECT_LT(max_abs(plaquette_operator(s, f, irr[1]).dense() - kron_power(z, 4)), 1e-14);
    EXPECT_LT(max_abs(plaquette_operator(s, f, irr[0]).dense() - Mat::Identity(16, 16)), 1e-14);
  }
}

TEST(Stabilizers, StarRepresentationAndCommutation) {
  for (const char* g : {"Z3", "S3"}) {
    const auto s = torus(g);
    EXPECT_TRUE(passes(star_representation_checks(s)));
    EXPECT_TRUE(passes(commutator_checks(s)));
    EXPECT_TRUE(passes(projector_checks(s, BfWeights::Projector)));
  }
}

TEST(Stabilizers, TwistedBulkCocycle) {
  const auto g = build_group("Z2xZ2");
  const auto s = make_stabilizers(lattice::build_square_lattice(2, 2, "periodic"), g,
                                  cocycle_from_descriptor(g, "z2z2_nontrivial"));
  EXPECT_TRUE(passes(star_representation_checks(s)));
  EXPECT_TRUE(passes(commutator_checks(s)));
}

TEST(Stabilizers, ReversedHolonomyOrderBreaksCommutation) {
  // Multiplying earlier steps on the left is only equivalent for abelian groups.
  const auto s = torus("S3");
  const auto irr = irreps(s.group);
  const auto& two = *std::find_if(irr.begin(), irr.end(), [](const Irrep& r) { return r.dim == 2; });
  double worst = 0;
  for (int f : s.all_faces()) {
    auto loop = lattice::face_loop(s.lat, f);
    std::reverse(loop.edges.begin(), loop.edges.end());
    std::reverse(loop.signs.begin(), loop.signs.end());
    std::vector<EdgeSite> steps;
    for (int e : loop.edges) steps.push_back(s.edges[e]);
    const auto wrong = holonomy_operator(steps, loop.signs, s.group, [&](int h) { return two.character(h) / 2.0; });
    for (int v : s.star_vertices())
      for (int x = 0; x < 6; ++x) worst = std::max(worst, commutator_residual(star_operator(s, v, x), wrong));
  }
  EXPECT_GT(worst, 0.1);
}

TEST(Stabilizers, HolonomyOrderDirect) {
  const auto g = build_group("S3");
  const std::vector<EdgeSite> steps{{{"a", 6}, {0, 1, 2, 3, 4, 5}}, {{"b", 6}, {0, 1, 2, 3, 4, 5}}};
  // Basis state |a=1, b=3>: the path-ordered product is 3·1.
  const auto op = holonomy_operator(steps, {1, 1}, g, [&](int h) { return h == g.mul(3, 1) ? 1.0 : 0.0; });
  EXPECT_EQ(op.dense()(1 * 6 + 3, 1 * 6 + 3), cplx(1));
  if (g.mul(3, 1) != g.mul(1, 3)) EXPECT_EQ(op.dense()(3 * 6 + 1, 3 * 6 + 1), cplx(0));
}

TEST(Boundary, StarOutsideSubgroupRejected) {
  const auto g = build_group("S3");
  const auto k = subgroup_from_descriptor(g, "A3");
  const auto s = make_stabilizers(lattice::build_square_lattice(2, 2, "smooth-bottom"), g, trivial_cocycle(6), k,
                                  trivial_cocycle(3));
  int bv = -1;
  for (int v : s.star_vertices())
    if (s.boundary_vertex(v)) bv = v;
  ASSERT_GE(bv, 0);
  int outside = -1;
  for (int x = 0; x < 6; ++x)
    if (!k.contains(x)) outside = x;
  EXPECT_THROW(star_operator(s, bv, outside), std::invalid_argument);
  EXPECT_NO_THROW(star_operator(s, bv, k.elements[1]));
}

TEST(Boundary, FaceBasePointAtBottomLeft) {
  const auto g = build_group("S3");
  const auto k = subgroup_from_descriptor(g, "A3");
  const auto s = make_stabilizers(lattice::build_square_lattice(2, 2, "smooth-bottom", true), g, trivial_cocycle(6), k,
                                  trivial_cocycle(3));
  const auto kirr = irreps(subgroup_as_group(k));
  double rotated = 0, literal = 0;
  for (int f : s.all_faces()) {
    if (!s.boundary_face(f)) continue;
    const auto loop = lattice::face_loop(s.lat, f);
    std::vector<EdgeSite> steps;
    for (int e : loop.edges) steps.push_back(s.edges[e]);
    for (const auto& rho : kirr) {
      const auto lit = holonomy_operator(steps, loop.signs, g, [&](int h) {
        const int l = k.local(h);
        return l < 0 ? cplx(0) : rho.character(l);
      });
      const auto good = plaquette_operator(s, f, rho);
      for (int v : s.star_vertices())
        for (int x = 0; x < 6; ++x) {
          if (s.boundary_vertex(v) && !k.contains(x)) continue;
          literal = std::max(literal, commutator_residual(star_operator(s, v, x), lit));
          rotated = std::max(rotated, commutator_residual(star_operator(s, v, x), good));
        }
    }
  }
  EXPECT_LT(rotated, 1e-12);
  EXPECT_GT(literal, 0.1);
}

TEST(GroundState, Z2StripPasses) {
  const auto st = iterated_strip("Z2", "G");
  const auto r = verify_ground_state(st.state, st.stab);
  EXPECT_TRUE(passes(r));
  EXPECT_TRUE(passes(commutator_checks(st.stab)));
  const int nv = r.info.at("vertices").get<int>(), nf = r.info.at("faces").get<int>();
  EXPECT_NEAR(hamiltonian(st.stab).energy(st.state), -(nv + nf), 1e-8);
}

TEST(GroundState, TwistedBoundaryZ2xZ2) {
  const auto st = iterated_strip("Z2xZ2", "G", "z2z2_nontrivial");
  EXPECT_TRUE(passes(verify_ground_state(st.state, st.stab)));
  EXPECT_TRUE(passes(commutator_checks(st.stab)));
}

TEST(GroundState, S3WithA3Boundary) {
  const auto st = iterated_strip("S3", "A3");
  EXPECT_TRUE(passes(verify_ground_state(st.state, st.stab)));
  EXPECT_TRUE(passes(commutator_checks(st.stab)));
}

TEST(GroundState, RandomStateFails) {
  auto st = iterated_strip("Z2", "G");
  std::mt19937 rng(3);
  std::normal_distribution<double> nd;
  for (auto& a : st.state.amp) a = cplx(nd(rng), nd(rng));
  const auto r = verify_ground_state(st.state, st.stab);
  EXPECT_FALSE(r.passed());
  EXPECT_GT(r.max_residual("star"), 0.1);
}

TEST(Weights, UniformFormFailsOnS3Only) {
  const auto bad = bf_weighting_control(build_group("S3"));
  ASSERT_NE(bad.find("bf-uniform-weights-idempotence"), nullptr);
  EXPECT_GT(bad.find("bf-uniform-weights-idempotence")->residual, 0.1);
  EXPECT_LT(bad.find("bf-projector-weights-idempotence")->residual, 1e-12);
  EXPECT_TRUE(bad.passed());
  const auto s = torus("Z3");
  EXPECT_TRUE(passes(projector_checks(s, BfWeights::Uniform)));
  EXPECT_THROW(bf_weights_from_string("uniform"), std::invalid_argument);
}
