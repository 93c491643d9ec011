#include <gtest/gtest.h>

#include "qdg/gauge_higher.hpp"

using namespace qdg;
using namespace qdg::higher;

namespace {

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

bool passes(const Report& r) {
  for (const auto& c : r.checks)
    if (!c.pass) {
      ADD_FAILURE() << c.id << " at " << c.site << " residual " << c.residual;
      return false;
    }
  return !r.checks.empty();
}

}  // namespace

TEST(Higher, TrivialGroupProjectorIsIdentity) {
  auto lay = make_slab_layout(build_group("Z1"), 2, 2, 1);
  const auto s = uniform_matter_state(lay);
  const auto out = gauge_0form(s, lay, 0);
  const auto p = vertex_gauss_projector(lay, lay.layer_vertices(0)[0]);
  EXPECT_LT(max_abs(p.dense() - Mat::Identity(p.local_dim(), p.local_dim())), 1e-15);
  EXPECT_NEAR(out.state.amp[0].real(), 1.0, 1e-14);
}

TEST(Higher, FluxInvarianceAfterZeroForm) {
  auto lay = make_slab_layout(build_group("Z2"), 2, 2, 1);
  const auto out = gauge_0form(uniform_matter_state(lay), lay, 0);
  const auto r = check_flux_invariance(out.state, lay, 0, 1e-10);
  EXPECT_TRUE(passes(r));
  EXPECT_EQ(generating_loops(lay, 0).size(), 6u);
  EXPECT_EQ(r.checks.size(), 12u);
}

TEST(Higher, FluxOperatorValues) {
  auto lay = make_slab_layout(build_group("Z2"), 2, 2, 1);
  gauge_0form(uniform_matter_state(lay), lay, 0);
  const auto irr = irreps(lay.group);
  const int f = lay.layer_faces(0)[0];
  const auto loop = lattice::face_loop(lay.lat, f);
  const auto sign = flux_operator(lay, loop, irr[1]);
  EXPECT_LT(max_abs(flux_operator(lay, loop, irr[0]).dense() - Mat::Identity(16, 16)), 1e-15);
  // The support follows the loop; a single flipped edge gives -1.
  EXPECT_NEAR(sign.dense()(8, 8).real(), -1.0, 1e-15);
  EXPECT_NEAR(sign.dense()(0, 0).real(), 1.0, 1e-15);
  const auto& e = lay.lat.edges()[loop.edges[0]];
  const lattice::Path back{{e.origin, e.terminus, e.origin}, {loop.edges[0], loop.edges[0]}, {1, -1}};
  EXPECT_EQ(lattice::path_signs(lay.lat, back), back.signs);
  EXPECT_LT(max_abs(flux_operator(lay, back, irr[1]).dense() - Mat::Identity(2, 2)), 1e-15);
}

TEST(Higher, DualSymmetryAfterOneForm) {
  auto lay = make_slab_layout(build_group("Z2"), 2, 2, 1);
  const auto a = gauge_0form(uniform_matter_state(lay), lay, 0);
  const auto b = gauge_1form(a.state, lay, 0);
  EXPECT_TRUE(passes(check_dual_symmetry(b.state, lay, 0, 1e-10)));
  EXPECT_LT(invariance_residual(dual_symmetry(lay, 0, 1), b.state), 1e-10);
}

TEST(Higher, IterateZeroIsIdentity) {
  const auto lay = make_slab_layout(build_group("Z2"), 2, 2, 1);
  const auto s = uniform_matter_state(lay);
  const auto it = iterate_3d(s, lay, 0);
  EXPECT_NEAR(fidelity_up_to_scale(it.state, s), 1.0, 1e-15);
}

TEST(Higher, TwoRoundStabilizers) {
  const auto lay = make_slab_layout(build_group("Z2"), 2, 2, 1);
  const auto it = iterate_3d(uniform_matter_state(lay), lay, 2);
  EXPECT_EQ(it.state.space.size(), 16u);
  const auto st = stabilizers_3d(it.layout);
  EXPECT_TRUE(passes(qd::verify_ground_state(it.state, st)));
  EXPECT_TRUE(passes(qd::commutator_checks(st)));
}

TEST(Higher, NonSymmetricMatterRejected) {
  auto lay = make_slab_layout(build_group("Z2"), 2, 2, 1);
  auto s = uniform_matter_state(lay);
  s.amp.assign(s.amp.size(), 0.0);
  s.amp[0] = 1.0;
  EXPECT_ANY_THROW(gauge_0form(s, lay, 0));
}
