#include <gtest/gtest.h>

#include "qdg/peps.hpp"

using namespace qdg;
using namespace qdg::qd;

namespace {

double peps_fidelity(const char* group, const char* k, const char* beta, int rounds) {
  const auto g = build_group(group);
  const auto sub = subgroup_from_descriptor(g, k);
  const auto b = cocycle_from_descriptor(subgroup_as_group(sub), beta);
  const auto tau = trivial_cocycle(g.order);
  const auto in = chain::boundary_input_state(sub, b, g, 4);
  const auto it = chain::iterate_gauging(in.psi, in.carriers, tau, rounds, chain::boundary_layout(in));
  return fidelity_up_to_scale(build_peps_state(make_peps(g, sub, b, tau), it.layout), it.state);
}

}  // namespace

TEST(Peps, TensorEntries) {
  const auto g = build_group("S3");
  const auto net = make_peps(g, full_subgroup(g), trivial_cocycle(6), trivial_cocycle(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      const int x = g.mul(a, g.inv[b]);
      EXPECT_EQ(net.To(x, {a, a, b, b}), cplx(1));
      EXPECT_EQ(net.To(x, {a, b == a ? (a + 1) % 6 : b, b, b}), cplx(0));
      EXPECT_EQ(net.Te_top(x, {a, b, 0, 0}), cplx(1));
      EXPECT_EQ(net.Te(x, {a, b, a, b}), cplx(1));
      EXPECT_EQ(net.Tb(a, g.mul(a, b), b), cplx(1));
    }
}

TEST(Peps, MatchesIteratedGauging) {
  for (int rounds : {1, 2}) {
    EXPECT_GT(peps_fidelity("Z2", "G", "trivial", rounds), 1 - 1e-10) << rounds;
    EXPECT_GT(peps_fidelity("Z3", "G", "trivial", rounds), 1 - 1e-10) << rounds;
  }
  EXPECT_GT(peps_fidelity("Z2xZ2", "G", "z2z2_nontrivial", 2), 1 - 1e-10);
  EXPECT_GT(peps_fidelity("S3", "A3", "trivial", 2), 1 - 1e-10);
}

TEST(Peps, PullThroughIdentities) {
  for (const char* group : {"Z2", "S3", "Z2xZ2"}) {
    const auto g = build_group(group);
    const auto tau = std::string(group) == "Z2xZ2" ? cocycle_from_descriptor(g, "z2z2_nontrivial") : trivial_cocycle(g.order);
    const auto net = make_peps(g, full_subgroup(g), tau, tau);
    const auto r = local_pullthrough_checks(net, tau, tau);
    EXPECT_EQ(r.checks.size(), 12u);
    for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << group << " " << c.id << " " << c.parameter << " " << c.residual;
  }
}

TEST(Peps, PullThroughDetectsWrongLeg) {
  const auto g = build_group("S3");
  const auto net = make_peps(g, full_subgroup(g), trivial_cocycle(6), trivial_cocycle(6));
  const auto L = regular_rep(g, Side::Left);
  auto to = [&](int x, const std::array<int, 4>& l) { return net.To(x, l); };
  // L on the physical leg pulls through to the lower legs only, not to the upper ones.
  const double right = pullthrough_residual(6, {6, 6, 6, 6}, to, L[1], {{LD, conjugated(L)[1]}, {RD, L[1]}});
  const double wrong = pullthrough_residual(6, {6, 6, 6, 6}, to, L[1], {{LU, conjugated(L)[1]}, {RU, L[1]}});
  EXPECT_LT(right, 1e-12);
  EXPECT_GT(wrong, 0.1);
}
