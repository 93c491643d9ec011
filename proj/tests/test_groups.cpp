#include <gtest/gtest.h>

#include <algorithm>

#include "qdg/groups.hpp"

using namespace qdg;

namespace {

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// Character orthogonality computed directly from the matrices, independent of how irreps() was found.
double orthogonality_defect(const FiniteGroup& g, const std::vector<Irrep>& irr) {
  double worst = 0;
  for (std::size_t a = 0; a < irr.size(); ++a)
    for (std::size_t b = 0; b < irr.size(); ++b) {
      cplx s = 0;
      for (int x = 0; x < g.order; ++x) s += std::conj(irr[a].character(x)) * irr[b].character(x);
      worst = std::max(worst, std::abs(s / double(g.order) - (a == b ? 1.0 : 0.0)));
    }
  return worst;
}

}  // namespace

TEST(Groups, Z2Table) {
  const auto g = build_group("Z2");
  EXPECT_EQ(g.order, 2);
  EXPECT_EQ(g.table, (std::vector<int>{0, 1, 1, 0}));
}

TEST(Groups, S3IsNonAbelian) {
  const auto g = build_group("S3");
  EXPECT_EQ(g.order, 6);
  bool found = false;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) found = found || g.mul(a, b) != g.mul(b, a);
  EXPECT_TRUE(found);
  EXPECT_FALSE(g.is_abelian());
}

TEST(Groups, Z2xZ2SelfInverse) {
  const auto g = build_group("Z2xZ2");
  for (int a = 0; a < 4; ++a) EXPECT_EQ(g.mul(a, a), g.identity);
}

TEST(Groups, UnknownDescriptorThrows) { EXPECT_THROW(build_group("E8"), std::invalid_argument); }

TEST(Groups, AxiomsHoldForShippedDescriptors) {
  for (const char* d : {"Z2", "Z3", "Z4", "Z2xZ2", "S3", "D4", "Q8"}) EXPECT_NO_THROW(validate_group(build_group(d))) << d;
}

TEST(Groups, CosetsS3A3) {
  const auto g = build_group("S3");
  const auto a3 = subgroup_from_descriptor(g, "A3");
  EXPECT_EQ(a3.size(), 3);
  EXPECT_TRUE(a3.is_normal);
  const auto c = cosets(g, a3);
  ASSERT_EQ(c.representatives.size(), 2u);
  EXPECT_EQ(c.representatives[0], g.identity);
  EXPECT_FALSE(a3.contains(c.representatives[1]));
  EXPECT_EQ(g.mul(c.representatives[1], c.representatives[1]), g.identity);
}

TEST(Groups, CosetsTrivialAndZ4) {
  const auto s3 = build_group("S3");
  EXPECT_EQ(cosets(s3, full_subgroup(s3)).representatives, std::vector<int>{s3.identity});
  const auto z4 = build_group("Z4");
  EXPECT_EQ(cosets(z4, make_subgroup(z4, {0, 2})).representatives, (std::vector<int>{0, 1}));
}

TEST(Groups, RegularRepConventions) {
  const auto g = build_group("S3");
  const auto L = regular_rep(g, Side::Left), R = regular_rep(g, Side::Right);
  for (int a = 0; a < g.order; ++a)
    for (int h = 0; h < g.order; ++h) {
      EXPECT_EQ(L[a](g.mul(a, h), h), cplx(1));
      EXPECT_EQ(R[a](g.mul(h, g.inv[a]), h), cplx(1));
    }
  EXPECT_LT(max_abs(L[g.identity] - Mat::Identity(6, 6)), 1e-15);
  const auto z2 = regular_rep(build_group("Z2"), Side::Left);
  Mat swap(2, 2);
  swap << 0, 1, 1, 0;
  EXPECT_LT(max_abs(z2[1] - swap), 1e-15);
  for (int a = 0; a < g.order; ++a)
    for (int b = 0; b < g.order; ++b) {
      EXPECT_LT(max_abs(L[a] * L[b] - L[g.mul(a, b)]), 1e-15);
      EXPECT_LT(max_abs(R[a] * R[b] - R[g.mul(a, b)]), 1e-15);
      EXPECT_LT(max_abs(L[a] * R[b] - R[b] * L[a]), 1e-15);
    }
}

TEST(Groups, ProjectiveRepTrivialCocycleIsRegular) {
  const auto g = build_group("S3");
  const auto t = trivial_cocycle(g.order);
  for (auto side : {Side::Left, Side::Right}) {
    const auto a = projective_regular_rep(g, t, side), b = regular_rep(g, side);
    for (int x = 0; x < g.order; ++x) EXPECT_LT(max_abs(a[x] - b[x]), 1e-15);
  }
}

TEST(Groups, Z2xZ2PauliAnticommutation) {
  const auto g = build_group("Z2xZ2");
  const auto tau = cocycle_from_descriptor(g, "z2z2_nontrivial");
  EXPECT_FALSE(tau.is_trivial());
  EXPECT_LT(cocycle_residual(g, tau), 1e-14);
  const auto L = projective_regular_rep(g, tau, Side::Left);
  int anti = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const Mat grp = L[a] * L[b] * L[b].inverse() * L[a].inverse();
      const Mat comm = L[a] * L[b] * L[a].inverse() * L[b].inverse();
      EXPECT_LT(max_abs(grp - Mat::Identity(4, 4)), 1e-14);
      const bool plus = max_abs(comm - Mat::Identity(4, 4)) < 1e-12;
      const bool minus = max_abs(comm + Mat::Identity(4, 4)) < 1e-12;
      EXPECT_TRUE(plus || minus);
      anti += minus;
    }
  EXPECT_EQ(anti, 6);  // each ordered pair of distinct non-identity elements
}

TEST(Groups, ProjectiveComposition) {
  const auto g = build_group("Z2xZ2");
  const auto tau = cocycle_from_descriptor(g, "z2z2_nontrivial");
  for (auto side : {Side::Left, Side::Right}) {
    const auto m = projective_regular_rep(g, tau, side);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) EXPECT_LT(max_abs(m[a] * m[b] - tau(a, b) * m[g.mul(a, b)]), 1e-14);
  }
}

TEST(Groups, IrrepDimensions) {
  auto dims = [](const char* d) {
    std::vector<int> v;
    for (const auto& r : irreps(build_group(d))) v.push_back(r.dim);
    std::sort(v.begin(), v.end());
    return v;
  };
  EXPECT_EQ(dims("Z2"), (std::vector<int>{1, 1}));
  EXPECT_EQ(dims("S3"), (std::vector<int>{1, 1, 2}));
  EXPECT_EQ(dims("Q8"), (std::vector<int>{1, 1, 1, 1, 2}));
  EXPECT_EQ(dims("D4"), (std::vector<int>{1, 1, 1, 1, 2}));
}

TEST(Groups, IrrepsAreUnitaryHomomorphismsAndOrthogonal) {
  for (const char* d : {"Z3", "Z2xZ2", "S3", "D4", "Q8"}) {
    const auto g = build_group(d);
    const auto irr = irreps(g);
    for (const auto& r : irr) {
      EXPECT_LT(representation_residual(r), 1e-10) << d << " " << r.label;
      EXPECT_LT(unitarity_residual(r), 1e-10) << d << " " << r.label;
    }
    EXPECT_LT(orthogonality_defect(g, irr), 1e-10) << d;
  }
}

TEST(Groups, Z2Characters) {
  const auto irr = irreps(build_group("Z2"));
  ASSERT_EQ(irr.size(), 2u);
  EXPECT_NEAR(std::abs(irr[0].character(1) - 1.0), 0, 1e-14);
  EXPECT_NEAR(std::abs(irr[1].character(1) + 1.0), 0, 1e-14);
}

TEST(Groups, FusionS3TwoByTwo) {
  const auto irr = irreps(build_group("S3"));
  const auto two = std::find_if(irr.begin(), irr.end(), [](const Irrep& r) { return r.dim == 2; });
  const auto n = fusion_multiplicities(*two, *two, irr);
  EXPECT_EQ(n, (std::vector<int>{1, 1, 1}));
  const auto t = fusion_multiplicities(irr[0], *two, irr);
  for (std::size_t c = 0; c < irr.size(); ++c) EXPECT_EQ(t[c], irr[c].dim == 2 ? 1 : 0);
}

TEST(Groups, FusionZ2SignSquared) {
  const auto irr = irreps(build_group("Z2"));
  EXPECT_EQ(fusion_multiplicities(irr[1], irr[1], irr), (std::vector<int>{1, 0}));
}

TEST(Groups, RestrictedCocycleStaysCocycle) {
  const auto g = build_group("Z2xZ2");
  const auto tau = cocycle_from_descriptor(g, "z2z2_nontrivial");
  const auto k = make_subgroup(g, {0, 1});
  EXPECT_LT(cocycle_residual(subgroup_as_group(k), restrict_cocycle(tau, k)), 1e-14);
}
