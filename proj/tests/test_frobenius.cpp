#include <gtest/gtest.h>

#include "qdg/frobenius.hpp"

using namespace qdg;

namespace {

bool all_pass(const Report& r) {
  for (const auto& c : r.checks)
    if (!c.pass) {
      ADD_FAILURE() << c.id << " residual " << c.residual << " " << c.note;
      return false;
    }
  return true;
}

}  // namespace

TEST(Frobenius, TwistedGroupAlgebraZ2) {
  const auto f = twisted_group_algebra(build_group("Z2"), trivial_cocycle(2));
  const auto r = check_frobenius_axioms(f, 1e-12);
  EXPECT_TRUE(all_pass(r));
  EXPECT_TRUE(all_pass(check_haploid_symmetric_special(f, swap_matrix(f.dim))));
}

TEST(Frobenius, TwistedNontrivialZ2xZ2) {
  const auto g = build_group("Z2xZ2");
  const auto f = twisted_group_algebra(g, cocycle_from_descriptor(g, "z2z2_nontrivial"));
  EXPECT_TRUE(all_pass(check_frobenius_axioms(f)));
  const auto h = check_haploid_symmetric_special(f, swap_matrix(f.dim));
  EXPECT_TRUE(all_pass(h));
  EXPECT_NEAR(h.info.at("haploid_rank").get<double>(), 1.0, 1e-12);
}

TEST(Frobenius, RegularFunctionAlgebraS3) {
  const auto g = build_group("S3");
  const auto f = regular_function_algebra(g);
  EXPECT_TRUE(all_pass(check_frobenius_axioms(f)));
  EXPECT_TRUE(all_pass(check_haploid_symmetric_special(f, swap_matrix(f.dim))));
  EXPECT_TRUE(all_pass(right_translation_equivariance(f, g, 1e-12)));
}

TEST(Frobenius, CorruptedMultiplicationFailsAssociativity) {
  auto f = twisted_group_algebra(build_group("Z3"), trivial_cocycle(3));
  f.mu(1, 1 * 3 + 1) += 1.0;
  const auto r = check_frobenius_axioms(f);
  const auto* c = r.find("associativity");
  ASSERT_NE(c, nullptr);
  EXPECT_GT(c->residual, 0.1);
  EXPECT_FALSE(c->pass);
}

TEST(Frobenius, DirectSumIsNotHaploid) {
  const auto f = direct_sum(trivial_algebra(), trivial_algebra());
  const auto r = check_haploid_symmetric_special(f, swap_matrix(f.dim));
  const auto* c = r.find("haploid");
  ASSERT_NE(c, nullptr);
  EXPECT_FALSE(c->pass);
  EXPECT_NEAR(r.info.at("haploid_rank").get<double>(), 2.0, 1e-9);
}

TEST(Frobenius, InducedAlgebraLimits) {
  const auto g = build_group("S3");
  const auto full = full_subgroup(g);
  const auto whole = induced_endomorphism_algebra(g, full, trivial_cocycle(6), trivial_irrep(g));
  EXPECT_EQ(whole.dim, 1);
  const auto e = trivial_subgroup(g);
  const auto fun = induced_endomorphism_algebra(g, e, trivial_cocycle(1), trivial_irrep(subgroup_as_group(e)));
  EXPECT_EQ(fun.dim, 6);
  EXPECT_TRUE(all_pass(check_frobenius_axioms(fun)));
  EXPECT_TRUE(all_pass(check_haploid_symmetric_special(fun, swap_matrix(fun.dim))));
}

TEST(Frobenius, InducedAlgebraS3A3) {
  const auto g = build_group("S3");
  const auto k = subgroup_from_descriptor(g, "A3");
  const auto f = induced_endomorphism_algebra(g, k, trivial_cocycle(3), trivial_irrep(subgroup_as_group(k)));
  EXPECT_EQ(f.dim, 2);
  EXPECT_TRUE(all_pass(check_frobenius_axioms(f)));
  EXPECT_TRUE(all_pass(check_haploid_symmetric_special(f, swap_matrix(f.dim))));
}

TEST(Frobenius, RightTranslationIdentityExact) {
  const auto g = build_group("Z3");
  const auto r = right_translation_equivariance(regular_function_algebra(g), g, 1e-15);
  for (const auto& c : r.checks) EXPECT_EQ(c.residual, 0.0) << c.id;
}

TEST(Frobenius, DeltaPrimeFactorsThroughFirstLeg) {
  const auto g = build_group("Z2xZ2");
  const auto tau = cocycle_from_descriptor(g, "z2z2_nontrivial");
  const auto f = twisted_group_algebra(g, tau);
  const auto bc = delta_prime_basis_change(f, delta_prime(g, tau));
  EXPECT_LT(bc.residual_first, 1e-10);
}
