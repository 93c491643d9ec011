#pragma once

#include <string>
#include <vector>

#include "qdg/groups.hpp"
#include "qdg/report.hpp"

namespace qdg {

// Tensors act on column vectors; the pair |a>⊗|b> has index a*dim + b.
struct FrobeniusAlgebra {
  int dim = 0;
  Mat mu;     // dim x dim²
  Mat delta;  // dim² x dim
  Eigen::VectorXcd eta;
  Eigen::RowVectorXcd epsilon;
  std::vector<Mat> action;    // G-action on the carrier (Rep G algebras)
  std::vector<int> grading;   // degree of each basis vector (Vect^G algebras)
  std::string label;
};

FrobeniusAlgebra twisted_group_algebra(const SubgroupEmbedding& k, const TwoCocycle& alpha);
FrobeniusAlgebra twisted_group_algebra(const FiniteGroup& k, const TwoCocycle& alpha);
FrobeniusAlgebra regular_function_algebra(const FiniteGroup& g);
// End(V)-valued functions with f(gk) = ρ(k)⁻¹ f(g) ρ(k); alpha and v live on k (local indices).
FrobeniusAlgebra induced_endomorphism_algebra(const FiniteGroup& g, const SubgroupEmbedding& k,
                                              const TwoCocycle& alpha, const Irrep& v);
FrobeniusAlgebra trivial_algebra();
FrobeniusAlgebra direct_sum(const FrobeniusAlgebra& a, const FrobeniusAlgebra& b);

// |k> ⊗ τL(k) as a map F -> F ⊗ F, scaled by 1/|K|.
Mat delta_prime(const FiniteGroup& k, const TwoCocycle& tau);

struct BasisChange {
  Mat first;   // least-squares M with Δ' ≈ (M⊗id)∘Δ
  Mat second;  // least-squares M with Δ' ≈ (id⊗M)∘Δ
  double residual_first = 0;
  double residual_second = 0;
};
BasisChange delta_prime_basis_change(const FrobeniusAlgebra& f, const Mat& dprime);

Mat swap_matrix(int dim);

Report check_frobenius_axioms(const FrobeniusAlgebra& f, double tol = 1e-10);
Report check_haploid_symmetric_special(const FrobeniusAlgebra& f, const Mat& swap, double tol = 1e-10);
Report right_translation_equivariance(const FrobeniusAlgebra& f, const FiniteGroup& g, double tol = 1e-10);

}  // namespace qdg
