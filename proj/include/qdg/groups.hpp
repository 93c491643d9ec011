#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qdg {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

// One factor of a direct product; kind is 'Z', 'S', 'D' or 'Q'.
struct GroupFactor {
  char kind;
  int n;
};

struct FiniteGroup {
  int order = 0;
  std::vector<int> table;  // order*order, table[a*order+b] = a·b
  int identity = 0;
  std::vector<int> inv;
  std::string name;
  std::vector<GroupFactor> factors;  // empty for groups not built from a descriptor
  std::vector<std::vector<int>> perms;  // underlying permutations for S_n

  int mul(int a, int b) const { return table[a * order + b]; }
  bool is_abelian() const;
  bool operator==(const FiniteGroup& o) const { return table == o.table; }
};

struct SubgroupEmbedding {
  FiniteGroup parent;
  std::vector<int> elements;  // sorted parent indices, identity first
  bool is_normal = false;

  int size() const { return static_cast<int>(elements.size()); }
  int local(int g) const;  // parent index -> position in elements, -1 if absent
  bool contains(int g) const { return local(g) >= 0; }
};

struct Irrep {
  std::shared_ptr<const FiniteGroup> group;
  int dim = 1;
  std::vector<Mat> matrices;
  std::string label;

  cplx character(int g) const { return matrices[g].trace(); }
};

struct TwoCocycle {
  int order = 0;
  std::vector<cplx> phases;  // phases[g*order+h]
  std::string label = "trivial";

  cplx operator()(int g, int h) const { return phases[g * order + h]; }
  bool is_trivial() const;
};

enum class Side { Left, Right };

FiniteGroup build_group(const std::string& spec);
void validate_group(const FiniteGroup& g);

SubgroupEmbedding full_subgroup(const FiniteGroup& g);
SubgroupEmbedding trivial_subgroup(const FiniteGroup& g);
SubgroupEmbedding generated_subgroup(const FiniteGroup& g, const std::vector<int>& gens);
SubgroupEmbedding make_subgroup(const FiniteGroup& g, std::vector<int> elements);
// "G", "e", "A<n>" (even permutations of S_n) or "<i,j,...>" generators.
SubgroupEmbedding subgroup_from_descriptor(const FiniteGroup& g, const std::string& desc);
FiniteGroup subgroup_as_group(const SubgroupEmbedding& k);

struct CosetDecomposition {
  std::vector<int> representatives;
  std::vector<int> coset_of;  // parent element -> coset number
};
CosetDecomposition cosets(const FiniteGroup& g, const SubgroupEmbedding& k);

std::vector<Mat> regular_rep(const FiniteGroup& g, Side side);
std::vector<Mat> projective_regular_rep(const FiniteGroup& k, const TwoCocycle& tau, Side side);
// The complex conjugate family, e.g. the τ̄L of the Gauss laws.
std::vector<Mat> conjugated(const std::vector<Mat>& family);

std::vector<Irrep> irreps(const FiniteGroup& g);
std::vector<int> fusion_multiplicities(const Irrep& a, const Irrep& b, const std::vector<Irrep>& all);
double representation_residual(const Irrep& rho, const TwoCocycle* alpha = nullptr);
double unitarity_residual(const Irrep& rho);

TwoCocycle trivial_cocycle(int order);
TwoCocycle make_cocycle(const FiniteGroup& g, std::vector<cplx> phases, std::string label);
// "trivial", "z2z2_nontrivial" (on Z2xZ2), "z4z2_nontrivial" (on Z4xZ2).
TwoCocycle cocycle_from_descriptor(const FiniteGroup& g, const std::string& desc);
TwoCocycle restrict_cocycle(const TwoCocycle& c, const SubgroupEmbedding& k);
double cocycle_residual(const FiniteGroup& g, const TwoCocycle& c);

// The 2-dim Pauli irrep of Z2xZ2 projective for z2z2_nontrivial.
Irrep pauli_projective_irrep(const FiniteGroup& z2z2);
Irrep trivial_irrep(const FiniteGroup& g);

}  // namespace qdg
