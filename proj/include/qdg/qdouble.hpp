#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qdg/gauge1d.hpp"
#include "qdg/groups.hpp"
#include "qdg/hilbert.hpp"
#include "qdg/lattice.hpp"
#include "qdg/report.hpp"

namespace qdg::qd {

// The Hilbert-space factor carrying one lattice edge; elements maps local basis index -> group element.
struct EdgeSite {
  Site site;
  std::vector<int> elements;
};

// Leg placement: which representation a star applies to an edge, by context, axis and incidence.
struct LegRule {
  const char* context;  // "bulk2d", "boundary2d", "bulk3d"
  char axis;            // 'x', 'y', 'z' or '*'
  const char* end;      // "origin" or "terminus"
  const char* rep;      // "L", "R", "tauR", "taubarL", "alphaR", "alphabarL"
};
const std::vector<LegRule>& placement_table();
std::string leg_rep(const std::string& context, char axis, bool origin);

struct StabilizerSet {
  lattice::Graph lat;
  FiniteGroup group;
  SubgroupEmbedding k;  // boundary subgroup
  TwoCocycle alpha;     // on K (local indices)
  TwoCocycle tau;       // on G, bulk horizontal legs (2D only)
  std::vector<EdgeSite> edges;  // per lattice edge

  bool boundary_vertex(int v) const;
  bool boundary_face(int f) const;
  std::vector<int> star_vertices() const;  // complete stars
  std::vector<int> all_faces() const;
  std::string context(int v) const;
};

StabilizerSet make_stabilizers(lattice::Graph lat, const FiniteGroup& g, const TwoCocycle& tau);
StabilizerSet make_stabilizers(lattice::Graph lat, const FiniteGroup& g, const TwoCocycle& tau,
                               const SubgroupEmbedding& k, const TwoCocycle& alpha);
// The smooth-bottom strip that the iterated boundary chain fills, with edge sites taken from the layout.
StabilizerSet strip_from_layout(const chain::LayerLayout& layout, const FiniteGroup& g, const TwoCocycle& tau,
                                const SubgroupEmbedding& k, const TwoCocycle& alpha);

SiteOperator star_operator(const StabilizerSet& s, int v, int g);
// Diagonal (1/d)·w(hol) where hol is the path-ordered product along (sites, signs), later steps on the left.
SiteOperator holonomy_operator(const std::vector<EdgeSite>& steps, const std::vector<int>& signs, const FiniteGroup& g,
                               const std::function<cplx(int)>& weight);
SiteOperator plaquette_operator(const StabilizerSet& s, int f, const Irrep& rho);
std::vector<Irrep> face_irreps(const StabilizerSet& s, int f);
int face_holonomy(const StabilizerSet& s, int f, const std::vector<int>& edge_values);

enum class BfWeights { Projector, Uniform };  // CLI names: "projector", "paper"
BfWeights bf_weights_from_string(const std::string& s);

SiteOperator vertex_term(const StabilizerSet& s, int v);              // A_v
SiteOperator face_term(const StabilizerSet& s, int f, BfWeights w);   // B_f

struct Hamiltonian {
  std::vector<SiteOperator> terms;  // H = -Σ terms
  double energy(const DenseState& s) const;
  int count() const { return static_cast<int>(terms.size()); }
};
Hamiltonian hamiltonian(const StabilizerSet& s, BfWeights w = BfWeights::Projector);

Report verify_ground_state(const DenseState& psi, const StabilizerSet& s, double tol = 1e-8,
                           const std::string& suite = "qdouble");
Report commutator_checks(const StabilizerSet& s, double tol = 1e-10, const std::string& suite = "qdouble");
Report star_representation_checks(const StabilizerSet& s, double tol = 1e-10, const std::string& suite = "qdouble");
Report projector_checks(const StabilizerSet& s, BfWeights w, double tol = 1e-10, const std::string& suite = "qdouble");
// Residual of B_f² - B_f on a basis state whose face holonomy is `flux`.
double bf_idempotence_on_flux(const StabilizerSet& s, int f, int flux, BfWeights w);
Report bf_weighting_control(const FiniteGroup& g, double tol = 0.1, const std::string& suite = "qdouble");

}  // namespace qdg::qd
