#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "qdg/groups.hpp"
#include "qdg/hilbert.hpp"
#include "qdg/lattice.hpp"
#include "qdg/qdouble.hpp"
#include "qdg/report.hpp"

namespace qdg::higher {

// Sites live on slab edges. The degree of freedom of vertex v is the z-edge just below it, so
// matter of layer 0 sits on the dangling edges and each 1-form round's new vertex sites become the
// matter of the next layer.
struct EdgeStateLayout {
  lattice::Graph lat;
  FiniteGroup group;
  std::vector<int> created_by;  // per edge: round that introduced it, 0 for matter, -1 absent

  bool present(int e) const { return created_by[e] >= 0; }
  int below(int v) const;  // z-edge under v
  int above(int v) const;  // z-edge over v
  std::vector<int> layer_vertices(int z) const;
  std::vector<int> layer_edges(int z) const;  // in-plane
  std::vector<int> layer_faces(int z) const;  // xy faces
  std::vector<Site> sites() const;
  nlohmann::json to_json() const;
};

EdgeStateLayout make_slab_layout(const FiniteGroup& g, int w, int h, int layers);
// Σ_g |g,...,g> style uniform superposition on the matter sites.
DenseState uniform_matter_state(const EdgeStateLayout& lay);

// (1/|G|) Σ_g R(g) on the vertex site ⊗ R(g) on outgoing and L(g) on incoming in-plane edges.
SiteOperator vertex_gauss_projector(const EdgeStateLayout& lay, int v);
SiteOperator global_matter_symmetry(const EdgeStateLayout& lay, int z, int g);

struct Step {
  DenseState state;
  double norm = 0;
  double precondition_residual = 0;
};

struct HigherOptions {
  double tol = 1e-8;
  bool check_symmetric = true;
  bool override_envelope = false;
};

Step gauge_0form(const DenseState& s, EdgeStateLayout& lay, int z, int round = 1, const HigherOptions& opt = {});

SiteOperator flux_operator(const EdgeStateLayout& lay, const lattice::Path& gamma, const Irrep& rho);
// The loops checked for 1-form invariance at layer z: all xy faces and two straight cycles.
std::vector<lattice::Path> generating_loops(const EdgeStateLayout& lay, int z);

// Diagonal on (vertex site over t(e), e, vertex site over o(e)) enforcing e = g_t g_o⁻¹.
SiteOperator edge_gauss_projector(const EdgeStateLayout& lay, int e);
SiteOperator dual_symmetry(const EdgeStateLayout& lay, int z, int g);

Step gauge_1form(const DenseState& s, EdgeStateLayout& lay, int z, int round = 2, const HigherOptions& opt = {});

struct Iterated3d {
  DenseState state;
  EdgeStateLayout layout;
  std::vector<double> norms;
};
// rounds counts single maps: G_0 at layer 0, G_1 at layer 0, G_0 at layer 1, ...
Iterated3d iterate_3d(const DenseState& s, const EdgeStateLayout& lay, int rounds, const HigherOptions& opt = {});

// The stabilizer set on the edges present in the layout, with sites named by edge ids.
qd::StabilizerSet stabilizers_3d(const EdgeStateLayout& lay);

Report check_flux_invariance(const DenseState& s, const EdgeStateLayout& lay, int z, double tol,
                             const std::string& suite = "gauge_higher");
Report check_dual_symmetry(const DenseState& s, const EdgeStateLayout& lay, int z, double tol,
                           const std::string& suite = "gauge_higher");

}  // namespace qdg::higher
