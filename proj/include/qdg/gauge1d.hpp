#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "qdg/groups.hpp"
#include "qdg/hilbert.hpp"

namespace qdg::chain {

enum class MatterRep { Left, Right };

struct ChainConfig {
  int n_sites = 2;
  FiniteGroup group;
  bool periodic = true;
  MatterRep matter_rep = MatterRep::Left;
  std::vector<std::string> matter_ids;  // defaults to "m:i"
  std::string gauge_prefix = "g";

  std::string matter(int i) const;
  std::string gauge(int i) const;  // the link between matter i and i+1
  int links() const { return periodic ? n_sites : n_sites - 1; }
  bool has_link(int i) const { return periodic || (i >= 0 && i < n_sites - 1); }
};

ChainConfig make_chain(int n, const FiniteGroup& g, bool periodic = true, MatterRep rep = MatterRep::Left);

struct Options {
  bool check_symmetric = true;  // false downgrades precondition failures to recorded residuals
  double tol = 1e-8;
  bool override_envelope = false;
};

std::vector<Mat> matter_matrices(const ChainConfig& cfg);
SiteOperator global_group_symmetry(const ChainConfig& cfg, int g);
// Û_i(k) = τR(k) ⊗ U(k) ⊗ τ̄L(k) around matter site i; k indexes the subgroup.
SiteOperator local_gauge_transform(const ChainConfig& cfg, int i, const SubgroupEmbedding& k,
                                   const TwoCocycle& alpha, int k_local);
SiteOperator group_gauss_projector(const ChainConfig& cfg, int i, const SubgroupEmbedding& k, const TwoCocycle& alpha);

struct Gauged {
  DenseState state;
  double norm = 0;
  std::vector<std::string> new_ids;
  double precondition_residual = 0;
};

Gauged gauge_group_symmetry(const DenseState& s, const ChainConfig& cfg, const SubgroupEmbedding& k,
                            const TwoCocycle& alpha, const Options& opt = {});

// Diagonal |g_1..g_n> -> χ_ρ(g_1⋯g_n)/d_ρ on the listed sites, in order.
SiteOperator rep_symmetry_mpo(const std::vector<Site>& gauge_sites, const Irrep& rho);
// The closed MPO with tensors |g><g| ⊗ ρ(g), contracted densely and divided by d_ρ.
Mat contract_flux_mpo(const Irrep& rho, int n);

// Projector onto old = new_left · new_right⁻¹ on (new_left, old, new_right).
SiteOperator repg_gauss_projector(const FiniteGroup& g, const Site& new_left, const Site& old, const Site& new_right);

// New site j sits between old_{j-1} and old_j; the ring of old sites must be periodic.
Gauged gauge_repg_symmetry(const DenseState& s, const FiniteGroup& g, const std::vector<std::string>& old_ids,
                           const std::string& new_prefix, const Options& opt = {});

struct BoundaryState {
  DenseState psi;
  DenseState psi_prime;
  ChainConfig carriers;  // the copy sites, acted on by R
  std::vector<std::string> w_ids, b_ids;
  double local_residual = 0;   // local K symmetry of ψ′
  double global_residual = 0;  // G symmetry of ψ
};

// n chain sites alternating copy sites (dim |G|) and boundary sites (dim |K|).
BoundaryState boundary_input_state(const SubgroupEmbedding& k, const TwoCocycle& beta, const FiniteGroup& g, int n);
SiteOperator boundary_local_symmetry(const BoundaryState& b, const SubgroupEmbedding& k, const TwoCocycle& beta,
                                     int j, int k_local);

enum class Role { Matter, GaugeEven, GaugeOdd };
std::string role_name(Role r);

// Geometry tag: axis 'h' edges run between columns j and j+1, 'v' edges sit above column j.
struct LayoutSite {
  std::string id;
  int layer = 0;
  Role role = Role::Matter;
  int column = 0;
  char axis = 'v';
  int row = 0;
  int dim = 0;
};

struct LayerLayout {
  int columns = 0;
  int rounds = 0;
  std::vector<LayoutSite> sites;

  const LayoutSite* find(char axis, int row, int column) const;
  nlohmann::json to_json() const;
};

LayerLayout matter_layout(const ChainConfig& cfg);
LayerLayout boundary_layout(const BoundaryState& b);

struct Iterated {
  DenseState state;
  LayerLayout layout;
  std::vector<double> norms;
};

// Round 1 uses cfg.matter_rep on the carriers; later group rounds act with R on the newest sites.
Iterated iterate_gauging(const DenseState& s, const ChainConfig& cfg, const TwoCocycle& tau, int rounds,
                         const LayerLayout& initial, const Options& opt = {});
Iterated iterate_gauging(const DenseState& s, const ChainConfig& cfg, const TwoCocycle& tau, int rounds,
                         const Options& opt = {});

std::size_t estimate_iterated_dim(std::size_t start_dim, int group_order, int columns, int rounds);

}  // namespace qdg::chain
