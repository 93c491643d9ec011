#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "qdg/gauge1d.hpp"
#include "qdg/groups.hpp"
#include "qdg/hilbert.hpp"
#include "qdg/report.hpp"

namespace qdg::qd {

// Virtual legs are labelled by group elements: LD/RD carry the Gauss-layer labels, LU/RU the layer above.
enum Leg { LD = 0, RD = 1, LU = 2, RU = 3 };

struct PepsNetwork {
  FiniteGroup g;
  SubgroupEmbedding k;
  TwoCocycle beta;  // on K, bottom row
  TwoCocycle tau;   // on G, horizontal Gauss layers

  // β T_b[k; hl, hr], all K-local indices.
  cplx Tb(int k_local, int hl, int hr) const;
  // T_o[x; LD, RD, LU, RU] = δ(LD=RD) δ(LU=RU) δ(x = LD·LU⁻¹).
  cplx To(int x, const std::array<int, 4>& l) const;
  // τ T_e[x; LD, RD, LU, RU] = <x|τ̄L(LD) τR(RD)|e> δ(x = LU·RU⁻¹); the top version drops the δ.
  cplx Te(int x, const std::array<int, 4>& l) const;
  cplx Te_top(int x, const std::array<int, 4>& l) const;
};

PepsNetwork make_peps(const FiniteGroup& g, const SubgroupEmbedding& k, const TwoCocycle& beta, const TwoCocycle& tau);

// Contracts the boundary ring and `layout.rounds` layers; sites follow the layout order.
DenseState build_peps_state(const PepsNetwork& net, const chain::LayerLayout& layout, bool override_envelope = false);

// max |M_phys·T - T·(⊗ M_leg)| over all entries; leg matrices act as (T·M)[..l..] = Σ_l' T[..l'..] M[l', l].
double pullthrough_residual(int phys_dim, const std::vector<int>& leg_dims,
                            const std::function<cplx(int, const std::array<int, 4>&)>& t, const Mat& phys,
                            const std::vector<std::pair<int, Mat>>& legs);

Report local_pullthrough_checks(const PepsNetwork& net, const TwoCocycle& tau, const TwoCocycle& alpha,
                                double tol = 1e-10, const std::string& suite = "qdouble");

}  // namespace qdg::qd
