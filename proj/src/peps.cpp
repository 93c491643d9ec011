#include "qdg/peps.hpp"

#include <algorithm>
#include <stdexcept>

namespace qdg::qd {

PepsNetwork make_peps(const FiniteGroup& g, const SubgroupEmbedding& k, const TwoCocycle& beta, const TwoCocycle& tau) {
  if (beta.order != k.size() || tau.order != g.order) throw std::invalid_argument("peps: cocycle orders do not match");
  return {g, k, beta, tau};
}

cplx PepsNetwork::Tb(int kl, int hl, int hr) const {
  const int prod = k.local(g.mul(k.elements[kl], k.elements[hr]));
  return prod == hl ? beta(kl, hr) : cplx(0);
}

cplx PepsNetwork::To(int x, const std::array<int, 4>& l) const {
  if (l[LD] != l[RD] || l[LU] != l[RU]) return 0.0;
  return x == g.mul(l[LD], g.inv[l[LU]]) ? 1.0 : 0.0;
}

cplx PepsNetwork::Te_top(int x, const std::array<int, 4>& l) const {
  // τR(b)|e> = τ(b⁻¹, b)|b⁻¹>, then τ̄L(a) gives conj τ(a, b⁻¹)|a b⁻¹>.
  const int a = l[LD], b = l[RD], bi = g.inv[b];
  if (x != g.mul(a, bi)) return 0.0;
  return tau(bi, b) * std::conj(tau(a, bi));
}

cplx PepsNetwork::Te(int x, const std::array<int, 4>& l) const {
  if (x != g.mul(l[LU], g.inv[l[RU]])) return 0.0;
  return Te_top(x, l);
}

namespace {

struct Label {
  int row;  // 0 for the boundary labels h_j, r for round r
  int column;
};

}  // namespace

DenseState build_peps_state(const PepsNetwork& net, const chain::LayerLayout& layout, bool override_envelope) {
  const FiniteGroup& g = net.g;
  const int c = layout.columns, rounds = layout.rounds;
  std::vector<Site> sites;
  for (const auto& s : layout.sites) sites.push_back({s.id, s.dim});
  DenseState out{TensorFactorSpace(sites), {}};
  if (out.space.total_dim() > kEnvelope && !override_envelope)
    throw EnvelopeError("PEPS patch beyond the 2^22 envelope", out.space.total_dim());
  out.amp.assign(out.space.total_dim(), 0.0);

  // Labels: h_j ∈ K on the boundary vertices, then one G label per column for every round.
  const int nlab = c * (rounds + 1);
  std::vector<int> base(nlab);
  for (int j = 0; j < c; ++j) base[j] = net.k.size();
  for (int i = c; i < nlab; ++i) base[i] = g.order;
  auto label = [&](const std::vector<int>& lab, int row, int col) {
    col = ((col % c) + c) % c;
    if (row == 0) return net.k.elements[lab[col]];
    return lab[row * c + col];
  };

  std::vector<int> lab(nlab, 0);
  std::vector<int> digits(sites.size());
  const int total_cfg = [&] {
    long long t = 1;
    for (int b : base) t *= b;
    if (t > (1LL << 31)) throw EnvelopeError("PEPS label sum too large", static_cast<std::size_t>(t));
    return static_cast<int>(t);
  }();
  for (int cfg = 0; cfg < total_cfg; ++cfg) {
    int rem = cfg;
    for (int i = nlab - 1; i >= 0; --i) {
      lab[i] = rem % base[i];
      rem /= base[i];
    }
    cplx amp = 1.0;
    for (std::size_t si = 0; si < layout.sites.size() && amp != cplx(0); ++si) {
      const auto& s = layout.sites[si];
      const int j = s.column;
      if (s.axis == 'h' && s.row == 0) {
        // k_j = h_j h_{j+1}⁻¹ is the only nonzero slice of T_b.
        const int hl = lab[j], hr = lab[(j + 1) % c];
        const int kl = net.k.local(g.mul(net.k.elements[hl], g.inv[net.k.elements[hr]]));
        digits[si] = kl;
        amp *= net.Tb(kl, hl, hr);
      } else if (s.axis == 'v') {
        const int q = s.row;
        const int below = q == 0 ? label(lab, 0, j) : label(lab, 2 * q, j);
        const int above = 2 * q + 1 <= rounds ? label(lab, 2 * q + 1, j) : g.identity;
        const int x = g.mul(below, g.inv[above]);
        const int local = q == 0 && s.dim != g.order ? net.k.local(x) : x;
        if (local < 0) {
          amp = 0;
          break;
        }
        digits[si] = local;
        amp *= net.To(x, {below, below, above, above});
      } else {
        const int r = 2 * s.row - 1;  // the group round that created this row
        std::array<int, 4> l{label(lab, r, j), label(lab, r, j + 1), g.identity, g.identity};
        const int x = g.mul(l[LD], g.inv[l[RD]]);
        digits[si] = x;
        if (r + 1 <= rounds) {
          l[LU] = label(lab, r + 1, j);
          l[RU] = label(lab, r + 1, j + 1);
          amp *= net.Te(x, l);
        } else {
          amp *= net.Te_top(x, l);
        }
      }
    }
    if (amp != cplx(0)) out.amp[out.space.flat_index(digits)] += amp;
  }
  return out;
}

double pullthrough_residual(int phys_dim, const std::vector<int>& leg_dims,
                            const std::function<cplx(int, const std::array<int, 4>&)>& t, const Mat& phys,
                            const std::vector<std::pair<int, Mat>>& legs) {
  const int nl = static_cast<int>(leg_dims.size());
  std::size_t count = 1;
  for (int d : leg_dims) count *= d;
  double r = 0;
  std::array<int, 4> l{0, 0, 0, 0};
  for (std::size_t f = 0; f < count; ++f) {
    std::size_t rem = f;
    for (int i = nl - 1; i >= 0; --i) {
      l[i] = static_cast<int>(rem % leg_dims[i]);
      rem /= leg_dims[i];
    }
    for (int x = 0; x < phys_dim; ++x) {
      cplx lhs = 0;
      for (int y = 0; y < phys_dim; ++y)
        if (phys(x, y) != cplx(0)) lhs += phys(x, y) * t(y, l);
      // Sum over the primed labels of the listed legs.
      cplx rhs = 0;
      std::size_t inner = 1;
      for (const auto& [leg, m] : legs) inner *= m.rows();
      for (std::size_t p = 0; p < inner; ++p) {
        std::size_t pr = p;
        std::array<int, 4> lp = l;
        cplx w = 1.0;
        for (const auto& [leg, m] : legs) {
          const int v = static_cast<int>(pr % m.rows());
          pr /= m.rows();
          w *= m(v, l[leg]);
          lp[leg] = v;
        }
        if (w != cplx(0)) rhs += t(x, lp) * w;
      }
      r = std::max(r, std::abs(lhs - rhs));
    }
  }
  return r;
}

Report local_pullthrough_checks(const PepsNetwork& net, const TwoCocycle& tau, const TwoCocycle& alpha, double tol,
                                const std::string& suite) {
  const FiniteGroup& g = net.g;
  const int n = g.order;
  PepsNetwork nt = net;
  nt.tau = tau;
  const auto L = regular_rep(g, Side::Left), R = regular_rep(g, Side::Right);
  const auto tL = projective_regular_rep(g, tau, Side::Left), tR = projective_regular_rep(g, tau, Side::Right);
  const auto aL = projective_regular_rep(g, alpha, Side::Left);
  const FiniteGroup kg = subgroup_as_group(net.k);
  const auto bL = projective_regular_rep(kg, net.beta, Side::Left), bR = projective_regular_rep(kg, net.beta, Side::Right);
  auto te = [&](int x, const std::array<int, 4>& l) { return nt.Te(x, l); };
  auto te_top = [&](int x, const std::array<int, 4>& l) { return nt.Te_top(x, l); };
  auto to = [&](int x, const std::array<int, 4>& l) { return nt.To(x, l); };
  auto tb = [&](int x, const std::array<int, 4>& l) { return nt.Tb(x, l[0], l[1]); };
  const std::vector<int> four(4, n), two(2, n), bdims(2, kg.order);

  double r[8] = {0, 0, 0, 0, 0, 0, 0, 0};
  for (int a = 0; a < n; ++a) {
    r[0] = std::max(r[0], pullthrough_residual(n, four, te, tL[a].conjugate(), {{LD, tL[a].conjugate()}, {LU, L[a]}}));
    r[1] = std::max(r[1], pullthrough_residual(n, four, te, tR[a], {{RD, tL[a]}, {RU, L[a]}}));
    r[2] = std::max(r[2], pullthrough_residual(n, four, te_top, tL[a].conjugate(), {{LD, tL[a].conjugate()}}));
    r[3] = std::max(r[3], pullthrough_residual(n, four, te_top, tR[a], {{RD, tL[a]}}));
    r[4] = std::max(r[4], pullthrough_residual(n, four, to, L[a], {{LD, aL[a].conjugate()}, {RD, aL[a]}}));
    r[5] = std::max(r[5], pullthrough_residual(n, four, to, R[a], {{LU, aL[a]}, {RU, aL[a].conjugate()}}));
  }
  for (int q = 0; q < kg.order; ++q) {
    r[6] = std::max(r[6], pullthrough_residual(kg.order, bdims, tb, bL[q].conjugate(), {{0, bL[q].conjugate()}}));
    r[7] = std::max(r[7], pullthrough_residual(kg.order, bdims, tb, bR[q], {{1, bL[q]}}));
  }
  const char* names[8] = {"Te: conj(tauL) phys = conj(tauL)_LD L_LU", "Te: tauR phys = tauL_RD L_RU",
                          "Te-top: conj(tauL) phys = conj(tauL)_LD",  "Te-top: tauR phys = tauL_RD",
                          "To: L phys = conj(alphaL)_LD alphaL_RD",   "To: R phys = alphaL_LU conj(alphaL)_RU",
                          "Tb: conj(betaL) phys = conj(betaL)_left",  "Tb: betaR phys = betaL_right"};
  Report rep;
  for (int i = 0; i < 8; ++i) rep.add(suite, "pullthrough-symmetry", names[i], "all g", r[i], tol);

  // Flux pull-through: Σ_x T[x] ρ(x) against T^Σ times ρ of the virtual labels.
  double f[4] = {0, 0, 0, 0};
  std::array<int, 4> l{};
  for (const auto& rho : irreps(g))
    for (int i = 0; i < n * n * n * n; ++i) {
      l = {i / (n * n * n), (i / (n * n)) % n, (i / n) % n, i % n};
      Mat so = Mat::Zero(rho.dim, rho.dim), so_d = so, se = so;
      cplx sum_o = 0, sum_e = 0;
      for (int x = 0; x < n; ++x) {
        so += to(x, l) * rho.matrices[x];
        so_d += to(x, l) * rho.matrices[x].adjoint();
        se += te(x, l) * rho.matrices[x];
        sum_o += to(x, l);
        sum_e += te(x, l);
      }
      f[0] = std::max(f[0], (so - sum_o * rho.matrices[l[LD]] * rho.matrices[l[LU]].adjoint()).cwiseAbs().maxCoeff());
      f[1] = std::max(f[1], (so_d - sum_o * rho.matrices[l[LU]] * rho.matrices[l[LD]].adjoint()).cwiseAbs().maxCoeff());
      f[2] = std::max(f[2], (se - sum_e * rho.matrices[l[LD]] * rho.matrices[l[RD]].adjoint()).cwiseAbs().maxCoeff());
      f[3] = std::max(f[3], (se - sum_e * rho.matrices[l[LU]] * rho.matrices[l[RU]].adjoint()).cwiseAbs().maxCoeff());
    }
  const char* fnames[4] = {"To: rho(x) = rho(LD) rho(LU)^dag", "To: rho(x)^dag = rho(LU) rho(LD)^dag",
                           "Te: rho(x) = rho(LD) rho(RD)^dag", "Te: rho(x) = rho(LU) rho(RU)^dag"};
  for (int i = 0; i < 4; ++i) rep.add(suite, "pullthrough-flux", fnames[i], "all irreps", f[i], tol);
  return rep;
}

}  // namespace qdg::qd
