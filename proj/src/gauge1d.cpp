#include "qdg/gauge1d.hpp"

#include <algorithm>
#include <stdexcept>

namespace qdg::chain {

namespace {

void guard_envelope(std::size_t dim, const Options& opt, const std::string& what) {
  if (dim > kEnvelope && !opt.override_envelope)
    throw EnvelopeError(what + " needs " + std::to_string(dim) + " amplitudes (" +
                            std::to_string(dim * 16 / (1 << 20)) + " MiB), beyond the 2^22 envelope",
                        dim);
}

}  // namespace

std::string ChainConfig::matter(int i) const {
  i = ((i % n_sites) + n_sites) % n_sites;
  if (!matter_ids.empty()) return matter_ids.at(i);
  return "m:" + std::to_string(i);
}

std::string ChainConfig::gauge(int i) const {
  i = ((i % n_sites) + n_sites) % n_sites;
  return gauge_prefix + ":" + std::to_string(i) + "," + std::to_string((i + 1) % n_sites);
}

ChainConfig make_chain(int n, const FiniteGroup& g, bool periodic, MatterRep rep) {
  if (n < 1 || (periodic && n < 2)) throw std::invalid_argument("periodic chains need at least 2 sites");
  ChainConfig c;
  c.n_sites = n;
  c.group = g;
  c.periodic = periodic;
  c.matter_rep = rep;
  return c;
}

std::vector<Mat> matter_matrices(const ChainConfig& cfg) {
  return regular_rep(cfg.group, cfg.matter_rep == MatterRep::Left ? Side::Left : Side::Right);
}

SiteOperator global_group_symmetry(const ChainConfig& cfg, int g) {
  const auto U = matter_matrices(cfg);
  const SpMat u = to_sparse(U.at(g));
  std::vector<Site> sup;
  std::vector<SpMat> ops;
  for (int i = 0; i < cfg.n_sites; ++i) {
    sup.push_back({cfg.matter(i), cfg.group.order});
    ops.push_back(u);
  }
  return SiteOperator::from_sparse(sup, kron_all(ops));
}

SiteOperator local_gauge_transform(const ChainConfig& cfg, int i, const SubgroupEmbedding& k,
                                   const TwoCocycle& alpha, int k_local) {
  const FiniteGroup kg = subgroup_as_group(k);
  const auto tr = projective_regular_rep(kg, alpha, Side::Right);
  const auto tl = conjugated(projective_regular_rep(kg, alpha, Side::Left));
  const auto U = matter_matrices(cfg);
  std::vector<Site> sup;
  std::vector<SpMat> ops;
  if (cfg.has_link(i - 1)) {
    sup.push_back({cfg.gauge(i - 1), kg.order});
    ops.push_back(to_sparse(tr[k_local]));
  }
  sup.push_back({cfg.matter(i), cfg.group.order});
  ops.push_back(to_sparse(U[k.elements[k_local]]));
  if (cfg.has_link(i)) {
    sup.push_back({cfg.gauge(i), kg.order});
    ops.push_back(to_sparse(tl[k_local]));
  }
  return SiteOperator::from_sparse(sup, kron_all(ops));
}

SiteOperator group_gauss_projector(const ChainConfig& cfg, int i, const SubgroupEmbedding& k,
                                   const TwoCocycle& alpha) {
  if (k.parent.table != cfg.group.table) throw std::invalid_argument("gauss projector: K is not a subgroup of G");
  const FiniteGroup kg = subgroup_as_group(k);
  if (alpha.order != kg.order || cocycle_residual(kg, alpha) > 1e-12)
    throw std::invalid_argument("gauss projector: invalid cocycle");
  SiteOperator p = local_gauge_transform(cfg, i, k, alpha, 0);
  for (int a = 1; a < kg.order; ++a) p.matrix += local_gauge_transform(cfg, i, k, alpha, a).matrix;
  p.matrix /= static_cast<double>(kg.order);
  p.matrix.prune(cplx(0), 1e-14);
  return p;
}

Gauged gauge_group_symmetry(const DenseState& s, const ChainConfig& cfg, const SubgroupEmbedding& k,
                            const TwoCocycle& alpha, const Options& opt) {
  Gauged out;
  for (int a : k.elements) {
    const double r = invariance_residual(global_group_symmetry(cfg, a), s);
    out.precondition_residual = std::max(out.precondition_residual, r);
  }
  if (opt.check_symmetric && out.precondition_residual > opt.tol)
    throw std::invalid_argument("gauge_group_symmetry: input not K-symmetric (residual " +
                                std::to_string(out.precondition_residual) + ")");
  const int kn = k.size();
  std::size_t dim = s.space.total_dim();
  for (int l = 0; l < cfg.links(); ++l) dim *= kn;
  guard_envelope(dim, opt, "group gauging");
  std::vector<Placement> adds;
  for (int i = 0; i < cfg.n_sites; ++i)
    if (cfg.has_link(i)) {
      adds.push_back({{{cfg.gauge(i), kn}, basis_vector(kn, 0)}, cfg.matter(i), false});
      out.new_ids.push_back(cfg.gauge(i));
    }
  out.state = grow_space(s, adds);
  for (int i = 0; i < cfg.n_sites; ++i) out.state = apply(group_gauss_projector(cfg, i, k, alpha), out.state);
  out.norm = out.state.norm();
  if (out.norm < 1e-12) throw std::runtime_error("gauge_group_symmetry: zero output (inconsistent sector)");
  return out;
}

SiteOperator rep_symmetry_mpo(const std::vector<Site>& gauge_sites, const Irrep& rho) {
  const FiniteGroup& g = *rho.group;
  std::size_t dim = 1;
  for (const auto& s : gauge_sites) {
    if (s.dim != g.order) throw std::invalid_argument("flux MPO site '" + s.id + "' is not C G");
    dim *= g.order;
  }
  // Character of every running product, via an odometer on the group labels.
  std::vector<cplx> diag(dim);
  const int n = static_cast<int>(gauge_sites.size());
  for (std::size_t f = 0; f < dim; ++f) {
    std::size_t rem = f;
    std::vector<int> d(n);
    for (int i = n - 1; i >= 0; --i) {
      d[i] = static_cast<int>(rem % g.order);
      rem /= g.order;
    }
    int prod = 0;
    for (int i = 0; i < n; ++i) prod = g.mul(prod, d[i]);
    diag[f] = rho.character(prod) / static_cast<double>(rho.dim);
  }
  return SiteOperator::diagonal(gauge_sites, diag);
}

Mat contract_flux_mpo(const Irrep& rho, int n) {
  const FiniteGroup& g = *rho.group;
  std::size_t dim = 1;
  for (int i = 0; i < n; ++i) dim *= g.order;
  auto digits = [&](std::size_t f) {
    std::vector<int> d(n);
    for (int i = n - 1; i >= 0; --i) {
      d[i] = static_cast<int>(f % g.order);
      f /= g.order;
    }
    return d;
  };
  // W[s_out, s_in] = δ(s_out, s_in) ρ(s); every pair is contracted through the virtual ring.
  auto tensor = [&](int out, int in) -> Mat {
    return out == in ? rho.matrices[out] : Mat::Zero(rho.dim, rho.dim).eval();
  };
  Mat o = Mat::Zero(dim, dim);
  for (std::size_t a = 0; a < dim; ++a) {
    const auto da = digits(a);
    for (std::size_t b = 0; b < dim; ++b) {
      const auto db = digits(b);
      Mat acc = Mat::Identity(rho.dim, rho.dim);
      for (int i = 0; i < n; ++i) acc = acc * tensor(da[i], db[i]);
      o(a, b) = acc.trace() / static_cast<double>(rho.dim);
    }
  }
  return o;
}

SiteOperator repg_gauss_projector(const FiniteGroup& g, const Site& new_left, const Site& old, const Site& new_right) {
  const int n = g.order;
  if (new_left.dim != n || old.dim != n || new_right.dim != n)
    throw std::invalid_argument("Rep G projector needs C G sites");
  std::vector<cplx> d(n * n * n, 0.0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) d[(a * n + g.mul(a, g.inv[b])) * n + b] = 1.0;
  return SiteOperator::diagonal({new_left, old, new_right}, d);
}

Gauged gauge_repg_symmetry(const DenseState& s, const FiniteGroup& g, const std::vector<std::string>& old_ids,
                           const std::string& new_prefix, const Options& opt) {
  Gauged out;
  const int n = static_cast<int>(old_ids.size());
  if (n < 1) throw std::invalid_argument("Rep G gauging needs at least one site");
  std::vector<Site> olds;
  for (const auto& id : old_ids) olds.push_back({id, s.space.dim(id)});
  for (const auto& rho : irreps(g))
    out.precondition_residual = std::max(out.precondition_residual, invariance_residual(rep_symmetry_mpo(olds, rho), s));
  if (opt.check_symmetric && out.precondition_residual > opt.tol)
    throw std::invalid_argument("gauge_repg_symmetry: input not Rep G symmetric (residual " +
                                std::to_string(out.precondition_residual) + ")");
  std::size_t dim = s.space.total_dim();
  for (int j = 0; j < n; ++j) dim *= g.order;
  guard_envelope(dim, opt, "Rep G gauging");
  std::vector<Placement> adds;
  for (int j = 0; j < n; ++j) {
    out.new_ids.push_back(new_prefix + ":" + std::to_string(j));
    adds.push_back({{{out.new_ids.back(), g.order}, uniform_vector(g.order)}, old_ids[j], true});
  }
  out.state = grow_space(s, adds);
  for (int j = 0; j < n; ++j)
    out.state = apply(repg_gauss_projector(g, {out.new_ids[j], g.order}, olds[j], {out.new_ids[(j + 1) % n], g.order}),
                      out.state);
  out.norm = out.state.norm();
  if (out.norm < 1e-12) throw std::runtime_error("gauge_repg_symmetry: zero output (inconsistent sector)");
  return out;
}

namespace {

struct SiteTensor {
  Site site;
  std::vector<Mat> slices;  // one virtual matrix per physical value
};

DenseState ring_mps(const std::vector<SiteTensor>& ts) {
  std::vector<Site> sites;
  for (const auto& t : ts) sites.push_back(t.site);
  DenseState s{TensorFactorSpace(sites), {}};
  s.amp.assign(s.space.total_dim(), 0.0);
  const int n = static_cast<int>(ts.size());
  for (std::size_t f = 0; f < s.amp.size(); ++f) {
    const auto d = s.space.multi_index(f);
    Mat acc = ts[0].slices[d[0]];
    for (int i = 1; i < n && acc.cwiseAbs().maxCoeff() > 0; ++i) acc = acc * ts[i].slices[d[i]];
    s.amp[f] = acc.trace();
  }
  return s;
}

}  // namespace

SiteOperator boundary_local_symmetry(const BoundaryState& b, const SubgroupEmbedding& k, const TwoCocycle& beta,
                                     int j, int k_local) {
  const FiniteGroup kg = subgroup_as_group(k);
  const int c = static_cast<int>(b.w_ids.size());
  const auto br = projective_regular_rep(kg, beta, Side::Right);
  const auto bl = conjugated(projective_regular_rep(kg, beta, Side::Left));
  const auto L = regular_rep(k.parent, Side::Left);
  const std::vector<Site> sup = {{b.b_ids[(j - 1 + c) % c], kg.order}, {b.w_ids[j], k.parent.order}, {b.b_ids[j], kg.order}};
  if (c == 1) {
    // Both boundary legs are the same site: the product βR(k)β̄L(k) acts on it.
    return SiteOperator::from_sparse({sup[1], sup[2]},
                                     kron(to_sparse(L[k.elements[k_local]]), to_sparse(br[k_local] * bl[k_local])));
  }
  return SiteOperator::from_sparse(
      sup, kron_all({to_sparse(br[k_local]), to_sparse(L[k.elements[k_local]]), to_sparse(bl[k_local])}));
}

BoundaryState boundary_input_state(const SubgroupEmbedding& k, const TwoCocycle& beta, const FiniteGroup& g, int n) {
  if (n < 2 || n % 2) throw std::invalid_argument("boundary_input_state: n must be even and >= 2");
  if (k.parent.table != g.table) throw std::invalid_argument("boundary_input_state: K is not a subgroup of G");
  const FiniteGroup kg = subgroup_as_group(k);
  if (beta.order != kg.order || cocycle_residual(kg, beta) > 1e-12)
    throw std::invalid_argument("boundary_input_state: invalid cocycle on K");
  const int c = n / 2, kn = kg.order;
  BoundaryState b;
  const auto bl = projective_regular_rep(kg, beta, Side::Left);
  std::vector<SiteTensor> ts;
  for (int j = 0; j < c; ++j) {
    b.w_ids.push_back("w:" + std::to_string(j));
    b.b_ids.push_back("b:" + std::to_string(j));
    SiteTensor w{{b.w_ids.back(), g.order}, {}};
    for (int x = 0; x < g.order; ++x) {
      Mat m = Mat::Zero(kn, kn);
      if (const int a = k.local(x); a >= 0) m(a, a) = 1.0;
      w.slices.push_back(m);
    }
    ts.push_back(std::move(w));
    ts.push_back({{b.b_ids.back(), kn}, bl});
  }
  b.psi_prime = ring_mps(ts);

  b.carriers = make_chain(std::max(c, 2), g, true, MatterRep::Right);
  b.carriers.n_sites = c;
  b.carriers.matter_ids = b.w_ids;
  b.carriers.gauge_prefix = "L1";

  for (int j = 0; j < c; ++j)
    for (int a = 0; a < kn; ++a)
      b.local_residual =
          std::max(b.local_residual, invariance_residual(boundary_local_symmetry(b, k, beta, j, a), b.psi_prime));

  const auto cs = cosets(g, k);
  b.psi = DenseState{b.psi_prime.space, std::vector<cplx>(b.psi_prime.amp.size(), 0.0)};
  for (int rep : cs.representatives) {
    const auto moved = apply(global_group_symmetry(b.carriers, rep), b.psi_prime);
    for (std::size_t i = 0; i < moved.amp.size(); ++i) b.psi.amp[i] += moved.amp[i];
  }
  if (b.psi.norm() < 1e-12) throw std::runtime_error("boundary_input_state: zero state after symmetrization");
  for (int x = 0; x < g.order; ++x)
    b.global_residual = std::max(b.global_residual, invariance_residual(global_group_symmetry(b.carriers, x), b.psi));
  return b;
}

std::string role_name(Role r) {
  switch (r) {
    case Role::Matter:
      return "matter";
    case Role::GaugeEven:
      return "gauge-even";
    default:
      return "gauge-odd";
  }
}

const LayoutSite* LayerLayout::find(char axis, int row, int column) const {
  for (const auto& s : sites)
    if (s.axis == axis && s.row == row && s.column == column) return &s;
  return nullptr;
}

nlohmann::json LayerLayout::to_json() const {
  nlohmann::json j;
  j["columns"] = columns;
  j["rounds"] = rounds;
  for (const auto& s : sites)
    j["sites"].push_back({{"id", s.id},
                          {"layer", s.layer},
                          {"role", role_name(s.role)},
                          {"column", s.column},
                          {"axis", std::string(1, s.axis)},
                          {"row", s.row},
                          {"dim", s.dim}});
  return j;
}

LayerLayout matter_layout(const ChainConfig& cfg) {
  LayerLayout l;
  l.columns = cfg.n_sites;
  for (int i = 0; i < cfg.n_sites; ++i) l.sites.push_back({cfg.matter(i), 0, Role::Matter, i, 'v', 0, cfg.group.order});
  return l;
}

LayerLayout boundary_layout(const BoundaryState& b) {
  LayerLayout l;
  l.columns = static_cast<int>(b.w_ids.size());
  for (int j = 0; j < l.columns; ++j) {
    l.sites.push_back({b.w_ids[j], 0, Role::Matter, j, 'v', 0, b.psi.space.dim(b.w_ids[j])});
    l.sites.push_back({b.b_ids[j], 0, Role::Matter, j, 'h', 0, b.psi.space.dim(b.b_ids[j])});
  }
  return l;
}

std::size_t estimate_iterated_dim(std::size_t start_dim, int group_order, int columns, int rounds) {
  std::size_t d = start_dim;
  for (int r = 0; r < rounds * columns; ++r) d *= static_cast<std::size_t>(group_order);
  return d;
}

Iterated iterate_gauging(const DenseState& s, const ChainConfig& cfg, const TwoCocycle& tau, int rounds,
                         const LayerLayout& initial, const Options& opt) {
  if (rounds < 0) throw std::invalid_argument("rounds must be non-negative");
  if (!cfg.periodic) throw std::invalid_argument("iterate_gauging needs a periodic chain");
  const FiniteGroup& g = cfg.group;
  const std::size_t need = estimate_iterated_dim(s.space.total_dim(), g.order, cfg.n_sites, rounds);
  guard_envelope(need, opt, "iterate_gauging(" + std::to_string(rounds) + " rounds)");
  Iterated it{s, initial, {}};
  it.layout.rounds = rounds;
  const auto full = full_subgroup(g);
  ChainConfig carriers = cfg;
  std::vector<std::string> old_ids;
  for (int r = 1; r <= rounds; ++r) {
    const std::string prefix = "L" + std::to_string(r);
    if (r % 2 == 1) {
      carriers.gauge_prefix = prefix;
      if (r > 1) carriers.matter_rep = MatterRep::Right;
      auto gd = gauge_group_symmetry(it.state, carriers, full, tau, opt);
      it.state = std::move(gd.state);
      it.norms.push_back(gd.norm);
      old_ids = gd.new_ids;
      for (int j = 0; j < carriers.n_sites; ++j)
        it.layout.sites.push_back({old_ids[j], r, Role::GaugeEven, j, 'h', (r + 1) / 2, g.order});
    } else {
      auto gd = gauge_repg_symmetry(it.state, g, old_ids, prefix, opt);
      it.state = std::move(gd.state);
      it.norms.push_back(gd.norm);
      carriers.matter_ids = gd.new_ids;
      for (int j = 0; j < carriers.n_sites; ++j)
        it.layout.sites.push_back({gd.new_ids[j], r, Role::GaugeOdd, j, 'v', r / 2, g.order});
    }
    // Keep the amplitudes at unit norm between rounds; equalities are checked up to scale.
    it.state.scale(1.0 / it.norms.back());
  }
  return it;
}

Iterated iterate_gauging(const DenseState& s, const ChainConfig& cfg, const TwoCocycle& tau, int rounds,
                         const Options& opt) {
  return iterate_gauging(s, cfg, tau, rounds, matter_layout(cfg), opt);
}

}  // namespace qdg::chain
