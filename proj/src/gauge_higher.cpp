#include "qdg/gauge_higher.hpp"

#include <algorithm>
#include <stdexcept>

namespace qdg::higher {

int EdgeStateLayout::below(int v) const { return lat.vertices()[v].legs[lattice::ZMinus]; }
int EdgeStateLayout::above(int v) const { return lat.vertices()[v].legs[lattice::ZPlus]; }

std::vector<int> EdgeStateLayout::layer_vertices(int z) const {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(lat.vertices().size()); ++v)
    if (lat.vertices()[v].pos[2] == z) out.push_back(v);
  return out;
}

std::vector<int> EdgeStateLayout::layer_edges(int z) const {
  std::vector<int> out;
  for (int e = 0; e < static_cast<int>(lat.edges().size()); ++e)
    if (lat.edges()[e].axis != 'z' && lat.edges()[e].pos[2] == z) out.push_back(e);
  return out;
}

std::vector<int> EdgeStateLayout::layer_faces(int z) const {
  std::vector<int> out;
  for (int f = 0; f < static_cast<int>(lat.faces().size()); ++f)
    if (lat.faces()[f].plane == "xy" && lat.faces()[f].pos[2] == z) out.push_back(f);
  return out;
}

std::vector<Site> EdgeStateLayout::sites() const {
  std::vector<Site> out;
  for (int e = 0; e < static_cast<int>(lat.edges().size()); ++e)
    if (present(e)) out.push_back({lat.edges()[e].id, group.order});
  return out;
}

nlohmann::json EdgeStateLayout::to_json() const {
  nlohmann::json j;
  j["group"] = group.name;
  for (int e = 0; e < static_cast<int>(lat.edges().size()); ++e) {
    if (!present(e)) continue;
    const auto& ed = lat.edges()[e];
    j["sites"].push_back({{"id", ed.id},
                          {"axis", std::string(1, ed.axis)},
                          {"layer", created_by[e]},
                          {"role", created_by[e] == 0 ? "matter" : (ed.axis == 'z' ? "gauge-odd" : "gauge-even")},
                          {"pos", ed.pos}});
  }
  return j;
}

EdgeStateLayout make_slab_layout(const FiniteGroup& g, int w, int h, int layers) {
  EdgeStateLayout lay{lattice::build_cubic_slab(w, h, layers), g, {}};
  lay.created_by.assign(lay.lat.edges().size(), -1);
  for (int v : lay.layer_vertices(0)) lay.created_by[lay.below(v)] = 0;
  return lay;
}

DenseState uniform_matter_state(const EdgeStateLayout& lay) {
  std::vector<SiteVector> parts;
  for (const auto& s : lay.sites()) parts.push_back({s, uniform_vector(s.dim)});
  return embed_product(parts);
}

namespace {

void guard(std::size_t dim, const HigherOptions& opt, const std::string& what) {
  if (dim > kEnvelope && !opt.override_envelope)
    throw EnvelopeError(what + " needs " + std::to_string(dim) + " amplitudes (" + std::to_string(dim * 16 >> 20) +
                            " MiB), beyond the 2^22 envelope",
                        dim);
}

Site site_of(const EdgeStateLayout& lay, int e) { return {lay.lat.edges()[e].id, lay.group.order}; }

}  // namespace

SiteOperator vertex_gauss_projector(const EdgeStateLayout& lay, int v) {
  const FiniteGroup& g = lay.group;
  const auto L = regular_rep(g, Side::Left), R = regular_rep(g, Side::Right);
  const int own = lay.below(v);
  std::vector<Site> sup{site_of(lay, own)};
  std::vector<int> kinds{1};  // 1: R, 0: L
  for (int e : lay.lat.vertices()[v].legs) {
    if (e < 0 || e == own || !lay.present(e) || lay.lat.edges()[e].axis == 'z') continue;
    sup.push_back(site_of(lay, e));
    kinds.push_back(lay.lat.edges()[e].origin == v ? 1 : 0);
  }
  SpMat acc;
  for (int x = 0; x < g.order; ++x) {
    std::vector<SpMat> ops;
    for (int k : kinds) ops.push_back(to_sparse(k ? R[x] : L[x]));
    SpMat t = kron_all(ops);
    acc = x == 0 ? t : SpMat(acc + t);
  }
  acc /= static_cast<double>(g.order);
  return SiteOperator::from_sparse(sup, acc);
}

SiteOperator global_matter_symmetry(const EdgeStateLayout& lay, int z, int g) {
  const auto R = regular_rep(lay.group, Side::Right);
  std::vector<Site> sup;
  std::vector<SpMat> ops;
  for (int v : lay.layer_vertices(z)) {
    sup.push_back(site_of(lay, lay.below(v)));
    ops.push_back(to_sparse(R[g]));
  }
  return SiteOperator::from_sparse(sup, kron_all(ops));
}

Step gauge_0form(const DenseState& s, EdgeStateLayout& lay, int z, int round, const HigherOptions& opt) {
  Step out;
  for (int g = 0; g < lay.group.order; ++g)
    out.precondition_residual = std::max(out.precondition_residual, invariance_residual(global_matter_symmetry(lay, z, g), s));
  if (opt.check_symmetric && out.precondition_residual > opt.tol)
    throw std::invalid_argument("gauge_0form: matter state is not G-symmetric");
  const auto edges = lay.layer_edges(z);
  std::size_t dim = s.space.total_dim();
  for (std::size_t i = 0; i < edges.size(); ++i) dim *= lay.group.order;
  guard(dim, opt, "gauge_0form");
  std::vector<Placement> adds;
  for (int e : edges) {
    if (lay.present(e)) throw std::logic_error("gauge_0form: edge already present");
    adds.push_back({{site_of(lay, e), basis_vector(lay.group.order, lay.group.identity)}, "", false});
    lay.created_by[e] = round;
  }
  out.state = grow_space(s, adds);
  for (int v : lay.layer_vertices(z)) out.state = apply(vertex_gauss_projector(lay, v), out.state);
  out.norm = out.state.norm();
  if (out.norm < 1e-12) throw std::runtime_error("gauge_0form: zero output");
  return out;
}

SiteOperator flux_operator(const EdgeStateLayout& lay, const lattice::Path& gamma, const Irrep& rho) {
  if (!gamma.closed()) throw std::invalid_argument("flux operator needs a closed path");
  std::vector<qd::EdgeSite> steps;
  std::vector<int> id(lay.group.order);
  for (int i = 0; i < lay.group.order; ++i) id[i] = i;
  for (int e : gamma.edges) {
    if (!lay.present(e)) throw std::invalid_argument("flux path uses an absent edge");
    steps.push_back({site_of(lay, e), id});
  }
  const auto signs = lattice::path_signs(lay.lat, gamma);
  const double d = rho.dim;
  return qd::holonomy_operator(steps, signs, lay.group, [&](int h) { return rho.character(h) / d; });
}

std::vector<lattice::Path> generating_loops(const EdgeStateLayout& lay, int z) {
  std::vector<lattice::Path> out;
  for (int f : lay.layer_faces(z)) out.push_back(lattice::face_loop(lay.lat, f));
  const int v0 = lay.lat.vertex_at({0, 0, z});
  out.push_back(lattice::straight_loop(lay.lat, v0, 'x'));
  out.push_back(lattice::straight_loop(lay.lat, v0, 'y'));
  return out;
}

SiteOperator edge_gauss_projector(const EdgeStateLayout& lay, int e) {
  const auto& ed = lay.lat.edges()[e];
  const FiniteGroup& g = lay.group;
  const int n = g.order;
  std::vector<cplx> d(n * n * n, 0.0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) d[(a * n + g.mul(a, g.inv[b])) * n + b] = 1.0;
  return SiteOperator::diagonal(
      {site_of(lay, lay.above(ed.terminus)), site_of(lay, e), site_of(lay, lay.above(ed.origin))}, d);
}

SiteOperator dual_symmetry(const EdgeStateLayout& lay, int z, int g) {
  const auto R = regular_rep(lay.group, Side::Right);
  std::vector<Site> sup;
  std::vector<SpMat> ops;
  for (int v : lay.layer_vertices(z)) {
    sup.push_back(site_of(lay, lay.above(v)));
    ops.push_back(to_sparse(R[g]));
  }
  return SiteOperator::from_sparse(sup, kron_all(ops));
}

Step gauge_1form(const DenseState& s, EdgeStateLayout& lay, int z, int round, const HigherOptions& opt) {
  Step out;
  for (const auto& loop : generating_loops(lay, z))
    for (const auto& rho : irreps(lay.group))
      out.precondition_residual = std::max(out.precondition_residual, invariance_residual(flux_operator(lay, loop, rho), s));
  if (opt.check_symmetric && out.precondition_residual > opt.tol)
    throw std::invalid_argument("gauge_1form: state is not invariant under the 1-form symmetry");
  const auto verts = lay.layer_vertices(z);
  std::size_t dim = s.space.total_dim();
  for (std::size_t i = 0; i < verts.size(); ++i) dim *= lay.group.order;
  guard(dim, opt, "gauge_1form");
  std::vector<Placement> adds;
  for (int v : verts) {
    const int e = lay.above(v);
    if (e < 0) throw std::invalid_argument("gauge_1form: slab has no edge above layer " + std::to_string(z));
    adds.push_back({{site_of(lay, e), uniform_vector(lay.group.order)}, "", false});
    lay.created_by[e] = round;
  }
  out.state = grow_space(s, adds);
  for (int e : lay.layer_edges(z)) out.state = apply(edge_gauss_projector(lay, e), out.state);
  out.norm = out.state.norm();
  if (out.norm < 1e-12) throw std::runtime_error("gauge_1form: zero output");
  return out;
}

Iterated3d iterate_3d(const DenseState& s, const EdgeStateLayout& lay, int rounds, const HigherOptions& opt) {
  if (rounds < 0) throw std::invalid_argument("rounds must be non-negative");
  Iterated3d it{s, lay, {}};
  std::size_t need = s.space.total_dim();
  const std::size_t per_layer_edges = lay.layer_edges(0).size(), per_layer_verts = lay.layer_vertices(0).size();
  for (int r = 1; r <= rounds; ++r)
    for (std::size_t i = 0; i < (r % 2 ? per_layer_edges : per_layer_verts); ++i) need *= lay.group.order;
  guard(need, opt, "iterate_3d(" + std::to_string(rounds) + " rounds)");
  for (int r = 1; r <= rounds; ++r) {
    const int z = (r - 1) / 2;
    Step st = r % 2 ? gauge_0form(it.state, it.layout, z, r, opt) : gauge_1form(it.state, it.layout, z, r, opt);
    it.state = std::move(st.state);
    it.norms.push_back(st.norm);
    it.state.scale(1.0 / st.norm);
  }
  return it;
}

qd::StabilizerSet stabilizers_3d(const EdgeStateLayout& lay) {
  lattice::Graph g;
  g.kind = lay.lat.kind;
  g.dimension = 3;
  g.extent = lay.lat.extent;
  g.periodic = lay.lat.periodic;
  for (const auto& v : lay.lat.vertices()) g.add_vertex(v.id, v.pos);
  for (int e = 0; e < static_cast<int>(lay.lat.edges().size()); ++e)
    if (lay.present(e)) {
      const auto& ed = lay.lat.edges()[e];
      g.add_edge(ed.id, ed.origin, ed.terminus, ed.axis, ed.pos);
    }
  for (const auto& f : lay.lat.faces()) {
    if (!std::all_of(f.edges.begin(), f.edges.end(), [&](int e) { return lay.present(e); })) continue;
    lattice::Face nf = f;
    for (auto& e : nf.edges) e = g.find_edge(lay.lat.edges()[e].id);
    g.add_face(nf);
  }
  return qd::make_stabilizers(std::move(g), lay.group, trivial_cocycle(lay.group.order));
}

Report check_flux_invariance(const DenseState& s, const EdgeStateLayout& lay, int z, double tol, const std::string& suite) {
  Report r;
  const auto loops = generating_loops(lay, z);
  const auto faces = lay.layer_faces(z);
  for (std::size_t i = 0; i < loops.size(); ++i) {
    const std::string name = i < faces.size() ? lay.lat.faces()[faces[i]].id : (i == faces.size() ? "cycle-x" : "cycle-y");
    for (const auto& rho : irreps(lay.group))
      r.add(suite, "flux-invariance", name, rho.label, invariance_residual(flux_operator(lay, loops[i], rho), s), tol);
  }
  return r;
}

Report check_dual_symmetry(const DenseState& s, const EdgeStateLayout& lay, int z, double tol, const std::string& suite) {
  Report r;
  for (int g = 0; g < lay.group.order; ++g)
    r.add(suite, "dual-symmetry", "layer " + std::to_string(z), "g=" + std::to_string(g),
          invariance_residual(dual_symmetry(lay, z, g), s), tol);
  return r;
}

}  // namespace qdg::higher
