#include "qdg/qdouble.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qdg::qd {

const std::vector<LegRule>& placement_table() {
  static const std::vector<LegRule> t = {
      {"bulk2d", 'x', "origin", "tauR"},       {"bulk2d", 'x', "terminus", "taubarL"},
      {"bulk2d", 'y', "origin", "R"},          {"bulk2d", 'y', "terminus", "L"},
      {"boundary2d", 'x', "origin", "alphaR"}, {"boundary2d", 'x', "terminus", "alphabarL"},
      {"boundary2d", 'y', "terminus", "L"},    {"bulk3d", '*', "origin", "R"},
      {"bulk3d", '*', "terminus", "L"},
  };
  return t;
}

std::string leg_rep(const std::string& context, char axis, bool origin) {
  for (const auto& r : placement_table())
    if (context == r.context && (r.axis == '*' || r.axis == axis) && std::string(r.end) == (origin ? "origin" : "terminus"))
      return r.rep;
  throw std::invalid_argument("no leg rule for " + context + " axis " + axis + (origin ? " origin" : " terminus"));
}

bool StabilizerSet::boundary_vertex(int v) const {
  return lat.kind == "smooth-bottom" && lat.vertices()[v].pos[1] == 0;
}

bool StabilizerSet::boundary_face(int f) const {
  return lat.kind == "smooth-bottom" && lat.faces()[f].plane == "xy" && lat.faces()[f].pos[1] == 0;
}

std::vector<int> StabilizerSet::star_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(lat.vertices().size()); ++v)
    if (lat.complete_star(v)) out.push_back(v);
  return out;
}

std::vector<int> StabilizerSet::all_faces() const {
  std::vector<int> out(lat.faces().size());
  for (std::size_t f = 0; f < out.size(); ++f) out[f] = static_cast<int>(f);
  return out;
}

std::string StabilizerSet::context(int v) const {
  if (lat.dimension == 3) return "bulk3d";
  return boundary_vertex(v) ? "boundary2d" : "bulk2d";
}

namespace {

std::vector<int> identity_map(int n) {
  std::vector<int> m(n);
  for (int i = 0; i < n; ++i) m[i] = i;
  return m;
}

}  // namespace

StabilizerSet make_stabilizers(lattice::Graph lat, const FiniteGroup& g, const TwoCocycle& tau) {
  return make_stabilizers(std::move(lat), g, tau, full_subgroup(g), trivial_cocycle(g.order));
}

StabilizerSet make_stabilizers(lattice::Graph lat, const FiniteGroup& g, const TwoCocycle& tau,
                               const SubgroupEmbedding& k, const TwoCocycle& alpha) {
  if (tau.order != g.order) throw std::invalid_argument("stabilizers: tau is not a cocycle on G");
  if (alpha.order != k.size()) throw std::invalid_argument("stabilizers: alpha is not a cocycle on K");
  StabilizerSet s{std::move(lat), g, k, alpha, tau, {}};
  for (const auto& e : s.lat.edges()) {
    const bool bnd = s.lat.kind == "smooth-bottom" && e.axis == 'x' && e.pos[1] == 0;
    if (bnd)
      s.edges.push_back({{e.id, k.size()}, k.elements});
    else
      s.edges.push_back({{e.id, g.order}, identity_map(g.order)});
  }
  return s;
}

StabilizerSet strip_from_layout(const chain::LayerLayout& layout, const FiniteGroup& g, const TwoCocycle& tau,
                                const SubgroupEmbedding& k, const TwoCocycle& alpha) {
  const int hrows = 1 + (layout.rounds + 1) / 2;
  const int vrows = 1 + layout.rounds / 2;
  auto lat = lattice::build_square_lattice(layout.columns, hrows, "smooth-bottom", vrows == hrows);
  StabilizerSet s = make_stabilizers(std::move(lat), g, tau, k, alpha);
  for (std::size_t e = 0; e < s.edges.size(); ++e) {
    const auto& edge = s.lat.edges()[e];
    const auto* site = layout.find(edge.axis == 'x' ? 'h' : 'v', edge.pos[1], edge.pos[0]);
    if (!site) throw std::invalid_argument("layout has no site for edge " + edge.id);
    if (site->dim != s.edges[e].site.dim) throw std::invalid_argument("layout site " + site->id + " has the wrong dimension");
    s.edges[e].site.id = site->id;
  }
  return s;
}

SiteOperator star_operator(const StabilizerSet& s, int v, int g) {
  const std::string ctx = s.context(v);
  const bool bnd = ctx == "boundary2d";
  const int kl = s.k.local(g);
  if (bnd && kl < 0) throw std::invalid_argument("boundary star at " + s.lat.vertices()[v].id + " needs g in K");
  std::vector<Site> sup;
  std::vector<SpMat> ops;
  const FiniteGroup kg = bnd ? subgroup_as_group(s.k) : FiniteGroup{};
  for (int e : s.lat.vertices()[v].legs) {
    if (e < 0) continue;
    const auto& edge = s.lat.edges()[e];
    const std::string rep = leg_rep(ctx, edge.axis, edge.origin == v);
    Mat m;
    if (rep == "L")
      m = regular_rep(s.group, Side::Left)[g];
    else if (rep == "R")
      m = regular_rep(s.group, Side::Right)[g];
    else if (rep == "tauR")
      m = projective_regular_rep(s.group, s.tau, Side::Right)[g];
    else if (rep == "taubarL")
      m = projective_regular_rep(s.group, s.tau, Side::Left)[g].conjugate();
    else if (rep == "alphaR")
      m = projective_regular_rep(kg, s.alpha, Side::Right)[kl];
    else
      m = projective_regular_rep(kg, s.alpha, Side::Left)[kl].conjugate();
    sup.push_back(s.edges[e].site);
    ops.push_back(to_sparse(m));
  }
  return SiteOperator::from_sparse(sup, kron_all(ops));
}

SiteOperator holonomy_operator(const std::vector<EdgeSite>& steps, const std::vector<int>& signs, const FiniteGroup& g,
                               const std::function<cplx(int)>& weight) {
  if (steps.size() != signs.size() || steps.empty()) throw std::invalid_argument("holonomy: bad path");
  std::vector<EdgeSite> uniq;
  std::vector<int> slot;
  for (const auto& st : steps) {
    auto it = std::find_if(uniq.begin(), uniq.end(), [&](const EdgeSite& u) { return u.site.id == st.site.id; });
    if (it == uniq.end()) {
      uniq.push_back(st);
      slot.push_back(static_cast<int>(uniq.size()) - 1);
    } else {
      slot.push_back(static_cast<int>(it - uniq.begin()));
    }
  }
  std::vector<Site> sup;
  std::size_t dim = 1;
  for (const auto& u : uniq) {
    sup.push_back(u.site);
    dim *= u.site.dim;
  }
  std::vector<cplx> d(dim);
  std::vector<int> digit(uniq.size());
  for (std::size_t f = 0; f < dim; ++f) {
    std::size_t rem = f;
    for (int i = static_cast<int>(uniq.size()) - 1; i >= 0; --i) {
      digit[i] = static_cast<int>(rem % uniq[i].site.dim);
      rem /= uniq[i].site.dim;
    }
    int hol = g.identity;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      int x = uniq[slot[i]].elements[digit[slot[i]]];
      if (signs[i] < 0) x = g.inv[x];
      hol = g.mul(x, hol);
    }
    d[f] = weight(hol);
  }
  return SiteOperator::diagonal(sup, d);
}

std::vector<Irrep> face_irreps(const StabilizerSet& s, int f) {
  return s.boundary_face(f) ? irreps(subgroup_as_group(s.k)) : irreps(s.group);
}

int face_holonomy(const StabilizerSet& s, int f, const std::vector<int>& edge_values) {
  const auto loop = lattice::face_loop(s.lat, f);
  int hol = s.group.identity;
  for (std::size_t i = 0; i < loop.edges.size(); ++i) {
    int x = edge_values.at(loop.edges[i]);
    if (loop.signs[i] < 0) x = s.group.inv[x];
    hol = s.group.mul(x, hol);
  }
  return hol;
}

SiteOperator plaquette_operator(const StabilizerSet& s, int f, const Irrep& rho) {
  auto loop = lattice::face_loop(s.lat, f);
  const bool bnd = s.boundary_face(f);
  if (bnd) {
    // Start at the bottom-left corner.
    std::rotate(loop.edges.begin(), loop.edges.begin() + 2, loop.edges.end());
    std::rotate(loop.signs.begin(), loop.signs.begin() + 2, loop.signs.end());
  }
  std::vector<EdgeSite> steps;
  for (int e : loop.edges) steps.push_back(s.edges[e]);
  if (rho.group->order != (bnd ? s.k.size() : s.group.order))
    throw std::invalid_argument("plaquette: irrep does not match the face's group");
  const double d = rho.dim;
  if (!bnd) return holonomy_operator(steps, loop.signs, s.group, [&](int h) { return rho.character(h) / d; });
  return holonomy_operator(steps, loop.signs, s.group, [&](int h) {
    const int l = s.k.local(h);
    return l < 0 ? cplx(0) : rho.character(l) / d;
  });
}

BfWeights bf_weights_from_string(const std::string& s) {
  if (s == "projector") return BfWeights::Projector;
  if (s == "paper") return BfWeights::Uniform;
  throw std::invalid_argument("bf_weights must be 'paper' or 'projector', got '" + s + "'");
}

SiteOperator vertex_term(const StabilizerSet& s, int v) {
  const bool bnd = s.boundary_vertex(v);
  const auto& members = bnd ? s.k.elements : full_subgroup(s.group).elements;
  SiteOperator a = star_operator(s, v, members[0]);
  for (std::size_t i = 1; i < members.size(); ++i) a.matrix += star_operator(s, v, members[i]).matrix;
  a.matrix /= static_cast<double>(members.size());
  a.matrix.prune(cplx(0), 1e-14);
  return a;
}

SiteOperator face_term(const StabilizerSet& s, int f, BfWeights w) {
  const auto irr = face_irreps(s, f);
  const double order = irr.front().group->order;
  SiteOperator b;
  for (std::size_t i = 0; i < irr.size(); ++i) {
    const double c = w == BfWeights::Projector ? irr[i].dim * irr[i].dim / order : 1.0 / irr.size();
    SiteOperator p = plaquette_operator(s, f, irr[i]);
    if (i == 0) {
      b = p;
      b.matrix *= c;
    } else {
      b.matrix += c * p.matrix;
    }
  }
  return b;
}

double Hamiltonian::energy(const DenseState& s) const {
  double e = 0;
  for (const auto& t : terms) e -= expectation(t, s).real();
  return e;
}

Hamiltonian hamiltonian(const StabilizerSet& s, BfWeights w) {
  Hamiltonian h;
  for (int v : s.star_vertices()) h.terms.push_back(vertex_term(s, v));
  for (int f : s.all_faces()) h.terms.push_back(face_term(s, f, w));
  return h;
}

namespace {

std::vector<int> star_elements(const StabilizerSet& s, int v) {
  return s.boundary_vertex(v) ? s.k.elements : full_subgroup(s.group).elements;
}

struct Labeled {
  std::string family;
  std::string name;
  SiteOperator op;
};

std::vector<Labeled> nontrivial_stabilizers(const StabilizerSet& s) {
  std::vector<Labeled> ops;
  for (int v : s.star_vertices())
    for (int g : star_elements(s, v))
      if (g != s.group.identity)
        ops.push_back({"star", s.lat.vertices()[v].id + "/g" + std::to_string(g), star_operator(s, v, g)});
  for (int f : s.all_faces())
    for (const auto& rho : face_irreps(s, f))
      if (rho.label != "trivial")
        ops.push_back({"plaquette", s.lat.faces()[f].id + "/" + rho.label, plaquette_operator(s, f, rho)});
  return ops;
}

double idempotence_residual(const SiteOperator& a) {
  const SpMat sq = a.matrix * a.matrix;
  const SpMat d = sq - a.matrix;
  double r = 0;
  for (int k = 0; k < d.outerSize(); ++k)
    for (SpMat::InnerIterator it(d, k); it; ++it) r = std::max(r, std::abs(it.value()));
  return r;
}

double hermiticity_residual(const SiteOperator& a) {
  const SpMat adj = SpMat(a.matrix.adjoint());
  const SpMat d = adj - a.matrix;
  double r = 0;
  for (int k = 0; k < d.outerSize(); ++k)
    for (SpMat::InnerIterator it(d, k); it; ++it) r = std::max(r, std::abs(it.value()));
  return r;
}

}  // namespace

Report verify_ground_state(const DenseState& psi, const StabilizerSet& s, double tol, const std::string& suite) {
  Report r;
  int nv = 0, nf = 0;
  for (int v : s.star_vertices()) {
    ++nv;
    for (int g : star_elements(s, v))
      r.add(suite, s.boundary_vertex(v) ? "star-boundary" : "star", s.lat.vertices()[v].id, "g=" + std::to_string(g),
            invariance_residual(star_operator(s, v, g), psi), tol);
  }
  for (int f : s.all_faces()) {
    ++nf;
    for (const auto& rho : face_irreps(s, f))
      r.add(suite, s.boundary_face(f) ? "plaquette-boundary" : "plaquette", s.lat.faces()[f].id, rho.label,
            invariance_residual(plaquette_operator(s, f, rho), psi), tol);
  }
  const double e = hamiltonian(s, BfWeights::Projector).energy(psi);
  r.add(suite, "ground-energy", "patch", "E=" + std::to_string(e), std::abs(e + nv + nf), tol).note =
      "expected -" + std::to_string(nv + nf);
  r.info["vertices"] = nv;
  r.info["faces"] = nf;
  r.info["energy"] = e;
  return r;
}

Report commutator_checks(const StabilizerSet& s, double tol, const std::string& suite) {
  const auto ops = nontrivial_stabilizers(s);
  std::map<std::string, std::pair<double, int>> fam;
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = i + 1; j < ops.size(); ++j) {
      if (!supports_overlap(ops[i].op, ops[j].op)) continue;
      // Different group elements on one star need not commute for non-abelian G.
      if (ops[i].family == "star" && ops[j].family == "star" &&
          ops[i].name.substr(0, ops[i].name.find('/')) == ops[j].name.substr(0, ops[j].name.find('/')))
        continue;
      const std::string key = ops[i].family + "-" + ops[j].family;
      auto& [mx, n] = fam[key];
      mx = std::max(mx, commutator_residual(ops[i].op, ops[j].op));
      ++n;
    }
  Report r;
  for (const auto& [key, v] : fam) r.add(suite, "commutator", key, std::to_string(v.second) + " pairs", v.first, tol);
  return r;
}

Report star_representation_checks(const StabilizerSet& s, double tol, const std::string& suite) {
  Report r;
  for (int v : s.star_vertices()) {
    const auto el = star_elements(s, v);
    double mx = 0;
    for (int a : el)
      for (int b : el) {
        const auto sa = star_operator(s, v, a), sb = star_operator(s, v, b), sab = star_operator(s, v, s.group.mul(a, b));
        const SpMat prod = sa.matrix * sb.matrix;
        const SpMat d = prod - sab.matrix;
        for (int k = 0; k < d.outerSize(); ++k)
          for (SpMat::InnerIterator it(d, k); it; ++it) mx = std::max(mx, std::abs(it.value()));
      }
    r.add(suite, "star-representation", s.lat.vertices()[v].id, "all pairs", mx, tol);
  }
  return r;
}

Report projector_checks(const StabilizerSet& s, BfWeights w, double tol, const std::string& suite) {
  Report r;
  for (int v : s.star_vertices()) {
    const auto a = vertex_term(s, v);
    r.add(suite, "A_v-idempotent", s.lat.vertices()[v].id, "", idempotence_residual(a), tol);
    r.add(suite, "A_v-hermitian", s.lat.vertices()[v].id, "", hermiticity_residual(a), tol);
  }
  for (int f : s.all_faces()) {
    const auto b = face_term(s, f, w);
    r.add(suite, "B_f-idempotent", s.lat.faces()[f].id, w == BfWeights::Uniform ? "uniform" : "projector",
          idempotence_residual(b), tol);
    r.add(suite, "B_f-hermitian", s.lat.faces()[f].id, "", hermiticity_residual(b), tol);
  }
  return r;
}

double bf_idempotence_on_flux(const StabilizerSet& s, int f, int flux, BfWeights w) {
  const auto b = face_term(s, f, w);
  const auto loop = lattice::face_loop(s.lat, f);
  std::vector<int> values(s.edges.size(), s.group.identity);
  values[loop.edges[0]] = flux;  // hol = top when the other three legs carry e
  if (face_holonomy(s, f, values) != flux) throw std::logic_error("flux preparation failed");
  std::vector<int> digits;
  for (const auto& site : b.support) {
    int idx = 0;
    for (std::size_t ee = 0; ee < s.edges.size(); ++ee)
      if (s.edges[ee].site.id == site.id) {
        const auto& el = s.edges[ee].elements;
        idx = static_cast<int>(std::find(el.begin(), el.end(), values[ee]) - el.begin());
      }
    digits.push_back(idx);
  }
  DenseState v{TensorFactorSpace(b.support), {}};
  v.amp.assign(v.space.total_dim(), 0.0);
  v.amp[v.space.flat_index(digits)] = 1.0;
  const auto bv = apply(b, v);
  const auto bbv = apply(b, bv);
  double r = 0;
  for (std::size_t i = 0; i < v.amp.size(); ++i) r = std::max(r, std::abs(bbv.amp[i] - bv.amp[i]));
  return r;
}

Report bf_weighting_control(const FiniteGroup& g, double tol, const std::string& suite) {
  const auto s = make_stabilizers(lattice::build_square_lattice(2, 2, "periodic"), g, trivial_cocycle(g.order));
  // The first element of order 3, if any, is the flux probed by the control.
  int flux = -1;
  for (int x = 0; x < g.order && flux < 0; ++x)
    if (x != g.identity && g.mul(x, g.mul(x, x)) == g.identity) flux = x;
  Report r;
  if (flux < 0 || g.is_abelian()) {
    r.flag(suite, "bf-weighting", g.name, true, "abelian or no order-3 element; control not applicable");
    return r;
  }
  const double uniform = bf_idempotence_on_flux(s, 0, flux, BfWeights::Uniform);
  const double proj = bf_idempotence_on_flux(s, 0, flux, BfWeights::Projector);
  r.add(suite, "bf-uniform-weights-idempotence", s.lat.faces()[0].id, "flux g=" + std::to_string(flux), uniform, tol, true)
      .note = "expected failure: residual must exceed the tolerance";
  r.add(suite, "bf-projector-weights-idempotence", s.lat.faces()[0].id, "flux g=" + std::to_string(flux), proj, 1e-12);
  return r;
}

}  // namespace qdg::qd
