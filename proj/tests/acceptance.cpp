#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <unsupported/Eigen/KroneckerProduct>

#include "qdg/frobenius.hpp"
#include "qdg/gauge1d.hpp"
#include "qdg/gauge_higher.hpp"
#include "qdg/peps.hpp"
#include "qdg/qdouble.hpp"

using namespace qdg;

namespace {

struct Tally {
  double worst = 0;
  bool ok = true;
  std::string detail;

  void take(const Report& r) {
    for (const auto& c : r.checks) {
      ok = ok && c.pass;
      if (!c.pass && detail.empty()) detail = "first failure " + c.id + " at " + c.site;
      if (c.note.rfind("expected", 0) != 0) worst = std::max(worst, c.residual);
    }
  }
  void take(double residual, double tol, const std::string& what) {
    worst = std::max(worst, residual);
    if (!(residual < tol)) {
      ok = false;
      if (detail.empty()) detail = "first failure " + what;
    }
  }
};

int failures = 0;

void criterion(const std::string& label, double budget_s, const std::function<Tally()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  try {
    t = body();
  } catch (const std::exception& e) {
    t.ok = false;
    t.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_s) {
    t.ok = false;
    t.detail += " over time budget";
  }
  std::printf("%s %s | max residual %.3e | %.1f s (budget %.0f s)%s%s\n", t.ok ? "PASS" : "FAIL", label.c_str(), t.worst,
              secs, budget_s, t.detail.empty() ? "" : " | ", t.detail.c_str());
  std::fflush(stdout);
  failures += !t.ok;
}

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

DenseState symmetric_random_chain(const chain::ChainConfig& cfg, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<SiteVector> parts;
  for (int i = 0; i < cfg.n_sites; ++i) {
    std::vector<cplx> v(cfg.group.order);
    for (auto& x : v) x = cplx(nd(rng), nd(rng));
    parts.push_back({{cfg.matter(i), cfg.group.order}, v});
  }
  const auto s0 = embed_product(parts);
  DenseState s{s0.space, std::vector<cplx>(s0.amp.size())};
  for (int g = 0; g < cfg.group.order; ++g) {
    const auto m = apply(chain::global_group_symmetry(cfg, g), s0);
    for (std::size_t i = 0; i < s.amp.size(); ++i) s.amp[i] += m.amp[i];
  }
  return s;
}

struct Patch {
  chain::Iterated it;
  qd::StabilizerSet stab;
  qd::PepsNetwork net;
};

Patch patch(const std::string& group, const std::string& k, const std::string& beta, int rounds) {
  const auto g = build_group(group);
  const auto sub = subgroup_from_descriptor(g, k);
  const auto b = cocycle_from_descriptor(subgroup_as_group(sub), beta);
  const auto tau = trivial_cocycle(g.order);
  const auto in = chain::boundary_input_state(sub, b, g, 4);
  auto it = chain::iterate_gauging(in.psi, in.carriers, tau, rounds, chain::boundary_layout(in));
  auto st = qd::strip_from_layout(it.layout, g, tau, sub, b);
  return {std::move(it), std::move(st), qd::make_peps(g, sub, b, tau)};
}

Tally frobenius_suite() {
  Tally t;
  auto full = [&](const FrobeniusAlgebra& f) {
    Report r = check_frobenius_axioms(f, 1e-10);
    r.merge(check_haploid_symmetric_special(f, swap_matrix(f.dim), 1e-10));
    t.take(r);
  };
  for (const char* k : {"Z2", "Z3", "S3"}) full(twisted_group_algebra(build_group(k), trivial_cocycle(build_group(k).order)));
  const auto v = build_group("Z2xZ2");
  full(twisted_group_algebra(v, cocycle_from_descriptor(v, "z2z2_nontrivial")));
  for (const char* g : {"Z2", "Z3", "S3"}) full(regular_function_algebra(build_group(g)));
  const auto s3 = build_group("S3");
  const auto a3 = subgroup_from_descriptor(s3, "A3");
  full(induced_endomorphism_algebra(s3, a3, trivial_cocycle(3), trivial_irrep(subgroup_as_group(a3))));
  return t;
}

Tally gauge1d_suite() {
  Tally t;
  for (const char* name : {"Z2", "Z3", "S3"})
    for (int n : {2, 3}) {
      const auto g = build_group(name);
      const auto full = full_subgroup(g);
      const auto tau = trivial_cocycle(g.order);
      const auto cfg = chain::make_chain(n, g);
      const std::string at = std::string(name) + " n=" + std::to_string(n);
      const auto gd = chain::gauge_group_symmetry(symmetric_random_chain(cfg, 17u + n), cfg, full, tau);
      for (int i = 0; i < n; ++i)
        for (int a = 0; a < g.order; ++a)
          t.take(invariance_residual(chain::local_gauge_transform(cfg, i, full, tau, a), gd.state), 1e-10,
                 "local invariance " + at);
      std::vector<Site> gs;
      for (const auto& id : gd.new_ids) gs.push_back({id, g.order});
      const auto irr = irreps(g);
      for (const auto& rho : irr)
        t.take(invariance_residual(chain::rep_symmetry_mpo(gs, rho), gd.state), 1e-10, "O_rho invariance " + at);
      for (const auto& a : irr)
        for (const auto& b : irr) {
          const auto mult = fusion_multiplicities(a, b, irr);
          const Mat lhs = chain::contract_flux_mpo(a, n) * chain::contract_flux_mpo(b, n);
          Mat rhs = Mat::Zero(lhs.rows(), lhs.cols());
          for (std::size_t c = 0; c < irr.size(); ++c)
            rhs += double(mult[c] * irr[c].dim) / (a.dim * b.dim) * chain::contract_flux_mpo(irr[c], n);
          t.take(max_abs(lhs - rhs), 1e-10, "fusion " + at);
        }
      chain::Options opt;
      opt.override_envelope = true;  // S3 at n = 3 needs 6^9 amplitudes
      const auto rg = chain::gauge_repg_symmetry(gd.state, g, gd.new_ids, "r", opt);
      const auto R = regular_rep(g, Side::Right);
      for (int a = 0; a < g.order; ++a) {
        std::vector<Site> sup;
        std::vector<SpMat> ops;
        for (const auto& id : rg.new_ids) {
          sup.push_back({id, g.order});
          ops.push_back(to_sparse(R[a]));
        }
        t.take(invariance_residual(SiteOperator::from_sparse(sup, kron_all(ops)), rg.state), 1e-10,
               "tensor R invariance " + at);
      }
    }
  return t;
}

Tally quantum_double() {
  Tally t;
  struct Case {
    const char *g, *k, *beta;
  };
  std::string paths;
  for (const Case c : {Case{"Z2", "G", "trivial"}, Case{"Z3", "G", "trivial"}, Case{"S3", "G", "trivial"},
                       Case{"S3", "A3", "trivial"}, Case{"Z2xZ2", "G", "z2z2_nontrivial"}}) {
    const auto p = patch(c.g, c.k, c.beta, 2);
    const auto v = qd::verify_ground_state(p.it.state, p.stab, 1e-8);
    t.take(v);
    t.take(qd::commutator_checks(p.stab, 1e-10));
    const double e = qd::hamiltonian(p.stab).energy(p.it.state);
    const int nv = v.info.at("vertices").get<int>(), nf = v.info.at("faces").get<int>();
    t.take(std::abs(e + nv + nf), 1e-8, std::string("ground energy ") + c.g);
    paths += std::string(paths.empty() ? "" : ", ") + c.g + "/" + c.k + " full-patch " +
             std::to_string(p.it.state.amp.size());
  }
  t.detail = t.ok ? "paths: " + paths : t.detail;
  return t;
}

Tally toric_limit() {
  Tally t;
  const auto g = build_group("Z2");
  const auto s = qd::make_stabilizers(lattice::build_square_lattice(2, 2, "periodic"), g, trivial_cocycle(2));
  Mat x(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  z << 1, 0, 0, -1;
  auto power = [](const Mat& m, std::size_t n) {
    Mat out = Mat::Identity(1, 1);
    for (std::size_t i = 0; i < n; ++i) out = Eigen::kroneckerProduct(out, m).eval();
    return out;
  };
  for (int v : s.star_vertices()) {
    const auto a = qd::star_operator(s, v, 1);
    t.take(max_abs(a.dense() - power(x, a.support.size())), 1e-14, "star " + s.lat.vertices()[v].id);
  }
  for (int f : s.all_faces()) {
    const auto b = qd::plaquette_operator(s, f, qd::face_irreps(s, f)[1]);
    t.take(max_abs(b.dense() - power(z, b.support.size())), 1e-14, "plaquette " + s.lat.faces()[f].id);
  }
  return t;
}

Tally peps_equivalence() {
  Tally t;
  for (const char* g : {"Z2", "Z3"}) {
    const auto p = patch(g, "G", "trivial", 2);
    t.take(1.0 - fidelity_up_to_scale(qd::build_peps_state(p.net, p.it.layout), p.it.state), 1e-10, g);
  }
  return t;
}

Tally higher_pipeline() {
  Tally t;
  auto lay = higher::make_slab_layout(build_group("Z2"), 2, 2, 1);
  const auto s = higher::uniform_matter_state(lay);
  const auto a = higher::gauge_0form(s, lay, 0);
  t.take(higher::check_flux_invariance(a.state, lay, 0, 1e-8));
  const auto b = higher::gauge_1form(a.state, lay, 0);
  t.take(higher::check_dual_symmetry(b.state, lay, 0, 1e-8));
  const auto fresh = higher::make_slab_layout(build_group("Z2"), 2, 2, 1);
  const auto it = higher::iterate_3d(higher::uniform_matter_state(fresh), fresh, 2);
  const auto st = higher::stabilizers_3d(it.layout);
  t.take(qd::verify_ground_state(it.state, st, 1e-8, "gauge_higher"));
  t.take(qd::commutator_checks(st, 1e-10, "gauge_higher"));
  return t;
}

Tally higher_three_rounds() {
  Tally t;
  const auto lay = higher::make_slab_layout(build_group("Z2"), 2, 2, 2);
  higher::HigherOptions opt;
  opt.override_envelope = true;
  const auto it = higher::iterate_3d(higher::uniform_matter_state(lay), lay, 3, opt);
  t.take(qd::verify_ground_state(it.state, higher::stabilizers_3d(it.layout), 1e-8, "gauge_higher"));
  return t;
}

Tally negative_control() {
  Tally t;
  const auto r = qd::bf_weighting_control(build_group("S3"), 0.1);
  const auto* uniform = r.find("bf-uniform-weights-idempotence");
  const auto* proj = r.find("bf-projector-weights-idempotence");
  if (!uniform || !proj) {
    t.ok = false;
    t.detail = "control entries missing";
    return t;
  }
  t.ok = uniform->residual > 0.1 && proj->residual < 1e-12;
  t.worst = proj->residual;
  char buf[160];
  std::snprintf(buf, sizeof buf, "uniform-weight residual %.3f (must exceed 0.1), projector-form %.1e", uniform->residual,
                proj->residual);
  t.detail = buf;
  return t;
}

}  // namespace

int main() {
  criterion("criterion 1: Frobenius axioms, symmetric, special, haploid (tol 1e-10)", 10, frobenius_suite);
  criterion("criterion 2: 1D gauging invariances for Z2, Z3, S3 at n = 2, 3 (tol 1e-10)", 60, gauge1d_suite);
  criterion("criterion 3: quantum double ground state from iterated gauging (tol 1e-8, commutators 1e-10)", 600,
            quantum_double);
  criterion("criterion 4: Z2 toric-code limit on the 2x2 torus (tol 1e-14)", 10, toric_limit);
  criterion("criterion 5: PEPS equals iterated gauging for Z2 and Z3, 2 layers (1 - F < 1e-10)", 60, peps_equivalence);
  criterion("criterion 6: 3D flux, dual symmetry and stabilizers after 2 rounds (tol 1e-8)", 300, higher_pipeline);
  criterion("criterion 6 (extended): 3D stabilizers after 3 rounds with envelope override (tol 1e-8)", 300,
            higher_three_rounds);
  criterion("criterion 7: uniform plaquette weights fail idempotence on S3, projector form passes", 30,
            negative_control);
  return failures == 0 ? 0 : 1;
}
