#include "qdg/campaign.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "qdg/frobenius.hpp"
#include "qdg/gauge1d.hpp"
#include "qdg/gauge_higher.hpp"
#include "qdg/groups.hpp"
#include "qdg/peps.hpp"
#include "qdg/qdouble.hpp"

#ifndef QDG_CAMPAIGN_DIR
#define QDG_CAMPAIGN_DIR "campaigns"
#endif

namespace qdg::cli {

namespace fs = std::filesystem;
using nlohmann::json;

const std::vector<std::string>& suite_order() {
  static const std::vector<std::string> s = {"groups", "frobenius", "gauge1d", "qdouble", "gauge_higher"};
  return s;
}

namespace {

template <class F>
auto field(const std::string& name, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(name, e.what());
  }
}

std::vector<std::string> string_or_list(const json& j, const std::string& name) {
  return field(name, [&] {
    std::vector<std::string> out;
    if (j.is_string())
      out.push_back(j.get<std::string>());
    else if (j.is_array())
      for (const auto& x : j) out.push_back(x.get<std::string>());
    else
      throw std::invalid_argument("expected a string or an array of strings");
    if (out.empty()) throw std::invalid_argument("empty list");
    return out;
  });
}

}  // namespace

Campaign parse_campaign(const json& j) {
  if (!j.is_object()) throw ConfigError("<root>", "campaign must be a JSON object");
  static const std::vector<std::string> known = {"name",      "description", "group",  "tau",        "alpha",
                                                 "beta",      "subgroup",    "chain",  "lattice",    "rounds",
                                                 "checks",    "bf_weights",  "output", "snapshot"};
  for (const auto& [k, v] : j.items())
    if (std::find(known.begin(), known.end(), k) == known.end()) throw ConfigError(k, "unknown field");
  Campaign c;
  c.name = field("name", [&] { return j.at("name").get<std::string>(); });
  c.description = j.value("description", "");
  c.group = field("group", [&] { return j.at("group").get<std::string>(); });
  const FiniteGroup g = field("group", [&] { return build_group(c.group); });
  if (j.contains("tau")) c.tau = field("tau", [&] { return j.at("tau").get<std::string>(); });
  if (j.contains("beta")) c.beta = field("beta", [&] { return j.at("beta").get<std::string>(); });
  if (j.contains("alpha")) c.alpha = field("alpha", [&] { return j.at("alpha").get<std::string>(); });
  field("tau", [&] { return cocycle_from_descriptor(g, c.tau); });
  if (j.contains("subgroup")) c.subgroups = string_or_list(j.at("subgroup"), "subgroup");
  for (const auto& k : c.subgroups) {
    const auto sub = field("subgroup", [&] { return subgroup_from_descriptor(g, k); });
    field("beta", [&] { return cocycle_from_descriptor(subgroup_as_group(sub), c.beta); });
    if (!c.alpha.empty()) field("alpha", [&] { return cocycle_from_descriptor(subgroup_as_group(sub), c.alpha); });
  }
  if (j.contains("chain")) {
    const auto& ch = j.at("chain");
    if (!ch.is_object()) throw ConfigError("chain", "expected an object");
    if (ch.contains("n"))
      c.chain_sizes = field("chain.n", [&] {
        std::vector<int> v;
        if (ch.at("n").is_array())
          v = ch.at("n").get<std::vector<int>>();
        else
          v.push_back(ch.at("n").get<int>());
        for (int n : v)
          if (n < 2) throw std::invalid_argument("periodic chains need n >= 2");
        return v;
      });
    if (ch.contains("boundary_sites"))
      c.boundary_sites = field("chain.boundary_sites", [&] {
        const int n = ch.at("boundary_sites").get<int>();
        if (n < 4 || n % 2) throw std::invalid_argument("must be even and >= 4");
        return n;
      });
  }
  if (j.contains("lattice")) {
    c.lattice = j.at("lattice");
    field("lattice", [&] { return lattice::lattice_from_json(c.lattice); });
  }
  if (j.contains("rounds"))
    c.rounds = field("rounds", [&] {
      const int r = j.at("rounds").get<int>();
      if (r < 0) throw std::invalid_argument("must be non-negative");
      return r;
    });
  if (j.contains("checks")) {
    c.checks = string_or_list(j.at("checks"), "checks");
    for (const auto& s : c.checks)
      if (std::find(suite_order().begin(), suite_order().end(), s) == suite_order().end())
        throw ConfigError("checks", "unknown suite '" + s + "'");
  } else {
    c.checks = suite_order();
  }
  if (j.contains("bf_weights"))
    c.bf_weights = field("bf_weights", [&] {
      const auto s = j.at("bf_weights").get<std::string>();
      qd::bf_weights_from_string(s);
      return s;
    });
  c.output = j.value("output", "");
  c.snapshot = j.value("snapshot", false);
  return c;
}

std::string campaign_dir() {
  if (const char* env = std::getenv("QDG_CAMPAIGNS")) return env;
  return QDG_CAMPAIGN_DIR;
}

Campaign load_campaign(const std::string& path_or_name) {
  fs::path p(path_or_name);
  if (!fs::exists(p)) p = fs::path(campaign_dir()) / (path_or_name + ".json");
  std::ifstream in(p);
  if (!in) throw ConfigError("<file>", "cannot open '" + path_or_name + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("<file>", std::string("JSON parse error: ") + e.what());
  }
  return parse_campaign(j);
}

std::vector<Campaign> shipped_campaigns() {
  std::vector<Campaign> out;
  if (!fs::is_directory(campaign_dir())) return out;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(campaign_dir()))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) out.push_back(load_campaign(f.string()));
  return out;
}

std::string describe(const std::string& name) {
  for (const auto& c : shipped_campaigns())
    if (c.name == name) {
      std::string s = c.name + ": " + c.description + "\n  group " + c.group + ", tau " + c.tau + ", beta " + c.beta +
                      ", subgroups {";
      for (std::size_t i = 0; i < c.subgroups.size(); ++i) s += (i ? ", " : "") + c.subgroups[i];
      s += "}, rounds " + std::to_string(c.rounds) + ", suites:";
      for (const auto& x : c.checks) s += " " + x;
      return s + "\n";
    }
  throw std::invalid_argument("unknown campaign '" + name + "'");
}

namespace {

struct Context {
  const Campaign& c;
  FiniteGroup g;
  TwoCocycle tau;
  std::vector<SubgroupEmbedding> ks;
  std::vector<TwoCocycle> betas, alphas;
  qd::BfWeights weights;
  bool override_envelope;
  std::string out_dir;
};

double maxabs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

std::string sub_label(const Context& ctx, std::size_t i) { return ctx.c.subgroups[i]; }

Report suite_groups(const Context& ctx) {
  const std::string S = "groups";
  const FiniteGroup& g = ctx.g;
  Report r;
  bool ok = true;
  try {
    validate_group(g);
  } catch (const std::exception&) {
    ok = false;
  }
  r.flag(S, "group-axioms", g.name, ok, "");
  const auto irr = irreps(g);
  int sum = 0;
  for (const auto& rho : irr) {
    sum += rho.dim * rho.dim;
    r.add(S, "irrep-homomorphism", g.name, rho.label, representation_residual(rho), 1e-10);
    r.add(S, "irrep-unitarity", g.name, rho.label, unitarity_residual(rho), 1e-10);
  }
  r.add(S, "sum-of-squares", g.name, std::to_string(sum), std::abs(sum - g.order), 0.5);
  const auto L = regular_rep(g, Side::Left), R = regular_rep(g, Side::Right);
  double lr = 0;
  for (int a = 0; a < g.order; ++a)
    for (int b = 0; b < g.order; ++b) lr = std::max(lr, maxabs(L[a] * R[b] - R[b] * L[a]));
  r.add(S, "left-right-commute", g.name, "", lr, 1e-12);
  r.add(S, "cocycle", "tau", ctx.c.tau, cocycle_residual(g, ctx.tau), 1e-12);
  const auto tL = projective_regular_rep(g, ctx.tau, Side::Left), tR = projective_regular_rep(g, ctx.tau, Side::Right);
  double pl = 0, pr = 0;
  for (int a = 0; a < g.order; ++a)
    for (int b = 0; b < g.order; ++b) {
      pl = std::max(pl, maxabs(tL[a] * tL[b] - ctx.tau(a, b) * tL[g.mul(a, b)]));
      pr = std::max(pr, maxabs(tR[a] * tR[b] - ctx.tau(a, b) * tR[g.mul(a, b)]));
    }
  r.add(S, "projective-composition", "tauL", ctx.c.tau, pl, 1e-12);
  r.add(S, "projective-composition", "tauR", ctx.c.tau, pr, 1e-12);
  for (std::size_t i = 0; i < ctx.ks.size(); ++i) {
    const auto cs = cosets(g, ctx.ks[i]);
    r.add(S, "cosets", sub_label(ctx, i), std::to_string(cs.representatives.size()),
          std::abs(static_cast<double>(cs.representatives.size() * ctx.ks[i].size()) - g.order), 0.5);
    r.add(S, "cocycle", "beta on " + sub_label(ctx, i), ctx.c.beta,
          cocycle_residual(subgroup_as_group(ctx.ks[i]), ctx.betas[i]), 1e-12);
  }
  return r;
}

Report suite_frobenius(const Context& ctx) {
  Report r;
  const FiniteGroup& g = ctx.g;
  auto full_check = [&](const FrobeniusAlgebra& f) {
    r.merge(check_frobenius_axioms(f));
    r.merge(check_haploid_symmetric_special(f, swap_matrix(f.dim)));
  };
  for (std::size_t i = 0; i < ctx.ks.size(); ++i) {
    full_check(twisted_group_algebra(ctx.ks[i], ctx.betas[i]));
    if (ctx.ks[i].size() < g.order && ctx.betas[i].is_trivial())
      full_check(induced_endomorphism_algebra(g, ctx.ks[i], ctx.betas[i], trivial_irrep(subgroup_as_group(ctx.ks[i]))));
  }
  const auto fun = regular_function_algebra(g);
  full_check(fun);
  r.merge(right_translation_equivariance(fun, g));
  return r;
}

DenseState symmetric_chain_state(const chain::ChainConfig& cfg, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<SiteVector> parts;
  for (int i = 0; i < cfg.n_sites; ++i) {
    std::vector<cplx> v(cfg.group.order);
    for (auto& x : v) x = cplx(nd(rng), nd(rng));
    parts.push_back({{cfg.matter(i), cfg.group.order}, v});
  }
  const DenseState s0 = embed_product(parts);
  DenseState s{s0.space, std::vector<cplx>(s0.amp.size(), 0.0)};
  for (int x = 0; x < cfg.group.order; ++x) {
    const auto m = apply(chain::global_group_symmetry(cfg, x), s0);
    for (std::size_t i = 0; i < m.amp.size(); ++i) s.amp[i] += m.amp[i];
  }
  return s;
}

Report suite_gauge1d(const Context& ctx) {
  const std::string S = "gauge1d";
  const double tol = 1e-10;
  const FiniteGroup& g = ctx.g;
  const auto full = full_subgroup(g);
  const auto irr = irreps(g);
  chain::Options opt;
  opt.override_envelope = ctx.override_envelope;
  Report r;
  for (int n : ctx.c.chain_sizes) {
    const std::string at = "n=" + std::to_string(n);
    const auto cfg = chain::make_chain(n, g);
    const auto s = symmetric_chain_state(cfg, 1234u + n);
    const auto gd = chain::gauge_group_symmetry(s, cfg, full, ctx.tau, opt);
    double loc = 0, idem = 0;
    for (int i = 0; i < n; ++i) {
      for (int a = 0; a < g.order; ++a)
        loc = std::max(loc, invariance_residual(chain::local_gauge_transform(cfg, i, full, ctx.tau, a), gd.state));
      const auto p = chain::group_gauss_projector(cfg, i, full, ctx.tau);
      const SpMat sq = p.matrix * p.matrix;
      idem = std::max(idem, maxabs(Mat(sq - p.matrix)));
    }
    r.add(S, "local-gauge-invariance", at, "all i, g", loc, tol);
    r.add(S, "gauss-projector-idempotent", at, "", idem, tol);

    std::vector<Site> gs;
    for (const auto& id : gd.new_ids) gs.push_back({id, g.order});
    for (const auto& rho : irr) {
      const auto o = chain::rep_symmetry_mpo(gs, rho);
      r.add(S, "emergent-rep-symmetry", at, rho.label, invariance_residual(o, gd.state), tol);
      if (n <= 4) r.add(S, "mpo-consistency", at, rho.label, maxabs(chain::contract_flux_mpo(rho, n) - o.dense()), 1e-12);
    }
    double fus = 0;
    for (const auto& a : irr)
      for (const auto& b : irr) {
        const auto N = fusion_multiplicities(a, b, irr);
        Mat lhs = chain::rep_symmetry_mpo(gs, a).dense() * chain::rep_symmetry_mpo(gs, b).dense();
        Mat rhs = Mat::Zero(lhs.rows(), lhs.cols());
        for (std::size_t c = 0; c < irr.size(); ++c) rhs += static_cast<double>(N[c] * irr[c].dim) / (a.dim * b.dim) * chain::rep_symmetry_mpo(gs, irr[c]).dense();
        fus = std::max(fus, maxabs(lhs - rhs));
      }
    r.add(S, "fusion-identity", at, "all pairs", fus, tol);

    const auto rg = chain::gauge_repg_symmetry(gd.state, g, gd.new_ids, "r", opt);
    const auto R = regular_rep(g, Side::Right);
    for (int a = 0; a < g.order; ++a) {
      std::vector<Site> sup;
      std::vector<SpMat> ops;
      for (const auto& id : rg.new_ids) {
        sup.push_back({id, g.order});
        ops.push_back(to_sparse(R[a]));
      }
      r.add(S, "emergent-group-symmetry", at, "g=" + std::to_string(a),
            invariance_residual(SiteOperator::from_sparse(sup, kron_all(ops)), rg.state), tol);
    }
  }
  for (std::size_t i = 0; i < ctx.ks.size(); ++i) {
    const auto b = chain::boundary_input_state(ctx.ks[i], ctx.betas[i], g, ctx.c.boundary_sites);
    r.add(S, "boundary-local-symmetry", sub_label(ctx, i), ctx.c.beta, b.local_residual, tol);
    r.add(S, "boundary-global-symmetry", sub_label(ctx, i), ctx.c.beta, b.global_residual, tol);
    chain::Options loose = opt;
    loose.check_symmetric = false;
    const auto a = chain::gauge_group_symmetry(b.psi, b.carriers, full, ctx.tau, opt);
    const auto p = chain::gauge_group_symmetry(b.psi_prime, b.carriers, full, ctx.tau, loose);
    r.add(S, "right-absorption", sub_label(ctx, i), "", 1.0 - fidelity_up_to_scale(p.state, a.state), tol);
  }
  return r;
}

std::size_t qdouble_dim(const Context& ctx, std::size_t i, int rounds) {
  const std::size_t c = ctx.c.boundary_sites / 2;
  std::size_t d = 1;
  for (std::size_t j = 0; j < c; ++j) d *= ctx.g.order * ctx.ks[i].size();
  return chain::estimate_iterated_dim(d, ctx.g.order, static_cast<int>(c), rounds);
}

Mat pauli(char p) {
  Mat m = Mat::Zero(2, 2);
  if (p == 'X') m << 0, 1, 1, 0;
  if (p == 'Z') m << 1, 0, 0, -1;
  if (p == 'I') m = Mat::Identity(2, 2);
  return m;
}

Report toric_limit(const qd::StabilizerSet& st, const std::string& S) {
  Report r;
  double mx = 0;
  for (int v : st.star_vertices()) {
    const auto s = qd::star_operator(st, v, 1);
    Mat x = Mat::Identity(1, 1);
    for (std::size_t i = 0; i < s.support.size(); ++i) x = Eigen::kroneckerProduct(x, pauli('X')).eval();
    mx = std::max(mx, maxabs(s.dense() - x));
    const auto a = qd::vertex_term(st, v);
    mx = std::max(mx, maxabs(a.dense() - 0.5 * (Mat::Identity(x.rows(), x.cols()) + x)));
  }
  for (int f : st.all_faces()) {
    const auto irr = qd::face_irreps(st, f);
    const auto p = qd::plaquette_operator(st, f, irr[1]);
    Mat z = Mat::Identity(1, 1);
    for (std::size_t i = 0; i < p.support.size(); ++i) z = Eigen::kroneckerProduct(z, pauli('Z')).eval();
    mx = std::max(mx, maxabs(p.dense() - z));
    const auto b = qd::face_term(st, f, qd::BfWeights::Projector);
    mx = std::max(mx, maxabs(b.dense() - 0.5 * (Mat::Identity(z.rows(), z.cols()) + z)));
  }
  r.add(S, "toric-code-limit", "torus", "X-star / Z-plaquette", mx, 1e-14);
  return r;
}

Report suite_qdouble(const Context& ctx, RunResult& rr) {
  const std::string S = "qdouble";
  const FiniteGroup& g = ctx.g;
  Report r;
  chain::Options opt;
  opt.override_envelope = ctx.override_envelope;
  for (std::size_t i = 0; i < ctx.ks.size(); ++i) {
    const std::string kl = sub_label(ctx, i);
    int rounds = ctx.c.rounds;
    std::string path = "full-patch";
    if (!ctx.override_envelope && qdouble_dim(ctx, i, rounds) > qdg::kEnvelope) {
      while (rounds > 0 && qdouble_dim(ctx, i, rounds) > qdg::kEnvelope) --rounds;
      path = "reduced-depth+pull-through";
    }
    if (qdouble_dim(ctx, i, rounds) > qdg::kEnvelope && !ctx.override_envelope)
      throw EnvelopeError("boundary chain alone exceeds the envelope", qdouble_dim(ctx, i, 0));
    r.info["path:" + kl] = path;
    r.info["rounds:" + kl] = rounds;
    const auto b = chain::boundary_input_state(ctx.ks[i], ctx.betas[i], g, ctx.c.boundary_sites);
    const auto it = chain::iterate_gauging(b.psi, b.carriers, ctx.tau, rounds, chain::boundary_layout(b), opt);
    const auto st = qd::strip_from_layout(it.layout, g, ctx.tau, ctx.ks[i], ctx.alphas[i]);
    for (auto rep : {qd::verify_ground_state(it.state, st, 1e-8, S), qd::commutator_checks(st, 1e-10, S),
                     qd::star_representation_checks(st, 1e-10, S), qd::projector_checks(st, ctx.weights, 1e-10, S)}) {
      for (auto& c : rep.checks) c.site = kl + ":" + c.site;
      r.merge(rep);
    }
    const auto net = qd::make_peps(g, ctx.ks[i], ctx.betas[i], ctx.tau);
    r.add(S, "peps-equivalence", kl, "rounds=" + std::to_string(rounds),
          1.0 - fidelity_up_to_scale(qd::build_peps_state(net, it.layout, ctx.override_envelope), it.state), 1e-10);
    const bool z2z2 = g.name == "Z2xZ2";
    auto pt = qd::local_pullthrough_checks(net, ctx.tau, z2z2 ? cocycle_from_descriptor(g, "z2z2_nontrivial") : ctx.tau,
                                           1e-10, S);
    for (auto& c : pt.checks) c.site = kl + ":" + c.site;
    r.merge(pt);
    if (ctx.c.snapshot && !ctx.out_dir.empty()) {
      fs::create_directories(ctx.out_dir);
      write_snapshot((fs::path(ctx.out_dir) / (ctx.c.name + "-" + kl + ".qds")).string(), it.state);
    }
    rr.summary["layouts"][kl] = it.layout.to_json();
  }
  if (!ctx.c.lattice.is_null()) {
    auto lat = lattice::lattice_from_json(ctx.c.lattice);
    if (lat.kind == "periodic") {
      const auto st = qd::make_stabilizers(std::move(lat), g, ctx.tau);
      r.merge(qd::star_representation_checks(st, 1e-10, S));
      r.merge(qd::commutator_checks(st, 1e-10, S));
      r.merge(qd::projector_checks(st, ctx.weights, 1e-10, S));
      if (g.order == 2 && ctx.tau.is_trivial()) r.merge(toric_limit(st, S));
    }
  }
  r.merge(qd::bf_weighting_control(g, 0.1, S));
  return r;
}

Report suite_gauge_higher(const Context& ctx) {
  const std::string S = "gauge_higher";
  const FiniteGroup& g = ctx.g;
  int w = 2, h = 2;
  if (!ctx.c.lattice.is_null()) {
    w = ctx.c.lattice.value("w", 2);
    h = ctx.c.lattice.value("h", 2);
  }
  higher::HigherOptions opt;
  opt.override_envelope = ctx.override_envelope;
  const int rounds = ctx.c.rounds;
  auto lay = higher::make_slab_layout(g, w, h, std::max(1, (rounds + 1) / 2));
  const auto s = higher::uniform_matter_state(lay);
  Report r;
  auto l1 = lay;
  const auto g0 = higher::gauge_0form(s, l1, 0, 1, opt);
  r.merge(higher::check_flux_invariance(g0.state, l1, 0, 1e-8, S));
  double pv = 0;
  for (int v : l1.layer_vertices(0)) {
    const auto p = higher::vertex_gauss_projector(l1, v);
    const SpMat sq = p.matrix * p.matrix;
    pv = std::max(pv, maxabs(Mat(sq - p.matrix)));
    for (int u : l1.layer_vertices(0)) pv = std::max(pv, commutator_residual(p, higher::vertex_gauss_projector(l1, u)));
  }
  r.add(S, "vertex-projectors", "layer 0", "idempotent+commuting", pv, 1e-10);
  if (rounds >= 2) {
    const auto g1 = higher::gauge_1form(g0.state, l1, 0, 2, opt);
    r.merge(higher::check_dual_symmetry(g1.state, l1, 0, 1e-8, S));
    double pe = 0;
    const auto edges = l1.layer_edges(0);
    for (std::size_t a = 0; a < edges.size(); ++a)
      for (std::size_t b = a + 1; b < edges.size(); ++b)
        pe = std::max(pe, commutator_residual(higher::edge_gauss_projector(l1, edges[a]),
                                              higher::edge_gauss_projector(l1, edges[b])));
    r.add(S, "edge-projectors-commute", "layer 0", std::to_string(edges.size() * (edges.size() - 1) / 2) + " pairs", pe,
          1e-10);
  }
  const auto it = higher::iterate_3d(s, lay, rounds, opt);
  const auto st = higher::stabilizers_3d(it.layout);
  r.merge(qd::verify_ground_state(it.state, st, 1e-8, S));
  r.merge(qd::commutator_checks(st, 1e-10, S));
  r.info["layout"] = it.layout.to_json();
  return r;
}

std::size_t higher_dim(const Context& ctx) {
  int w = 2, h = 2;
  if (!ctx.c.lattice.is_null()) {
    w = ctx.c.lattice.value("w", 2);
    h = ctx.c.lattice.value("h", 2);
  }
  std::size_t d = 1;
  const int v = w * h;
  for (int r = 0; r <= ctx.c.rounds; ++r) {
    const int sites = r == 0 ? v : (r % 2 ? 2 * v : v);
    for (int i = 0; i < sites; ++i) {
      d *= ctx.g.order;
      if (d > (std::size_t{1} << 40)) return d;
    }
  }
  return d;
}

std::size_t gauge1d_dim(const Context& ctx) {
  std::size_t d = 1;
  for (int n : ctx.c.chain_sizes) {
    std::size_t x = 1;
    for (int i = 0; i < 3 * n; ++i) x *= ctx.g.order;
    d = std::max(d, x);
  }
  return d;
}

}  // namespace

RunResult run_campaign(const Campaign& c, const RunOptions& opt) {
  RunResult rr;
  Context ctx{c, build_group(c.group), {}, {}, {}, {}, qd::BfWeights::Projector, opt.override_envelope,
              opt.out_dir.value_or(c.output)};
  try {
    ctx.tau = cocycle_from_descriptor(ctx.g, c.tau);
    for (const auto& k : c.subgroups) {
      ctx.ks.push_back(subgroup_from_descriptor(ctx.g, k));
      const auto kg = subgroup_as_group(ctx.ks.back());
      ctx.betas.push_back(cocycle_from_descriptor(kg, c.beta));
      ctx.alphas.push_back(c.alpha.empty() ? ctx.betas.back() : cocycle_from_descriptor(kg, c.alpha));
    }
    ctx.weights = qd::bf_weights_from_string(opt.bf_weights.value_or(c.bf_weights));
  } catch (const std::exception& e) {
    rr.exit_code = kExitConfig;
    rr.message = e.what();
    return rr;
  }
  const bool want_1d = std::count(c.checks.begin(), c.checks.end(), "gauge1d") > 0;
  const bool want_3d = std::count(c.checks.begin(), c.checks.end(), "gauge_higher") > 0;
  if (!opt.override_envelope) {
    const std::size_t need = std::max(want_1d ? gauge1d_dim(ctx) : 0, want_3d ? higher_dim(ctx) : 0);
    if (need > qdg::kEnvelope) {
      rr.exit_code = kExitEnvelope;
      rr.message = "estimated state dimension " + std::to_string(need) + " (" + std::to_string(need * 16 >> 20) +
                   " MiB) exceeds the 2^22 envelope; rerun with --override-envelope";
      return rr;
    }
  }
  if (!ctx.tau.is_trivial())
    rr.summary["flags"].push_back("tau nontrivial: boundary/bulk cocycle combination unvalidated");
  if (!c.alpha.empty() && c.alpha != c.beta) rr.summary["flags"].push_back("alpha differs from beta: unvalidated");

  bool all = true;
  double worst = 0;
  for (const auto& name : suite_order()) {
    if (std::find(c.checks.begin(), c.checks.end(), name) == c.checks.end()) continue;
    Report rep;
    try {
      if (name == "groups") rep = suite_groups(ctx);
      if (name == "frobenius") rep = suite_frobenius(ctx);
      if (name == "gauge1d") rep = suite_gauge1d(ctx);
      if (name == "qdouble") rep = suite_qdouble(ctx, rr);
      if (name == "gauge_higher") rep = suite_gauge_higher(ctx);
    } catch (const EnvelopeError& e) {
      rr.exit_code = kExitEnvelope;
      rr.message = name + ": " + e.what();
      return rr;
    } catch (const std::exception& e) {
      rep.flag(name, "suite-error", name, false, e.what());
    }
    all = all && rep.passed();
    for (const auto& ch : rep.checks)
      if (ch.note.rfind("expected", 0) != 0) worst = std::max(worst, ch.residual);
    rr.summary["suites"][name] = {{"pass", rep.passed()}, {"max_residual", rep.max_by_family()}};
    rr.suites[name] = std::move(rep);
  }
  rr.summary["schema"] = 1;
  rr.summary["campaign"] = c.name;
  rr.summary["bf_weights"] = opt.bf_weights.value_or(c.bf_weights);
  rr.summary["pass"] = all;
  rr.summary["max_residual"] = worst;
  rr.exit_code = all ? kExitPass : kExitFail;
  rr.summary["exit_code"] = rr.exit_code;
  return rr;
}

void write_reports(const RunResult& r, const std::string& dir) {
  fs::create_directories(dir);
  for (const auto& [name, rep] : r.suites) std::ofstream(fs::path(dir) / (name + ".json")) << rep.to_json().dump(2) << '\n';
  std::ofstream(fs::path(dir) / "summary.json") << r.summary.dump(2) << '\n';
}

}  // namespace qdg::cli
