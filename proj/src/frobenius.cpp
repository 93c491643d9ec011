#include "qdg/frobenius.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace qdg {

namespace {

constexpr const char* kSuite = "frobenius";

Mat kron(const Mat& a, const Mat& b) { return Eigen::kroneckerProduct(a, b).eval(); }
Mat eye(int n) { return Mat::Identity(n, n); }
double maxabs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

FrobeniusAlgebra twisted_group_algebra(const SubgroupEmbedding& k, const TwoCocycle& alpha) {
  FiniteGroup kg = subgroup_as_group(k);
  if (alpha.order != kg.order || cocycle_residual(kg, alpha) > 1e-12)
    throw std::invalid_argument("twisted_group_algebra: invalid cocycle on K");
  const int n = kg.order;
  FrobeniusAlgebra f;
  f.dim = n;
  f.label = "C^alpha K (" + kg.name + ", " + alpha.label + ")";
  f.mu = Mat::Zero(n, n * n);
  f.delta = Mat::Zero(n * n, n);
  f.eta = Eigen::VectorXcd::Zero(n);
  f.eta(0) = 1.0;
  f.epsilon = Eigen::RowVectorXcd::Zero(n);
  f.epsilon(0) = static_cast<double>(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) f.mu(kg.mul(a, b), a * n + b) = alpha(a, b);
  for (int x = 0; x < n; ++x)
    for (int h = 0; h < n; ++h) {
      const int left = kg.mul(x, kg.inv[h]);
      f.delta(left * n + h, x) = 1.0 / (static_cast<double>(n) * alpha(left, h));
    }
  f.grading = k.elements;
  return f;
}

FrobeniusAlgebra twisted_group_algebra(const FiniteGroup& k, const TwoCocycle& alpha) {
  return twisted_group_algebra(full_subgroup(k), alpha);
}

FrobeniusAlgebra regular_function_algebra(const FiniteGroup& g) {
  const int n = g.order;
  FrobeniusAlgebra f;
  f.dim = n;
  f.label = "Fun(" + g.name + ")";
  f.mu = Mat::Zero(n, n * n);
  f.delta = Mat::Zero(n * n, n);
  for (int x = 0; x < n; ++x) {
    f.mu(x, x * n + x) = 1.0;
    f.delta(x * n + x, x) = 1.0;
  }
  f.eta = Eigen::VectorXcd::Ones(n);
  f.epsilon = Eigen::RowVectorXcd::Ones(n);
  f.action = regular_rep(g, Side::Left);
  return f;
}

FrobeniusAlgebra induced_endomorphism_algebra(const FiniteGroup& g, const SubgroupEmbedding& k,
                                              const TwoCocycle& alpha, const Irrep& v) {
  if (k.parent.table != g.table) throw std::invalid_argument("induced algebra: K is not a subgroup of G");
  FiniteGroup kg = subgroup_as_group(k);
  if (v.group->order != kg.order || representation_residual(v, &alpha) > 1e-10 || unitarity_residual(v) > 1e-10)
    throw std::invalid_argument("induced algebra: V is not a unitary alpha-projective representation of K");
  const int d = v.dim, gn = g.order, kn = kg.order;
  const auto cs = cosets(g, k);
  const int r = static_cast<int>(cs.representatives.size());
  const int dim = r * d * d;
  // Function values stacked as C^{|G|} ⊗ End(V): entry (x, p, q) at x*d*d + p*d + q.
  const int big = gn * d * d;
  Mat basis = Mat::Zero(big, dim);
  for (int i = 0; i < r; ++i)
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q) {
        Mat e = Mat::Zero(d, d);
        e(p, q) = 1.0;
        for (int a = 0; a < kn; ++a) {
          const Mat& rk = v.matrices[a];
          Mat val = rk.adjoint() * e * rk;
          const int x = g.mul(cs.representatives[i], k.elements[a]);
          for (int s = 0; s < d; ++s)
            for (int t = 0; t < d; ++t) basis(x * d * d + s * d + t, i * d * d + p * d + q) = val(s, t);
        }
      }
  // Basis columns are orthogonal with squared norm |K|.
  auto coords = [&](const Eigen::VectorXcd& fvec) -> Eigen::VectorXcd {
    return basis.adjoint() * fvec / static_cast<double>(kn);
  };
  auto column = [&](int b) -> Eigen::VectorXcd { return basis.col(b); };
  auto product = [&](const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(big);
    for (int x = 0; x < gn; ++x) {
      Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> A(a.data() + x * d * d, d, d);
      Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> B(b.data() + x * d * d, d, d);
      Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> C = A * B;
      for (int s = 0; s < d * d; ++s) out(x * d * d + s) = C.data()[s];
    }
    return out;
  };

  FrobeniusAlgebra f;
  f.dim = dim;
  f.label = "Ind(" + g.name + "," + kg.name + "," + v.label + ")";
  f.mu = Mat::Zero(dim, dim * dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) f.mu.col(a * dim + b) = coords(product(column(a), column(b)));
  Eigen::VectorXcd unit = Eigen::VectorXcd::Zero(big);
  for (int x = 0; x < gn; ++x)
    for (int s = 0; s < d; ++s) unit(x * d * d + s * d + s) = 1.0;
  f.eta = coords(unit);
  f.epsilon = Eigen::RowVectorXcd::Zero(dim);
  for (int b = 0; b < dim; ++b) {
    cplx tr = 0;
    for (int x = 0; x < gn; ++x)
      for (int s = 0; s < d; ++s) tr += basis(x * d * d + s * d + s, b);
    f.epsilon(b) = tr;
  }
  // Canonical comultiplication from the trace pairing: Δ(x) = Σ_i x e_i ⊗ e^i.
  Mat pairing(dim, dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) pairing(a, b) = (f.epsilon * f.mu.col(a * dim + b))(0);
  const Mat dual = pairing.inverse();  // e^i = Σ_l dual(l, i) e_l
  f.delta = Mat::Zero(dim * dim, dim);
  for (int x = 0; x < dim; ++x)
    for (int i = 0; i < dim; ++i) {
      Eigen::VectorXcd left = f.mu.col(x * dim + i);
      Eigen::VectorXcd right = dual.col(i);
      f.delta.col(x) += kron(left, right);
    }
  for (int h = 0; h < gn; ++h) {
    Mat m(dim, dim);
    for (int b = 0; b < dim; ++b) {
      Eigen::VectorXcd shifted = Eigen::VectorXcd::Zero(big);
      Eigen::VectorXcd src = column(b);
      for (int x = 0; x < gn; ++x) {
        const int y = g.mul(g.inv[h], x);  // (l_h f)(x) = f(h⁻¹x)
        shifted.segment(x * d * d, d * d) = src.segment(y * d * d, d * d);
      }
      m.col(b) = coords(shifted);
    }
    f.action.push_back(m);
  }
  return f;
}

FrobeniusAlgebra trivial_algebra() {
  FrobeniusAlgebra f;
  f.dim = 1;
  f.label = "C";
  f.mu = Mat::Ones(1, 1);
  f.delta = Mat::Ones(1, 1);
  f.eta = Eigen::VectorXcd::Ones(1);
  f.epsilon = Eigen::RowVectorXcd::Ones(1);
  f.action = {Mat::Ones(1, 1)};
  return f;
}

FrobeniusAlgebra direct_sum(const FrobeniusAlgebra& a, const FrobeniusAlgebra& b) {
  const int n = a.dim + b.dim;
  FrobeniusAlgebra f;
  f.dim = n;
  f.label = a.label + "+" + b.label;
  f.mu = Mat::Zero(n, n * n);
  f.delta = Mat::Zero(n * n, n);
  auto place = [&](const FrobeniusAlgebra& s, int off) {
    for (int x = 0; x < s.dim; ++x)
      for (int y = 0; y < s.dim; ++y)
        for (int z = 0; z < s.dim; ++z) {
          f.mu(off + z, (off + x) * n + off + y) = s.mu(z, x * s.dim + y);
          f.delta((off + x) * n + off + y, off + z) = s.delta(x * s.dim + y, z);
        }
  };
  place(a, 0);
  place(b, a.dim);
  f.eta = Eigen::VectorXcd(n);
  f.eta << a.eta, b.eta;
  f.epsilon = Eigen::RowVectorXcd(n);
  f.epsilon << a.epsilon, b.epsilon;
  if (a.action.size() == b.action.size())
    for (std::size_t g = 0; g < a.action.size(); ++g) {
      Mat m = Mat::Zero(n, n);
      m.topLeftCorner(a.dim, a.dim) = a.action[g];
      m.bottomRightCorner(b.dim, b.dim) = b.action[g];
      f.action.push_back(m);
    }
  return f;
}

Mat delta_prime(const FiniteGroup& k, const TwoCocycle& tau) {
  const int n = k.order;
  const auto tl = projective_regular_rep(k, tau, Side::Left);
  Mat d = Mat::Zero(n * n, n);
  for (int a = 0; a < n; ++a)
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) d(a * n + y, x) = tl[a](y, x) / static_cast<double>(n);
  return d;
}

BasisChange delta_prime_basis_change(const FrobeniusAlgebra& f, const Mat& dprime) {
  const int n = f.dim;
  // Δ[(a,h),m] regrouped as X1[a,(h,m)] for the first factor and X2[h,(a,m)] for the second.
  Mat x1(n, n * n), y1(n, n * n), x2(n, n * n), y2(n, n * n);
  for (int a = 0; a < n; ++a)
    for (int h = 0; h < n; ++h)
      for (int m = 0; m < n; ++m) {
        x1(a, h * n + m) = f.delta(a * n + h, m);
        y1(a, h * n + m) = dprime(a * n + h, m);
        x2(h, a * n + m) = f.delta(a * n + h, m);
        y2(h, a * n + m) = dprime(a * n + h, m);
      }
  BasisChange bc;
  bc.first = x1.transpose().completeOrthogonalDecomposition().solve(y1.transpose()).transpose();
  bc.second = x2.transpose().completeOrthogonalDecomposition().solve(y2.transpose()).transpose();
  bc.residual_first = maxabs(bc.first * x1 - y1);
  bc.residual_second = maxabs(bc.second * x2 - y2);
  return bc;
}

Mat swap_matrix(int dim) {
  Mat s = Mat::Zero(dim * dim, dim * dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) s(b * dim + a, a * dim + b) = 1.0;
  return s;
}

Report check_frobenius_axioms(const FrobeniusAlgebra& f, double tol) {
  const int n = f.dim;
  const Mat I = eye(n);
  const Mat eta = f.eta, eps = f.epsilon;
  Report r;
  const std::string who = f.label;
  r.add(kSuite, "associativity", who, "", maxabs(f.mu * kron(f.mu, I) - f.mu * kron(I, f.mu)), tol);
  r.add(kSuite, "unit", who, "",
        std::max(maxabs(f.mu * kron(eta, I) - I), maxabs(f.mu * kron(I, eta) - I)), tol);
  r.add(kSuite, "coassociativity", who, "", maxabs(kron(f.delta, I) * f.delta - kron(I, f.delta) * f.delta), tol);
  r.add(kSuite, "counit", who, "",
        std::max(maxabs(kron(eps, I) * f.delta - I), maxabs(kron(I, eps) * f.delta - I)), tol);
  const Mat dm = f.delta * f.mu;
  r.add(kSuite, "compatibility", who, "",
        std::max(maxabs(kron(I, f.mu) * kron(f.delta, I) - dm), maxabs(kron(f.mu, I) * kron(I, f.delta) - dm)), tol);
  return r;
}

Report check_haploid_symmetric_special(const FrobeniusAlgebra& f, const Mat& swap, double tol) {
  const int n = f.dim;
  Report r;
  const std::string who = f.label;
  const Mat em = f.epsilon * f.mu;
  r.add(kSuite, "symmetric", who, "", maxabs(em * swap - em), tol);

  const Mat md = f.mu * f.delta;
  const cplx beta_f = md.trace() / static_cast<double>(n);
  const cplx beta_1 = (f.epsilon * f.eta)(0);
  r.add(kSuite, "special", who, "beta_F", maxabs(md - beta_f * eye(n)), tol);
  r.flag(kSuite, "special_nonzero", who, std::abs(beta_f) > tol && std::abs(beta_1) > tol,
         "beta_F=" + std::to_string(beta_f.real()) + " beta_1=" + std::to_string(beta_1.real()));
  r.info["beta_F"] = {beta_f.real(), beta_f.imag()};
  r.info["beta_1"] = {beta_1.real(), beta_1.imag()};

  int rank = -1;
  bool indeterminate = false;
  if (!f.action.empty()) {
    Mat p = Mat::Zero(n, n);
    for (const auto& a : f.action) p += a;
    p /= static_cast<double>(f.action.size());
    Eigen::SelfAdjointEigenSolver<Mat> es((p + p.adjoint()) / 2.0);
    rank = 0;
    for (int i = 0; i < n; ++i) {
      const double ev = es.eigenvalues()(i);
      if (std::abs(ev - 0.5) < 1e-6) indeterminate = true;
      if (ev > 0.5) ++rank;
    }
  } else if (!f.grading.empty()) {
    rank = 0;
    for (int deg : f.grading)
      if (deg == 0) ++rank;
  }
  r.info["haploid_rank"] = rank;
  if (indeterminate)
    r.flag(kSuite, "haploid", who, false, "indeterminate");
  else
    r.add(kSuite, "haploid", who, "rank", std::abs(rank - 1.0), 0.5).note = "rank=" + std::to_string(rank);
  return r;
}

Report right_translation_equivariance(const FrobeniusAlgebra& f, const FiniteGroup& g, double tol) {
  if (f.dim != g.order) throw std::invalid_argument("right translation needs a carrier of dimension |G|");
  const auto R = regular_rep(g, Side::Right);
  Report r;
  for (int x = 0; x < g.order; ++x) {
    const Mat rr = kron(R[x], R[x]);
    r.add(kSuite, "right_translation_delta", f.label, std::to_string(x), maxabs(f.delta * R[x] - rr * f.delta), tol);
    r.add(kSuite, "right_translation_mu", f.label, std::to_string(x), maxabs(f.mu * rr - R[x] * f.mu), tol);
  }
  return r;
}

}  // namespace qdg
