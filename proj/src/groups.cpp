#include "qdg/groups.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace qdg {

namespace {

constexpr double kPi = 3.14159265358979323846;

FiniteGroup from_table(int order, std::vector<int> table, std::string name) {
  FiniteGroup g;
  g.order = order;
  g.table = std::move(table);
  g.name = std::move(name);
  g.inv.assign(order, -1);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      if (g.mul(a, b) == 0) g.inv[a] = b;
  return g;
}

FiniteGroup cyclic(int n) {
  std::vector<int> t(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a * n + b] = (a + b) % n;
  auto g = from_table(n, std::move(t), "Z" + std::to_string(n));
  g.factors = {{'Z', n}};
  return g;
}

// Permutations in lexicographic order; (gh)(x) = g(h(x)).
FiniteGroup symmetric(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> perms;
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const int order = static_cast<int>(perms.size());
  std::vector<int> t(order * order);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      std::vector<int> c(n);
      for (int x = 0; x < n; ++x) c[x] = perms[a][perms[b][x]];
      t[a * order + b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  auto g = from_table(order, std::move(t), "S" + std::to_string(n));
  g.factors = {{'S', n}};
  g.perms = std::move(perms);
  return g;
}

// r^a s^b has index a + n*b.
FiniteGroup dihedral(int n) {
  const int order = 2 * n;
  std::vector<int> t(order * order);
  for (int x = 0; x < order; ++x)
    for (int y = 0; y < order; ++y) {
      int a = x % n, b = x / n, c = y % n, d = y / n;
      int r = ((a + (b ? -c : c)) % n + n) % n;
      t[x * order + y] = r + n * ((b + d) % 2);
    }
  auto g = from_table(order, std::move(t), "D" + std::to_string(n));
  g.factors = {{'D', n}};
  return g;
}

// Order: 1, -1, i, -i, j, -j, k, -k.
FiniteGroup quaternion() {
  // unit products u*v = sign * unit, units 0..3 = 1,i,j,k
  static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sgn[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  std::vector<int> t(64);
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      int ux = x / 2, uy = y / 2;
      int s = (x % 2 ? -1 : 1) * (y % 2 ? -1 : 1) * sgn[ux][uy];
      t[x * 8 + y] = 2 * unit[ux][uy] + (s < 0 ? 1 : 0);
    }
  auto g = from_table(8, std::move(t), "Q8");
  g.factors = {{'Q', 8}};
  return g;
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int order = a.order * b.order;
  std::vector<int> t(order * order);
  for (int x = 0; x < order; ++x)
    for (int y = 0; y < order; ++y)
      t[x * order + y] = a.mul(x / b.order, y / b.order) * b.order + b.mul(x % b.order, y % b.order);
  auto g = from_table(order, std::move(t), a.name + "x" + b.name);
  g.factors = a.factors;
  g.factors.insert(g.factors.end(), b.factors.begin(), b.factors.end());
  return g;
}

FiniteGroup build_factor(const std::string& s) {
  if (s == "Q8") return quaternion();
  if (s.size() < 2) throw std::invalid_argument("unsupported group descriptor '" + s + "'");
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(s.substr(1), &used);
    if (used != s.size() - 1) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw std::invalid_argument("unsupported group descriptor '" + s + "'");
  }
  switch (s[0]) {
    case 'Z':
      if (n >= 1) return cyclic(n);
      break;
    case 'S':
      if (n >= 1 && n <= 4) return symmetric(n);
      break;
    case 'D':
      if (n >= 1 && n <= 6) return dihedral(n);
      break;
  }
  throw std::invalid_argument("unsupported group descriptor '" + s + "' (Z_n, S_n n<=4, D_n n<=6, Q8)");
}

Mat diag2(cplx a, cplx b) {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

int perm_parity(const std::vector<int>& p) {
  int s = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s ^= 1;
  return s;
}

// Orthonormal basis of the sum-zero subspace of C^n (Helmert basis), as columns.
Mat helmert(int n) {
  Mat b = Mat::Zero(n, n - 1);
  for (int k = 1; k < n; ++k) {
    double norm = std::sqrt(static_cast<double>(k * (k + 1)));
    for (int i = 0; i < k; ++i) b(i, k - 1) = 1.0 / norm;
    b(k, k - 1) = -static_cast<double>(k) / norm;
  }
  return b;
}

Mat perm_matrix(const std::vector<int>& p) {
  const int n = static_cast<int>(p.size());
  Mat m = Mat::Zero(n, n);
  for (int x = 0; x < n; ++x) m(p[x], x) = 1.0;
  return m;
}

using Family = std::vector<Mat>;
struct RawIrrep {
  Family m;
  std::string label;
};

std::vector<RawIrrep> cyclic_irreps(int n) {
  std::vector<RawIrrep> out;
  for (int j = 0; j < n; ++j) {
    RawIrrep r;
    for (int a = 0; a < n; ++a) r.m.push_back(Mat::Constant(1, 1, std::polar(1.0, 2 * kPi * j * a / n)));
    r.label = j == 0 ? "trivial" : "chi" + std::to_string(j);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<RawIrrep> symmetric_irreps(const FiniteGroup& g, int n) {
  std::vector<RawIrrep> out;
  RawIrrep triv{{}, "trivial"}, sign{{}, "sign"};
  for (const auto& p : g.perms) {
    triv.m.push_back(Mat::Identity(1, 1));
    sign.m.push_back(Mat::Constant(1, 1, perm_parity(p) ? -1.0 : 1.0));
  }
  out.push_back(triv);
  if (n == 1) return out;
  out.push_back(sign);
  if (n == 2) return out;
  const Mat h = helmert(n);
  RawIrrep stdrep{{}, "standard"};
  for (const auto& p : g.perms) stdrep.m.push_back(h.adjoint() * perm_matrix(p) * h);
  if (n == 3) {
    out.push_back(stdrep);
    return out;
  }
  // n == 4: the 2-dim irrep through S4 -> S3 acting on the three pairings.
  const std::vector<std::array<int, 4>> pairings = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
  auto pairing_of = [&](int a, int b) {
    for (int i = 0; i < 3; ++i) {
      auto& q = pairings[i];
      if ((q[0] == a && q[1] == b) || (q[0] == b && q[1] == a) || (q[2] == a && q[3] == b) ||
          (q[2] == b && q[3] == a))
        return i;
    }
    return -1;
  };
  const Mat h3 = helmert(3);
  RawIrrep two{{}, "two"}, stdsign{{}, "standard_sign"};
  for (std::size_t i = 0; i < g.perms.size(); ++i) {
    const auto& p = g.perms[i];
    std::vector<int> induced(3);
    for (int k = 0; k < 3; ++k) induced[k] = pairing_of(p[pairings[k][0]], p[pairings[k][1]]);
    two.m.push_back(h3.adjoint() * perm_matrix(induced) * h3);
    stdsign.m.push_back(stdrep.m[i] * sign.m[i](0, 0));
  }
  out.push_back(two);
  out.push_back(stdrep);
  out.push_back(stdsign);
  return out;
}

std::vector<RawIrrep> dihedral_irreps(int n) {
  std::vector<RawIrrep> out;
  const int order = 2 * n;
  auto one_dim = [&](auto f, std::string label) {
    RawIrrep r{{}, std::move(label)};
    for (int x = 0; x < order; ++x) r.m.push_back(Mat::Constant(1, 1, f(x % n, x / n)));
    out.push_back(std::move(r));
  };
  one_dim([](int, int) { return 1.0; }, "trivial");
  one_dim([](int, int b) { return b ? -1.0 : 1.0; }, "sign_s");
  if (n % 2 == 0) {
    one_dim([](int a, int) { return a % 2 ? -1.0 : 1.0; }, "sign_r");
    one_dim([](int a, int b) { return (a + b) % 2 ? -1.0 : 1.0; }, "sign_rs");
  }
  for (int j = 1; 2 * j < n; ++j) {
    RawIrrep r{{}, "rot" + std::to_string(j)};
    const double th = 2 * kPi * j / n;
    Mat rot(2, 2), s = diag2(1.0, -1.0);
    rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    for (int x = 0; x < order; ++x) {
      Mat m = Mat::Identity(2, 2);
      for (int k = 0; k < x % n; ++k) m = m * rot;
      if (x / n) m = m * s;
      r.m.push_back(m);
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<RawIrrep> quaternion_irreps() {
  std::vector<RawIrrep> out;
  const cplx I(0, 1);
  const char* names[4] = {"trivial", "chi_i", "chi_j", "chi_k"};
  for (int c = 0; c < 4; ++c) {
    int vi = (c == 0 || c == 1) ? 1 : -1;
    int vj = (c == 0 || c == 2) ? 1 : -1;
    RawIrrep r{{}, names[c]};
    for (int x = 0; x < 8; ++x) {
      int u = x / 2;
      double v = u == 0 ? 1 : u == 1 ? vi : u == 2 ? vj : vi * vj;
      r.m.push_back(Mat::Constant(1, 1, v));
    }
    out.push_back(std::move(r));
  }
  Mat one = Mat::Identity(2, 2), qi = diag2(I, -I), qj(2, 2), qk(2, 2);
  qj << 0, 1, -1, 0;
  qk = qi * qj;
  const Mat units[4] = {one, qi, qj, qk};
  RawIrrep two{{}, "two"};
  for (int x = 0; x < 8; ++x) two.m.push_back(x % 2 ? Mat(-units[x / 2]) : units[x / 2]);
  out.push_back(std::move(two));
  return out;
}

std::vector<RawIrrep> factor_irreps(const GroupFactor& f, const FiniteGroup& standalone) {
  switch (f.kind) {
    case 'Z':
      return cyclic_irreps(f.n);
    case 'S':
      return symmetric_irreps(standalone, f.n);
    case 'D':
      return dihedral_irreps(f.n);
    default:
      return quaternion_irreps();
  }
}

int factor_order(const GroupFactor& f) {
  switch (f.kind) {
    case 'Z':
      return f.n;
    case 'S': {
      int o = 1;
      for (int i = 2; i <= f.n; ++i) o *= i;
      return o;
    }
    case 'D':
      return 2 * f.n;
    default:
      return 8;
  }
}

std::vector<RawIrrep> abelian_irreps(const FiniteGroup& g) {
  const auto L = regular_rep(g, Side::Left);
  Mat m = Mat::Zero(g.order, g.order);
  for (int x = 0; x < g.order; ++x) m += std::polar(1.0 + 0.37 * x, 0.913 * (x + 1) * (x + 1)) * L[x];
  Eigen::ComplexEigenSolver<Mat> es(m);
  std::vector<RawIrrep> out;
  for (int c = 0; c < g.order; ++c) {
    Eigen::VectorXcd v = es.eigenvectors().col(c);
    RawIrrep r;
    for (int x = 0; x < g.order; ++x) {
      cplx chi = v.dot(L[x] * v) / v.squaredNorm();
      double ang = std::arg(chi);
      double step = 2 * kPi / g.order;
      chi = std::polar(1.0, std::round(ang / step) * step);
      r.m.push_back(Mat::Constant(1, 1, chi));
    }
    out.push_back(std::move(r));
  }
  auto key = [&](const RawIrrep& r) {
    std::vector<int> k;
    for (const auto& m : r.m) {
      double a = std::arg(m(0, 0));
      if (a < -1e-9) a += 2 * kPi;
      k.push_back(static_cast<int>(std::lround(a * g.order / (2 * kPi))));
    }
    return k;
  };
  std::sort(out.begin(), out.end(), [&](const RawIrrep& a, const RawIrrep& b) { return key(a) < key(b); });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].label = i == 0 ? "trivial" : "chi" + std::to_string(i);
  return out;
}

}  // namespace

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

int SubgroupEmbedding::local(int g) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), g);
  if (it == elements.end() || *it != g) return -1;
  return static_cast<int>(it - elements.begin());
}

bool TwoCocycle::is_trivial() const {
  return std::all_of(phases.begin(), phases.end(), [](cplx p) { return std::abs(p - 1.0) < 1e-12; });
}

FiniteGroup build_group(const std::string& spec) {
  if (spec.empty()) throw std::invalid_argument("empty group descriptor");
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, 'x');) parts.push_back(p);
  FiniteGroup g = build_factor(parts.at(0));
  for (std::size_t i = 1; i < parts.size(); ++i) g = direct_product(g, build_factor(parts[i]));
  g.name = spec;
  validate_group(g);
  return g;
}

void validate_group(const FiniteGroup& g) {
  const int n = g.order;
  if (n <= 0 || static_cast<int>(g.table.size()) != n * n) throw std::logic_error("malformed Cayley table");
  for (int a = 0; a < n; ++a) {
    if (g.mul(0, a) != a || g.mul(a, 0) != a) throw std::logic_error("identity is not index 0 in " + g.name);
    if (g.inv[a] < 0 || g.mul(g.inv[a], a) != 0) throw std::logic_error("missing inverse in " + g.name);
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) throw std::logic_error("non-associative table");
  }
}

SubgroupEmbedding make_subgroup(const FiniteGroup& g, std::vector<int> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  SubgroupEmbedding k{g, std::move(elements), false};
  if (k.elements.empty() || k.elements[0] != 0) throw std::invalid_argument("subgroup must contain the identity");
  for (int a : k.elements) {
    if (a < 0 || a >= g.order) throw std::invalid_argument("subgroup element out of range");
    if (!k.contains(g.inv[a])) throw std::invalid_argument("subset not closed under inverses");
    for (int b : k.elements)
      if (!k.contains(g.mul(a, b))) throw std::invalid_argument("subset not closed under products");
  }
  k.is_normal = true;
  for (int x = 0; x < g.order && k.is_normal; ++x)
    for (int a : k.elements)
      if (!k.contains(g.mul(g.mul(x, a), g.inv[x]))) {
        k.is_normal = false;
        break;
      }
  return k;
}

SubgroupEmbedding full_subgroup(const FiniteGroup& g) {
  std::vector<int> all(g.order);
  std::iota(all.begin(), all.end(), 0);
  return make_subgroup(g, all);
}

SubgroupEmbedding trivial_subgroup(const FiniteGroup& g) { return make_subgroup(g, {0}); }

SubgroupEmbedding generated_subgroup(const FiniteGroup& g, const std::vector<int>& gens) {
  std::set<int> s = {0};
  bool grew = true;
  for (int x : gens) {
    if (x < 0 || x >= g.order) throw std::invalid_argument("generator out of range");
    s.insert(x);
  }
  while (grew) {
    grew = false;
    std::vector<int> cur(s.begin(), s.end());
    for (int a : cur)
      for (int b : cur)
        if (s.insert(g.mul(a, b)).second) grew = true;
  }
  return make_subgroup(g, std::vector<int>(s.begin(), s.end()));
}

SubgroupEmbedding subgroup_from_descriptor(const FiniteGroup& g, const std::string& desc) {
  if (desc == "G" || desc == "full" || desc == g.name) return full_subgroup(g);
  if (desc == "e" || desc == "1" || desc == "trivial" || desc == "{e}") return trivial_subgroup(g);
  if (desc.size() >= 2 && desc[0] == 'A' && !g.perms.empty()) {
    if (desc != "A" + std::to_string(g.perms[0].size()))
      throw std::invalid_argument("alternating subgroup '" + desc + "' does not match " + g.name);
    std::vector<int> even;
    for (int x = 0; x < g.order; ++x)
      if (perm_parity(g.perms[x]) == 0) even.push_back(x);
    return make_subgroup(g, even);
  }
  if (desc.size() >= 2 && desc.front() == '<' && desc.back() == '>') {
    std::vector<int> gens;
    std::stringstream ss(desc.substr(1, desc.size() - 2));
    for (std::string t; std::getline(ss, t, ',');)
      if (!t.empty()) gens.push_back(std::stoi(t));
    return generated_subgroup(g, gens);
  }
  throw std::invalid_argument("unknown subgroup descriptor '" + desc + "'");
}

FiniteGroup subgroup_as_group(const SubgroupEmbedding& k) {
  const int n = k.size();
  if (n == k.parent.order) return k.parent;
  std::vector<int> t(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a * n + b] = k.local(k.parent.mul(k.elements[a], k.elements[b]));
  std::string name = k.parent.name + "[";
  for (int i = 0; i < n; ++i) name += (i ? "," : "") + std::to_string(k.elements[i]);
  auto g = from_table(n, std::move(t), name + "]");
  if (n == 1) g.factors = {{'Z', 1}};
  return g;
}

CosetDecomposition cosets(const FiniteGroup& g, const SubgroupEmbedding& k) {
  if (k.parent.table != g.table) throw std::invalid_argument("subgroup is not embedded in " + g.name);
  CosetDecomposition c;
  c.coset_of.assign(g.order, -1);
  for (int x = 0; x < g.order; ++x) {
    if (c.coset_of[x] >= 0) continue;
    const int id = static_cast<int>(c.representatives.size());
    c.representatives.push_back(x);
    for (int a : k.elements) c.coset_of[g.mul(x, a)] = id;
  }
  return c;
}

std::vector<Mat> regular_rep(const FiniteGroup& g, Side side) {
  return projective_regular_rep(g, trivial_cocycle(g.order), side);
}

std::vector<Mat> projective_regular_rep(const FiniteGroup& k, const TwoCocycle& tau, Side side) {
  if (tau.order != k.order) throw std::invalid_argument("cocycle does not match group order");
  std::vector<Mat> out;
  for (int g = 0; g < k.order; ++g) {
    Mat m = Mat::Zero(k.order, k.order);
    for (int h = 0; h < k.order; ++h) {
      if (side == Side::Left) {
        m(k.mul(g, h), h) = tau(g, h);
      } else {
        int y = k.mul(h, k.inv[g]);
        m(y, h) = tau(y, g);
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<Mat> conjugated(const std::vector<Mat>& family) {
  std::vector<Mat> out;
  for (const auto& m : family) out.push_back(m.conjugate());
  return out;
}

std::vector<Irrep> irreps(const FiniteGroup& g) {
  auto gp = std::make_shared<const FiniteGroup>(g);
  std::vector<RawIrrep> raw;
  if (!g.factors.empty()) {
    std::vector<int> orders;
    for (const auto& f : g.factors) orders.push_back(factor_order(f));
    raw = {{std::vector<Mat>(1, Mat::Identity(1, 1)), ""}};
    int done = 1;
    for (std::size_t fi = 0; fi < g.factors.size(); ++fi) {
      const auto& f = g.factors[fi];
      FiniteGroup standalone = f.kind == 'S' ? symmetric(f.n) : FiniteGroup{};
      auto fr = factor_irreps(f, standalone);
      std::vector<RawIrrep> next;
      for (const auto& a : raw)
        for (const auto& b : fr) {
          RawIrrep c;
          c.label = a.label.empty() ? b.label : a.label + "x" + b.label;
          for (int x = 0; x < done * orders[fi]; ++x)
            c.m.push_back(Eigen::kroneckerProduct(a.m[x / orders[fi]], b.m[x % orders[fi]]).eval());
          next.push_back(std::move(c));
        }
      raw = std::move(next);
      done *= orders[fi];
    }
  } else if (g.is_abelian()) {
    raw = abelian_irreps(g);
  } else {
    throw std::invalid_argument("irreps: group " + g.name + " is outside the supported family");
  }
  std::vector<Irrep> out;
  for (auto& r : raw) {
    Irrep i;
    i.group = gp;
    i.dim = static_cast<int>(r.m[0].rows());
    i.matrices = std::move(r.m);
    i.label = r.label;
    out.push_back(std::move(i));
  }
  return out;
}

std::vector<int> fusion_multiplicities(const Irrep& a, const Irrep& b, const std::vector<Irrep>& all) {
  const int n = a.group->order;
  std::vector<int> out;
  for (const auto& s : all) {
    cplx acc = 0;
    for (int g = 0; g < n; ++g) acc += a.character(g) * b.character(g) * std::conj(s.character(g));
    acc /= static_cast<double>(n);
    const double r = std::round(acc.real());
    if (std::abs(acc - r) > 1e-8) throw std::logic_error("non-integer fusion multiplicity");
    out.push_back(static_cast<int>(r));
  }
  return out;
}

double representation_residual(const Irrep& rho, const TwoCocycle* alpha) {
  const auto& g = *rho.group;
  double r = (rho.matrices[0] - Mat::Identity(rho.dim, rho.dim)).cwiseAbs().maxCoeff();
  for (int a = 0; a < g.order; ++a)
    for (int b = 0; b < g.order; ++b) {
      cplx ph = alpha ? (*alpha)(a, b) : cplx(1.0);
      r = std::max(r, (rho.matrices[a] * rho.matrices[b] - ph * rho.matrices[g.mul(a, b)]).cwiseAbs().maxCoeff());
    }
  return r;
}

double unitarity_residual(const Irrep& rho) {
  double r = 0;
  for (const auto& m : rho.matrices)
    r = std::max(r, (m * m.adjoint() - Mat::Identity(rho.dim, rho.dim)).cwiseAbs().maxCoeff());
  return r;
}

TwoCocycle trivial_cocycle(int order) { return {order, std::vector<cplx>(order * order, 1.0), "trivial"}; }

double cocycle_residual(const FiniteGroup& g, const TwoCocycle& c) {
  double r = 0;
  for (int a = 0; a < g.order; ++a) {
    r = std::max({r, std::abs(c(0, a) - 1.0), std::abs(c(a, 0) - 1.0), std::abs(std::abs(c(a, a)) - 1.0)});
    for (int b = 0; b < g.order; ++b)
      for (int d = 0; d < g.order; ++d)
        r = std::max(r, std::abs(c(a, b) * c(g.mul(a, b), d) - c(a, g.mul(b, d)) * c(b, d)));
  }
  return r;
}

TwoCocycle make_cocycle(const FiniteGroup& g, std::vector<cplx> phases, std::string label) {
  if (static_cast<int>(phases.size()) != g.order * g.order) throw std::invalid_argument("cocycle table size");
  TwoCocycle c{g.order, std::move(phases), std::move(label)};
  if (cocycle_residual(g, c) > 1e-12) throw std::invalid_argument("invalid or unnormalized 2-cocycle " + c.label);
  return c;
}

TwoCocycle cocycle_from_descriptor(const FiniteGroup& g, const std::string& desc) {
  if (desc == "trivial" || desc == "1") return trivial_cocycle(g.order);
  // Both built-ins are the bicharacter (-1)^{a2*b1} on A x Z2 with index a1*2+a2.
  const bool z2z2 = desc == "z2z2_nontrivial" && g.name == "Z2xZ2";
  const bool z4z2 = desc == "z4z2_nontrivial" && g.name == "Z4xZ2";
  if (!z2z2 && !z4z2) throw std::invalid_argument("unknown cocycle '" + desc + "' for group " + g.name);
  std::vector<cplx> ph(g.order * g.order);
  for (int a = 0; a < g.order; ++a)
    for (int b = 0; b < g.order; ++b) ph[a * g.order + b] = (a % 2 == 1 && (b / 2) % 2 == 1) ? -1.0 : 1.0;
  return make_cocycle(g, std::move(ph), desc);
}

TwoCocycle restrict_cocycle(const TwoCocycle& c, const SubgroupEmbedding& k) {
  const int n = k.size();
  TwoCocycle r{n, std::vector<cplx>(n * n), c.label};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) r.phases[a * n + b] = c(k.elements[a], k.elements[b]);
  return r;
}

Irrep pauli_projective_irrep(const FiniteGroup& z2z2) {
  if (z2z2.name != "Z2xZ2") throw std::invalid_argument("Pauli irrep needs Z2xZ2");
  Mat X(2, 2), Z(2, 2);
  X << 0, 1, 1, 0;
  Z << 1, 0, 0, -1;
  Irrep r;
  r.group = std::make_shared<const FiniteGroup>(z2z2);
  r.dim = 2;
  r.label = "pauli";
  for (int x = 0; x < 4; ++x) {
    Mat m = Mat::Identity(2, 2);
    if (x / 2) m = m * X;
    if (x % 2) m = m * Z;
    r.matrices.push_back(m);
  }
  return r;
}

Irrep trivial_irrep(const FiniteGroup& g) {
  Irrep r;
  r.group = std::make_shared<const FiniteGroup>(g);
  r.label = "trivial";
  r.matrices.assign(g.order, Mat::Identity(1, 1));
  return r;
}

}  // namespace qdg
