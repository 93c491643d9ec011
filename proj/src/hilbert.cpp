#include "qdg/hilbert.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

#include "json.hpp"

namespace qdg {

TensorFactorSpace::TensorFactorSpace(std::vector<Site> sites) : sites_(std::move(sites)) {
  strides_.assign(sites_.size(), 1);
  for (int i = static_cast<int>(sites_.size()) - 1; i >= 0; --i) {
    if (sites_[i].dim <= 0) throw std::invalid_argument("site '" + sites_[i].id + "' has non-positive dimension");
    if (!pos_.emplace(sites_[i].id, i).second) throw std::invalid_argument("duplicate site id '" + sites_[i].id + "'");
    strides_[i] = total_;
    total_ *= static_cast<std::size_t>(sites_[i].dim);
  }
}

int TensorFactorSpace::position(const std::string& id) const {
  auto it = pos_.find(id);
  if (it == pos_.end()) throw std::out_of_range("no site '" + id + "' in space");
  return it->second;
}

std::vector<int> TensorFactorSpace::multi_index(std::size_t flat) const {
  std::vector<int> d(sites_.size());
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    d[i] = static_cast<int>(flat / strides_[i]);
    flat %= strides_[i];
  }
  return d;
}

std::size_t TensorFactorSpace::flat_index(const std::vector<int>& digits) const {
  std::size_t f = 0;
  for (std::size_t i = 0; i < sites_.size(); ++i) f += static_cast<std::size_t>(digits[i]) * strides_[i];
  return f;
}

double DenseState::norm() const {
  double s = 0;
  for (const auto& a : amp) s += std::norm(a);
  return std::sqrt(s);
}

void DenseState::scale(cplx s) {
  for (auto& a : amp) a *= s;
}

SpMat to_sparse(const Mat& m) {
  SpMat s = m.sparseView(1.0, 1e-14);
  s.makeCompressed();
  return s;
}

SpMat kron(const SpMat& a, const SpMat& b) {
  SpMat k = Eigen::kroneckerProduct(a, b);
  k.makeCompressed();
  return k;
}

SpMat kron_all(const std::vector<SpMat>& ops) {
  SpMat acc(1, 1);
  acc.insert(0, 0) = 1.0;
  for (const auto& o : ops) acc = kron(acc, o);
  return acc;
}

namespace {
std::size_t support_dim(const std::vector<Site>& s) {
  std::size_t d = 1;
  for (const auto& x : s) d *= static_cast<std::size_t>(x.dim);
  return d;
}
}  // namespace

SiteOperator SiteOperator::from_sparse(std::vector<Site> support, SpMat m) {
  const auto d = support_dim(support);
  if (static_cast<std::size_t>(m.rows()) != d || static_cast<std::size_t>(m.cols()) != d)
    throw std::invalid_argument("operator matrix does not match its support");
  m.makeCompressed();
  return {std::move(support), std::move(m)};
}

SiteOperator SiteOperator::from_dense(std::vector<Site> support, const Mat& m) {
  return from_sparse(std::move(support), to_sparse(m));
}

SiteOperator SiteOperator::diagonal(std::vector<Site> support, const std::vector<cplx>& d) {
  const auto n = support_dim(support);
  if (d.size() != n) throw std::invalid_argument("diagonal length does not match support");
  std::vector<Eigen::Triplet<cplx>> t;
  for (std::size_t i = 0; i < n; ++i)
    if (d[i] != cplx(0)) t.emplace_back(i, i, d[i]);
  SpMat m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return from_sparse(std::move(support), std::move(m));
}

SiteOperator SiteOperator::identity(std::vector<Site> support) {
  const auto n = support_dim(support);
  return diagonal(std::move(support), std::vector<cplx>(n, 1.0));
}

void apply_inplace(const SiteOperator& op, DenseState& s) { s = apply(op, s); }

cplx inner(const DenseState& a, const DenseState& b) {
  if (a.amp.size() != b.amp.size()) throw std::invalid_argument("inner product of states on different spaces");
  cplx acc = 0;
  for (std::size_t i = 0; i < a.amp.size(); ++i) acc += std::conj(a.amp[i]) * b.amp[i];
  return acc;
}

double fidelity_up_to_scale(const DenseState& a, const DenseState& b) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0 || nb == 0) throw std::invalid_argument("fidelity of a zero vector");
  bool same_order = a.space.size() == b.space.size();
  for (std::size_t i = 0; same_order && i < a.space.size(); ++i)
    same_order = a.space.sites()[i].id == b.space.sites()[i].id;
  if (!same_order) {
    std::vector<std::string> order;
    for (const auto& s : b.space.sites()) order.push_back(s.id);
    return fidelity_up_to_scale(permute_sites(a, order), b);
  }
  return std::min(1.0, std::abs(inner(a, b)) / (na * nb));
}

double relative_residual(const DenseState& a, const DenseState& b) {
  if (a.amp.size() != b.amp.size()) throw std::invalid_argument("residual of states on different spaces");
  double d = 0;
  for (std::size_t i = 0; i < a.amp.size(); ++i) d += std::norm(a.amp[i] - b.amp[i]);
  const double nb = b.norm();
  return nb > 0 ? std::sqrt(d) / nb : std::sqrt(d);
}

double invariance_residual(const SiteOperator& op, const DenseState& s) { return relative_residual(apply(op, s), s); }

cplx expectation(const SiteOperator& op, const DenseState& s) { return inner(s, apply(op, s)) / inner(s, s); }

DenseState embed_product(const std::vector<SiteVector>& states) {
  std::vector<Site> sites;
  for (const auto& sv : states) {
    if (static_cast<int>(sv.amp.size()) != sv.site.dim)
      throw std::invalid_argument("vector for site '" + sv.site.id + "' has wrong dimension");
    sites.push_back(sv.site);
  }
  DenseState s{TensorFactorSpace(sites), {cplx(1.0)}};
  for (const auto& sv : states) {
    std::vector<cplx> next(s.amp.size() * sv.amp.size());
    for (std::size_t i = 0; i < s.amp.size(); ++i)
      for (std::size_t j = 0; j < sv.amp.size(); ++j) next[i * sv.amp.size() + j] = s.amp[i] * sv.amp[j];
    s.amp = std::move(next);
  }
  return s;
}

DenseState permute_sites(const DenseState& s, const std::vector<std::string>& order) {
  if (order.size() != s.space.size()) throw std::invalid_argument("permutation must list every site");
  std::vector<Site> sites;
  std::vector<int> from;
  for (const auto& id : order) {
    from.push_back(s.space.position(id));
    sites.push_back(s.space.sites()[from.back()]);
  }
  DenseState out{TensorFactorSpace(sites), std::vector<cplx>(s.amp.size())};
  const int n = static_cast<int>(sites.size());
  std::vector<std::size_t> old_stride(n);
  for (int i = 0; i < n; ++i) old_stride[i] = s.space.stride(from[i]);
  // Odometer over the new order, tracking the matching old flat index.
  std::vector<int> digit(n, 0);
  std::size_t old_flat = 0;
  for (std::size_t f = 0; f < out.amp.size(); ++f) {
    out.amp[f] = s.amp[old_flat];
    for (int i = n - 1; i >= 0; --i) {
      if (++digit[i] < sites[i].dim) {
        old_flat += old_stride[i];
        break;
      }
      old_flat -= old_stride[i] * static_cast<std::size_t>(sites[i].dim - 1);
      digit[i] = 0;
    }
  }
  return out;
}

DenseState grow_space(const DenseState& s, const std::vector<Placement>& additions) {
  std::vector<SiteVector> tail;
  std::vector<std::string> order;
  for (const auto& site : s.space.sites()) order.push_back(site.id);
  for (const auto& add : additions) {
    tail.push_back(add.state);
    if (add.anchor.empty()) {
      order.push_back(add.state.site.id);
      continue;
    }
    auto it = std::find(order.begin(), order.end(), add.anchor);
    if (it == order.end()) throw std::invalid_argument("placement anchor '" + add.anchor + "' not found");
    order.insert(add.before ? it : it + 1, add.state.site.id);
  }
  DenseState ext = embed_product(tail);
  std::vector<Site> sites = s.space.sites();
  sites.insert(sites.end(), ext.space.sites().begin(), ext.space.sites().end());
  DenseState joined{TensorFactorSpace(sites), std::vector<cplx>(s.amp.size() * ext.amp.size())};
  for (std::size_t i = 0; i < s.amp.size(); ++i)
    for (std::size_t j = 0; j < ext.amp.size(); ++j) joined.amp[i * ext.amp.size() + j] = s.amp[i] * ext.amp[j];
  return permute_sites(joined, order);
}

std::vector<cplx> basis_vector(int dim, int index) {
  std::vector<cplx> v(dim, 0.0);
  v.at(index) = 1.0;
  return v;
}

std::vector<cplx> uniform_vector(int dim) { return std::vector<cplx>(dim, 1.0 / std::sqrt(double(dim))); }

bool supports_overlap(const SiteOperator& a, const SiteOperator& b) {
  for (const auto& x : a.support)
    for (const auto& y : b.support)
      if (x.id == y.id) return true;
  return false;
}

SiteOperator embed_operator(const SiteOperator& op, const std::vector<Site>& support) {
  TensorFactorSpace big(support);
  const int n = static_cast<int>(support.size());
  std::vector<int> pos;
  for (const auto& s : op.support) {
    pos.push_back(big.position(s.id));
    if (big.sites()[pos.back()].dim != s.dim) throw std::invalid_argument("site dimension mismatch on '" + s.id + "'");
  }
  std::vector<bool> in_op(n, false);
  for (int p : pos) in_op[p] = true;
  std::vector<int> rest;
  for (int i = 0; i < n; ++i)
    if (!in_op[i]) rest.push_back(i);
  std::size_t rest_dim = 1;
  for (int r : rest) rest_dim *= support[r].dim;
  // Offsets of each local index and each spectator index inside the big space.
  auto offsets = [&](const std::vector<int>& which) {
    std::size_t d = 1;
    for (int w : which) d *= support[w].dim;
    std::vector<std::size_t> off(d, 0);
    for (std::size_t f = 0; f < d; ++f) {
      std::size_t rem = f, o = 0;
      for (int k = static_cast<int>(which.size()) - 1; k >= 0; --k) {
        o += (rem % support[which[k]].dim) * big.stride(which[k]);
        rem /= support[which[k]].dim;
      }
      off[f] = o;
    }
    return off;
  };
  const auto loc = offsets(pos);
  const auto spec = offsets(rest);
  std::vector<Eigen::Triplet<cplx>> t;
  t.reserve(op.matrix.nonZeros() * rest_dim);
  for (int r = 0; r < op.matrix.outerSize(); ++r)
    for (SpMat::InnerIterator it(op.matrix, r); it; ++it)
      for (std::size_t q = 0; q < rest_dim; ++q) t.emplace_back(loc[r] + spec[q], loc[it.col()] + spec[q], it.value());
  SpMat m(big.total_dim(), big.total_dim());
  m.setFromTriplets(t.begin(), t.end());
  return SiteOperator::from_sparse(support, std::move(m));
}

double commutator_residual(const SiteOperator& a, const SiteOperator& b) {
  std::vector<Site> uni = a.support;
  for (const auto& s : b.support)
    if (std::none_of(uni.begin(), uni.end(), [&](const Site& x) { return x.id == s.id; })) uni.push_back(s);
  const auto ea = embed_operator(a, uni), eb = embed_operator(b, uni);
  SpMat c = ea.matrix * eb.matrix - eb.matrix * ea.matrix;
  double r = 0;
  for (int k = 0; k < c.outerSize(); ++k)
    for (SpMat::InnerIterator it(c, k); it; ++it) r = std::max(r, std::abs(it.value()));
  return r;
}

void write_snapshot(const std::string& path, const DenseState& s) {
  static_assert(std::endian::native == std::endian::little, "snapshots assume a little-endian host");
  nlohmann::json h;
  h["schema"] = 1;
  h["encoding"] = "f64le-interleaved";
  h["total_dim"] = s.space.total_dim();
  for (const auto& site : s.space.sites()) h["sites"].push_back({{"id", site.id}, {"dim", site.dim}});
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write snapshot " + path);
  out << h.dump() << '\n';
  out.write(reinterpret_cast<const char*>(s.amp.data()), static_cast<std::streamsize>(s.amp.size() * sizeof(cplx)));
}

DenseState read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read snapshot " + path);
  std::string line;
  std::getline(in, line);
  const auto h = nlohmann::json::parse(line);
  std::vector<Site> sites;
  for (const auto& e : h.at("sites")) sites.push_back({e.at("id").get<std::string>(), e.at("dim").get<int>()});
  DenseState s{TensorFactorSpace(sites), {}};
  if (h.at("total_dim").get<std::size_t>() != s.space.total_dim()) throw std::runtime_error("snapshot header mismatch");
  s.amp.resize(s.space.total_dim());
  in.read(reinterpret_cast<char*>(s.amp.data()), static_cast<std::streamsize>(s.amp.size() * sizeof(cplx)));
  if (!in) throw std::runtime_error("truncated snapshot " + path);
  return s;
}

}  // namespace qdg
