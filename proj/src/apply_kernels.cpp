#include <stdexcept>

#include "qdg/hilbert.hpp"

namespace qdg {

namespace {

struct Layout {
  std::vector<int> pos;
  std::vector<std::size_t> local_off;  // flat offset of each local index
  std::vector<int> rest_dim;
  std::vector<std::size_t> rest_stride;
  std::size_t outer = 1;
};

Layout resolve(const SiteOperator& op, const TensorFactorSpace& space) {
  Layout l;
  std::vector<bool> used(space.size(), false);
  for (const auto& s : op.support) {
    const int p = space.position(s.id);
    if (space.sites()[p].dim != s.dim) throw std::invalid_argument("site '" + s.id + "' dimension mismatch");
    if (used[p]) throw std::invalid_argument("site '" + s.id + "' listed twice in support");
    used[p] = true;
    l.pos.push_back(p);
  }
  l.local_off.assign(op.local_dim(), 0);
  for (std::size_t f = 0; f < op.local_dim(); ++f) {
    std::size_t rem = f, o = 0;
    for (int k = static_cast<int>(l.pos.size()) - 1; k >= 0; --k) {
      const int d = space.sites()[l.pos[k]].dim;
      o += (rem % d) * space.stride(l.pos[k]);
      rem /= d;
    }
    l.local_off[f] = o;
  }
  for (std::size_t i = 0; i < space.size(); ++i)
    if (!used[i]) {
      l.rest_dim.push_back(space.sites()[i].dim);
      l.rest_stride.push_back(space.stride(static_cast<int>(i)));
      l.outer *= space.sites()[i].dim;
    }
  return l;
}

}  // namespace

DenseState apply(const SiteOperator& op, const DenseState& s) {
  const Layout l = resolve(op, s.space);
  DenseState out{s.space, std::vector<cplx>(s.amp.size())};
  const SpMat& m = op.matrix;
  const int nrest = static_cast<int>(l.rest_dim.size());
  const long long outer = static_cast<long long>(l.outer);
#pragma omp parallel for schedule(static) if (s.amp.size() > (1u << 14))
  for (long long t = 0; t < outer; ++t) {
    std::size_t rem = static_cast<std::size_t>(t), base = 0;
    for (int k = nrest - 1; k >= 0; --k) {
      base += (rem % l.rest_dim[k]) * l.rest_stride[k];
      rem /= l.rest_dim[k];
    }
    for (int r = 0; r < m.outerSize(); ++r) {
      cplx acc = 0;
      for (SpMat::InnerIterator it(m, r); it; ++it) acc += it.value() * s.amp[base + l.local_off[it.col()]];
      out.amp[base + l.local_off[r]] = acc;
    }
  }
  return out;
}

DenseState apply_serial(const SiteOperator& op, const DenseState& s) {
  std::vector<int> pos;
  for (const auto& site : op.support) pos.push_back(s.space.position(site.id));
  DenseState out{s.space, std::vector<cplx>(s.amp.size())};
  const Mat m = op.dense();
  for (std::size_t i = 0; i < s.amp.size(); ++i) {
    auto digits = s.space.multi_index(i);
    std::size_t row = 0;
    for (int p : pos) row = row * s.space.sites()[p].dim + digits[p];
    cplx acc = 0;
    for (std::size_t col = 0; col < op.local_dim(); ++col) {
      if (m(row, col) == cplx(0)) continue;
      std::size_t rem = col;
      for (int k = static_cast<int>(pos.size()) - 1; k >= 0; --k) {
        const int d = s.space.sites()[pos[k]].dim;
        digits[pos[k]] = static_cast<int>(rem % d);
        rem /= d;
      }
      acc += m(row, col) * s.amp[s.space.flat_index(digits)];
    }
    out.amp[i] = acc;
  }
  return out;
}

}  // namespace qdg
