#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "qdg/groups.hpp"

namespace qdg {

using SpMat = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

inline constexpr std::size_t kEnvelope = std::size_t{1} << 22;

// Raised when a construction would exceed the dense-state envelope.
struct EnvelopeError : std::runtime_error {
  std::size_t required;
  EnvelopeError(const std::string& what, std::size_t req) : std::runtime_error(what), required(req) {}
};

struct Site {
  std::string id;
  int dim;
};

class TensorFactorSpace {
 public:
  TensorFactorSpace() = default;
  explicit TensorFactorSpace(std::vector<Site> sites);

  const std::vector<Site>& sites() const { return sites_; }
  std::size_t size() const { return sites_.size(); }
  std::size_t total_dim() const { return total_; }
  bool contains(const std::string& id) const { return pos_.count(id) > 0; }
  int position(const std::string& id) const;
  int dim(const std::string& id) const { return sites_[position(id)].dim; }
  std::size_t stride(int pos) const { return strides_[pos]; }
  std::vector<int> multi_index(std::size_t flat) const;
  std::size_t flat_index(const std::vector<int>& digits) const;

 private:
  std::vector<Site> sites_;
  std::vector<std::size_t> strides_;
  std::unordered_map<std::string, int> pos_;
  std::size_t total_ = 1;
};

struct DenseState {
  TensorFactorSpace space;
  std::vector<cplx> amp;

  double norm() const;
  void scale(cplx s);
};

// Operator on the listed factors; the first support site is the most significant local digit.
struct SiteOperator {
  std::vector<Site> support;
  SpMat matrix;

  std::size_t local_dim() const { return static_cast<std::size_t>(matrix.rows()); }
  Mat dense() const { return Mat(matrix); }

  static SiteOperator from_dense(std::vector<Site> support, const Mat& m);
  static SiteOperator from_sparse(std::vector<Site> support, SpMat m);
  static SiteOperator diagonal(std::vector<Site> support, const std::vector<cplx>& d);
  static SiteOperator identity(std::vector<Site> support);
};

SpMat to_sparse(const Mat& m);
SpMat kron(const SpMat& a, const SpMat& b);
SpMat kron_all(const std::vector<SpMat>& ops);

DenseState apply(const SiteOperator& op, const DenseState& s);
// Straight per-amplitude evaluation kept as the reference for the OpenMP kernel.
DenseState apply_serial(const SiteOperator& op, const DenseState& s);
void apply_inplace(const SiteOperator& op, DenseState& s);

cplx inner(const DenseState& a, const DenseState& b);
double fidelity_up_to_scale(const DenseState& a, const DenseState& b);
// ‖a - b‖ / ‖b‖.
double relative_residual(const DenseState& a, const DenseState& b);
// ‖op·s - s‖ / ‖s‖.
double invariance_residual(const SiteOperator& op, const DenseState& s);
cplx expectation(const SiteOperator& op, const DenseState& s);

struct SiteVector {
  Site site;
  std::vector<cplx> amp;
};
DenseState embed_product(const std::vector<SiteVector>& states);

struct Placement {
  SiteVector state;
  std::string anchor;  // existing site id; empty appends at the end
  bool before = false;
};
DenseState grow_space(const DenseState& s, const std::vector<Placement>& additions);
DenseState permute_sites(const DenseState& s, const std::vector<std::string>& order);

std::vector<cplx> basis_vector(int dim, int index);
std::vector<cplx> uniform_vector(int dim);  // unit norm

// Max-entry norm of [a, b], both embedded on the union of their supports.
double commutator_residual(const SiteOperator& a, const SiteOperator& b);
bool supports_overlap(const SiteOperator& a, const SiteOperator& b);
SiteOperator embed_operator(const SiteOperator& op, const std::vector<Site>& support);

void write_snapshot(const std::string& path, const DenseState& s);
DenseState read_snapshot(const std::string& path);

}  // namespace qdg
