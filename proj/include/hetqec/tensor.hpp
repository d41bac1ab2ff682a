// Copyright 2026 The hetqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HETQEC_TENSOR_HPP
#define HETQEC_TENSOR_HPP

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace hetqec {

/// Real dense tensor, row-major.
class DenseTensor {
 public:
  DenseTensor() = default;
  explicit DenseTensor(std::vector<std::size_t> dims);
  DenseTensor(std::vector<std::size_t> dims, std::vector<double> data);

  static DenseTensor scalar(double v) { return DenseTensor({}, {v}); }
  static DenseTensor identity(std::size_t n);

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dim(std::size_t i) const { return dims_[i]; }
  std::size_t rank() const { return dims_.size(); }
  std::size_t size() const { return data_.size(); }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }
  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  double& at(std::initializer_list<std::size_t> index);
  double at(std::initializer_list<std::size_t> index) const;

  DenseTensor reshaped(std::vector<std::size_t> dims) const;
  DenseTensor permuted(std::span<const std::size_t> perm) const;

  double max_abs() const;
  bool all_finite() const;

 private:
  std::size_t offset(std::initializer_list<std::size_t> index) const;

  std::vector<std::size_t> dims_;
  std::vector<double> data_;
};

/// Sums over the paired indices (a-index, b-index); the result keeps a's
/// free indices followed by b's, each in original order.
DenseTensor contract(const DenseTensor& a, const DenseTensor& b,
                     std::span<const std::pair<std::size_t, std::size_t>> pairs);

enum class SvdBackend {
  /// Eigendecomposition of the smaller Gram matrix. Fast; used in sweeps.
  kGram,
  /// Two-sided Jacobi SVD. Slow reference.
  kJacobi,
};

struct TruncatedSvd {
  DenseTensor u;  // m x k, orthonormal columns
  std::vector<double> s;  // k values, nonincreasing
  DenseTensor v;  // n x k, so that m ~= u diag(s) v^T
  double discarded_weight = 0.0;
};

inline constexpr std::size_t kUncappedBond = std::numeric_limits<std::size_t>::max();

/// Best rank-min(chi, m, n) approximation of a matrix-shaped tensor.
/// discarded_weight is the dropped share of the squared singular values.
TruncatedSvd svd_truncate(const DenseTensor& m, std::size_t chi, SvdBackend backend = SvdBackend::kGram);

/// A number stored as mantissa * exp(log_scale).
struct ScaledValue {
  double mantissa = 0.0;
  double log_scale = 0.0;

  /// Natural log of the value; -inf for non-positive mantissas.
  double log_value() const {
    return mantissa > 0.0 ? std::log(mantissa) + log_scale : -std::numeric_limits<double>::infinity();
  }
};

/// Frontier of a column sweep. Site tensors are (left bond, physical,
/// right bond); the outer bonds have extent 1.
class BoundaryMPS {
 public:
  /// All extents 1, value 1.
  static BoundaryMPS trivial(std::size_t num_sites);

  std::size_t num_sites() const { return sites_.size(); }
  const std::vector<DenseTensor>& sites() const { return sites_; }
  std::vector<DenseTensor>& sites() { return sites_; }
  double log_scale() const { return log_scale_; }
  void add_log_scale(double v) { log_scale_ += v; }
  std::size_t max_bond() const;
  bool is_zero() const { return std::isinf(log_scale_) && log_scale_ < 0; }

  /// Contracts a frontier whose physical extents are all 1.
  ScaledValue scalar() const;

  /// Dense vector over the physical indices (site 0 most significant).
  /// Testing aid for small frontiers.
  DenseTensor to_dense() const;

 private:
  std::vector<DenseTensor> sites_;
  double log_scale_ = 0.0;
};

/// One MPO site per MPS site, extents (up, in, out, down). `in` contracts
/// with the frontier's physical index, `out` becomes the new one; up/down
/// are bonds inside the column.
using MpoColumn = std::vector<DenseTensor>;

struct ColumnReport {
  double discarded_weight = 0.0;
  std::size_t max_bond = 0;
};

/// Absorbs a column into the frontier, then compresses: a right-to-left
/// orthogonalisation sweep followed by a left-to-right truncating sweep at
/// bond cap chi. Sites are rescaled to unit max-abs, with the factor moved
/// into log_scale.
ColumnReport apply_column(BoundaryMPS& mps, const MpoColumn& column, std::size_t chi,
                          SvdBackend backend = SvdBackend::kGram);

/// Exact value of left-frontier * column * right-frontier, where the right
/// frontier's physical indices pair with the column's `out` legs.
ScaledValue close_column(const BoundaryMPS& left, const MpoColumn& column, const BoundaryMPS& right);

}  // namespace hetqec

#endif  // HETQEC_TENSOR_HPP
