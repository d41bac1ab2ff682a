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

#include "hetqec/tensor.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "hetqec/errors.hpp"

namespace hetqec {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RowMap = Eigen::Map<RowMat>;
using ConstRowMap = Eigen::Map<const RowMat>;

std::size_t product(const std::vector<std::size_t>& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

std::string dims_string(const std::vector<std::size_t>& dims) {
  std::string s = "(";
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "," : "") + std::to_string(dims[i]);
  return s + ")";
}

DenseTensor from_matrix(const RowMat& m, std::vector<std::size_t> dims) {
  return DenseTensor(std::move(dims), std::vector<double>(m.data(), m.data() + m.size()));
}

/// M = U * carry with U having orthonormal columns and at most chi of them.
struct LeftFactor {
  RowMat u;
  RowMat carry;
  double discarded = 0.0;
};

void qr_factor(const RowMat& m, LeftFactor& out) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  const Eigen::Index k = std::min(rows, cols);
  Eigen::HouseholderQR<RowMat> qr(m);
  out.u = qr.householderQ() * RowMat::Identity(rows, k);
  out.carry = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
}

LeftFactor left_factor(const RowMat& m, std::size_t chi, SvdBackend backend) {
  LeftFactor out;
  const auto rows = static_cast<std::size_t>(m.rows()), cols = static_cast<std::size_t>(m.cols());
  const std::size_t full = std::min(rows, cols);
  if (full <= chi) {
    qr_factor(m, out);
    return out;
  }
  const auto k = static_cast<Eigen::Index>(chi);
  if (backend == SvdBackend::kJacobi) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) throw NumericalError("Jacobi SVD failed to converge");
    const auto& s = svd.singularValues();
    const double total = s.squaredNorm();
    out.discarded = total > 0 ? s.tail(s.size() - k).squaredNorm() / total : 0.0;
    out.u = svd.matrixU().leftCols(k);
    out.carry = s.head(k).asDiagonal() * svd.matrixV().leftCols(k).transpose();
    return out;
  }
  if (rows <= cols) {
    const Eigen::MatrixXd gram = m * m.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    if (es.info() != Eigen::Success) throw NumericalError("Gram eigensolver failed");
    const auto& lambda = es.eigenvalues();  // ascending
    const double total = lambda.cwiseMax(0.0).sum();
    const Eigen::Index drop = lambda.size() - k;
    out.discarded = total > 0 ? lambda.head(drop).cwiseMax(0.0).sum() / total : 0.0;
    out.u = es.eigenvectors().rightCols(k).rowwise().reverse();
    out.carry = out.u.transpose() * m;
    return out;
  }
  const Eigen::MatrixXd gram = m.transpose() * m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  if (es.info() != Eigen::Success) throw NumericalError("Gram eigensolver failed");
  const auto& lambda = es.eigenvalues();
  const double total = lambda.cwiseMax(0.0).sum();
  const Eigen::Index drop = lambda.size() - k;
  out.discarded = total > 0 ? lambda.head(drop).cwiseMax(0.0).sum() / total : 0.0;
  const Eigen::MatrixXd v = es.eigenvectors().rightCols(k).rowwise().reverse();
  LeftFactor projected;
  qr_factor(m * v, projected);
  out.u = std::move(projected.u);
  out.carry = projected.carry * v.transpose();
  return out;
}

}  // namespace

DenseTensor::DenseTensor(std::vector<std::size_t> dims) : dims_(std::move(dims)), data_(product(dims_), 0.0) {}

DenseTensor::DenseTensor(std::vector<std::size_t> dims, std::vector<double> data)
    : dims_(std::move(dims)), data_(std::move(data)) {
  if (product(dims_) != data_.size()) {
    throw DimensionError("tensor data length " + std::to_string(data_.size()) + " does not match dims " +
                         dims_string(dims_));
  }
}

DenseTensor DenseTensor::identity(std::size_t n) {
  DenseTensor t({n, n});
  for (std::size_t i = 0; i < n; ++i) t[i * n + i] = 1.0;
  return t;
}

std::size_t DenseTensor::offset(std::initializer_list<std::size_t> index) const {
  if (index.size() != dims_.size()) throw DimensionError("index rank mismatch");
  std::size_t off = 0, i = 0;
  for (std::size_t v : index) {
    if (v >= dims_[i]) throw std::out_of_range("tensor index out of range");
    off = off * dims_[i++] + v;
  }
  return off;
}

double& DenseTensor::at(std::initializer_list<std::size_t> index) { return data_[offset(index)]; }
double DenseTensor::at(std::initializer_list<std::size_t> index) const { return data_[offset(index)]; }

DenseTensor DenseTensor::reshaped(std::vector<std::size_t> dims) const {
  if (product(dims) != data_.size()) {
    throw DimensionError("cannot reshape " + dims_string(dims_) + " to " + dims_string(dims));
  }
  return DenseTensor(std::move(dims), data_);
}

DenseTensor DenseTensor::permuted(std::span<const std::size_t> perm) const {
  const std::size_t r = dims_.size();
  if (perm.size() != r) throw DimensionError("permutation rank mismatch");
  std::vector<std::size_t> new_dims(r), src_strides(r), stride(r, 1);
  for (std::size_t i = r; i-- > 1;) stride[i - 1] = stride[i] * dims_[i];
  for (std::size_t i = 0; i < r; ++i) {
    if (perm[i] >= r) throw DimensionError("bad permutation");
    new_dims[i] = dims_[perm[i]];
    src_strides[i] = stride[perm[i]];
  }
  DenseTensor out(new_dims);
  std::vector<std::size_t> idx(r, 0);
  for (std::size_t lin = 0; lin < data_.size(); ++lin) {
    std::size_t src = 0;
    for (std::size_t i = 0; i < r; ++i) src += idx[i] * src_strides[i];
    out.data_[lin] = data_[src];
    for (std::size_t i = r; i-- > 0;) {
      if (++idx[i] < new_dims[i]) break;
      idx[i] = 0;
    }
  }
  return out;
}

double DenseTensor::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

bool DenseTensor::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

DenseTensor contract(const DenseTensor& a, const DenseTensor& b,
                     std::span<const std::pair<std::size_t, std::size_t>> pairs) {
  std::vector<bool> a_paired(a.rank(), false), b_paired(b.rank(), false);
  std::size_t k = 1;
  for (auto [ia, ib] : pairs) {
    if (ia >= a.rank() || ib >= b.rank() || a_paired[ia] || b_paired[ib]) {
      throw DimensionError("invalid contraction index pair");
    }
    if (a.dim(ia) != b.dim(ib)) {
      throw DimensionError("contracted extents differ: " + std::to_string(a.dim(ia)) + " vs " +
                           std::to_string(b.dim(ib)));
    }
    a_paired[ia] = b_paired[ib] = true;
    k *= a.dim(ia);
  }
  std::vector<std::size_t> perm_a, perm_b, out_dims;
  for (std::size_t i = 0; i < a.rank(); ++i) {
    if (!a_paired[i]) {
      perm_a.push_back(i);
      out_dims.push_back(a.dim(i));
    }
  }
  for (auto [ia, ib] : pairs) {
    perm_a.push_back(ia);
    perm_b.push_back(ib);
  }
  for (std::size_t i = 0; i < b.rank(); ++i) {
    if (!b_paired[i]) {
      perm_b.push_back(i);
      out_dims.push_back(b.dim(i));
    }
  }
  const DenseTensor pa = a.permuted(perm_a), pb = b.permuted(perm_b);
  const auto m = static_cast<Eigen::Index>(a.size() / k), n = static_cast<Eigen::Index>(b.size() / k);
  const auto kk = static_cast<Eigen::Index>(k);
  RowMat prod = ConstRowMap(pa.data().data(), m, kk) * ConstRowMap(pb.data().data(), kk, n);
  return from_matrix(prod, std::move(out_dims));
}

TruncatedSvd svd_truncate(const DenseTensor& m, std::size_t chi, SvdBackend backend) {
  if (m.rank() != 2) throw DimensionError("svd_truncate expects a matrix, got rank " + std::to_string(m.rank()));
  if (chi < 1) throw ParameterError("bond cap chi must be >= 1");
  const auto rows = static_cast<Eigen::Index>(m.dim(0)), cols = static_cast<Eigen::Index>(m.dim(1));
  const RowMat mat = ConstRowMap(m.data().data(), rows, cols);
  if (!mat.allFinite()) throw NumericalError("svd_truncate input has non-finite entries");
  const Eigen::Index full = std::min(rows, cols);
  const Eigen::Index k = std::min<Eigen::Index>(full, static_cast<Eigen::Index>(std::min<std::size_t>(chi, full)));
  TruncatedSvd out;
  Eigen::VectorXd s;
  RowMat u, v;
  if (backend == SvdBackend::kJacobi) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(mat, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) {
      throw NumericalError("Jacobi SVD failed; |M|_F = " + std::to_string(mat.norm()));
    }
    s = svd.singularValues();
    u = svd.matrixU();
    v = svd.matrixV();
  } else {
    const bool left = rows <= cols;
    const Eigen::MatrixXd gram = left ? Eigen::MatrixXd(mat * mat.transpose()) : Eigen::MatrixXd(mat.transpose() * mat);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    if (es.info() != Eigen::Success) {
      throw NumericalError("Gram eigensolver failed; |M|_F = " + std::to_string(mat.norm()));
    }
    const Eigen::VectorXd lambda = es.eigenvalues().reverse().cwiseMax(0.0);
    const Eigen::MatrixXd vecs = es.eigenvectors().rowwise().reverse();
    s = lambda.cwiseSqrt();
    RowMat other = left ? RowMat(mat.transpose() * vecs) : RowMat(mat * vecs);
    for (Eigen::Index i = 0; i < full; ++i) {
      if (s(i) > 0) {
        other.col(i) /= s(i);
      } else {
        other.col(i).setZero();
      }
    }
    u = left ? RowMat(vecs) : other;
    v = left ? other : RowMat(vecs);
  }
  // Singular values at rounding level of the largest one are exact zeros.
  const double floor = full > 0 ? static_cast<double>(full) * std::numeric_limits<double>::epsilon() * s(0) : 0.0;
  for (Eigen::Index i = 0; i < full; ++i) {
    if (s(i) <= floor) s(i) = 0.0;
  }
  const double total = s.squaredNorm();
  out.discarded_weight = total > 0 ? s.tail(full - k).squaredNorm() / total : 0.0;
  out.s.assign(s.data(), s.data() + k);
  out.u = from_matrix(u.leftCols(k), {static_cast<std::size_t>(rows), static_cast<std::size_t>(k)});
  out.v = from_matrix(v.leftCols(k), {static_cast<std::size_t>(cols), static_cast<std::size_t>(k)});
  return out;
}

BoundaryMPS BoundaryMPS::trivial(std::size_t num_sites) {
  BoundaryMPS mps;
  mps.sites_.assign(num_sites, DenseTensor({1, 1, 1}, {1.0}));
  return mps;
}

std::size_t BoundaryMPS::max_bond() const {
  std::size_t b = 1;
  for (const auto& s : sites_) b = std::max({b, s.dim(0), s.dim(2)});
  return b;
}

ScaledValue BoundaryMPS::scalar() const {
  if (is_zero()) return ScaledValue{0.0, 0.0};
  RowMat acc = RowMat::Ones(1, 1);
  double log_scale = log_scale_;
  for (const auto& s : sites_) {
    if (s.dim(1) != 1) throw DimensionError("scalar() needs all physical extents equal to 1");
    acc = acc * ConstRowMap(s.data().data(), static_cast<Eigen::Index>(s.dim(0)), static_cast<Eigen::Index>(s.dim(2)));
    const double m = acc.cwiseAbs().maxCoeff();
    if (m == 0.0) return ScaledValue{0.0, 0.0};
    acc /= m;
    log_scale += std::log(m);
  }
  return ScaledValue{acc(0, 0), log_scale};
}

DenseTensor BoundaryMPS::to_dense() const {
  // acc has shape (prod of physical extents so far) x (right bond).
  RowMat acc = RowMat::Ones(1, 1);
  std::vector<std::size_t> phys;
  for (const auto& s : sites_) {
    const auto dl = static_cast<Eigen::Index>(s.dim(0)), p = static_cast<Eigen::Index>(s.dim(1)),
               dr = static_cast<Eigen::Index>(s.dim(2));
    RowMat next(acc.rows() * p, dr);
    const ConstRowMap site(s.data().data(), dl, p * dr);
    for (Eigen::Index r = 0; r < acc.rows(); ++r) {
      const RowMat row = acc.row(r) * site;  // 1 x (p * dr)
      for (Eigen::Index j = 0; j < p; ++j) next.row(r * p + j) = row.middleCols(j * dr, dr);
    }
    acc = std::move(next);
    phys.push_back(s.dim(1));
  }
  const double f = std::exp(log_scale_);
  std::vector<double> data(static_cast<std::size_t>(acc.rows()));
  for (Eigen::Index i = 0; i < acc.rows(); ++i) data[static_cast<std::size_t>(i)] = acc(i, 0) * f;
  return DenseTensor(std::move(phys), std::move(data));
}

ColumnReport apply_column(BoundaryMPS& mps, const MpoColumn& column, std::size_t chi, SvdBackend backend) {
  if (chi < 1) throw ParameterError("bond cap chi must be >= 1");
  auto& sites = mps.sites();
  const std::size_t n = sites.size();
  if (column.size() != n) {
    throw DimensionError("column has " + std::to_string(column.size()) + " sites, frontier has " + std::to_string(n));
  }
  ColumnReport report;
  if (mps.is_zero()) return report;

  // Absorb: B[(l,up), out, (r,down)] = sum_in A[l,in,r] W[up,in,out,down].
  for (std::size_t i = 0; i < n; ++i) {
    const DenseTensor& a = sites[i];
    const DenseTensor& w = column[i];
    if (w.rank() != 4 || w.dim(1) != a.dim(1)) {
      throw DimensionError("column site " + std::to_string(i) + " has dims " + dims_string(w.dims()) +
                           ", frontier physical extent " + std::to_string(a.dim(1)));
    }
    if ((i == 0 && w.dim(0) != 1) || (i + 1 == n && w.dim(3) != 1) ||
        (i + 1 < n && w.dim(3) != column[i + 1].dim(0))) {
      throw DimensionError("column bond extents disagree at site " + std::to_string(i));
    }
    const std::size_t dl = a.dim(0), pi = a.dim(1), dr = a.dim(2);
    const std::size_t du = w.dim(0), po = w.dim(2), dd = w.dim(3);
    DenseTensor b({dl * du, po, dr * dd});
    auto bd = b.data();
    const auto ad = a.data();
    const auto wd = w.data();
    for (std::size_t up = 0; up < du; ++up) {
      for (std::size_t in = 0; in < pi; ++in) {
        for (std::size_t out = 0; out < po; ++out) {
          for (std::size_t down = 0; down < dd; ++down) {
            const double wv = wd[((up * pi + in) * po + out) * dd + down];
            if (wv == 0.0) continue;
            for (std::size_t l = 0; l < dl; ++l) {
              const double* arow = &ad[(l * pi + in) * dr];
              double* brow = &bd[((l * du + up) * po + out) * dr * dd + down];
              for (std::size_t r = 0; r < dr; ++r) brow[r * dd] += wv * arow[r];
            }
          }
        }
      }
    }
    sites[i] = std::move(b);
  }

  // Right-to-left: make sites 1..n-1 right-orthonormal via LQ.
  for (std::size_t i = n - 1; i > 0; --i) {
    DenseTensor& a = sites[i];
    const std::size_t dl = a.dim(0), p = a.dim(1), dr = a.dim(2);
    const RowMat mt = ConstRowMap(a.data().data(), static_cast<Eigen::Index>(dl), static_cast<Eigen::Index>(p * dr)).transpose();
    LeftFactor f;
    qr_factor(mt, f);  // M^T = Q R  =>  M = R^T Q^T
    const auto k = static_cast<std::size_t>(f.u.cols());
    a = from_matrix(f.u.transpose(), {k, p, dr});
    DenseTensor& prev = sites[i - 1];
    const std::size_t pl = prev.dim(0), pp = prev.dim(1);
    const RowMat merged = ConstRowMap(prev.data().data(), static_cast<Eigen::Index>(pl * pp),
                                      static_cast<Eigen::Index>(prev.dim(2))) *
                          f.carry.transpose();
    prev = from_matrix(merged, {pl, pp, k});
  }

  // Left-to-right: truncate each bond to chi.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    DenseTensor& a = sites[i];
    const std::size_t dl = a.dim(0), p = a.dim(1), dr = a.dim(2);
    const RowMat m = ConstRowMap(a.data().data(), static_cast<Eigen::Index>(dl * p), static_cast<Eigen::Index>(dr));
    LeftFactor f = left_factor(m, chi, backend);
    report.discarded_weight += f.discarded;
    const auto k = static_cast<std::size_t>(f.u.cols());
    a = from_matrix(f.u, {dl, p, k});
    DenseTensor& next = sites[i + 1];
    const std::size_t np = next.dim(1), nr = next.dim(2);
    const RowMat merged = f.carry * ConstRowMap(next.data().data(), static_cast<Eigen::Index>(next.dim(0)),
                                                static_cast<Eigen::Index>(np * nr));
    next = from_matrix(merged, {k, np, nr});
  }

  double log_acc = 0.0;
  for (auto& s : sites) {
    const double m = s.max_abs();
    if (!std::isfinite(m)) throw NumericalError("non-finite entry in boundary MPS");
    if (m == 0.0) {
      mps.add_log_scale(-std::numeric_limits<double>::infinity());
      return report;
    }
    for (double& v : s.data()) v /= m;
    log_acc += std::log(m);
  }
  mps.add_log_scale(log_acc);
  report.max_bond = mps.max_bond();
  return report;
}

ScaledValue close_column(const BoundaryMPS& left, const MpoColumn& column, const BoundaryMPS& right) {
  const std::size_t n = column.size();
  if (left.num_sites() != n || right.num_sites() != n) throw DimensionError("close_column site count mismatch");
  if (left.is_zero() || right.is_zero()) return ScaledValue{0.0, 0.0};
  // env[(a, w, b)] with a, w, b the left, column and right bonds.
  std::vector<double> env{1.0};
  std::size_t ea = 1, ew = 1, eb = 1;
  double log_scale = left.log_scale() + right.log_scale();
  for (std::size_t i = 0; i < n; ++i) {
    const DenseTensor& l = left.sites()[i];
    const DenseTensor& w = column[i];
    const DenseTensor& r = right.sites()[i];
    if (l.dim(0) != ea || w.dim(0) != ew || r.dim(0) != eb || w.dim(1) != l.dim(1) || w.dim(2) != r.dim(1)) {
      throw DimensionError("close_column extents disagree at site " + std::to_string(i));
    }
    const std::size_t ps = l.dim(1), pt = r.dim(1), la = l.dim(2), wd = w.dim(3), rb = r.dim(2);
    // t1[(w, b), (s, a')] = sum_a env[a, (w, b)] l[a, (s, a')]
    const RowMat t1 = ConstRowMap(env.data(), static_cast<Eigen::Index>(ea), static_cast<Eigen::Index>(ew * eb)).transpose() *
                      ConstRowMap(l.data().data(), static_cast<Eigen::Index>(ea), static_cast<Eigen::Index>(ps * la));
    // t2[(b, t), (a', w')] = sum_{w, s} t1[(w, b), (s, a')] W[w, s, t, w']
    RowMat t2 = RowMat::Zero(static_cast<Eigen::Index>(eb * pt), static_cast<Eigen::Index>(la * wd));
    const auto wdata = w.data();
    for (std::size_t wi = 0; wi < ew; ++wi) {
      for (std::size_t s = 0; s < ps; ++s) {
        for (std::size_t t = 0; t < pt; ++t) {
          for (std::size_t wo = 0; wo < wd; ++wo) {
            const double wv = wdata[((wi * ps + s) * pt + t) * wd + wo];
            if (wv == 0.0) continue;
            for (std::size_t b = 0; b < eb; ++b) {
              for (std::size_t a = 0; a < la; ++a) {
                t2(static_cast<Eigen::Index>(b * pt + t), static_cast<Eigen::Index>(a * wd + wo)) +=
                    wv * t1(static_cast<Eigen::Index>(wi * eb + b), static_cast<Eigen::Index>(s * la + a));
              }
            }
          }
        }
      }
    }
    // env'[(a', w'), b'] = sum_{b, t} t2[(b, t), (a', w')] r[(b, t), b']
    const RowMat next = t2.transpose() * ConstRowMap(r.data().data(), static_cast<Eigen::Index>(eb * pt),
                                                     static_cast<Eigen::Index>(rb));
    const double m = next.cwiseAbs().maxCoeff();
    if (m == 0.0) return ScaledValue{0.0, 0.0};
    env.assign(next.data(), next.data() + next.size());
    for (double& v : env) v /= m;
    log_scale += std::log(m);
    ea = la;
    ew = wd;
    eb = rb;
  }
  return ScaledValue{env[0], log_scale};
}

}  // namespace hetqec
