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

#include <cmath>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "hetqec/errors.hpp"
#include "hetqec/rng.hpp"

namespace hetqec {
namespace {

using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

DenseTensor random_tensor(std::vector<std::size_t> dims, CounterRng& rng, double lo = -1.0) {
  DenseTensor t(std::move(dims));
  for (auto& v : t.data()) v = lo + (1.0 - lo) * rng.uniform();
  return t;
}

Eigen::MatrixXd as_matrix(const DenseTensor& t) {
  Eigen::MatrixXd m(t.dim(0), t.dim(1));
  for (std::size_t i = 0; i < t.dim(0); ++i) {
    for (std::size_t j = 0; j < t.dim(1); ++j) m(i, j) = t.at({i, j});
  }
  return m;
}

TEST(Contract, IdentityLeavesMatrix) {
  CounterRng rng(1);
  const auto m = random_tensor({3, 4}, rng);
  const auto r = contract(m, DenseTensor::identity(4), Pairs{{1, 0}});
  ASSERT_EQ(r.dims(), m.dims());
  for (std::size_t i = 0; i < m.size(); ++i) EXPECT_DOUBLE_EQ(r[i], m[i]);
}

TEST(Contract, UnitVectorDot) {
  DenseTensor e({5});
  e[2] = 1.0;
  const auto r = contract(e, e, Pairs{{0, 0}});
  EXPECT_EQ(r.rank(), 0u);
  EXPECT_EQ(r[0], 1.0);
}

TEST(Contract, MatchesTripleLoop) {
  CounterRng rng(2);
  const auto a = random_tensor({3, 4}, rng);
  const auto b = random_tensor({4, 5}, rng);
  const auto r = contract(a, b, Pairs{{1, 0}});
  ASSERT_EQ(r.dims(), (std::vector<std::size_t>{3, 5}));
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < 4; ++k) s += a.at({i, k}) * b.at({k, j});
      EXPECT_NEAR(r.at({i, j}), s, 1e-12);
    }
  }
}

TEST(Contract, HigherRankAgainstLoops) {
  CounterRng rng(3);
  const auto a = random_tensor({2, 3, 4}, rng);
  const auto b = random_tensor({4, 5, 2}, rng);
  const auto r = contract(a, b, Pairs{{0, 2}, {2, 0}});
  ASSERT_EQ(r.dims(), (std::vector<std::size_t>{3, 5}));
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t m = 0; m < 5; ++m) {
      double s = 0.0;
      for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t k = 0; k < 4; ++k) s += a.at({i, j, k}) * b.at({k, m, i});
      }
      EXPECT_NEAR(r.at({j, m}), s, 1e-12);
    }
  }
  EXPECT_THROW(contract(a, b, Pairs{{0, 0}}), DimensionError);
}

TEST(Svd, NoTruncationBelowRank) {
  CounterRng rng(4);
  const auto l = random_tensor({6, 2}, rng);
  const auto r = random_tensor({2, 5}, rng);
  const auto m = contract(l, r, Pairs{{1, 0}});
  for (auto backend : {SvdBackend::kGram, SvdBackend::kJacobi}) {
    const auto svd = svd_truncate(m, 4, backend);
    EXPECT_EQ(svd.discarded_weight, 0.0);
    const Eigen::MatrixXd rec = as_matrix(svd.u) * Eigen::Map<const Eigen::VectorXd>(svd.s.data(), svd.s.size()).asDiagonal() *
                                as_matrix(svd.v).transpose();
    EXPECT_LT((rec - as_matrix(m)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Svd, DiscardedWeightIsRatioOfSquares) {
  DenseTensor m({2, 2}, {1.0, 0.0, 0.0, 1e-8});
  for (auto backend : {SvdBackend::kGram, SvdBackend::kJacobi}) {
    const auto svd = svd_truncate(m, 1, backend);
    EXPECT_NEAR(svd.discarded_weight, 1e-16, 1e-20);
    ASSERT_EQ(svd.s.size(), 1u);
    EXPECT_NEAR(svd.s[0], 1.0, 1e-14);
  }
}

// Eckart-Young: no rank-4 approximation beats the tail of the full spectrum.
TEST(Svd, TruncationIsOptimal) {
  CounterRng rng(5);
  for (int rep = 0; rep < 10; ++rep) {
    const auto m = random_tensor({8, 8}, rng);
    const Eigen::MatrixXd full = as_matrix(m);
    const Eigen::JacobiSVD<Eigen::MatrixXd> oracle(full);
    const double best = oracle.singularValues().tail(4).norm();
    for (auto backend : {SvdBackend::kGram, SvdBackend::kJacobi}) {
      const auto svd = svd_truncate(m, 4, backend);
      const Eigen::MatrixXd rec = as_matrix(svd.u) *
                                  Eigen::Map<const Eigen::VectorXd>(svd.s.data(), svd.s.size()).asDiagonal() *
                                  as_matrix(svd.v).transpose();
      EXPECT_LE((full - rec).norm(), best * (1 + 1e-9) + 1e-12);
      EXPECT_NEAR(svd.discarded_weight, best * best / full.squaredNorm(), 1e-12);
    }
  }
}

// A column of site tensors W[up, in, out, down].
MpoColumn random_column(std::size_t n, std::size_t in, std::size_t out, std::size_t bond, CounterRng& rng) {
  MpoColumn col;
  for (std::size_t i = 0; i < n; ++i) {
    col.push_back(random_tensor({i == 0 ? 1 : bond, in, out, i + 1 == n ? 1 : bond}, rng, 0.0));
  }
  return col;
}

// Contracts one column along its vertical bonds for fixed horizontal legs.
double chain_value(const MpoColumn& col, const std::vector<std::size_t>& in, const std::vector<std::size_t>& out) {
  Eigen::RowVectorXd acc = Eigen::RowVectorXd::Ones(1);
  for (std::size_t i = 0; i < col.size(); ++i) {
    const auto& w = col[i];
    Eigen::MatrixXd slice(w.dim(0), w.dim(3));
    for (std::size_t u = 0; u < w.dim(0); ++u) {
      for (std::size_t d = 0; d < w.dim(3); ++d) slice(u, d) = w.at({u, in[i], out[i], d});
    }
    acc = acc * slice;
  }
  return acc(0);
}

// Sum over every horizontal configuration of the product of column chains.
double dense_network(const std::vector<MpoColumn>& cols, std::size_t phys) {
  const std::size_t n = cols.front().size();
  const std::size_t inner = cols.size() - 1;
  std::size_t configs = 1;
  for (std::size_t k = 0; k < n * inner; ++k) configs *= phys;
  double total = 0.0;
  for (std::size_t c = 0; c < configs; ++c) {
    std::vector<std::vector<std::size_t>> h(inner + 2, std::vector<std::size_t>(n, 0));
    std::size_t rest = c;
    for (std::size_t j = 1; j <= inner; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        h[j][i] = rest % phys;
        rest /= phys;
      }
    }
    double v = 1.0;
    for (std::size_t j = 0; j < cols.size(); ++j) v *= chain_value(cols[j], h[j], h[j + 1]);
    total += v;
  }
  return total;
}

TEST(BoundaryMps, UncappedSweepMatchesDenseContraction) {
  CounterRng rng(6);
  for (std::size_t ncols : {2u, 3u}) {
    std::vector<MpoColumn> cols;
    cols.push_back(random_column(4, 1, 2, 2, rng));
    for (std::size_t j = 2; j < ncols; ++j) cols.push_back(random_column(4, 2, 2, 2, rng));
    cols.push_back(random_column(4, 2, 1, 2, rng));
    const double oracle = dense_network(cols, 2);

    BoundaryMPS left = BoundaryMPS::trivial(4);
    for (std::size_t j = 0; j + 1 < cols.size(); ++j) {
      const auto rep = apply_column(left, cols[j], kUncappedBond);
      EXPECT_EQ(rep.discarded_weight, 0.0);
    }
    const ScaledValue v = close_column(left, cols.back(), BoundaryMPS::trivial(4));
    EXPECT_NEAR(v.log_value(), std::log(oracle), 1e-10) << ncols << " columns";

    BoundaryMPS all = BoundaryMPS::trivial(4);
    for (const auto& col : cols) apply_column(all, col, kUncappedBond);
    EXPECT_NEAR(all.scalar().log_value(), std::log(oracle), 1e-10);
  }
}

TEST(BoundaryMps, FrontierVectorMatchesChains) {
  CounterRng rng(7);
  const auto col = random_column(3, 1, 2, 3, rng);
  BoundaryMPS mps = BoundaryMPS::trivial(3);
  apply_column(mps, col, kUncappedBond);
  const auto dense = mps.to_dense();
  ASSERT_EQ(dense.size(), 8u);
  for (std::size_t c = 0; c < 8; ++c) {
    const std::vector<std::size_t> out{(c >> 2) & 1u, (c >> 1) & 1u, c & 1u};
    EXPECT_NEAR(dense[c], chain_value(col, {0, 0, 0}, out), 1e-12);
  }
}

TEST(BoundaryMps, IdentityColumnPreservesValue) {
  CounterRng rng(8);
  const auto first = random_column(5, 1, 2, 2, rng);
  const auto last = random_column(5, 2, 1, 2, rng);
  BoundaryMPS a = BoundaryMPS::trivial(5);
  apply_column(a, first, kUncappedBond);
  const double before = close_column(a, last, BoundaryMPS::trivial(5)).log_value();
  MpoColumn ident;
  for (int i = 0; i < 5; ++i) {
    DenseTensor w({1, 2, 2, 1});
    w.at({0, 0, 0, 0}) = 1.0;
    w.at({0, 1, 1, 0}) = 1.0;
    ident.push_back(w);
  }
  apply_column(a, ident, 16);
  EXPECT_NEAR(close_column(a, last, BoundaryMPS::trivial(5)).log_value(), before, 1e-10);
}

TEST(BoundaryMps, LargerBondDiscardsLess) {
  CounterRng rng(9);
  for (int rep = 0; rep < 5; ++rep) {
    std::vector<MpoColumn> cols{random_column(8, 1, 2, 3, rng)};
    for (int j = 0; j < 4; ++j) cols.push_back(random_column(8, 2, 2, 3, rng));
    double discarded[2] = {0.0, 0.0};
    const std::size_t caps[2] = {8, 16};
    for (int k = 0; k < 2; ++k) {
      BoundaryMPS mps = BoundaryMPS::trivial(8);
      for (const auto& col : cols) discarded[k] += apply_column(mps, col, caps[k]).discarded_weight;
      EXPECT_LE(mps.max_bond(), caps[k]);
    }
    EXPECT_LE(discarded[1], discarded[0]);
  }
}

TEST(BoundaryMps, ZeroColumnGivesZeroSentinel) {
  BoundaryMPS mps = BoundaryMPS::trivial(2);
  MpoColumn zero{DenseTensor({1, 1, 2, 1}), DenseTensor({1, 1, 2, 1})};
  apply_column(mps, zero, 4);
  EXPECT_TRUE(mps.is_zero());
  MpoColumn close{DenseTensor({1, 2, 1, 1}, {1.0, 1.0}), DenseTensor({1, 2, 1, 1}, {1.0, 1.0})};
  const auto v = close_column(mps, close, BoundaryMPS::trivial(2));
  EXPECT_TRUE(std::isinf(v.log_value()));
  EXPECT_LT(v.log_value(), 0.0);
}

TEST(BoundaryMps, RejectsMismatchedColumns) {
  BoundaryMPS mps = BoundaryMPS::trivial(3);
  CounterRng rng(10);
  EXPECT_THROW(apply_column(mps, random_column(2, 1, 2, 2, rng), 4), DimensionError);
  EXPECT_THROW(apply_column(mps, random_column(3, 2, 2, 2, rng), 4), DimensionError);
  EXPECT_THROW(apply_column(mps, random_column(3, 1, 2, 2, rng), 0), ParameterError);
}

}  // namespace
}  // namespace hetqec
