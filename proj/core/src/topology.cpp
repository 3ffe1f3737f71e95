#include "degroot/topology.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include <fmt/format.h>

#include "degroot/error.hpp"

namespace degroot {

Topology::Topology(Eigen::MatrixXd weights) : weights_(std::move(weights)) {
  const auto n = size();
  successors_.resize(n);
  out_weights_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (weight(j, k) > 0.0) {
        successors_[j].push_back(k);
        out_weights_[j].push_back(weight(j, k));
      }
    }
  }
}

Topology Topology::validate(Eigen::MatrixXd weights) {
  if (weights.rows() != weights.cols()) {
    throw ValidationError(ErrorCode::NotSquare, -1, static_cast<double>(weights.cols()),
                          fmt::format("weight matrix is {}x{}", weights.rows(), weights.cols()));
  }
  const Eigen::Index n = weights.rows();
  if (n < 2) {
    throw ValidationError(ErrorCode::TooSmall, -1, static_cast<double>(n),
                          fmt::format("need at least 2 agents, got {}", n));
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    const int row = static_cast<int>(j);
    for (Eigen::Index k = 0; k < n; ++k) {
      const double w = weights(j, k);
      // Written so that NaN is rejected as well.
      if (!(w >= 0.0) || !std::isfinite(w)) {
        throw ValidationError(ErrorCode::NegativeEntry, row, w,
                              fmt::format("entry ({}, {}) = {} is not a finite nonnegative number", j, k, w));
      }
    }
    if (weights(j, j) != 0.0) {
      throw ValidationError(ErrorCode::NonzeroDiagonal, row, weights(j, j),
                            fmt::format("diagonal entry ({0}, {0}) = {1} must be 0", j, weights(j, j)));
    }
    const double sum = weights.row(j).sum();
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw ValidationError(ErrorCode::RowSumViolation, row, sum,
                            fmt::format("row {} sums to {:.17g}", j, sum));
    }
  }
  return Topology(std::move(weights));
}

std::size_t Topology::edge_count() const noexcept {
  std::size_t count = 0;
  for (const auto& succ : successors_) count += succ.size();
  return count;
}

Topology Topology::induced(const std::vector<std::size_t>& nodes) const {
  const auto m = static_cast<Eigen::Index>(nodes.size());
  Eigen::MatrixXd sub(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) sub(a, b) = weight(nodes[a], nodes[b]);
  }
  return validate(std::move(sub));
}

Topology generate_random(std::size_t n, std::size_t out_degree, std::uint64_t seed,
                         bool require_strongly_connected) {
  if (n < 2) {
    throw Error(ErrorCode::TooSmall, fmt::format("need at least 2 agents, got {}", n));
  }
  if (out_degree < 1 || out_degree > n - 1) {
    throw Error(ErrorCode::InvalidDegree,
                fmt::format("out-degree {} outside [1, {}] for n = {}", out_degree, n - 1, n));
  }
  std::mt19937_64 rng(seed);
  std::vector<std::vector<bool>> support(n, std::vector<bool>(n, false));

  if (require_strongly_connected) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i = 0; i < n; ++i) support[order[i]][order[(i + 1) % n]] = true;
  }

  std::vector<std::size_t> candidates;
  for (std::size_t j = 0; j < n; ++j) {
    candidates.clear();
    std::size_t have = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      if (support[j][k]) {
        ++have;
      } else {
        candidates.push_back(k);
      }
    }
    std::shuffle(candidates.begin(), candidates.end(), rng);
    for (std::size_t i = 0; have < out_degree; ++i, ++have) support[j][candidates[i]] = true;
  }

  // Weights are kept away from zero so generated instances stay well conditioned.
  std::uniform_real_distribution<double> draw(0.05, 1.0);
  Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (support[j][k]) {
        weights(j, k) = draw(rng);
        total += weights(j, k);
      }
    }
    weights.row(static_cast<Eigen::Index>(j)) /= total;
  }
  return Topology::validate(std::move(weights));
}

}  // namespace degroot
