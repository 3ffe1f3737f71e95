#pragma once

// Test-only reference computations. Nothing here calls the code paths it is
// used to check: cycle facts come from exhaustive enumeration, trajectories
// from matrix powers, eigenvalue checks from complex determinants.

#include <complex>
#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "degroot/agents.hpp"
#include "degroot/topology.hpp"

namespace degroot::testing {

using Edge = std::pair<std::size_t, std::size_t>;

/// Topology with the given support, each row spread uniformly over its out-edges.
inline Topology uniform_topology(std::size_t n, const std::vector<Edge>& edges) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (auto [j, k] : edges) w(j, k) = 1.0;
  for (Eigen::Index j = 0; j < w.rows(); ++j) {
    const double s = w.row(j).sum();
    if (s > 0) w.row(j) /= s;
  }
  return Topology::validate(std::move(w));
}

inline Topology two_swap() { return uniform_topology(2, {{0, 1}, {1, 0}}); }

inline Topology directed_cycle(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t j = 0; j < n; ++j) edges.emplace_back(j, (j + 1) % n);
  return uniform_topology(n, edges);
}

/// Directed 3-cycle plus the chord 0 -> 2 (row 0 = (0, 0.5, 0.5)).
inline Topology three_cycle_with_chord() { return uniform_topology(3, {{0, 1}, {0, 2}, {1, 2}, {2, 0}}); }

/// Every strongly connected support on n nodes without self-loops, uniform weights.
inline std::vector<Topology> all_strongly_connected_supports(std::size_t n) {
  std::vector<Edge> slots;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      if (j != k) slots.emplace_back(j, k);
  std::vector<Topology> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << slots.size()); ++mask) {
    std::vector<std::size_t> out_degree(n, 0);
    std::vector<Edge> edges;
    for (std::size_t b = 0; b < slots.size(); ++b) {
      if (mask >> b & 1U) {
        edges.push_back(slots[b]);
        ++out_degree[slots[b].first];
      }
    }
    bool every_row = true;
    for (auto d : out_degree) every_row = every_row && d > 0;
    if (!every_row) continue;
    auto t = uniform_topology(n, edges);
    if (strongly_connected(t)) out.push_back(std::move(t));
  }
  return out;
}

inline std::vector<AgentTypes> all_type_assignments(std::size_t n) {
  std::vector<AgentTypes> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<AgentType> flags(n);
    for (std::size_t j = 0; j < n; ++j) flags[j] = (mask >> j & 1U) ? AgentType::Rebel : AgentType::Conformist;
    out.emplace_back(std::move(flags));
  }
  return out;
}

inline std::size_t gcd_of_cycle_lengths(const CycleList& cycles) {
  std::size_t h = 0;
  for (const auto& c : cycles) h = std::gcd(h, c.size());
  return h;
}

inline std::size_t rebels_on_cycle(const Cycle& cycle, const AgentTypes& types) {
  std::size_t count = 0;
  for (auto v : cycle) count += types.is_rebel(v) ? 1 : 0;
  return count;
}

inline bool no_odd_rebel_cycle(const CycleList& cycles, const AgentTypes& types) {
  for (const auto& c : cycles)
    if (rebels_on_cycle(c, types) % 2 == 1) return false;
  return true;
}

/// Whether consecutive nodes (and last -> first) are edges and no node repeats.
inline bool is_simple_cycle(const Topology& t, const Cycle& cycle) {
  if (cycle.empty()) return false;
  std::vector<bool> seen(t.size(), false);
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (seen[cycle[i]]) return false;
    seen[cycle[i]] = true;
    if (!t.has_edge(cycle[i], cycle[(i + 1) % cycle.size()])) return false;
  }
  return true;
}

/// x(t + 1) = B^t x(1) + (sum_{i<t} B^i)(1 - lambda)(I - U) 1, by explicit powers.
inline Eigen::VectorXd closed_form_state(const Topology& t, const AgentTypes& types, double lambda,
                                         const Eigen::VectorXd& x1, std::size_t steps) {
  const auto n = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXd signed_a = t.weights();
  Eigen::VectorXd drive = Eigen::VectorXd::Zero(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (types.is_rebel(static_cast<std::size_t>(j))) {
      signed_a.row(j) *= -1.0;
      drive(j) = 1.0 - lambda;
    }
  }
  const Eigen::MatrixXd b = lambda * Eigen::MatrixXd::Identity(n, n) + (1.0 - lambda) * signed_a;
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd partial = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < steps; ++i) {
    partial += power;
    power = power * b;
  }
  return power * x1 + partial * drive;
}

/// |det(M - mu I)| computed with a complex LU, independent of the QR route.
inline double characteristic_residual(const Eigen::MatrixXd& m, std::complex<double> mu) {
  const auto n = m.rows();
  Eigen::MatrixXcd shifted = m.cast<std::complex<double>>();
  shifted -= mu * Eigen::MatrixXcd::Identity(n, n);
  return std::abs(Eigen::PartialPivLU<Eigen::MatrixXcd>(shifted).determinant());
}

}  // namespace degroot::testing
