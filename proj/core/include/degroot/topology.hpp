#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "degroot/agents.hpp"

namespace degroot {

/// Tolerance on |row sum - 1| accepted by validate().
inline constexpr double kRowSumTolerance = 1e-12;

/// Learning topology: a row-stochastic weight matrix with zero diagonal and
/// n >= 2, together with its digraph (edge j -> k iff weight(j, k) > 0).
///
/// Instances only exist in a valid state; construct through validate().
class Topology {
 public:
  /// Checks every invariant and returns the topology, or throws
  /// ValidationError naming the first violation. Nothing is normalized.
  static Topology validate(Eigen::MatrixXd weights);

  std::size_t size() const noexcept { return static_cast<std::size_t>(weights_.rows()); }
  const Eigen::MatrixXd& weights() const noexcept { return weights_; }
  double weight(std::size_t j, std::size_t k) const {
    return weights_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
  }

  /// Out-neighbours of j in ascending order.
  const std::vector<std::size_t>& successors(std::size_t j) const { return successors_[j]; }
  /// weight(j, k) for each k in successors(j), same order.
  const std::vector<double>& out_weights(std::size_t j) const { return out_weights_[j]; }
  const std::vector<std::vector<std::size_t>>& adjacency() const noexcept { return successors_; }
  bool has_edge(std::size_t j, std::size_t k) const { return weight(j, k) > 0.0; }
  std::size_t edge_count() const noexcept;

  /// Restriction to `nodes` (kept in the given order). Only valid when no
  /// edge leaves `nodes`, e.g. for a closed group.
  Topology induced(const std::vector<std::size_t>& nodes) const;

 private:
  explicit Topology(Eigen::MatrixXd weights);

  Eigen::MatrixXd weights_;
  std::vector<std::vector<std::size_t>> successors_;
  std::vector<std::vector<double>> out_weights_;
};

using Cycle = std::vector<std::size_t>;
using CycleList = std::vector<Cycle>;
using NodeSet = std::vector<std::size_t>;

struct RebelBipartiteResult {
  bool rebel_bipartite = true;
  /// Present iff rebel_bipartite is false: a simple cycle carrying an odd
  /// number of rebels, rotated so that its smallest node comes first.
  std::optional<Cycle> witness;
};

struct StructureReport {
  bool strongly_connected = false;
  /// Only set when strongly connected.
  std::optional<std::size_t> period;
  /// N_0 ... N_{h-1}; a single block when h = 1; empty when not strongly connected.
  std::vector<NodeSet> cyclic_classes;
  /// Only set when strongly connected.
  std::optional<bool> rebel_bipartite;
  std::optional<Cycle> witness_cycle;
  std::vector<NodeSet> closed_groups;
};

bool strongly_connected(const Topology& t);

/// gcd of all directed cycle lengths, from BFS levels: gcd over edges u -> v
/// of |dist(u) + 1 - dist(v)|. Throws NotStronglyConnected.
std::size_t period(const Topology& t);

/// Classes N_0 ... N_{h-1} such that every edge goes from N_l to N_{l+1 mod h}.
/// N_l holds the nodes whose BFS distance from node 0 is l mod h.
/// Throws NotStronglyConnected, or Aperiodic when h = 1.
std::vector<NodeSet> cyclic_partition(const Topology& t);

/// Whether no directed cycle carries an odd number of rebels.
///
/// Labels nodes with a parity bit by DFS from node 0: crossing an edge j -> k
/// flips the bit iff j is a rebel. The graph is rebel-bipartite iff every edge
/// agrees with the labelling. A disagreeing edge yields an odd closed walk,
/// which is split into simple cycles to extract the witness.
/// Throws NotStronglyConnected or DimensionMismatch.
RebelBipartiteResult rebel_bipartite(const Topology& t, const AgentTypes& types);

/// Brute-force enumeration of all simple directed cycles, each rotated so its
/// smallest node is first; sorted lexicographically. Throws TooLarge when
/// n > max_n.
CycleList enumerate_cycles(const Topology& t, std::size_t max_n = 8);

/// Strongly connected components, in ascending order of smallest member,
/// members sorted (iterative Tarjan).
std::vector<NodeSet> strongly_connected_components(const Topology& t);

/// Strongly connected components with no edge leaving them.
std::vector<NodeSet> closed_groups(const Topology& t);

/// Full structural summary. Period, classes and the rebel-bipartite verdict
/// are filled only for strongly connected topologies.
StructureReport analyze_structure(const Topology& t, const AgentTypes& types);

/// Random topology where every node gets exactly `out_degree` distinct
/// out-neighbours (never itself) with positive weights normalised to row sum
/// 1. With `require_strongly_connected` a random Hamiltonian cycle is
/// embedded first. Deterministic in `seed` for a given standard library.
/// Throws InvalidDegree unless 1 <= out_degree <= n - 1; TooSmall if n < 2.
Topology generate_random(std::size_t n, std::size_t out_degree, std::uint64_t seed,
                         bool require_strongly_connected);

}  // namespace degroot
