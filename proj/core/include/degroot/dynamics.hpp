#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "degroot/agents.hpp"
#include "degroot/topology.hpp"

namespace degroot {

/// Opinions x(t) in [0,1]^n at step t >= 1.
struct OpinionState {
  std::vector<double> x;
  std::size_t t = 1;

  friend bool operator==(const OpinionState&, const OpinionState&) = default;
};

struct ConvergedTo {
  std::vector<double> limit;
};

/// Alternation between two states; `even` has the parity of the initial step.
struct PeriodTwoOscillation {
  std::vector<double> even;
  std::vector<double> odd;
};

struct MaxIterations {};

using RunVerdict = std::variant<ConvergedTo, PeriodTwoOscillation, MaxIterations>;

struct Trajectory {
  std::vector<OpinionState> states;
  RunVerdict verdict = MaxIterations{};
  std::size_t iterations_used = 0;
};

struct RunOptions {
  double tol_step = 1e-10;
  std::size_t window = 5;
  std::size_t max_iter = 100000;
  /// Minimum ||x(t+1) - x(t)||_inf for a step to count as part of an oscillation.
  double oscillation_floor = 1e-3;
};

/// One synchronous update. Conformist j moves to
///   lambda_j x_j + (1 - lambda_j) sum_k A_jk x_k
/// and rebel j to
///   lambda_j x_j + (1 - lambda_j) (1 - sum_k A_jk x_k),
/// with every agent reading the old state and sums taken in ascending k.
/// Throws DimensionMismatch.
OpinionState step(const OpinionState& s, const Topology& t, const AgentTypes& types, const Confidence& c);

/// Iterates step() from x0 (recorded as t = 1) until one of:
///  - ||x(t+1) - x(t)||_inf < tol_step for `window` consecutive steps: ConvergedTo
///  - ||x(t+2) - x(t)||_inf < tol_step while ||x(t+1) - x(t)||_inf >= oscillation_floor
///    for `window` consecutive steps: PeriodTwoOscillation
///  - max_iter steps taken: MaxIterations
/// Throws InvalidInitial if x0 leaves [0,1]^n, DimensionMismatch on size errors.
Trajectory run(std::span<const double> x0, const Topology& t, const AgentTypes& types, const Confidence& c,
               const RunOptions& options = {});

/// Fixed point of the affine update, solving (I - B) x = (1 - lambda)(I - U) 1
/// by LU with partial pivoting. With at least one rebel and I - B regular the
/// solution is the all-0.5 vector. Throws LambdaOne for lambda = 1 and
/// Singular when I - B is singular (always the case without rebels).
std::vector<double> fixed_point_direct(const Topology& t, const AgentTypes& types, double lambda);

/// True iff each recorded state is exactly step() of its predecessor.
bool replay_check(const Trajectory& traj, const Topology& t, const AgentTypes& types, const Confidence& c);

/// Whether every coordinate lies in [-slack, 1 + slack].
bool in_unit_box(std::span<const double> x, double slack = 0.0);

/// ||x - target * 1||_inf
double distance_to_constant(std::span<const double> x, double target);

/// Geometric-mean per-step contraction of ||x(t) - 0.5 * 1||_inf over the last
/// `window` steps whose error is still above `floor`. The default floor sits
/// a few ulps above 0.5, so a run driven down to roundoff is measured at its
/// deepest resolvable tail. Returns 0 when fewer than two such states exist.
double empirical_error_ratio(const Trajectory& traj, std::size_t window = 50, double floor = 1e-15);

namespace detail {
/// Update using the per-agent confidence vector even when it is uniform.
OpinionState step_per_agent(const OpinionState& s, const Topology& t, const AgentTypes& types,
                            const Confidence& c);
}  // namespace detail

}  // namespace degroot
