#include "degroot/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>
#include <fmt/format.h>

#include "degroot/error.hpp"
#include "degroot/spectral.hpp"

namespace degroot {
namespace {

void check_sizes(std::size_t n, const Topology& t, const AgentTypes& types, const Confidence& c) {
  if (n != t.size() || types.size() != t.size() || c.size() != t.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("state {}, topology {}, types {}, confidence {}", n, t.size(), types.size(),
                            c.size()));
  }
}

template <typename LambdaOf>
OpinionState update(const OpinionState& s, const Topology& t, const AgentTypes& types, LambdaOf lambda_of) {
  const auto n = t.size();
  OpinionState next{std::vector<double>(n), s.t + 1};
  for (std::size_t j = 0; j < n; ++j) {
    const auto& succ = t.successors(j);
    const auto& w = t.out_weights(j);
    double neighbours = 0.0;
    for (std::size_t e = 0; e < succ.size(); ++e) neighbours += w[e] * s.x[succ[e]];
    const double lambda = lambda_of(j);
    const double target = types.is_rebel(j) ? 1.0 - neighbours : neighbours;
    next.x[j] = lambda * s.x[j] + (1.0 - lambda) * target;
  }
  return next;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

OpinionState step(const OpinionState& s, const Topology& t, const AgentTypes& types, const Confidence& c) {
  check_sizes(s.x.size(), t, types, c);
  if (c.is_uniform()) {
    const double lambda = c.common();
    return update(s, t, types, [lambda](std::size_t) { return lambda; });
  }
  return update(s, t, types, [&c](std::size_t j) { return c[j]; });
}

namespace detail {
OpinionState step_per_agent(const OpinionState& s, const Topology& t, const AgentTypes& types,
                            const Confidence& c) {
  check_sizes(s.x.size(), t, types, c);
  return update(s, t, types, [&c](std::size_t j) { return c[j]; });
}
}  // namespace detail

Trajectory run(std::span<const double> x0, const Topology& t, const AgentTypes& types, const Confidence& c,
               const RunOptions& options) {
  check_sizes(x0.size(), t, types, c);
  for (std::size_t j = 0; j < x0.size(); ++j) {
    if (!(x0[j] >= 0.0 && x0[j] <= 1.0)) {
      throw Error(ErrorCode::InvalidInitial, fmt::format("x0[{}] = {} outside [0,1]", j, x0[j]));
    }
  }
  if (!(options.tol_step > 0.0)) {
    throw Error(ErrorCode::InvalidInitial, "step tolerance must be positive");
  }

  Trajectory traj;
  traj.states.push_back({std::vector<double>(x0.begin(), x0.end()), 1});
  std::size_t steady = 0;
  std::size_t alternating = 0;

  for (std::size_t iter = 1; iter <= options.max_iter; ++iter) {
    traj.states.push_back(step(traj.states.back(), t, types, c));
    traj.iterations_used = iter;
    const auto last = traj.states.size() - 1;
    const auto& next = traj.states[last].x;
    const auto& curr = traj.states[last - 1].x;

    steady = max_abs_diff(next, curr) < options.tol_step ? steady + 1 : 0;
    if (steady >= options.window) {
      traj.verdict = ConvergedTo{next};
      return traj;
    }

    if (last >= 2) {
      const auto& prev = traj.states[last - 2].x;
      const bool two_cycle =
          max_abs_diff(next, prev) < options.tol_step && max_abs_diff(curr, prev) >= options.oscillation_floor;
      alternating = two_cycle ? alternating + 1 : 0;
      if (alternating >= options.window) {
        if (last % 2 == 0) {
          traj.verdict = PeriodTwoOscillation{next, curr};
        } else {
          traj.verdict = PeriodTwoOscillation{curr, next};
        }
        return traj;
      }
    }
  }
  traj.verdict = MaxIterations{};
  return traj;
}

std::vector<double> fixed_point_direct(const Topology& t, const AgentTypes& types, double lambda) {
  if (lambda == 1.0) {
    throw Error(ErrorCode::LambdaOne, "lambda = 1 makes every state a fixed point");
  }
  const Eigen::MatrixXd b = iteration_matrix(t, types, lambda);
  const auto n = static_cast<Eigen::Index>(t.size());
  const Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n) - b;
  if (singular_by_determinant(system)) {
    throw Error(ErrorCode::Singular, "I - B is singular: 1 is an eigenvalue of the iteration matrix");
  }
  Eigen::VectorXd rhs(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    rhs(j) = types.is_rebel(static_cast<std::size_t>(j)) ? 1.0 - lambda : 0.0;
  }
  const Eigen::VectorXd x = Eigen::PartialPivLU<Eigen::MatrixXd>(system).solve(rhs);
  return {x.data(), x.data() + x.size()};
}

bool replay_check(const Trajectory& traj, const Topology& t, const AgentTypes& types, const Confidence& c) {
  for (std::size_t i = 0; i + 1 < traj.states.size(); ++i) {
    if (step(traj.states[i], t, types, c) != traj.states[i + 1]) return false;
  }
  return true;
}

bool in_unit_box(std::span<const double> x, double slack) {
  return std::all_of(x.begin(), x.end(), [slack](double v) { return v >= -slack && v <= 1.0 + slack; });
}

double distance_to_constant(std::span<const double> x, double target) {
  double d = 0.0;
  for (double v : x) d = std::max(d, std::abs(v - target));
  return d;
}

double empirical_error_ratio(const Trajectory& traj, std::size_t window, double floor) {
  std::size_t end = traj.states.size();
  while (end > 0 && distance_to_constant(traj.states[end - 1].x, 0.5) < floor) --end;
  if (end < 2) return 0.0;
  const std::size_t last = end - 1;
  const std::size_t first = last >= window ? last - window : 0;
  const double e_first = distance_to_constant(traj.states[first].x, 0.5);
  const double e_last = distance_to_constant(traj.states[last].x, 0.5);
  return std::pow(e_last / e_first, 1.0 / static_cast<double>(last - first));
}

}  // namespace degroot
