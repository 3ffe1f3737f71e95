#include "degroot/agents.hpp"

#include <algorithm>
#include <string>

#include "degroot/error.hpp"

namespace degroot {

AgentTypes AgentTypes::with_rebels(std::size_t n, std::span<const std::size_t> rebels) {
  std::vector<AgentType> flags(n, AgentType::Conformist);
  for (std::size_t j : rebels) {
    if (j >= n) {
      throw Error(ErrorCode::DimensionMismatch,
                  "rebel index " + std::to_string(j) + " out of range for n = " + std::to_string(n));
    }
    flags[j] = AgentType::Rebel;
  }
  return AgentTypes(std::move(flags));
}

std::size_t AgentTypes::rebel_count() const noexcept {
  return static_cast<std::size_t>(std::count(flags_.begin(), flags_.end(), AgentType::Rebel));
}

std::vector<std::size_t> AgentTypes::rebel_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < flags_.size(); ++j) {
    if (is_rebel(j)) out.push_back(j);
  }
  return out;
}

namespace {

void check_range(double lambda, std::size_t j) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::LambdaOutOfRange,
                "confidence of agent " + std::to_string(j) + " is " + std::to_string(lambda) +
                    ", expected a value in [0,1]");
  }
}

}  // namespace

Confidence Confidence::uniform(double lambda, std::size_t n) {
  check_range(lambda, 0);
  return Confidence(std::vector(n, lambda), true);
}

Confidence Confidence::per_agent(std::vector<double> lambdas) {
  for (std::size_t j = 0; j < lambdas.size(); ++j) check_range(lambdas[j], j);
  const bool uniform =
      std::adjacent_find(lambdas.begin(), lambdas.end(), std::not_equal_to<>()) == lambdas.end();
  return Confidence(std::move(lambdas), uniform);
}

double Confidence::common() const {
  if (!uniform_) {
    throw Error(ErrorCode::NonUniformLambda, "confidence levels differ across agents");
  }
  return lambda_.empty() ? 0.0 : lambda_.front();
}

}  // namespace degroot
