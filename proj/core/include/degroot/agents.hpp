#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace degroot {

enum class AgentType { Conformist, Rebel };

/// Per-agent conformist/rebel flags. The diagonal matrix U of the model has
/// u_j = 1 for conformists and u_j = 0 for rebels.
class AgentTypes {
 public:
  AgentTypes() = default;
  explicit AgentTypes(std::vector<AgentType> flags) : flags_(std::move(flags)) {}

  static AgentTypes all_rebels(std::size_t n) { return AgentTypes(std::vector(n, AgentType::Rebel)); }
  static AgentTypes all_conformists(std::size_t n) {
    return AgentTypes(std::vector(n, AgentType::Conformist));
  }
  /// Conformists everywhere except the listed (0-based) indices.
  static AgentTypes with_rebels(std::size_t n, std::span<const std::size_t> rebels);

  std::size_t size() const noexcept { return flags_.size(); }
  AgentType operator[](std::size_t j) const { return flags_[j]; }
  bool is_rebel(std::size_t j) const { return flags_[j] == AgentType::Rebel; }
  /// u_j: 1 for a conformist, 0 for a rebel.
  int u(std::size_t j) const { return is_rebel(j) ? 0 : 1; }

  std::size_t rebel_count() const noexcept;
  bool all_rebel() const noexcept { return rebel_count() == size(); }
  bool none_rebel() const noexcept { return rebel_count() == 0; }
  std::vector<std::size_t> rebel_indices() const;

  const std::vector<AgentType>& flags() const noexcept { return flags_; }

  friend bool operator==(const AgentTypes&, const AgentTypes&) = default;

 private:
  std::vector<AgentType> flags_;
};

/// Confidence levels (self-weights) λ_j in [0,1]. Predictions need a uniform
/// value; the update engine accepts either form.
class Confidence {
 public:
  /// Throws LambdaOutOfRange if `lambda` is outside [0,1].
  static Confidence uniform(double lambda, std::size_t n);
  /// Throws LambdaOutOfRange if any entry is outside [0,1].
  static Confidence per_agent(std::vector<double> lambdas);

  std::size_t size() const noexcept { return lambda_.size(); }
  double operator[](std::size_t j) const { return lambda_[j]; }
  const std::vector<double>& values() const noexcept { return lambda_; }

  /// True iff all entries are equal.
  bool is_uniform() const noexcept { return uniform_; }
  /// The common value. Throws NonUniformLambda when entries differ.
  double common() const;

 private:
  Confidence(std::vector<double> lambdas, bool uniform) : lambda_(std::move(lambdas)), uniform_(uniform) {}

  std::vector<double> lambda_;
  bool uniform_ = true;
};

}  // namespace degroot
