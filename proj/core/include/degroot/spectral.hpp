#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "degroot/agents.hpp"
#include "degroot/topology.hpp"

namespace degroot {

/// Largest dimension handled by the dense eigen solver.
inline constexpr std::size_t kMaxDenseSize = 64;
/// Relative threshold for determinant-based singularity tests.
inline constexpr double kDeterminantTolerance = 1e-9;
/// Margin below 1 required of a spectral radius before it counts as < 1.
inline constexpr double kRadiusTolerance = 1e-9;

using Complex = std::complex<double>;

/// All eigenvalues of a dense real matrix with multiplicity (Hessenberg
/// reduction followed by shifted QR), sorted by decreasing modulus.
/// Throws TooLarge above `max_n` and NoConvergence if QR stalls.
std::vector<Complex> eigenvalues(const Eigen::MatrixXd& m, std::size_t max_n = kMaxDenseSize);

double spectral_radius(const std::vector<Complex>& spectrum);

/// |det(m)| < 1e-9 * max(1, ||m||_inf^n), via LU with partial pivoting.
bool singular_by_determinant(const Eigen::MatrixXd& m);

/// -1 in sigma(A), tested as det(I + A) == 0 within tolerance.
bool has_minus_one_eigenvalue(const Topology& t);

/// (2U - I)A: row j of A, negated when j is a rebel.
Eigen::MatrixXd signed_update_matrix(const Topology& t, const AgentTypes& types);

/// B = lambda I + (1 - lambda)(2U - I)A, the linear part of the affine update.
Eigen::MatrixXd iteration_matrix(const Topology& t, const AgentTypes& types, double lambda);

struct SpectralReport {
  std::vector<Complex> eigenvalues;  ///< sigma(A)
  double spectral_radius = 0.0;      ///< rho(A)
  bool has_minus_one = false;        ///< -1 in sigma(A)
  bool has_one_in_signed = false;    ///< 1 in sigma((2U - I)A)
  double signed_radius = 0.0;        ///< rho((2U - I)A)
  double rate = 0.0;                 ///< rho(B), the asymptotic per-step error ratio
};

SpectralReport spectral_report(const Topology& t, const AgentTypes& types, double lambda);

enum class Verdict { ConvergesToMean, Divergent, Frozen, Unknown };

/// Which sufficient condition produced a verdict.
enum class Basis {
  FullConfidence,                ///< lambda = 1: the update is the identity
  AllRebelZeroConfidence,        ///< all rebels, lambda = 0, -1 in sigma(A): oscillation
  AllRebelNoMinusOneEigenvalue,  ///< all rebels, lambda > 0, -1 not in sigma(A)
  AperiodicTopology,             ///< period 1, so -1 cannot be an eigenvalue of A
  SignedRadiusBelowOne,          ///< lambda = 0, rho((2U - I)A) < 1
  SignedSpectrumExcludesOne,     ///< lambda > 0, 1 not in sigma((2U - I)A)
  NotRebelBipartite,             ///< lambda > 0, some cycle carries an odd number of rebels
};

std::string_view to_string(Verdict v) noexcept;
std::string_view to_string(Basis b) noexcept;

struct Prediction {
  Verdict verdict = Verdict::Unknown;
  std::vector<Basis> basis;
  /// Whether the digraph is rebel-bipartite (no cycle with an odd number of
  /// rebels), the structural precondition for non-convergence when lambda > 0.
  bool rebel_bipartite_note = false;
  /// Free-text detail for Unknown verdicts; empty otherwise.
  std::string note;
};

/// Convergence prediction for a strongly connected topology and uniform
/// confidence. Decision ladder:
///   lambda = 1                 -> Frozen
///   all rebels, lambda = 0     -> Divergent if -1 in sigma(A), else Unknown
///   all rebels, 0 < lambda < 1 -> ConvergesToMean unless -1 in sigma(A)
///   otherwise,  lambda = 0     -> ConvergesToMean if rho((2U-I)A) < 1
///   otherwise,  0 < lambda < 1 -> ConvergesToMean if 1 not in sigma((2U-I)A),
///                                 or if the graph is not rebel-bipartite
/// Throws NotStronglyConnected, LambdaOutOfRange, DimensionMismatch.
Prediction predict(const Topology& t, const AgentTypes& types, double lambda);
/// As above; throws NonUniformLambda when the confidence levels differ.
Prediction predict(const Topology& t, const AgentTypes& types, const Confidence& confidence);

/// rho(B) for an instance predicted to converge to the mean. Throws
/// NotConvergent for any other verdict.
double predicted_rate(const Topology& t, const AgentTypes& types, double lambda);

}  // namespace degroot
