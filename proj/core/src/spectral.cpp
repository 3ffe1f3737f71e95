#include "degroot/spectral.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <fmt/format.h>

#include "degroot/error.hpp"

namespace degroot {
namespace {

void check_dimensions(const Topology& t, const AgentTypes& types) {
  if (types.size() != t.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("{} agent types for {} agents", types.size(), t.size()));
  }
}

void check_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::LambdaOutOfRange, fmt::format("lambda = {} outside [0,1]", lambda));
  }
}

Eigen::MatrixXd identity_like(const Topology& t) {
  const auto n = static_cast<Eigen::Index>(t.size());
  return Eigen::MatrixXd::Identity(n, n);
}

}  // namespace

std::vector<Complex> eigenvalues(const Eigen::MatrixXd& m, std::size_t max_n) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch, fmt::format("matrix is {}x{}", m.rows(), m.cols()));
  }
  if (static_cast<std::size_t>(m.rows()) > max_n) {
    throw Error(ErrorCode::TooLarge,
                fmt::format("dense eigen solver limited to n <= {}, got {}", max_n, m.rows()));
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NoConvergence, "QR iteration did not converge");
  }
  const auto& values = solver.eigenvalues();
  std::vector<Complex> out(values.data(), values.data() + values.size());
  std::stable_sort(out.begin(), out.end(),
                   [](const Complex& a, const Complex& b) { return std::abs(a) > std::abs(b); });
  return out;
}

double spectral_radius(const std::vector<Complex>& spectrum) {
  double rho = 0.0;
  for (const auto& r : spectrum) rho = std::max(rho, std::abs(r));
  return rho;
}

bool singular_by_determinant(const Eigen::MatrixXd& m) {
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  const double scale = std::max(1.0, std::pow(norm, static_cast<double>(m.rows())));
  const double det = Eigen::PartialPivLU<Eigen::MatrixXd>(m).determinant();
  return std::abs(det) < kDeterminantTolerance * scale;
}

bool has_minus_one_eigenvalue(const Topology& t) {
  return singular_by_determinant(identity_like(t) + t.weights());
}

Eigen::MatrixXd signed_update_matrix(const Topology& t, const AgentTypes& types) {
  check_dimensions(t, types);
  Eigen::MatrixXd s = t.weights();
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (types.is_rebel(j)) s.row(static_cast<Eigen::Index>(j)) *= -1.0;
  }
  return s;
}

Eigen::MatrixXd iteration_matrix(const Topology& t, const AgentTypes& types, double lambda) {
  check_lambda(lambda);
  return lambda * identity_like(t) + (1.0 - lambda) * signed_update_matrix(t, types);
}

SpectralReport spectral_report(const Topology& t, const AgentTypes& types, double lambda) {
  SpectralReport report;
  const Eigen::MatrixXd signed_matrix = signed_update_matrix(t, types);
  report.eigenvalues = eigenvalues(t.weights());
  report.spectral_radius = spectral_radius(report.eigenvalues);
  report.has_minus_one = has_minus_one_eigenvalue(t);
  report.has_one_in_signed = singular_by_determinant(identity_like(t) - signed_matrix);
  report.signed_radius = spectral_radius(eigenvalues(signed_matrix));
  report.rate = spectral_radius(eigenvalues(iteration_matrix(t, types, lambda)));
  return report;
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::ConvergesToMean: return "ConvergesToMean";
    case Verdict::Divergent: return "Divergent";
    case Verdict::Frozen: return "Frozen";
    case Verdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::string_view to_string(Basis b) noexcept {
  switch (b) {
    case Basis::FullConfidence: return "FullConfidence";
    case Basis::AllRebelZeroConfidence: return "AllRebelZeroConfidence";
    case Basis::AllRebelNoMinusOneEigenvalue: return "AllRebelNoMinusOneEigenvalue";
    case Basis::AperiodicTopology: return "AperiodicTopology";
    case Basis::SignedRadiusBelowOne: return "SignedRadiusBelowOne";
    case Basis::SignedSpectrumExcludesOne: return "SignedSpectrumExcludesOne";
    case Basis::NotRebelBipartite: return "NotRebelBipartite";
  }
  return "Unknown";
}

Prediction predict(const Topology& t, const AgentTypes& types, double lambda) {
  check_dimensions(t, types);
  check_lambda(lambda);
  if (!strongly_connected(t)) {
    throw Error(ErrorCode::NotStronglyConnected, "prediction requires a strongly connected topology");
  }

  Prediction p;
  p.rebel_bipartite_note = rebel_bipartite(t, types).rebel_bipartite;

  if (lambda == 1.0) {
    p.verdict = Verdict::Frozen;
    p.basis = {Basis::FullConfidence};
    return p;
  }

  if (types.all_rebel()) {
    const bool minus_one = has_minus_one_eigenvalue(t);
    if (lambda == 0.0) {
      if (minus_one) {
        p.verdict = Verdict::Divergent;
        p.basis = {Basis::AllRebelZeroConfidence};
      } else {
        p.note = "lambda = 0 with all rebels: rho(-A) = 1 but -1 is not an eigenvalue of A";
      }
      return p;
    }
    if (!minus_one) {
      p.verdict = Verdict::ConvergesToMean;
      p.basis = {Basis::AllRebelNoMinusOneEigenvalue};
      if (period(t) == 1) p.basis.push_back(Basis::AperiodicTopology);
    } else {
      p.note = "-1 is an eigenvalue of A, so the iteration matrix has eigenvalue 1";
    }
    return p;
  }

  const Eigen::MatrixXd signed_matrix = signed_update_matrix(t, types);
  if (lambda == 0.0) {
    const double radius = spectral_radius(eigenvalues(signed_matrix));
    if (radius < 1.0 - kRadiusTolerance) {
      p.verdict = Verdict::ConvergesToMean;
      p.basis = {Basis::SignedRadiusBelowOne};
    } else {
      p.note = fmt::format("rho((2U-I)A) = {:.17g} is not below 1", radius);
    }
    return p;
  }

  if (!singular_by_determinant(identity_like(t) - signed_matrix)) {
    p.verdict = Verdict::ConvergesToMean;
    p.basis = {Basis::SignedSpectrumExcludesOne};
  } else if (!p.rebel_bipartite_note) {
    // Non-convergence forces a rebel-bipartite digraph; without one, the
    // determinant test has flagged a numerically near-singular but regular case.
    p.verdict = Verdict::ConvergesToMean;
    p.basis = {Basis::NotRebelBipartite};
  } else {
    p.note = "1 is an eigenvalue of (2U-I)A and the digraph is rebel-bipartite";
  }
  return p;
}

Prediction predict(const Topology& t, const AgentTypes& types, const Confidence& confidence) {
  if (confidence.size() != t.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("{} confidence levels for {} agents", confidence.size(), t.size()));
  }
  return predict(t, types, confidence.common());
}

double predicted_rate(const Topology& t, const AgentTypes& types, double lambda) {
  const auto p = predict(t, types, lambda);
  if (p.verdict != Verdict::ConvergesToMean) {
    throw Error(ErrorCode::NotConvergent,
                fmt::format("no convergence to the mean is predicted (verdict {})", to_string(p.verdict)));
  }
  return spectral_radius(eigenvalues(iteration_matrix(t, types, lambda)));
}

}  // namespace degroot
