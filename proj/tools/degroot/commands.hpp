#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "degroot/agents.hpp"
#include "degroot/dynamics.hpp"
#include "degroot/spectral.hpp"
#include "degroot/topology.hpp"

namespace degroot::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kInvalidInput = 2,
  kNonUniformLambda = 3,
  kOscillation = 4,
  kMaxIterations = 5,
};

/// Raw command-line settings. Unset optionals mean "not given"; commands
/// apply their own defaults (verify randomizes whatever is not fixed).
struct RunConfig {
  std::optional<std::filesystem::path> topology_path;
  std::optional<std::string> generate;  ///< "n,d,seed[,sc]"
  std::optional<std::string> rebels;    ///< "all", "none" or "0,3,4"
  std::optional<std::string> lambda;    ///< "0.5" or "0.5,0.2,..."
  std::optional<std::string> x0;        ///< "ones", "rand:SEED" or "0.1,0.9,..."
  double tol = 1e-10;
  std::size_t window = 5;
  std::size_t max_iter = 100000;
  std::size_t thin = 1;
  std::optional<std::filesystem::path> out_dir;
  long long trials = 200;
  std::uint64_t seed = 0;
};

struct GeneratorSpec {
  std::size_t n = 0;
  std::size_t out_degree = 0;
  std::uint64_t seed = 0;
  bool strongly_connected = false;
};

// Parsers for the flag mini-languages. All throw degroot::Error(ParseError).
GeneratorSpec parse_generator(const std::string& text);
AgentTypes parse_rebels(const std::string& text, std::size_t n);
Confidence parse_lambda(const std::string& text, std::size_t n);
std::vector<double> parse_x0(const std::string& text, std::size_t n);

/// Exactly one of --topology / --generate must be given.
Topology resolve_topology(const RunConfig& config);

/// Per-instance analysis document: structure, spectrum, prediction, and one
/// sub-report per closed group when the digraph is not strongly connected.
nlohmann::json analysis_report(const Topology& t, const AgentTypes& types, double lambda);

/// Outcome of one simulated run, in the vocabulary of the verify table.
enum class Outcome { ConvergedToMean, ConvergedElsewhere, PeriodTwoOscillation, MaxIterations };
std::string_view to_string(Outcome o) noexcept;
/// ConvergedTo counts as the mean when ||limit - 0.5 * 1||_inf < 1e-6.
Outcome classify(const RunVerdict& verdict);

struct TrialRecord {
  std::size_t index = 0;
  std::size_t n = 0;
  std::size_t out_degree = 0;
  std::vector<std::size_t> rebels;
  double lambda = 0.0;
  Verdict verdict = Verdict::Unknown;
  Outcome outcome = Outcome::MaxIterations;
  bool failure = false;
  /// Every recorded state stayed in [0,1]^n up to a few ulps.
  bool box_ok = true;
};

struct VerifySummary {
  std::vector<TrialRecord> trials;
  std::map<std::string, std::map<std::string, std::size_t>> table;
  std::size_t failures = 0;
  std::size_t box_violations = 0;
};

/// Randomized audit of predictions against simulation. Components fixed in
/// `config` (topology, rebels, lambda, x0) are used as given; the rest are
/// drawn per trial from a generator seeded by (seed, trial index):
///   n in [3,10], out-degree in [1,n-1], rebel count in [0,n],
///   lambda in {0, 0.1, ..., 0.9}, x0 uniform in [0,1]^n.
/// Trials run on a thread pool; results are ordered by trial index.
VerifySummary run_verification(const RunConfig& config);
nlohmann::json to_json(const VerifySummary& summary, const RunConfig& config);

// Commands return a process exit code; errors are reported on `err`.
int cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_generate(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace degroot::cli
