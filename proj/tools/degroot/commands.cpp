#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "degroot/error.hpp"
#include "degroot/io.hpp"

namespace degroot::cli {
namespace {

using nlohmann::json;

constexpr double kMeanTolerance = 1e-6;
constexpr double kBoxSlack = 4 * std::numeric_limits<double>::epsilon();

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, sep);) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

template <typename T>
T parse_number(const std::string& token, std::string_view what) {
  T value{};
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (token.empty() || ec != std::errc() || ptr != last) {
    throw Error(ErrorCode::ParseError, fmt::format("cannot parse {} from '{}'", what, token));
  }
  return value;
}

std::vector<double> parse_reals(const std::string& text, std::string_view what) {
  std::vector<double> values;
  for (const auto& token : split(text, ',')) values.push_back(parse_number<double>(token, what));
  return values;
}

void write_json_file(const std::filesystem::path& dir, const std::string& name, const json& doc) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / name);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + (dir / name).string());
  out << doc.dump(2) << '\n';
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::NonUniformLambda ? kNonUniformLambda : kInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
}

std::optional<Prediction> prediction_if_defined(const Topology& t, const AgentTypes& types, const Confidence& c) {
  if (!c.is_uniform() || t.size() > kMaxDenseSize || !strongly_connected(t)) return std::nullopt;
  return predict(t, types, c.common());
}

}  // namespace

GeneratorSpec parse_generator(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 3 && parts.size() != 4) {
    throw Error(ErrorCode::ParseError, fmt::format("--generate expects n,d,seed[,sc], got '{}'", text));
  }
  GeneratorSpec spec;
  spec.n = parse_number<std::size_t>(parts[0], "n");
  spec.out_degree = parse_number<std::size_t>(parts[1], "out-degree");
  spec.seed = parse_number<std::uint64_t>(parts[2], "seed");
  if (parts.size() == 4) {
    if (parts[3] == "sc" || parts[3] == "1" || parts[3] == "true") {
      spec.strongly_connected = true;
    } else if (parts[3] != "0" && parts[3] != "false") {
      throw Error(ErrorCode::ParseError, fmt::format("unknown generator flag '{}'", parts[3]));
    }
  }
  return spec;
}

AgentTypes parse_rebels(const std::string& text, std::size_t n) {
  if (text == "all") return AgentTypes::all_rebels(n);
  if (text == "none") return AgentTypes::all_conformists(n);
  std::vector<std::size_t> rebels;
  for (const auto& token : split(text, ',')) rebels.push_back(parse_number<std::size_t>(token, "rebel index"));
  try {
    return AgentTypes::with_rebels(n, rebels);
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

Confidence parse_lambda(const std::string& text, std::size_t n) {
  auto values = parse_reals(text, "lambda");
  if (values.size() == 1) return Confidence::uniform(values.front(), n);
  if (values.size() != n) {
    throw Error(ErrorCode::ParseError, fmt::format("{} lambda values for {} agents", values.size(), n));
  }
  return Confidence::per_agent(std::move(values));
}

std::vector<double> parse_x0(const std::string& text, std::size_t n) {
  if (text == "ones") return std::vector<double>(n, 1.0);
  if (text.starts_with("rand:")) {
    std::mt19937_64 rng(parse_number<std::uint64_t>(text.substr(5), "x0 seed"));
    std::uniform_real_distribution<double> draw(0.0, 1.0);
    std::vector<double> x(n);
    for (auto& v : x) v = draw(rng);
    return x;
  }
  auto x = parse_reals(text, "x0");
  if (x.size() != n) {
    throw Error(ErrorCode::ParseError, fmt::format("{} initial opinions for {} agents", x.size(), n));
  }
  return x;
}

Topology resolve_topology(const RunConfig& config) {
  if (config.topology_path.has_value() == config.generate.has_value()) {
    throw Error(ErrorCode::ParseError, "give exactly one of --topology or --generate");
  }
  if (config.topology_path) return read_topology_file(*config.topology_path);
  const auto spec = parse_generator(*config.generate);
  return generate_random(spec.n, spec.out_degree, spec.seed, spec.strongly_connected);
}

json analysis_report(const Topology& t, const AgentTypes& types, double lambda) {
  const auto structure = analyze_structure(t, types);
  json report{
      {"n", t.size()},
      {"lambda", lambda},
      {"rebels", types.rebel_indices()},
      {"structure", to_json(structure)},
      {"spectral", to_json(spectral_report(t, types, lambda))},
      {"prediction", nullptr},
      {"predicted_rate", nullptr},
  };
  if (structure.strongly_connected) {
    const auto p = predict(t, types, lambda);
    report["prediction"] = to_json(p);
    if (p.verdict == Verdict::ConvergesToMean) report["predicted_rate"] = predicted_rate(t, types, lambda);
    return report;
  }
  json groups = json::array();
  for (const auto& nodes : structure.closed_groups) {
    std::vector<AgentType> flags;
    for (auto v : nodes) flags.push_back(types[v]);
    json sub = analysis_report(t.induced(nodes), AgentTypes(std::move(flags)), lambda);
    sub["nodes"] = nodes;
    groups.push_back(std::move(sub));
  }
  report["groups"] = std::move(groups);
  return report;
}

std::string_view to_string(Outcome o) noexcept {
  switch (o) {
    case Outcome::ConvergedToMean: return "ConvergedToMean";
    case Outcome::ConvergedElsewhere: return "ConvergedElsewhere";
    case Outcome::PeriodTwoOscillation: return "PeriodTwoOscillation";
    case Outcome::MaxIterations: return "MaxIterations";
  }
  return "MaxIterations";
}

Outcome classify(const RunVerdict& verdict) {
  if (const auto* c = std::get_if<ConvergedTo>(&verdict)) {
    return distance_to_constant(c->limit, 0.5) < kMeanTolerance ? Outcome::ConvergedToMean
                                                                 : Outcome::ConvergedElsewhere;
  }
  if (std::holds_alternative<PeriodTwoOscillation>(verdict)) return Outcome::PeriodTwoOscillation;
  return Outcome::MaxIterations;
}

VerifySummary run_verification(const RunConfig& config) {
  if (config.trials < 1) {
    throw Error(ErrorCode::ParseError, fmt::format("--trials must be at least 1, got {}", config.trials));
  }
  const auto trials = static_cast<std::size_t>(config.trials);
  std::optional<Topology> fixed_topology;
  if (config.topology_path || config.generate) fixed_topology = resolve_topology(config);

  RunOptions options;
  options.tol_step = config.tol;
  options.window = config.window;
  options.max_iter = config.max_iter;

  VerifySummary summary;
  summary.trials.resize(trials);

  auto run_trial = [&](std::size_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                      static_cast<std::uint32_t>(index)};
    std::mt19937_64 rng(seq);
    // Draw every component in a fixed order so fixing one leaves the others unchanged.
    const auto n_drawn = std::uniform_int_distribution<std::size_t>(3, 10)(rng);
    const auto d_drawn = std::uniform_int_distribution<std::size_t>(1, n_drawn - 1)(rng);
    const auto topo_seed = rng();
    const auto rebel_count_drawn = std::uniform_int_distribution<std::size_t>(0, n_drawn)(rng);
    const auto lambda_step = std::uniform_int_distribution<int>(0, 9)(rng);
    const auto x0_seed = rng();

    TrialRecord record;
    record.index = index;
    const Topology t = fixed_topology ? *fixed_topology : generate_random(n_drawn, d_drawn, topo_seed, true);
    const auto n = t.size();
    record.n = n;
    record.out_degree = fixed_topology ? 0 : d_drawn;

    AgentTypes types;
    if (config.rebels) {
      types = parse_rebels(*config.rebels, n);
    } else {
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::shuffle(order.begin(), order.end(), rng);
      order.resize(std::min(rebel_count_drawn, n));
      types = AgentTypes::with_rebels(n, order);
    }
    const Confidence confidence = config.lambda ? parse_lambda(*config.lambda, n)
                                                : Confidence::uniform(lambda_step / 10.0, n);
    std::vector<double> x0;
    if (config.x0) {
      x0 = parse_x0(*config.x0, n);
    } else {
      std::mt19937_64 x_rng(x0_seed);
      std::uniform_real_distribution<double> draw(0.0, 1.0);
      x0.resize(n);
      for (auto& v : x0) v = draw(x_rng);
    }

    record.rebels = types.rebel_indices();
    record.lambda = confidence.common();
    record.verdict = predict(t, types, confidence).verdict;
    const auto traj = run(x0, t, types, confidence, options);
    record.outcome = classify(traj.verdict);
    record.box_ok = std::all_of(traj.states.begin(), traj.states.end(),
                                [](const OpinionState& s) { return in_unit_box(s.x, kBoxSlack); });
    record.failure = record.verdict == Verdict::ConvergesToMean && record.outcome != Outcome::ConvergedToMean;
    summary.trials[index] = std::move(record);
  };

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), trials));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (auto i = next++; i < trials; i = next++) {
          try {
            run_trial(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = trials;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);

  for (const auto& record : summary.trials) {
    ++summary.table[std::string(to_string(record.verdict))][std::string(to_string(record.outcome))];
    if (record.failure) ++summary.failures;
    if (!record.box_ok) ++summary.box_violations;
  }
  return summary;
}

json to_json(const VerifySummary& summary, const RunConfig& config) {
  json instances = json::array();
  for (const auto& r : summary.trials) {
    instances.push_back({
        {"trial", r.index},
        {"n", r.n},
        {"out_degree", r.out_degree},
        {"rebels", r.rebels},
        {"lambda", r.lambda},
        {"verdict", to_string(r.verdict)},
        {"outcome", to_string(r.outcome)},
        {"failure", r.failure},
        {"box_ok", r.box_ok},
    });
  }
  return {
      {"trials", summary.trials.size()},
      {"seed", config.seed},
      {"failures", summary.failures},
      {"box_violations", summary.box_violations},
      {"table", summary.table},
      {"instances", std::move(instances)},
  };
}

int cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Topology t = resolve_topology(config);
    const auto types = parse_rebels(config.rebels.value_or("all"), t.size());
    const auto confidence = parse_lambda(config.lambda.value_or("0.5"), t.size());
    const json report = analysis_report(t, types, confidence.common());
    if (config.out_dir) write_json_file(*config.out_dir, "report.json", report);
    out << report.dump(2) << '\n';
    return kOk;
  });
}

int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Topology t = resolve_topology(config);
    const auto n = t.size();
    const auto types = parse_rebels(config.rebels.value_or("all"), n);
    const auto confidence = parse_lambda(config.lambda.value_or("0.5"), n);
    const auto x0 = parse_x0(config.x0.value_or("ones"), n);

    RunOptions options;
    options.tol_step = config.tol;
    options.window = config.window;
    options.max_iter = config.max_iter;
    const auto traj = run(x0, t, types, confidence, options);

    const auto prediction = prediction_if_defined(t, types, confidence);
    const bool frozen = std::all_of(confidence.values().begin(), confidence.values().end(),
                                    [](double l) { return l == 1.0; });
    const auto& final_state = traj.states.back().x;
    json verdict{
        {"verdict", to_json(traj.verdict)},
        {"outcome", to_string(classify(traj.verdict))},
        {"iterations_used", traj.iterations_used},
        {"frozen", frozen},
        {"final_state", final_state},
        {"distance_to_mean", distance_to_constant(final_state, 0.5)},
        {"prediction", prediction ? to_json(*prediction) : json(nullptr)},
    };

    const auto dir = config.out_dir.value_or(".");
    std::filesystem::create_directories(dir);
    {
      std::ofstream csv(dir / "trajectory.csv");
      if (!csv) throw Error(ErrorCode::ParseError, "cannot write " + (dir / "trajectory.csv").string());
      write_trajectory_csv(csv, traj, config.thin);
    }
    write_json_file(dir, "verdict.json", verdict);
    out << verdict.dump(2) << '\n';

    if (std::holds_alternative<PeriodTwoOscillation>(traj.verdict)) return kOscillation;
    if (std::holds_alternative<MaxIterations>(traj.verdict)) return kMaxIterations;
    return kOk;
  });
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto summary = run_verification(config);
    const json doc = to_json(summary, config);
    if (config.out_dir) write_json_file(*config.out_dir, "verify.json", doc);
    out << doc.dump(2) << '\n';
    if (summary.failures > 0) {
      err << fmt::format("verification failed: {} of {} trials contradict a ConvergesToMean verdict\n",
                         summary.failures, summary.trials.size());
      return kVerificationFailed;
    }
    return kOk;
  });
}

int cmd_generate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!config.generate) throw Error(ErrorCode::ParseError, "generate needs --generate n,d,seed[,sc]");
    const auto spec = parse_generator(*config.generate);
    const auto t = generate_random(spec.n, spec.out_degree, spec.seed, spec.strongly_connected);
    if (config.out_dir) {
      std::filesystem::create_directories(*config.out_dir);
      write_topology_file(*config.out_dir / "topology.json", t);
    } else {
      write_topology(out, t);
    }
    return kOk;
  });
}

}  // namespace degroot::cli
