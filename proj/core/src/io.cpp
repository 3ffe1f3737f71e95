#include "degroot/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <utility>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "degroot/error.hpp"

namespace degroot {

using nlohmann::json;

Topology topology_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("edges")) {
    throw Error(ErrorCode::ParseError, "topology must be an object with \"n\" and \"edges\"");
  }
  if (!doc["n"].is_number_integer() || doc["n"].get<long long>() < 0) {
    throw Error(ErrorCode::ParseError, "\"n\" must be a nonnegative integer");
  }
  if (!doc["edges"].is_array()) {
    throw Error(ErrorCode::ParseError, "\"edges\" must be an array");
  }
  const auto n = doc["n"].get<long long>();
  Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(n, n);
  std::set<std::pair<long long, long long>> seen;
  for (const auto& edge : doc["edges"]) {
    if (!edge.is_array() || edge.size() != 3 || !edge[0].is_number_integer() ||
        !edge[1].is_number_integer() || !edge[2].is_number()) {
      throw Error(ErrorCode::ParseError, fmt::format("malformed edge {}", edge.dump()));
    }
    const auto j = edge[0].get<long long>();
    const auto k = edge[1].get<long long>();
    if (j < 0 || j >= n || k < 0 || k >= n) {
      throw Error(ErrorCode::InvalidEdge, fmt::format("edge ({}, {}) outside 0..{}", j, k, n - 1));
    }
    if (!seen.emplace(j, k).second) {
      throw Error(ErrorCode::InvalidEdge, fmt::format("duplicate edge ({}, {})", j, k));
    }
    weights(j, k) = edge[2].get<double>();
  }
  return Topology::validate(std::move(weights));
}

Topology read_topology(std::istream& in) {
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return topology_from_json(doc);
}

Topology read_topology_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  return read_topology(in);
}

void write_topology(std::ostream& out, const Topology& t) {
  fmt::print(out, "{{\n  \"n\": {},\n  \"edges\": [", t.size());
  bool first = true;
  for (std::size_t j = 0; j < t.size(); ++j) {
    for (auto k : t.successors(j)) {
      fmt::print(out, "{}\n    [{}, {}, {:.17g}]", first ? "" : ",", j, k, t.weight(j, k));
      first = false;
    }
  }
  fmt::print(out, "\n  ]\n}}\n");
}

void write_topology_file(const std::filesystem::path& path, const Topology& t) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path.string());
  write_topology(out, t);
}

json to_json(const StructureReport& report) {
  json j;
  j["strongly_connected"] = report.strongly_connected;
  j["period"] = report.period ? json(*report.period) : json(nullptr);
  j["cyclic_classes"] = report.cyclic_classes;
  j["rebel_bipartite"] = report.rebel_bipartite ? json(*report.rebel_bipartite) : json(nullptr);
  j["witness_cycle"] = report.witness_cycle ? json(*report.witness_cycle) : json(nullptr);
  j["closed_groups"] = report.closed_groups;
  return j;
}

json to_json(const SpectralReport& report) {
  json values = json::array();
  for (const auto& r : report.eigenvalues) values.push_back({r.real(), r.imag()});
  return {
      {"eigenvalues", std::move(values)},
      {"spectral_radius", report.spectral_radius},
      {"has_minus_one", report.has_minus_one},
      {"has_one_in_signed", report.has_one_in_signed},
      {"signed_radius", report.signed_radius},
      {"rate", report.rate},
  };
}

json to_json(const Prediction& prediction) {
  json basis = json::array();
  for (auto b : prediction.basis) basis.push_back(to_string(b));
  json j{
      {"verdict", to_string(prediction.verdict)},
      {"basis", std::move(basis)},
      {"rebel_bipartite_note", prediction.rebel_bipartite_note},
  };
  if (!prediction.note.empty()) j["note"] = prediction.note;
  return j;
}

std::string verdict_name(const RunVerdict& verdict) {
  struct {
    std::string operator()(const ConvergedTo&) const { return "ConvergedTo"; }
    std::string operator()(const PeriodTwoOscillation&) const { return "PeriodTwoOscillation"; }
    std::string operator()(const MaxIterations&) const { return "MaxIterations"; }
  } name;
  return std::visit(name, verdict);
}

json to_json(const RunVerdict& verdict) {
  json j{{"kind", verdict_name(verdict)}};
  if (const auto* c = std::get_if<ConvergedTo>(&verdict)) {
    j["limit"] = c->limit;
  } else if (const auto* o = std::get_if<PeriodTwoOscillation>(&verdict)) {
    j["pair"] = {o->even, o->odd};
  }
  return j;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, std::size_t thin) {
  if (thin == 0) thin = 1;
  const std::size_t n = traj.states.empty() ? 0 : traj.states.front().x.size();
  out << 't';
  for (std::size_t j = 0; j < n; ++j) out << ",x_" << j;
  out << '\n';
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    if (i % thin != 0 && i + 1 != traj.states.size()) continue;
    const auto& s = traj.states[i];
    fmt::print(out, "{}", s.t);
    for (double v : s.x) fmt::print(out, ",{:.17g}", v);
    out << '\n';
  }
}

}  // namespace degroot
