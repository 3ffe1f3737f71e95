#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>

#include <nlohmann/json.hpp>

#include "degroot/dynamics.hpp"
#include "degroot/spectral.hpp"
#include "degroot/topology.hpp"

namespace degroot {

// Topology file: {"n": int, "edges": [[j, k, w], ...]} with 0-based ids.
// Absent pairs have weight 0. The loader runs Topology::validate().

/// Throws ParseError on malformed documents, InvalidEdge on out-of-range or
/// duplicate edges, and ValidationError for invariant violations.
Topology topology_from_json(const nlohmann::json& doc);
Topology read_topology(std::istream& in);
Topology read_topology_file(const std::filesystem::path& path);

/// Weights are written with 17 significant digits so they parse back exactly.
void write_topology(std::ostream& out, const Topology& t);
void write_topology_file(const std::filesystem::path& path, const Topology& t);

nlohmann::json to_json(const StructureReport& report);
nlohmann::json to_json(const SpectralReport& report);
nlohmann::json to_json(const Prediction& prediction);
nlohmann::json to_json(const RunVerdict& verdict);

/// CSV with header `t,x_0,...,x_{n-1}`, one row per kept state. With
/// `thin` > 1 only every thin-th state is kept, plus the final one.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj, std::size_t thin = 1);

std::string verdict_name(const RunVerdict& verdict);

}  // namespace degroot
