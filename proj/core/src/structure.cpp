#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

#include <fmt/format.h>

#include "degroot/error.hpp"
#include "degroot/topology.hpp"

namespace degroot {
namespace {

constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();

void require_strongly_connected(const Topology& t) {
  if (!strongly_connected(t)) {
    throw Error(ErrorCode::NotStronglyConnected, "topology digraph is not strongly connected");
  }
}

std::vector<std::size_t> bfs_levels(const Topology& t, std::size_t root) {
  std::vector<std::size_t> dist(t.size(), kUnset);
  std::queue<std::size_t> frontier;
  dist[root] = 0;
  frontier.push(root);
  while (!frontier.empty()) {
    const auto u = frontier.front();
    frontier.pop();
    for (auto v : t.successors(u)) {
      if (dist[v] == kUnset) {
        dist[v] = dist[u] + 1;
        frontier.push(v);
      }
    }
  }
  return dist;
}

Cycle canonical_rotation(Cycle cycle) {
  std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
  return cycle;
}

std::size_t rebels_on(const Cycle& cycle, const AgentTypes& types) {
  return static_cast<std::size_t>(
      std::count_if(cycle.begin(), cycle.end(), [&](std::size_t v) { return types.is_rebel(v); }));
}

// Splits a closed walk v_0 ... v_m (v_m == v_0, not repeated in `walk`) into
// simple cycles and returns the first one with an odd rebel count.
std::optional<Cycle> odd_cycle_in_walk(const std::vector<std::size_t>& walk, const AgentTypes& types) {
  std::vector<std::size_t> stack;
  std::vector<std::size_t> position(types.size(), kUnset);
  auto visit = [&](std::size_t v) -> std::optional<Cycle> {
    if (position[v] != kUnset) {
      const auto start = position[v];
      Cycle cycle(stack.begin() + static_cast<std::ptrdiff_t>(start), stack.end());
      for (std::size_t i = start + 1; i < stack.size(); ++i) position[stack[i]] = kUnset;
      stack.resize(start + 1);
      if (rebels_on(cycle, types) % 2 == 1) return cycle;
      return std::nullopt;
    }
    position[v] = stack.size();
    stack.push_back(v);
    return std::nullopt;
  };
  for (auto v : walk) {
    if (auto found = visit(v)) return found;
  }
  return visit(walk.front());
}

}  // namespace

std::vector<NodeSet> strongly_connected_components(const Topology& t) {
  const auto n = t.size();
  std::vector<std::size_t> index(n, kUnset);
  std::vector<std::size_t> lowlink(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<NodeSet> components;
  std::size_t counter = 0;

  struct Frame {
    std::size_t node;
    std::size_t next_child;
  };
  std::vector<Frame> call;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    call.push_back({root, 0});
    index[root] = lowlink[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!call.empty()) {
      auto& frame = call.back();
      const auto v = frame.node;
      const auto& succ = t.successors(v);
      if (frame.next_child < succ.size()) {
        const auto w = succ[frame.next_child++];
        if (index[w] == kUnset) {
          index[w] = lowlink[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[v] = std::min(lowlink[v], index[w]);
        }
        continue;
      }
      if (lowlink[v] == index[v]) {
        NodeSet component;
        std::size_t w = kUnset;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component.push_back(w);
        } while (w != v);
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
      }
      call.pop_back();
      if (!call.empty()) {
        const auto parent = call.back().node;
        lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
      }
    }
  }
  std::sort(components.begin(), components.end(),
            [](const NodeSet& a, const NodeSet& b) { return a.front() < b.front(); });
  return components;
}

bool strongly_connected(const Topology& t) {
  return strongly_connected_components(t).size() == 1;
}

std::size_t period(const Topology& t) {
  require_strongly_connected(t);
  const auto dist = bfs_levels(t, 0);
  std::size_t h = 0;
  for (std::size_t u = 0; u < t.size(); ++u) {
    for (auto v : t.successors(u)) {
      const auto a = dist[u] + 1;
      const auto b = dist[v];
      h = std::gcd(h, a > b ? a - b : b - a);
    }
  }
  return h;
}

std::vector<NodeSet> cyclic_partition(const Topology& t) {
  const auto h = period(t);
  if (h == 1) {
    throw Error(ErrorCode::Aperiodic, "aperiodic topology admits no nontrivial cyclic partition");
  }
  const auto dist = bfs_levels(t, 0);
  std::vector<NodeSet> classes(h);
  for (std::size_t v = 0; v < t.size(); ++v) classes[dist[v] % h].push_back(v);
  return classes;
}

RebelBipartiteResult rebel_bipartite(const Topology& t, const AgentTypes& types) {
  const auto n = t.size();
  if (types.size() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("{} agent types for {} agents", types.size(), n));
  }
  require_strongly_connected(t);

  // Parity labels along a DFS tree rooted at 0.
  std::vector<int> label(n, -1);
  std::vector<std::size_t> parent(n, kUnset);
  std::vector<std::size_t> pending{0};
  label[0] = 0;
  while (!pending.empty()) {
    const auto j = pending.back();
    pending.pop_back();
    const int flip = types.is_rebel(j) ? 1 : 0;
    for (auto k : t.successors(j)) {
      if (label[k] == -1) {
        label[k] = label[j] ^ flip;
        parent[k] = j;
        pending.push_back(k);
      }
    }
  }

  for (std::size_t j = 0; j < n; ++j) {
    const int flip = types.is_rebel(j) ? 1 : 0;
    for (auto k : t.successors(j)) {
      if (label[k] == (label[j] ^ flip)) continue;

      // Tree paths 0 ~> j and 0 ~> k, plus a shortest path k ~> 0 through the
      // reversed graph, give two closed walks whose rebel parities differ.
      auto tree_path = [&](std::size_t v) {
        std::vector<std::size_t> path;
        for (; v != kUnset; v = parent[v]) path.push_back(v);
        std::reverse(path.begin(), path.end());
        return path;
      };
      std::vector<std::size_t> toward_root(n, kUnset);
      {
        std::vector<std::vector<std::size_t>> predecessors(n);
        for (std::size_t u = 0; u < n; ++u) {
          for (auto v : t.successors(u)) predecessors[v].push_back(u);
        }
        std::vector<bool> seen(n, false);
        std::queue<std::size_t> frontier;
        seen[0] = true;
        frontier.push(0);
        while (!frontier.empty()) {
          const auto v = frontier.front();
          frontier.pop();
          for (auto u : predecessors[v]) {
            if (!seen[u]) {
              seen[u] = true;
              toward_root[u] = v;
              frontier.push(u);
            }
          }
        }
      }
      auto return_leg = [&](std::vector<std::size_t>& walk, std::size_t from) {
        for (auto v = toward_root[from]; v != kUnset && v != 0; v = toward_root[v]) walk.push_back(v);
      };

      std::vector<std::size_t> through_edge = tree_path(j);
      through_edge.push_back(k);
      if (k == 0) through_edge.pop_back();
      else return_leg(through_edge, k);

      std::vector<std::size_t> via_tree = tree_path(k);
      if (k != 0) return_leg(via_tree, k);

      auto parity = [&](const std::vector<std::size_t>& walk) {
        std::size_t count = 0;
        for (auto v : walk) count += types.is_rebel(v) ? 1 : 0;
        return count % 2;
      };
      // With k == 0 the tree walk is empty, so the edge walk must be the odd one.
      const auto& odd_walk = (k == 0 || parity(through_edge) == 1) ? through_edge : via_tree;
      auto cycle = odd_cycle_in_walk(odd_walk, types);
      if (!cycle) throw std::logic_error("odd closed walk without an odd simple cycle");
      return {false, canonical_rotation(std::move(*cycle))};
    }
  }
  return {true, std::nullopt};
}

CycleList enumerate_cycles(const Topology& t, std::size_t max_n) {
  const auto n = t.size();
  if (n > max_n) {
    throw Error(ErrorCode::TooLarge,
                fmt::format("cycle enumeration limited to n <= {}, got {}", max_n, n));
  }
  CycleList cycles;
  std::vector<bool> on_path(n, false);
  Cycle path;
  // Cycles are found once each: from their smallest node, through larger nodes only.
  auto extend = [&](auto&& self, std::size_t start, std::size_t v) -> void {
    for (auto w : t.successors(v)) {
      if (w == start) {
        cycles.push_back(path);
      } else if (w > start && !on_path[w]) {
        on_path[w] = true;
        path.push_back(w);
        self(self, start, w);
        path.pop_back();
        on_path[w] = false;
      }
    }
  };
  for (std::size_t start = 0; start < n; ++start) {
    path = {start};
    on_path[start] = true;
    extend(extend, start, start);
    on_path[start] = false;
  }
  std::sort(cycles.begin(), cycles.end());
  return cycles;
}

std::vector<NodeSet> closed_groups(const Topology& t) {
  auto components = strongly_connected_components(t);
  std::vector<std::size_t> component_of(t.size());
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (auto v : components[c]) component_of[v] = c;
  }
  std::vector<NodeSet> closed;
  for (std::size_t c = 0; c < components.size(); ++c) {
    const bool leaks = std::any_of(components[c].begin(), components[c].end(), [&](std::size_t v) {
      const auto& succ = t.successors(v);
      return std::any_of(succ.begin(), succ.end(), [&](std::size_t w) { return component_of[w] != c; });
    });
    if (!leaks) closed.push_back(std::move(components[c]));
  }
  return closed;
}

StructureReport analyze_structure(const Topology& t, const AgentTypes& types) {
  StructureReport report;
  report.strongly_connected = strongly_connected(t);
  report.closed_groups = closed_groups(t);
  if (!report.strongly_connected) return report;

  const auto h = period(t);
  report.period = h;
  if (h == 1) {
    NodeSet all(t.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    report.cyclic_classes.push_back(std::move(all));
  } else {
    report.cyclic_classes = cyclic_partition(t);
  }
  auto verdict = rebel_bipartite(t, types);
  report.rebel_bipartite = verdict.rebel_bipartite;
  report.witness_cycle = std::move(verdict.witness);
  return report;
}

}  // namespace degroot
