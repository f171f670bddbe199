#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tmdyn/budget.hpp"
#include "tmdyn/rational.hpp"

namespace tmdyn {

struct WeightedArc {
  std::size_t from;
  std::size_t to;
  std::int64_t weight;
  std::int64_t label;  // tie-break key only
};

struct WeightedCycle {
  std::vector<std::size_t> vertices;  // vertices[i] is the source of arcs[i]
  std::vector<std::size_t> arcs;      // indices into the arc list, in cycle order
  std::vector<std::int64_t> labels;
  std::int64_t total_weight = 0;

  [[nodiscard]] std::size_t length() const { return arcs.size(); }
  [[nodiscard]] Rational mean() const {
    return {total_weight, static_cast<std::int64_t>(arcs.size())};
  }
};

/// Tarjan's algorithm; components come out in reverse topological order, each sorted.
std::vector<std::vector<std::size_t>> strongly_connected_components(
    std::size_t num_vertices, const std::vector<WeightedArc>& arcs);

/// Exact minimum mean cycle (Karp, per strongly connected component), or nullopt for an acyclic
/// graph.
///
/// The returned cycle is canonical: among cycles whose arcs are all tight for the optimal mean,
/// start at the lowest-numbered vertex on one and repeatedly take the tight arc with the
/// smallest (label, target) that stays in its tight component, until a vertex repeats.
std::optional<WeightedCycle> min_mean_cycle(std::size_t num_vertices,
                                            const std::vector<WeightedArc>& arcs,
                                            Budget& budget);
std::optional<WeightedCycle> min_mean_cycle(std::size_t num_vertices,
                                            const std::vector<WeightedArc>& arcs);

}  // namespace tmdyn
