#pragma once

#include <optional>
#include <string>

#include "tmdyn/budget.hpp"
#include "tmdyn/crossing.hpp"
#include "tmdyn/cycles.hpp"
#include "tmdyn/machine.hpp"
#include "tmdyn/rational.hpp"
#include "tmdyn/sft.hpp"
#include "tmdyn/simulate.hpp"

namespace tmdyn {

/// Minimum mean cycle of a crossing graph (edge weights = steps, tie-break labels = symbols).
std::optional<WeightedCycle> min_mean_cycle(const CrossingGraph& graph, Budget& budget);

struct SpeedLowerBound {
  Rational value;                      // 0 when neither graph has a cycle
  std::optional<WeightedCycle> cycle;  // arcs index graph.edges
  CrossingGraph graph;                 // the graph the cycle lives in
  bool from_mirror = false;
  bool stay_extension_used = false;
};

/// Best speed realized by a cycle of G_k, over the machine and its mirror.
SpeedLowerBound speed_lower(const TuringMachine& machine, std::size_t k, Budget& budget);
SpeedLowerBound speed_lower(CrossingAnalyzer& machine, CrossingAnalyzer& mirrored, std::size_t k,
                            Budget& budget);

struct PeriodicCertificate {
  UltimatelyPeriodicConfiguration config;
  std::vector<std::size_t> access_path;  // edge indices from an initial vertex to the cycle
  std::vector<std::size_t> cycle_path;   // edge indices of the cycle, rotated to start at the entry
  Rational claimed;                      // cycle length / cycle weight
  std::size_t horizon = 0;
  std::size_t visited = 0;
  Rational measured;                     // visited / horizon
  bool verified = false;                 // measured within 10% of claimed
};

/// Ultimately periodic configuration following the shortest access path to the cycle and then
/// the cycle forever, together with a simulated check of its speed. Throws std::invalid_argument
/// when no initial vertex reaches the cycle.
PeriodicCertificate periodic_certificate(const TuringMachine& machine, const CrossingGraph& graph,
                                         const WeightedCycle& cycle);

struct ExactSpeed {
  std::size_t k = 0;
  std::uint64_t K = 0;
  std::optional<Rational> value;  // nullopt: infeasible
  std::string reason;             // why it was infeasible
};

/// Exact maximum speed from the graph at the stationarity level K = k(k+1)|Q|^(k+1),
/// k = 1 + ceil(1/lower), when that graph fits the budget.
ExactSpeed exact_speed(const TuringMachine& machine, const Rational& lower, Budget& budget);

struct EntropyLowerBound {
  double value = 0;  // lower end of the enclosure, bits per step
  double upper_enclosure = 0;
  bool converged = true;
  bool from_mirror = false;
  std::size_t window = 0;
  std::size_t sft_vertices = 0;
  std::size_t sft_edges = 0;
  bool stay_extension_used = false;
};

/// Entropy of B_k, over the machine and its mirror.
EntropyLowerBound entropy_lower(const TuringMachine& machine, std::size_t k, double delta,
                                Budget& budget);
EntropyLowerBound entropy_lower(CrossingAnalyzer& machine, CrossingAnalyzer& mirrored,
                                std::size_t k, double delta, Budget& budget);

}  // namespace tmdyn
