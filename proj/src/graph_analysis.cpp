#include "tmdyn/graph_analysis.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace tmdyn {

std::optional<WeightedCycle> min_mean_cycle(const CrossingGraph& graph, Budget& budget) {
  std::vector<WeightedArc> arcs;
  arcs.reserve(graph.edges.size());
  for (const auto& e : graph.edges)
    arcs.push_back({e.source, e.target, static_cast<std::int64_t>(e.weight),
                    static_cast<std::int64_t>(index(e.label))});
  return min_mean_cycle(graph.vertices.size(), arcs, budget);
}

SpeedLowerBound speed_lower(CrossingAnalyzer& machine, CrossingAnalyzer& mirrored, std::size_t k,
                            Budget& budget) {
  SpeedLowerBound best;
  for (const bool from_mirror : {false, true}) {
    auto graph = (from_mirror ? mirrored : machine).build_graph(k, budget);
    best.stay_extension_used = best.stay_extension_used || graph.stay_extension_used;
    auto cycle = min_mean_cycle(graph, budget);
    if (!cycle) continue;
    const Rational value = cycle->mean().inverse();
    if (!best.cycle || value > best.value) {
      best.value = value;
      best.cycle = std::move(cycle);
      best.graph = std::move(graph);
      best.from_mirror = from_mirror;
    }
  }
  if (!best.cycle) best.graph.k = k;
  return best;
}

SpeedLowerBound speed_lower(const TuringMachine& machine, std::size_t k, Budget& budget) {
  CrossingAnalyzer forward(machine);
  CrossingAnalyzer backward(mirror(machine));
  return speed_lower(forward, backward, k, budget);
}

PeriodicCertificate periodic_certificate(const TuringMachine& machine, const CrossingGraph& graph,
                                         const WeightedCycle& cycle) {
  if (cycle.arcs.empty()) throw std::invalid_argument("empty cycle");
  const std::size_t n = graph.vertices.size();
  std::vector<bool> on_cycle(n, false);
  for (const auto v : cycle.vertices) on_cycle[v] = true;

  // Breadth-first search from all initial vertices at once, in state order.
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> parent_edge(n, kNone), root(n, kNone);
  std::deque<std::size_t> queue;
  for (const auto v : graph.initials) {
    if (root[v] != kNone) continue;
    root[v] = v;
    queue.push_back(v);
  }
  const auto out = graph.out_edges();
  std::size_t entry = kNone;
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    if (on_cycle[v]) {
      entry = v;
      break;
    }
    for (const auto e : out[v]) {
      const auto t = graph.edges[e].target;
      if (root[t] != kNone) continue;
      root[t] = root[v];
      parent_edge[t] = e;
      queue.push_back(t);
    }
  }
  if (entry == kNone) throw std::invalid_argument("cycle is not reachable from an initial vertex");

  PeriodicCertificate cert;
  for (auto v = entry; parent_edge[v] != kNone; v = graph.edges[parent_edge[v]].source)
    cert.access_path.push_back(parent_edge[v]);
  std::reverse(cert.access_path.begin(), cert.access_path.end());
  const auto start = static_cast<std::size_t>(
      std::find(cycle.vertices.begin(), cycle.vertices.end(), entry) - cycle.vertices.begin());
  for (std::size_t i = 0; i < cycle.arcs.size(); ++i)
    cert.cycle_path.push_back(cycle.arcs[(start + i) % cycle.arcs.size()]);

  cert.config.state = graph.vertices[root[entry]][0];
  cert.config.left_fill = Symbol{0};
  std::size_t transient_weight = 0;
  for (const auto e : cert.access_path) {
    cert.config.transient.push_back(graph.edges[e].label);
    transient_weight += graph.edges[e].weight;
  }
  for (const auto e : cert.cycle_path) cert.config.period.push_back(graph.edges[e].label);

  const auto length = static_cast<std::int64_t>(cycle.length());
  cert.claimed = Rational(length, cycle.total_weight);
  constexpr std::size_t c = 20;
  cert.horizon = c * cycle.length() * static_cast<std::size_t>(cycle.total_weight) +
                 c * transient_weight;
  const auto reach = static_cast<std::int64_t>(cert.horizon) + 1;
  const auto record = run(machine, cert.config.window(-reach, reach), cert.horizon);
  cert.visited = record.visited_counts.empty() ? 0 : record.visited_counts.back();
  cert.measured = Rational(static_cast<std::int64_t>(cert.visited),
                           static_cast<std::int64_t>(cert.horizon));
  const Rational gap = cert.measured > cert.claimed ? cert.measured - cert.claimed
                                                    : cert.claimed - cert.measured;
  cert.verified = !record.exited && gap * Rational(10) <= cert.claimed;
  return cert;
}

ExactSpeed exact_speed(const TuringMachine& machine, const Rational& lower, Budget& budget) {
  if (lower <= Rational(0)) throw std::invalid_argument("exact speed needs a positive lower bound");
  ExactSpeed result;
  const auto inv = lower.inverse();
  result.k = 1 + static_cast<std::size_t>((inv.num() + inv.den() - 1) / inv.den());

  constexpr std::uint64_t kFeasible = 1'000'001;
  unsigned __int128 K = static_cast<unsigned __int128>(result.k) * (result.k + 1);
  bool huge = false;
  for (std::size_t i = 0; i <= result.k; ++i) {
    K *= machine.num_states();
    if (K > std::numeric_limits<std::uint64_t>::max()) {
      huge = true;
      break;
    }
  }
  result.K = huge ? std::numeric_limits<std::uint64_t>::max() : static_cast<std::uint64_t>(K);
  if (huge || result.K > kFeasible) {
    result.reason = "crossing words of length up to K are out of reach";
    return result;
  }
  try {
    result.value = speed_lower(machine, result.K, budget).value;
  } catch (const BudgetExceeded& e) {
    result.reason = e.what();
  }
  return result;
}

EntropyLowerBound entropy_lower(CrossingAnalyzer& machine, CrossingAnalyzer& mirrored,
                                std::size_t k, double delta, Budget& budget) {
  EntropyLowerBound best;
  bool first = true;
  for (const bool from_mirror : {false, true}) {
    auto& analyzer = from_mirror ? mirrored : machine;
    const auto graph = analyzer.build_graph(k, budget);
    best.stay_extension_used = best.stay_extension_used || graph.stay_extension_used;
    const auto sft = build_bk(analyzer.machine(), graph, budget);
    const auto enc = sft_entropy(sft, delta);
    best.upper_enclosure = first ? enc.hi : std::max(best.upper_enclosure, enc.hi);
    best.converged = first ? enc.converged : best.converged && enc.converged;
    if (first || enc.lo > best.value) {
      best.value = enc.lo;
      best.from_mirror = from_mirror;
      best.window = sft.window;
      best.sft_vertices = sft.vertices.size();
      best.sft_edges = sft.edges.size();
    }
    first = false;
  }
  return best;
}

EntropyLowerBound entropy_lower(const TuringMachine& machine, std::size_t k, double delta,
                                Budget& budget) {
  CrossingAnalyzer forward(machine);
  CrossingAnalyzer backward(mirror(machine));
  return entropy_lower(forward, backward, k, delta, budget);
}

}  // namespace tmdyn
