#include "tmdyn/cycles.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace tmdyn {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

std::vector<std::vector<std::size_t>> adjacency(std::size_t n, const std::vector<WeightedArc>& arcs) {
  std::vector<std::vector<std::size_t>> out(n);
  for (std::size_t e = 0; e < arcs.size(); ++e) out[arcs[e].from].push_back(e);
  return out;
}

// Minimum mean over cycles of one strongly connected component, by Karp's formula
//   min_v max_k (D_m(v) - D_k(v)) / (m - k)
// with D_k(v) the lightest k-arc walk from a fixed source. Two passes keep memory linear.
std::optional<Rational> karp_component(const std::vector<std::size_t>& members,
                                       const std::vector<WeightedArc>& arcs,
                                       const std::vector<std::size_t>& internal,
                                       const std::vector<std::size_t>& local, Budget& budget) {
  const std::size_t m = members.size();
  if (internal.empty()) return std::nullopt;

  auto layer = [&](const std::vector<std::int64_t>& prev) {
    std::vector<std::int64_t> next(m, kInf);
    for (const auto e : internal) {
      const auto u = local[arcs[e].from];
      if (prev[u] >= kInf) continue;
      const auto v = local[arcs[e].to];
      next[v] = std::min(next[v], prev[u] + arcs[e].weight);
    }
    budget.charge(internal.size());
    return next;
  };

  std::vector<std::int64_t> d(m, kInf);
  d[0] = 0;
  for (std::size_t k = 0; k < m; ++k) d = layer(d);
  const std::vector<std::int64_t> dm = d;

  // worst[v] = max_k (dm[v] - d_k[v]) / (m - k) over k with d_k[v] finite.
  std::vector<std::optional<Rational>> worst(m);
  d.assign(m, kInf);
  d[0] = 0;
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t v = 0; v < m; ++v) {
      if (dm[v] >= kInf || d[v] >= kInf) continue;
      const Rational r(dm[v] - d[v], static_cast<std::int64_t>(m - k));
      if (!worst[v] || r > *worst[v]) worst[v] = r;
    }
    d = layer(d);
  }
  std::optional<Rational> best;
  for (std::size_t v = 0; v < m; ++v)
    if (worst[v] && (!best || *worst[v] < *best)) best = worst[v];
  return best;
}

}  // namespace

std::vector<std::vector<std::size_t>> strongly_connected_components(
    std::size_t n, const std::vector<WeightedArc>& arcs) {
  const auto adj = adjacency(n, arcs);
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> order(n, kUnset), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  std::size_t counter = 0;

  struct Frame {
    std::size_t v;
    std::size_t next_arc;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (order[root] != kUnset) continue;
    std::vector<Frame> frames{{root, 0}};
    order[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.next_arc < adj[f.v].size()) {
        const std::size_t w = arcs[adj[f.v][f.next_arc++]].to;
        if (order[w] == kUnset) {
          order[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], order[w]);
        }
        continue;
      }
      const std::size_t v = f.v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      if (low[v] == order[v]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
      }
    }
  }
  return components;
}

std::optional<WeightedCycle> min_mean_cycle(std::size_t n, const std::vector<WeightedArc>& arcs,
                                            Budget& budget) {
  const auto components = strongly_connected_components(n, arcs);
  std::vector<std::size_t> comp_of(n), local(n);
  for (std::size_t c = 0; c < components.size(); ++c)
    for (std::size_t i = 0; i < components[c].size(); ++i) {
      comp_of[components[c][i]] = c;
      local[components[c][i]] = i;
    }
  std::vector<std::vector<std::size_t>> internal(components.size());
  for (std::size_t e = 0; e < arcs.size(); ++e)
    if (comp_of[arcs[e].from] == comp_of[arcs[e].to]) internal[comp_of[arcs[e].from]].push_back(e);

  std::optional<Rational> mu;
  for (std::size_t c = 0; c < components.size(); ++c) {
    const auto r = karp_component(components[c], arcs, internal[c], local, budget);
    if (r && (!mu || *r < *mu)) mu = r;
  }
  if (!mu) return std::nullopt;

  // Potentials for reduced costs den*w - num; no cycle is negative, so Bellman-Ford settles.
  const std::int64_t p = mu->num();
  const std::int64_t q = mu->den();
  auto reduced = [&](const WeightedArc& a) { return q * a.weight - p; };
  std::vector<std::int64_t> dist(n, 0);
  for (std::size_t round = 0; round < n; ++round) {
    bool changed = false;
    for (const auto& a : arcs) {
      if (dist[a.from] + reduced(a) < dist[a.to]) {
        dist[a.to] = dist[a.from] + reduced(a);
        changed = true;
      }
    }
    budget.charge(arcs.size());
    if (!changed) break;
  }
  std::vector<WeightedArc> tight_arcs;
  std::vector<std::size_t> tight_ids;
  for (std::size_t e = 0; e < arcs.size(); ++e) {
    if (dist[arcs[e].from] + reduced(arcs[e]) == dist[arcs[e].to]) {
      tight_arcs.push_back(arcs[e]);
      tight_ids.push_back(e);
    }
  }
  const auto tight_components = strongly_connected_components(n, tight_arcs);
  std::vector<std::size_t> tight_comp(n);
  for (std::size_t c = 0; c < tight_components.size(); ++c)
    for (const auto v : tight_components[c]) tight_comp[v] = c;
  std::vector<bool> on_cycle(n, false);
  for (const auto& a : tight_arcs)
    if (tight_comp[a.from] == tight_comp[a.to]) on_cycle[a.from] = true;

  const auto start = static_cast<std::size_t>(
      std::find(on_cycle.begin(), on_cycle.end(), true) - on_cycle.begin());
  std::vector<std::vector<std::size_t>> tight_out(n);
  for (std::size_t i = 0; i < tight_arcs.size(); ++i)
    if (tight_comp[tight_arcs[i].from] == tight_comp[tight_arcs[i].to])
      tight_out[tight_arcs[i].from].push_back(i);

  std::map<std::size_t, std::size_t> position;
  std::vector<std::size_t> walk_vertices, walk_arcs;
  std::size_t v = start;
  while (!position.contains(v)) {
    position[v] = walk_vertices.size();
    walk_vertices.push_back(v);
    const auto& out = tight_out[v];
    const auto best = *std::min_element(out.begin(), out.end(), [&](std::size_t x, std::size_t y) {
      if (tight_arcs[x].label != tight_arcs[y].label) return tight_arcs[x].label < tight_arcs[y].label;
      if (tight_arcs[x].to != tight_arcs[y].to) return tight_arcs[x].to < tight_arcs[y].to;
      return x < y;
    });
    walk_arcs.push_back(tight_ids[best]);
    v = tight_arcs[best].to;
  }
  WeightedCycle cycle;
  for (std::size_t i = position[v]; i < walk_vertices.size(); ++i) {
    cycle.vertices.push_back(walk_vertices[i]);
    cycle.arcs.push_back(walk_arcs[i]);
    cycle.labels.push_back(arcs[walk_arcs[i]].label);
    cycle.total_weight += arcs[walk_arcs[i]].weight;
  }
  if (cycle.mean() != *mu) throw std::logic_error("canonical cycle is not a minimum mean cycle");
  return cycle;
}

std::optional<WeightedCycle> min_mean_cycle(std::size_t n, const std::vector<WeightedArc>& arcs) {
  Budget unlimited(Limits{std::numeric_limits<std::uint64_t>::max() / 2, 1e12, 0, 0});
  return min_mean_cycle(n, arcs, unlimited);
}

}  // namespace tmdyn
