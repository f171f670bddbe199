#include "tmdyn/sft.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tmdyn/cycles.hpp"

namespace tmdyn {

namespace {

// Repeatedly drops vertices lacking an incoming or an outgoing edge among the survivors.
std::vector<bool> trim_essential(std::size_t n,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<bool> alive(n, true);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::size_t> in(n, 0), out(n, 0);
    for (const auto& [u, v] : edges) {
      if (!alive[u] || !alive[v]) continue;
      ++out[u];
      ++in[v];
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (alive[v] && (in[v] == 0 || out[v] == 0)) {
        alive[v] = false;
        changed = true;
      }
    }
  }
  return alive;
}

double down(double x, int ulps = 2) {
  for (int i = 0; i < ulps; ++i) x = std::nextafter(x, -std::numeric_limits<double>::infinity());
  return x;
}

double up(double x, int ulps = 2) {
  for (int i = 0; i < ulps; ++i) x = std::nextafter(x, std::numeric_limits<double>::infinity());
  return x;
}

// Enclosure for one strongly connected component with at least one internal edge.
SpectralEnclosure component_enclosure(const std::vector<std::vector<std::size_t>>& out, double delta,
                                      std::size_t max_iterations) {
  const std::size_t m = out.size();
  SpectralEnclosure enc;
  if (std::all_of(out.begin(), out.end(), [](const auto& o) { return o.size() == 1; })) {
    // A single cycle: spectral radius exactly 1.
    return enc;
  }
  constexpr double kUnit = std::numeric_limits<double>::epsilon();  // 2^-52
  std::vector<double> v(m, 1.0), y(m);
  double lo_bits = 0;
  double hi_bits = std::numeric_limits<double>::infinity();
  for (std::size_t it = 1; it <= max_iterations; ++it) {
    // y = (A + I) v; the shift makes the component primitive without moving the Perron vector.
    double lam_lo = std::numeric_limits<double>::infinity();
    double lam_hi = 0;
    double peak = 0;
    for (std::size_t i = 0; i < m; ++i) {
      double s = v[i];
      for (const auto j : out[i]) s += v[j];
      y[i] = s;
      peak = std::max(peak, s);
      const double ratio = s / v[i];
      const double err = static_cast<double>(out[i].size() + 3) * kUnit;
      lam_lo = std::min(lam_lo, ratio * (1 - err));
      lam_hi = std::max(lam_hi, ratio * (1 + err));
    }
    const double rho_lo = std::max(1.0, down(down(lam_lo) - 1.0));
    const double rho_hi = up(up(lam_hi) - 1.0);
    lo_bits = std::max(lo_bits, std::max(0.0, down(std::log2(rho_lo), 4)));
    hi_bits = std::min(hi_bits, up(std::log2(rho_hi), 4));
    enc.iterations = it;
    if (hi_bits - lo_bits <= delta) break;
    for (std::size_t i = 0; i < m; ++i) v[i] = y[i] / peak;
  }
  enc.lo = lo_bits;
  enc.hi = std::max(hi_bits, lo_bits);
  enc.converged = enc.hi - enc.lo <= delta;
  return enc;
}

}  // namespace

SftPresentation sft_from_allowed_words(std::vector<std::string> alphabet, std::size_t window,
                                       std::vector<Word> words) {
  if (window < 1) throw std::invalid_argument("SFT window must be >= 1");
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());

  std::map<Word, std::size_t> ids;
  std::vector<std::pair<std::size_t, std::size_t>> raw;
  std::vector<Letter> last;
  for (const auto& w : words) {
    if (w.size() != window) throw std::invalid_argument("allowed word of the wrong length");
    for (const auto l : w)
      if (l >= alphabet.size()) throw std::invalid_argument("letter outside the alphabet");
    const Word prefix(w.begin(), w.end() - 1);
    const Word suffix(w.begin() + 1, w.end());
    const auto a = ids.emplace(prefix, ids.size()).first->second;
    const auto b = ids.emplace(suffix, ids.size()).first->second;
    raw.emplace_back(a, b);
    last.push_back(w.back());
  }
  const auto alive = trim_essential(ids.size(), raw);

  SftPresentation sft;
  sft.alphabet = std::move(alphabet);
  sft.window = window;
  std::vector<std::size_t> renumber(ids.size(), 0);
  for (const auto& [word, id] : ids) {  // map order: lexicographic
    if (!alive[id]) continue;
    renumber[id] = sft.vertices.size();
    sft.vertices.push_back(word);
  }
  for (std::size_t e = 0; e < raw.size(); ++e) {
    const auto [a, b] = raw[e];
    if (alive[a] && alive[b]) sft.edges.push_back({renumber[a], renumber[b], last[e]});
  }
  std::sort(sft.edges.begin(), sft.edges.end(), [](const auto& x, const auto& y) {
    return std::tie(x.from, x.letter, x.to) < std::tie(y.from, y.letter, y.to);
  });
  return sft;
}

SftPresentation sft_from_forbidden(std::vector<std::string> alphabet,
                                   const std::vector<Word>& forbidden, std::size_t window) {
  for (const auto& f : forbidden)
    if (f.size() > window) throw std::invalid_argument("forbidden word longer than the window");
  const std::size_t a = alphabet.size();
  if (std::pow(static_cast<double>(a), static_cast<double>(window)) > 1e7)
    throw std::invalid_argument("window too large to enumerate");
  std::vector<Word> words;
  Word w(window, 0);
  while (true) {
    const bool ok = std::none_of(forbidden.begin(), forbidden.end(), [&](const Word& f) {
      return std::search(w.begin(), w.end(), f.begin(), f.end()) != w.end();
    });
    if (ok) words.push_back(w);
    std::size_t i = 0;
    while (i < window && ++w[window - 1 - i] == a) w[window - 1 - i++] = 0;
    if (i == window) break;
  }
  return sft_from_allowed_words(std::move(alphabet), window, std::move(words));
}

std::vector<std::string> BkAlphabet::names(const TuringMachine& machine) const {
  std::vector<std::string> out;
  for (std::size_t q = 0; q < states; ++q)
    for (std::size_t u = 0; u < symbols; ++u)
      out.push_back("(" + machine.symbol_names()[u] + "," + machine.state_names()[q] + ")");
  for (std::size_t q = 0; q < states; ++q) out.push_back(machine.state_names()[q]);
  out.emplace_back("_");
  return out;
}

Word edge_block(const BkAlphabet& alphabet, const CrossingGraph& graph, const CrossingEdge& edge) {
  const auto& w = graph.vertices[edge.source];
  const auto& w2 = graph.vertices[edge.target];
  const std::size_t visits2 = w.size() + w2.size();
  if (visits2 % 2 != 0 || edge.weight < visits2 / 2)
    throw std::logic_error("edge weight inconsistent with its crossing words");
  Word block;
  block.push_back(alphabet.head(edge.label, w[0]));
  for (std::size_t i = 1; i < w.size(); ++i) block.push_back(alphabet.state(w[i]));
  block.insert(block.end(), edge.weight - visits2 / 2, alphabet.filler());
  return block;
}

std::vector<bool> essential_vertices(const CrossingGraph& graph) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  edges.reserve(graph.edges.size());
  for (const auto& e : graph.edges) edges.emplace_back(e.source, e.target);
  return trim_essential(graph.vertices.size(), edges);
}

SftPresentation build_bk(const TuringMachine& machine, const CrossingGraph& graph,
                         Budget& budget) {
  const BkAlphabet alphabet{machine.num_states(), machine.num_symbols()};
  const auto alive = essential_vertices(graph);

  // Expanded graph: one node per letter of every essential edge block.
  std::vector<std::size_t> kept;
  for (std::size_t e = 0; e < graph.edges.size(); ++e)
    if (alive[graph.edges[e].source] && alive[graph.edges[e].target]) kept.push_back(e);
  std::vector<Word> blocks;
  std::vector<std::size_t> first_node;
  std::size_t nodes = 0;
  std::size_t max_block = 0;
  for (const auto e : kept) {
    blocks.push_back(edge_block(alphabet, graph, graph.edges[e]));
    first_node.push_back(nodes);
    nodes += blocks.back().size();
    max_block = std::max(max_block, blocks.back().size());
  }
  const std::size_t window = 2 * max_block + 1;
  if (kept.empty()) {
    SftPresentation empty = sft_from_allowed_words(alphabet.names(machine), 1, {});
    empty.k = graph.k;
    return empty;
  }

  std::vector<std::vector<std::size_t>> starting_at(graph.vertices.size());
  for (std::size_t i = 0; i < kept.size(); ++i)
    starting_at[graph.edges[kept[i]].source].push_back(i);
  std::vector<Letter> label(nodes);
  std::vector<std::vector<std::size_t>> next(nodes);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const auto& b = blocks[i];
    for (std::size_t j = 0; j < b.size(); ++j) {
      const std::size_t node = first_node[i] + j;
      label[node] = b[j];
      if (j + 1 < b.size()) {
        next[node].push_back(node + 1);
      } else {
        for (const auto i2 : starting_at[graph.edges[kept[i]].target])
          next[node].push_back(first_node[i2]);
      }
    }
  }

  // Every window-length walk of the expanded graph spells an allowed word.
  std::vector<Word> words;
  Word current;
  current.reserve(window);
  const std::size_t cap = budget.limits().sft_words;
  auto walk = [&](auto&& self, std::size_t node) -> void {
    budget.charge();
    current.push_back(label[node]);
    if (current.size() == window) {
      if (words.size() >= cap)
        throw BudgetExceeded("B_" + std::to_string(graph.k) + " needs more than " +
                             std::to_string(cap) + " window words");
      words.push_back(current);
    } else {
      for (const auto nx : next[node]) self(self, nx);
    }
    current.pop_back();
  };
  for (std::size_t node = 0; node < nodes; ++node) walk(walk, node);

  SftPresentation sft = sft_from_allowed_words(alphabet.names(machine), window, std::move(words));
  sft.k = graph.k;
  sft.block_graph_edges = kept.size();
  sft.max_block = max_block;
  return sft;
}

SftPresentation build_bk(const TuringMachine& machine, std::size_t k, Budget& budget) {
  return build_bk(machine, build_graph(machine, k, budget), budget);
}

SpectralEnclosure spectral_enclosure(std::size_t n,
                                     const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                     double delta, std::size_t max_iterations) {
  if (!(delta > 0)) throw std::invalid_argument("spectral precision must be positive");
  std::vector<WeightedArc> arcs;
  arcs.reserve(edges.size());
  for (const auto& [u, v] : edges) arcs.push_back({u, v, 0, 0});
  const auto components = strongly_connected_components(n, arcs);
  std::vector<std::size_t> comp(n), local(n);
  for (std::size_t c = 0; c < components.size(); ++c)
    for (std::size_t i = 0; i < components[c].size(); ++i) {
      comp[components[c][i]] = c;
      local[components[c][i]] = i;
    }
  std::vector<std::vector<std::vector<std::size_t>>> out(components.size());
  std::vector<bool> has_edge(components.size(), false);
  for (std::size_t c = 0; c < components.size(); ++c) out[c].resize(components[c].size());
  for (const auto& [u, v] : edges) {
    if (comp[u] != comp[v]) continue;
    out[comp[u]][local[u]].push_back(local[v]);
    has_edge[comp[u]] = true;
  }

  SpectralEnclosure total;
  bool any = false;
  for (std::size_t c = 0; c < components.size(); ++c) {
    if (!has_edge[c]) continue;
    const auto enc = component_enclosure(out[c], delta, max_iterations);
    if (!any) {
      total = enc;
      any = true;
    } else {
      total.lo = std::max(total.lo, enc.lo);
      total.hi = std::max(total.hi, enc.hi);
      total.iterations = std::max(total.iterations, enc.iterations);
    }
  }
  total.converged = total.hi - total.lo <= delta;
  return total;
}

SpectralEnclosure sft_entropy(const SftPresentation& sft, double delta,
                              std::size_t max_iterations) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  edges.reserve(sft.edges.size());
  for (const auto& e : sft.edges) edges.emplace_back(e.from, e.to);
  return spectral_enclosure(sft.vertices.size(), edges, delta, max_iterations);
}

std::uint64_t sft_word_count(const SftPresentation& sft, std::size_t n) {
  if (sft.empty()) return n == 0 ? 1 : 0;
  if (n == 0) return 1;
  const std::size_t span = sft.window - 1;
  if (n <= span) {
    std::set<Word> factors;
    for (const auto& w : sft.vertices)
      for (std::size_t i = 0; i + n <= w.size(); ++i) factors.emplace(w.begin() + i, w.begin() + i + n);
    return factors.size();
  }
  using u128 = unsigned __int128;
  constexpr u128 kMax = std::numeric_limits<std::uint64_t>::max();
  std::vector<u128> count(sft.vertices.size(), 1);
  for (std::size_t step = span; step < n; ++step) {
    std::vector<u128> next(count.size(), 0);
    for (const auto& e : sft.edges) {
      next[e.to] += count[e.from];
      if (next[e.to] > kMax) throw BudgetExceeded("word count overflows 64 bits");
    }
    count = std::move(next);
  }
  u128 total = 0;
  for (const auto c : count) {
    total += c;
    if (total > kMax) throw BudgetExceeded("word count overflows 64 bits");
  }
  return static_cast<std::uint64_t>(total);
}

std::string to_dot(const SftPresentation& sft) {
  std::ostringstream out;
  out << "digraph B" << sft.k << " {\n";
  auto spell = [&](const Word& w) {
    std::string s;
    for (const auto l : w) s += sft.alphabet[l];
    return s;
  };
  for (std::size_t v = 0; v < sft.vertices.size(); ++v)
    out << "  v" << v << " [label=\"" << spell(sft.vertices[v]) << "\"];\n";
  for (const auto& e : sft.edges)
    out << "  v" << e.from << " -> v" << e.to << " [label=\"" << sft.alphabet[e.letter] << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace tmdyn
