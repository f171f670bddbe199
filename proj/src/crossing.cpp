#include "tmdyn/crossing.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tmdyn {

namespace {

void append_u16(std::string& key, std::size_t v) {
  key.push_back(static_cast<char>(v & 0xFF));
  key.push_back(static_cast<char>((v >> 8) & 0xFF));
}

std::string memo_key(char tag, const State* w, std::size_t wn, const State* w2, std::size_t w2n,
                     Symbol a, std::size_t extra) {
  std::string key;
  key.reserve(2 * (wn + w2n) + 12);
  key.push_back(tag);
  append_u16(key, index(a));
  append_u16(key, extra);
  append_u16(key, wn);
  for (std::size_t i = 0; i < wn; ++i) append_u16(key, index(w[i]));
  for (std::size_t i = 0; i < w2n; ++i) append_u16(key, index(w2[i]));
  return key;
}

bool word_less(const CrossingWord& x, const CrossingWord& y) {
  if (x.size() != y.size()) return x.size() < y.size();
  return x < y;
}

}  // namespace

std::size_t CrossingGraph::find(const CrossingWord& w) const {
  const auto it = std::find(vertices.begin(), vertices.end(), w);
  return it == vertices.end() ? npos : static_cast<std::size_t>(it - vertices.begin());
}

std::vector<std::vector<std::size_t>> CrossingGraph::out_edges() const {
  std::vector<std::vector<std::size_t>> out(vertices.size());
  for (std::size_t e = 0; e < edges.size(); ++e) out[edges[e].source].push_back(e);
  return out;
}

CrossingAnalyzer::CrossingAnalyzer(TuringMachine machine) : machine_(std::move(machine)) {
  const std::size_t ns = machine_.num_states();
  const std::size_t na = machine_.num_symbols();
  resolved_.resize(ns * na);
  for (std::size_t q = 0; q < ns; ++q) {
    for (std::size_t a = 0; a < na; ++a) {
      Resolution r;
      std::set<std::pair<std::size_t, std::size_t>> seen{{q, a}};
      Transition t = machine_.delta(static_cast<State>(q), static_cast<Symbol>(a));
      r.steps = 1;
      while (t.move == Move::Stay) {
        if (!seen.emplace(index(t.next), index(t.write)).second) {
          r.diverges = true;
          break;
        }
        t = machine_.delta(t.next, t.write);
        ++r.steps;
      }
      r.next = t.next;
      r.write = t.write;
      r.move = t.move;
      resolved_[q * na + a] = r;
    }
  }
}

MatchOutcome CrossingAnalyzer::left_matches(const CrossingWord& w, const CrossingWord& w2,
                                            Symbol a) {
  return match(true, w.data(), w.size(), w2.data(), w2.size(), a);
}

MatchOutcome CrossingAnalyzer::right_matches(const CrossingWord& w, const CrossingWord& w2,
                                             Symbol a) {
  return match(false, w.data(), w.size(), w2.data(), w2.size(), a);
}

// One rule application per visit; every application consumes one letter of arrival and one of
// departure, so wn + w2n strictly decreases.
MatchOutcome CrossingAnalyzer::match(bool left_side, const State* w, std::size_t wn,
                                     const State* w2, std::size_t w2n, Symbol a) {
  const std::size_t arriving = left_side ? wn : w2n;
  const std::size_t other = left_side ? w2n : wn;
  if (arriving == 0) return {other == 0, 0, false};

  const std::string key = memo_key(left_side ? 'L' : 'R', w, wn, w2, w2n, a, 0);
  if (const auto it = match_memo_.find(key); it != match_memo_.end()) return it->second;

  const Resolution& r = resolve(left_side ? w[0] : w2[0], a);
  MatchOutcome out;
  if (r.diverges) {
    out.diverges = true;
  } else if (left_side && r.move == Move::Left) {
    if (wn >= 2 && w[1] == r.next) out = match(true, w + 2, wn - 2, w2, w2n, r.write);
  } else if (left_side) {
    if (w2n >= 1 && w2[0] == r.next) out = match(false, w + 1, wn - 1, w2 + 1, w2n - 1, r.write);
  } else if (r.move == Move::Left) {
    if (wn >= 1 && w[0] == r.next) out = match(true, w + 1, wn - 1, w2 + 1, w2n - 1, r.write);
  } else {
    if (w2n >= 2 && w2[1] == r.next) out = match(false, w, wn, w2 + 2, w2n - 2, r.write);
  }
  if (out.member) out.steps += r.steps;
  match_memo_.emplace(key, out);
  return out;
}

const CrossingAnalyzer::Successors& CrossingAnalyzer::successors(bool left_side, const State* w,
                                                                 std::size_t wn, Symbol a,
                                                                 std::size_t cap,
                                                                 Budget& budget) {
  const std::string key = memo_key(left_side ? 'l' : 'r', w, wn, nullptr, 0, a, cap);
  if (const auto it = successor_memo_.find(key); it != successor_memo_.end()) return *it->second;

  Successors out;
  std::size_t bytes = 0;
  auto extend = [&](const Successors& tails, std::initializer_list<State> prefix,
                    std::uint32_t steps) {
    for (const auto& [tail, s] : tails) {
      budget.charge();
      bytes += 64 + sizeof(State) * (prefix.size() + tail.size());
      if (memo_bytes_ + bytes > budget.limits().memory_bytes)
        throw BudgetExceeded("crossing successor tables exceed " +
                             std::to_string(budget.limits().memory_bytes >> 20) + " MiB");
      CrossingWord word(prefix);
      word.insert(word.end(), tail.begin(), tail.end());
      out.emplace_back(std::move(word), s + steps);
    }
  };

  if (left_side) {
    // The next visit arrives from the left in state w[0].
    if (wn == 0) {
      out.emplace_back(CrossingWord{}, 0);
    } else if (const Resolution& r = resolve(w[0], a); !r.diverges) {
      if (r.move == Move::Left) {
        if (wn >= 2 && w[1] == r.next) extend(successors(true, w + 2, wn - 2, r.write, cap, budget), {}, r.steps);
      } else if (cap >= 1) {
        extend(successors(false, w + 1, wn - 1, r.write, cap - 1, budget), {r.next}, r.steps);
      }
    }
  } else {
    // The next visit, if any, arrives from the right in a free state.
    if (wn == 0) out.emplace_back(CrossingWord{}, 0);
    if (cap >= 1) {
      for (std::size_t q = 0; q < machine_.num_states(); ++q) {
        const State arrival = static_cast<State>(q);
        const Resolution& r = resolve(arrival, a);
        if (r.diverges) continue;
        if (r.move == Move::Left) {
          if (wn >= 1 && w[0] == r.next)
            extend(successors(true, w + 1, wn - 1, r.write, cap - 1, budget), {arrival}, r.steps);
        } else if (cap >= 2) {
          extend(successors(false, w, wn, r.write, cap - 2, budget), {arrival, r.next}, r.steps);
        }
      }
    }
  }
  memo_bytes_ += bytes;
  auto stored = std::make_unique<Successors>(std::move(out));
  const auto& ref = *stored;
  successor_memo_.emplace(key, std::move(stored));
  return ref;
}

const std::vector<std::pair<CrossingWord, std::uint32_t>>& CrossingAnalyzer::left_successors(
    const CrossingWord& w, Symbol a, std::size_t max_length, Budget& budget) {
  return successors(true, w.data(), w.size(), a, max_length, budget);
}

CrossingGraph CrossingAnalyzer::build_graph(std::size_t k, Budget& budget) {
  if (k < 1) throw std::invalid_argument("crossing graph bound k must be >= 1");
  CrossingGraph g;
  g.k = k;
  g.stay_extension_used = machine_.has_stay_moves();
  std::map<CrossingWord, std::size_t> ids;
  std::deque<std::size_t> queue;
  auto intern = [&](const CrossingWord& w) {
    auto [it, inserted] = ids.emplace(w, g.vertices.size());
    if (inserted) {
      if (g.vertices.size() >= budget.limits().graph_vertices)
        throw BudgetExceeded("crossing graph G_" + std::to_string(k) + " exceeds " +
                             std::to_string(budget.limits().graph_vertices) + " vertices");
      g.vertices.push_back(w);
      queue.push_back(it->second);
    }
    return it->second;
  };
  for (std::size_t q = 0; q < machine_.num_states(); ++q)
    g.initials.push_back(intern(CrossingWord{static_cast<State>(q)}));

  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t a = 0; a < machine_.num_symbols(); ++a) {
      const CrossingWord w = g.vertices[v];
      auto succ = left_successors(w, static_cast<Symbol>(a), k, budget);
      std::sort(succ.begin(), succ.end(),
                [](const auto& x, const auto& y) { return word_less(x.first, y.first); });
      for (const auto& [w2, steps] : succ) {
        budget.charge();
        g.edges.push_back({v, intern(w2), static_cast<Symbol>(a), steps});
      }
    }
  }
  return g;
}

MatchOutcome left_matches(const TuringMachine& machine, const CrossingWord& w,
                          const CrossingWord& w2, Symbol a) {
  CrossingAnalyzer analyzer(machine);
  return analyzer.left_matches(w, w2, a);
}

CrossingGraph build_graph(const TuringMachine& machine, std::size_t k, Budget& budget) {
  CrossingAnalyzer analyzer(machine);
  return analyzer.build_graph(k, budget);
}

std::string word_label(const TuringMachine& machine, const CrossingWord& w) {
  std::string out = "[";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0) out += " ";
    out += machine.state_name(w[i]);
  }
  return out + "]";
}

ValidationReport validate_against_simulation(const TuringMachine& machine,
                                             const CrossingGraph& graph,
                                             const std::vector<std::size_t>& path) {
  ValidationReport report;
  auto fail = [&](const std::string& what) {
    report.valid = false;
    report.exact = false;
    report.violations.push_back(what);
  };
  const std::size_t n = path.size();
  if (n == 0) return report;

  for (std::size_t i = 0; i < n; ++i) {
    if (path[i] >= graph.edges.size()) {
      fail("edge index out of range");
      return report;
    }
    if (i > 0 && graph.edges[path[i - 1]].target != graph.edges[path[i]].source) {
      fail("path is not connected at position " + std::to_string(i));
      return report;
    }
  }
  const std::size_t first = graph.edges[path[0]].source;
  if (std::find(graph.initials.begin(), graph.initials.end(), first) == graph.initials.end()) {
    fail("path does not start at an initial vertex");
    return report;
  }

  // Boundary b sits between cells b and b+1; its expected word is vertex w_b.
  std::vector<const CrossingWord*> expected(n + 1);
  expected[0] = &graph.vertices[first];
  for (std::size_t i = 0; i < n; ++i) expected[i + 1] = &graph.vertices[graph.edges[path[i]].target];

  const Symbol fill{0};
  WindowConfiguration& c = report.config;
  c.state = (*expected[0])[0];
  c.origin = 0;
  c.head = 1;
  c.segment.assign(n + 2, fill);
  for (std::size_t i = 0; i < n; ++i) c.segment[i + 1] = graph.edges[path[i]].label;

  std::vector<CrossingWord> observed(n + 1);
  observed[0].push_back(c.state);  // the arrival into cell 1 that the path starts from
  std::vector<std::uint64_t> cell_steps(n + 2, 0);
  std::uint64_t total_weight = 0;
  for (const auto e : path) total_weight += graph.edges[e].weight;

  std::vector<Symbol> tape = c.segment;
  State state = c.state;
  std::size_t head = 1;
  auto cross = [&](std::size_t boundary, State q) {
    auto& seq = observed[boundary];
    seq.push_back(q);
    const auto& want = *expected[boundary];
    if (seq.size() > want.size() || want[seq.size() - 1] != q) {
      fail("crossing sequence at boundary " + std::to_string(boundary) + " " +
           word_label(machine, seq) + " is not a prefix of " + word_label(machine, want));
      return false;
    }
    return true;
  };

  while (true) {
    if (head == 0) break;  // already reported by cross()
    if (head == n + 1) {
      // Right environment: return as scripted by the last vertex, or leave for good.
      const auto& want = *expected[n];
      const std::size_t used = observed[n].size();
      if (used >= want.size()) break;
      if (!cross(n, want[used])) break;
      state = want[used];
      head = n;
      continue;
    }
    if (report.steps > total_weight) {
      fail("run exceeds the total path weight " + std::to_string(total_weight));
      break;
    }
    const auto& t = machine.delta(state, tape[head]);
    tape[head] = t.write;
    state = t.next;
    ++cell_steps[head];
    ++report.steps;
    if (t.move == Move::Stay) continue;
    const std::size_t boundary = t.move == Move::Right ? head : head - 1;
    if (!cross(boundary, state)) break;
    head = t.move == Move::Right ? head + 1 : head - 1;
  }

  if (report.valid) {
    for (std::size_t b = 0; b <= n; ++b)
      if (observed[b] != *expected[b]) report.exact = false;
    for (std::size_t i = 0; i < n; ++i) {
      const auto weight = graph.edges[path[i]].weight;
      const bool full = observed[i] == *expected[i] && observed[i + 1] == *expected[i + 1];
      if (full && cell_steps[i + 1] > weight)
        fail("cell " + std::to_string(i + 1) + " took " + std::to_string(cell_steps[i + 1]) +
             " steps, edge weight is " + std::to_string(weight));
      if (cell_steps[i + 1] != weight) report.exact = false;
    }
  }
  return report;
}

std::string to_dot(const TuringMachine& machine, const CrossingGraph& graph) {
  std::ostringstream out;
  out << "digraph G" << graph.k << " {\n";
  for (std::size_t v = 0; v < graph.vertices.size(); ++v) {
    const bool initial =
        std::find(graph.initials.begin(), graph.initials.end(), v) != graph.initials.end();
    out << "  v" << v << " [label=\"" << word_label(machine, graph.vertices[v]) << "\""
        << (initial ? ", peripheries=2" : "") << "];\n";
  }
  for (const auto& e : graph.edges) {
    out << "  v" << e.source << " -> v" << e.target << " [label=\""
        << machine.symbol_name(e.label) << "/" << e.weight << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace tmdyn
