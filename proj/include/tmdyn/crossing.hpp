#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "tmdyn/budget.hpp"
#include "tmdyn/machine.hpp"
#include "tmdyn/simulate.hpp"

namespace tmdyn {

/// Sequence of states in which the head crosses one cell boundary, in time order.
using CrossingWord = std::vector<State>;

struct MatchOutcome {
  bool member = false;
  std::uint32_t steps = 0;  // machine steps spent in the cell; meaningful only when member
  bool diverges = false;    // a stay chain revisits a (state, symbol) pair

  friend bool operator==(const MatchOutcome&, const MatchOutcome&) = default;
};

struct CrossingEdge {
  std::size_t source;
  std::size_t target;
  Symbol label;
  std::uint32_t weight;  // steps spent in the cell carrying `label`
};

/// Crossing words of odd length <= k reachable from the single-state words.
struct CrossingGraph {
  std::size_t k = 0;
  std::vector<CrossingWord> vertices;
  std::vector<CrossingEdge> edges;      // sorted by source, then label, then target word
  std::vector<std::size_t> initials;    // the vertices [q], in state order
  bool stay_extension_used = false;

  [[nodiscard]] std::size_t find(const CrossingWord& w) const;  // npos when absent
  [[nodiscard]] std::vector<std::vector<std::size_t>> out_edges() const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

/// Decides the left/right matching relations on crossing words for one machine and builds
/// truncated crossing graphs. Results are memoized across calls, so building G_k for increasing
/// k reuses earlier work.
///
/// Stay moves are resolved inside the cell: the arriving state is replaced by the state after
/// the stay and one step is charged; a stay chain that revisits a (state, symbol) pair never
/// leaves the cell and matches nothing.
class CrossingAnalyzer {
 public:
  explicit CrossingAnalyzer(TuringMachine machine);

  [[nodiscard]] const TuringMachine& machine() const { return machine_; }

  /// (w, w2, a) in L: the next visit to the cell comes from the left.
  MatchOutcome left_matches(const CrossingWord& w, const CrossingWord& w2, Symbol a);
  /// (w, w2, a) in R: the next visit to the cell comes from the right.
  MatchOutcome right_matches(const CrossingWord& w, const CrossingWord& w2, Symbol a);

  /// All w2 with |w2| <= max_length and (w, w2, a) in L, with their step counts.
  const std::vector<std::pair<CrossingWord, std::uint32_t>>& left_successors(
      const CrossingWord& w, Symbol a, std::size_t max_length, Budget& budget);

  CrossingGraph build_graph(std::size_t k, Budget& budget);

 private:
  struct Resolution {
    bool diverges = false;
    State next{};
    Symbol write{};
    Move move = Move::Stay;
    std::uint32_t steps = 0;
  };
  using Successors = std::vector<std::pair<CrossingWord, std::uint32_t>>;

  [[nodiscard]] const Resolution& resolve(State q, Symbol a) const {
    return resolved_[index(q) * machine_.num_symbols() + index(a)];
  }
  MatchOutcome match(bool left_side, const State* w, std::size_t wn, const State* w2,
                     std::size_t w2n, Symbol a);
  const Successors& successors(bool left_side, const State* w, std::size_t wn, Symbol a,
                               std::size_t cap, Budget& budget);

  TuringMachine machine_;
  std::vector<Resolution> resolved_;
  std::unordered_map<std::string, MatchOutcome> match_memo_;
  std::unordered_map<std::string, std::unique_ptr<Successors>> successor_memo_;
  std::size_t memo_bytes_ = 0;
};

MatchOutcome left_matches(const TuringMachine& machine, const CrossingWord& w,
                          const CrossingWord& w2, Symbol a);
CrossingGraph build_graph(const TuringMachine& machine, std::size_t k, Budget& budget);

struct ValidationReport {
  bool valid = true;
  bool exact = true;  // every observed crossing word and cell time matched the path exactly
  std::vector<std::string> violations;
  std::size_t steps = 0;
  WindowConfiguration config;  // cells 1..N carry the path labels
};

/// Replays a path (consecutive edge indices starting at an initial vertex) on the machine.
///
/// The tape gets the path labels on cells 1..N and the head starts on cell 1 in the initial
/// vertex's state. Returns from the right of cell N are scripted from the last vertex, standing
/// in for the rest of an infinite path. Checks that every observed crossing sequence stays a
/// prefix of the path's vertex at that boundary and that cell times do not exceed edge weights.
ValidationReport validate_against_simulation(const TuringMachine& machine,
                                             const CrossingGraph& graph,
                                             const std::vector<std::size_t>& path);

std::string word_label(const TuringMachine& machine, const CrossingWord& w);

/// Graphviz export: vertices labeled by their word, edges "label/weight".
std::string to_dot(const TuringMachine& machine, const CrossingGraph& graph);

}  // namespace tmdyn
