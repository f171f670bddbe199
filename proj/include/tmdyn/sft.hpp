#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tmdyn/budget.hpp"
#include "tmdyn/crossing.hpp"
#include "tmdyn/machine.hpp"

namespace tmdyn {

using Letter = std::uint32_t;
using Word = std::vector<Letter>;

/// Subshift of finite type given by its allowed words of length `window`, presented as a
/// follower graph: vertices are allowed words of length window-1, and each allowed word of
/// length `window` is an edge from its prefix to its suffix. Only the essential part is kept
/// (every vertex has a predecessor and a successor).
struct SftPresentation {
  std::vector<std::string> alphabet;
  std::size_t window = 1;
  std::vector<Word> vertices;

  struct Edge {
    std::size_t from;
    std::size_t to;
    Letter letter;  // last letter of the window word
  };
  std::vector<Edge> edges;

  // Provenance when built from a crossing graph.
  std::size_t k = 0;
  std::size_t block_graph_edges = 0;
  std::size_t max_block = 0;

  [[nodiscard]] bool empty() const { return edges.empty(); }
};

/// Follower graph of the shift whose allowed window-words are exactly `words` (all of length
/// `window` >= 1).
SftPresentation sft_from_allowed_words(std::vector<std::string> alphabet, std::size_t window,
                                       std::vector<Word> words);

/// Shift over `alphabet` avoiding every word in `forbidden`; window must be at least the longest
/// forbidden word.
SftPresentation sft_from_forbidden(std::vector<std::string> alphabet,
                                   const std::vector<Word>& forbidden, std::size_t window);

/// Letters of the B_k alphabet (Q x Σ) ∪ Q ∪ {filler} for a machine.
struct BkAlphabet {
  std::size_t states;
  std::size_t symbols;
  [[nodiscard]] Letter head(Symbol u, State q) const {
    return static_cast<Letter>(index(q) * symbols + index(u));
  }
  [[nodiscard]] Letter state(State q) const { return static_cast<Letter>(states * symbols + index(q)); }
  [[nodiscard]] Letter filler() const { return static_cast<Letter>(states * symbols + states); }
  [[nodiscard]] std::size_t size() const { return states * symbols + states + 1; }
  [[nodiscard]] std::vector<std::string> names(const TuringMachine& machine) const;
};

/// Block of one crossing-graph edge (w -> w', label u): the letter (u, w[0]), the rest of w, then
/// enough filler letters that blocks along any cycle add up to the steps spent on it.
Word edge_block(const BkAlphabet& alphabet, const CrossingGraph& graph, const CrossingEdge& edge);

/// Essential part of a crossing graph: vertices on bi-infinite walks.
std::vector<bool> essential_vertices(const CrossingGraph& graph);

/// B_k for a machine: bi-infinite concatenations of edge blocks along walks of G_k.
SftPresentation build_bk(const TuringMachine& machine, std::size_t k, Budget& budget);
SftPresentation build_bk(const TuringMachine& machine, const CrossingGraph& graph, Budget& budget);

struct SpectralEnclosure {
  double lo = 0;  // bits per letter
  double hi = 0;
  bool converged = true;
  std::size_t iterations = 0;
};

/// Encloses log2 of the spectral radius of a nonnegative integer graph (max over its strongly
/// connected components) with Collatz-Wielandt bounds, iterating until hi - lo <= delta.
SpectralEnclosure spectral_enclosure(std::size_t num_vertices,
                                     const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                     double delta, std::size_t max_iterations = 2'000'000);

SpectralEnclosure sft_entropy(const SftPresentation& sft, double delta,
                              std::size_t max_iterations = 2'000'000);

/// Exact number of words of length n occurring in the shift. Throws BudgetExceeded on 64-bit
/// overflow.
std::uint64_t sft_word_count(const SftPresentation& sft, std::size_t n);

std::string to_dot(const SftPresentation& sft);

}  // namespace tmdyn
