#pragma once

#include <algorithm>
#include <filesystem>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "tmdyn/budget.hpp"
#include "tmdyn/machine.hpp"

namespace tmdyn::testing {

inline std::string machine_path(const std::string& name) {
  return std::string(TMDYN_MACHINES_DIR) + "/" + name;
}

inline TuringMachine ticker() { return load_machine(machine_path("ticker.tm")); }
inline TuringMachine zigzag() { return load_machine(machine_path("zigzag.tm")); }

/// Every machine shipped in machines/, sorted by file name.
inline std::vector<std::pair<std::string, TuringMachine>> corpus() {
  std::vector<std::string> names;
  for (const auto& entry : std::filesystem::directory_iterator(TMDYN_MACHINES_DIR))
    if (entry.path().extension() == ".tm") names.push_back(entry.path().filename().string());
  std::sort(names.begin(), names.end());
  std::vector<std::pair<std::string, TuringMachine>> out;
  for (const auto& n : names) out.emplace_back(n, load_machine(machine_path(n)));
  return out;
}

inline TuringMachine random_machine(std::mt19937_64& rng, std::size_t states, std::size_t symbols,
                                    bool allow_stay = true) {
  std::vector<std::string> qs, as;
  for (std::size_t i = 0; i < states; ++i) qs.push_back("q" + std::to_string(i));
  for (std::size_t i = 0; i < symbols; ++i) as.push_back(std::string(1, static_cast<char>('a' + i)));
  std::uniform_int_distribution<std::size_t> pick_state(0, states - 1), pick_symbol(0, symbols - 1);
  std::uniform_int_distribution<int> pick_move(allow_stay ? -1 : 0, 1);
  std::vector<Transition> table;
  for (std::size_t i = 0; i < states * symbols; ++i) {
    int mv = pick_move(rng);
    if (!allow_stay && mv == 0) mv = -1;
    table.push_back({static_cast<State>(pick_state(rng)), static_cast<Symbol>(pick_symbol(rng)),
                     static_cast<Move>(mv)});
  }
  return TuringMachine(qs, as, table);
}

inline Limits small_limits(std::uint64_t nodes = 2'000'000) {
  Limits l;
  l.nodes = nodes;
  l.seconds = 30;
  l.graph_vertices = 20'000;
  l.sft_words = 200'000;
  l.memory_bytes = 256ull << 20;
  return l;
}

}  // namespace tmdyn::testing
