#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tmdyn {

/// Resource caps shared by every bounded computation.
struct Limits {
  std::uint64_t nodes = 200'000'000;     // abstract work units (search nodes, generated words)
  double seconds = 120.0;                // wall-clock cap
  std::size_t graph_vertices = 200'000;  // crossing graph size cap
  std::size_t sft_words = 2'000'000;     // allowed window words in an SFT presentation
  std::size_t memory_bytes = 1ull << 30; // rough cap on cached crossing-word data
};

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Meters node consumption against Limits. Node accounting is deterministic; the wall-clock cap
/// is checked every few thousand nodes.
class Budget {
 public:
  Budget() : Budget(Limits{}) {}
  explicit Budget(Limits limits)
      : limits_(limits), start_(std::chrono::steady_clock::now()) {}

  void charge(std::uint64_t nodes = 1) {
    used_ += nodes;
    if (used_ > limits_.nodes)
      throw BudgetExceeded("node budget of " + std::to_string(limits_.nodes) + " exhausted");
    if ((used_ & 0xFFF) < nodes) check_clock();
  }

  void check_clock() const {
    if (elapsed_seconds() > limits_.seconds)
      throw BudgetExceeded("time budget of " + std::to_string(limits_.seconds) + " s exhausted");
  }

  [[nodiscard]] double elapsed_seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  [[nodiscard]] std::uint64_t used() const { return used_; }
  [[nodiscard]] std::uint64_t remaining() const {
    return used_ >= limits_.nodes ? 0 : limits_.nodes - used_;
  }
  [[nodiscard]] const Limits& limits() const { return limits_; }

 private:
  Limits limits_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t used_ = 0;
};

}  // namespace tmdyn
