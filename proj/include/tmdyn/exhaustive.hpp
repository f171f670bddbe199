#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "tmdyn/budget.hpp"
#include "tmdyn/machine.hpp"
#include "tmdyn/rational.hpp"
#include "tmdyn/simulate.hpp"

namespace tmdyn {

struct Behavior {
  std::size_t visited = 0;         // s_n
  WindowConfiguration witness;     // replays to this trace
};

/// All length-n traces, each with its s_n and one witness configuration.
struct BehaviorSet {
  std::size_t horizon = 0;
  std::map<Trace, Behavior> behaviors;

  [[nodiscard]] std::size_t size() const { return behaviors.size(); }
};

/// Thrown when an enumeration runs out of budget. `partial` counts the traces completed so far,
/// which only bounds |T_n| from below.
class EnumerationBudgetExceeded : public BudgetExceeded {
 public:
  EnumerationBudgetExceeded(const std::string& what, std::uint64_t partial)
      : BudgetExceeded(what + " (" + std::to_string(partial) + " traces enumerated, not certified)"),
        partial_(partial) {}
  [[nodiscard]] std::uint64_t partial() const { return partial_; }

 private:
  std::uint64_t partial_;
};

/// Aggregate of an enumeration without materialized traces.
struct BehaviorSummary {
  std::size_t horizon = 0;
  std::uint64_t count = 0;                     // |T_n|
  std::map<std::size_t, std::uint64_t> by_visited;  // s_n -> number of traces
  std::size_t max_visited = 0;                 // g_n
};

BehaviorSet enumerate_behaviors(const TuringMachine& machine, std::size_t n, Budget& budget);
BehaviorSummary summarize_behaviors(const TuringMachine& machine, std::size_t n, Budget& budget);

/// g_n / n with g_n = max s_n over all configurations (branch and bound on s_n).
Rational speed_upper(const TuringMachine& machine, std::size_t n, Budget& budget);

/// (1/n) log2 |T_n|, rounded up by at most 1e-9.
double entropy_upper(const TuringMachine& machine, std::size_t n, Budget& budget);
double entropy_upper(const BehaviorSummary& summary);

/// (1/n) log2 sum over traces of 2^(x * s_n).
double pressure_estimate(const TuringMachine& machine, std::size_t n, double x, Budget& budget);
double pressure_estimate(const BehaviorSummary& summary, double x);

/// Reference enumeration over every window of length 2n-1 centred on the head. Guarded by
/// max_n (default 8).
BehaviorSet oracle_window_enumeration(const TuringMachine& machine, std::size_t n,
                                      std::size_t max_n = 8);

/// Same (trace, s_n) pairs, witnesses ignored.
bool same_behaviors(const BehaviorSet& a, const BehaviorSet& b);

}  // namespace tmdyn
