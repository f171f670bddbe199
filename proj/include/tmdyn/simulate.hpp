#pragma once

#include <cstdint>
#include <map>
#include <variant>
#include <vector>

#include "tmdyn/machine.hpp"

namespace tmdyn {

/// Finite piece of tape around the head. Cell j of `segment` sits at absolute position
/// origin + j.
struct WindowConfiguration {
  State state{};
  std::vector<Symbol> segment;
  std::size_t head = 0;
  std::int64_t origin = 0;

  [[nodiscard]] std::int64_t head_position() const {
    return origin + static_cast<std::int64_t>(head);
  }
  /// Throws std::invalid_argument when the segment is empty or the head is outside it.
  void validate() const;

  friend bool operator==(const WindowConfiguration&, const WindowConfiguration&) = default;
};

/// Tape = left_fill on every cell < 0, then transient from cell 0, then period repeated forever.
struct UltimatelyPeriodicConfiguration {
  State state{};
  Symbol left_fill{};
  std::vector<Symbol> transient;
  std::vector<Symbol> period;

  [[nodiscard]] Symbol at(std::int64_t position) const;
  /// Window covering [first, last] with the head on cell 0.
  [[nodiscard]] WindowConfiguration window(std::int64_t first, std::int64_t last) const;
};

enum class Side : std::uint8_t { Left, Right };

/// The head tried to leave the window. `config` is the window after the write and state change,
/// with the head still on the cell it was leaving.
struct BoundaryExit {
  Side side;
  WindowConfiguration config;
};

using StepResult = std::variant<WindowConfiguration, BoundaryExit>;

StepResult step(const TuringMachine& machine, const WindowConfiguration& config);

struct TraceEntry {
  Symbol symbol;
  State state;

  friend auto operator<=>(const TraceEntry&, const TraceEntry&) = default;
};

using Trace = std::vector<TraceEntry>;

/// Crossing of the boundary between cells `boundary` and `boundary + 1`, recorded with the
/// state the machine is in after the transition that moved it across.
struct CrossingEvent {
  std::int64_t boundary;
  State state;
  std::size_t time;
};

struct RunRecord {
  std::size_t steps = 0;
  Trace trace;                             // entry i: (symbol, state) read before step i
  std::vector<std::size_t> visited_counts; // s_1 .. s_steps
  std::vector<std::int64_t> head_positions;  // cell read at step i
  std::int64_t final_position = 0;         // head position after the last executed step
  std::map<std::int64_t, std::size_t> first_passage;
  std::map<std::int64_t, std::size_t> last_passage;
  std::vector<CrossingEvent> crossings;
  bool exited = false;
  Side exit_side = Side::Left;
  WindowConfiguration final_config;
};

/// Runs up to n steps; stops early (recorded in `exited`) when the head leaves the window.
RunRecord run(const TuringMachine& machine, const WindowConfiguration& config, std::size_t n);

/// Boundary index -> states of its crossings in time order.
std::map<std::int64_t, std::vector<State>> observed_crossing_sequences(const RunRecord& record);

/// Tape with `mark` at every position (-2)^i, i >= 0, and `fill` elsewhere, over [first, last].
WindowConfiguration neg_pow2_window(State state, Symbol fill, Symbol mark, std::int64_t first,
                                    std::int64_t last);

}  // namespace tmdyn
