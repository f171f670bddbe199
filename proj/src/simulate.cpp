#include "tmdyn/simulate.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace tmdyn {

void WindowConfiguration::validate() const {
  if (segment.empty()) throw std::invalid_argument("window configuration has an empty segment");
  if (head >= segment.size()) throw std::invalid_argument("head outside the window");
}

Symbol UltimatelyPeriodicConfiguration::at(std::int64_t position) const {
  if (position < 0) return left_fill;
  const auto p = static_cast<std::size_t>(position);
  if (p < transient.size()) return transient[p];
  if (period.empty()) throw std::invalid_argument("ultimately periodic configuration without period");
  return period[(p - transient.size()) % period.size()];
}

WindowConfiguration UltimatelyPeriodicConfiguration::window(std::int64_t first,
                                                            std::int64_t last) const {
  if (first > 0 || last < 0) throw std::invalid_argument("window must contain cell 0");
  WindowConfiguration w;
  w.state = state;
  w.origin = first;
  w.head = static_cast<std::size_t>(-first);
  w.segment.reserve(static_cast<std::size_t>(last - first + 1));
  for (std::int64_t p = first; p <= last; ++p) w.segment.push_back(at(p));
  return w;
}

StepResult step(const TuringMachine& machine, const WindowConfiguration& config) {
  WindowConfiguration next = config;
  const auto& t = machine.delta(config.state, config.segment[config.head]);
  next.segment[next.head] = t.write;
  next.state = t.next;
  if (t.move == Move::Left) {
    if (next.head == 0) return BoundaryExit{Side::Left, std::move(next)};
    --next.head;
  } else if (t.move == Move::Right) {
    if (next.head + 1 == next.segment.size()) return BoundaryExit{Side::Right, std::move(next)};
    ++next.head;
  }
  return next;
}

RunRecord run(const TuringMachine& machine, const WindowConfiguration& config, std::size_t n) {
  config.validate();
  RunRecord rec;
  rec.trace.reserve(n);
  rec.visited_counts.reserve(n);
  rec.head_positions.reserve(n);

  WindowConfiguration c = config;
  std::set<std::int64_t> seen;
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t pos = c.head_position();
    const Symbol read = c.segment[c.head];
    rec.trace.push_back({read, c.state});
    rec.head_positions.push_back(pos);
    seen.insert(pos);
    rec.visited_counts.push_back(seen.size());
    rec.first_passage.try_emplace(pos, i);
    rec.last_passage[pos] = i;
    rec.steps = i + 1;

    const auto& t = machine.delta(c.state, read);
    c.segment[c.head] = t.write;
    c.state = t.next;
    if (t.move == Move::Stay) {
      rec.final_position = pos;
      continue;
    }
    const std::int64_t boundary = t.move == Move::Right ? pos : pos - 1;
    rec.crossings.push_back({boundary, t.next, i});
    rec.final_position = pos + offset(t.move);
    if (t.move == Move::Left && c.head == 0) {
      rec.exited = true;
      rec.exit_side = Side::Left;
      break;
    }
    if (t.move == Move::Right && c.head + 1 == c.segment.size()) {
      rec.exited = true;
      rec.exit_side = Side::Right;
      break;
    }
    c.head = static_cast<std::size_t>(static_cast<std::int64_t>(c.head) + offset(t.move));
  }
  if (n == 0) rec.final_position = c.head_position();
  rec.final_config = std::move(c);
  return rec;
}

std::map<std::int64_t, std::vector<State>> observed_crossing_sequences(const RunRecord& record) {
  std::map<std::int64_t, std::vector<State>> out;
  for (const auto& e : record.crossings) out[e.boundary].push_back(e.state);
  return out;
}

WindowConfiguration neg_pow2_window(State state, Symbol fill, Symbol mark, std::int64_t first,
                                    std::int64_t last) {
  if (first > 0 || last < 0) throw std::invalid_argument("window must contain cell 0");
  WindowConfiguration w;
  w.state = state;
  w.origin = first;
  w.head = static_cast<std::size_t>(-first);
  w.segment.assign(static_cast<std::size_t>(last - first + 1), fill);
  const std::int64_t reach = std::max(-first, last);
  for (std::int64_t p = 1; p <= reach && -p <= reach; p *= -2) {
    if (p >= first && p <= last) w.segment[static_cast<std::size_t>(p - first)] = mark;
  }
  return w;
}

}  // namespace tmdyn
