#include "tmdyn/exhaustive.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tmdyn {

namespace {

constexpr int kUnknown = -1;

// Branch-on-demand search over all n-step behaviours. A cell is branched over the alphabet
// the first time it is read, so every root-to-leaf path is one distinct trace.
template <class Visitor, bool Prune>
class Explorer {
 public:
  Explorer(const TuringMachine& machine, std::size_t n, Budget& budget, Visitor& visitor)
      : machine_(machine),
        n_(n),
        budget_(budget),
        visitor_(visitor),
        current_(2 * n + 1, kUnknown),
        initial_(2 * n + 1, kUnknown) {
    trace_.reserve(n);
  }

  void explore() {
    for (std::size_t q = 0; q < machine_.num_states(); ++q) {
      start_state_ = static_cast<State>(q);
      visit(0, start_state_, 0);
    }
  }

  // Visitor interface.
  [[nodiscard]] const Trace& trace() const { return trace_; }
  [[nodiscard]] std::size_t visited() const { return visited_; }
  [[nodiscard]] std::size_t horizon() const { return n_; }

  [[nodiscard]] WindowConfiguration witness() const {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    for (std::size_t i = 0; i < initial_.size(); ++i) {
      if (initial_[i] == kUnknown) continue;
      const auto p = static_cast<std::int64_t>(i) - static_cast<std::int64_t>(n_);
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
    WindowConfiguration w;
    w.state = start_state_;
    w.origin = lo - 1;
    w.head = static_cast<std::size_t>(1 - lo);
    w.segment.assign(static_cast<std::size_t>(hi - lo + 3), Symbol{0});
    for (std::int64_t p = lo; p <= hi; ++p) {
      const int s = initial_[static_cast<std::size_t>(p + static_cast<std::int64_t>(n_))];
      if (s != kUnknown) w.segment[static_cast<std::size_t>(p - lo + 1)] = static_cast<Symbol>(s);
    }
    return w;
  }

 private:
  void visit(std::size_t depth, State q, std::int64_t head) {
    budget_.charge();
    if (depth == n_) {
      visitor_.leaf(*this);
      return;
    }
    if constexpr (Prune) {
      if (visited_ + (n_ - depth) <= visitor_.best()) return;
    }
    const auto cell = static_cast<std::size_t>(head + static_cast<std::int64_t>(n_));
    if (current_[cell] != kUnknown) {
      advance(depth, q, head, cell, static_cast<Symbol>(current_[cell]));
      return;
    }
    ++visited_;
    for (std::size_t a = 0; a < machine_.num_symbols(); ++a) {
      current_[cell] = initial_[cell] = static_cast<int>(a);
      advance(depth, q, head, cell, static_cast<Symbol>(a));
    }
    current_[cell] = initial_[cell] = kUnknown;
    --visited_;
  }

  void advance(std::size_t depth, State q, std::int64_t head, std::size_t cell, Symbol read) {
    const auto& t = machine_.delta(q, read);
    trace_.push_back({read, q});
    const int saved = current_[cell];
    current_[cell] = static_cast<int>(index(t.write));
    visit(depth + 1, t.next, head + offset(t.move));
    current_[cell] = saved;
    trace_.pop_back();
  }

  const TuringMachine& machine_;
  std::size_t n_;
  Budget& budget_;
  Visitor& visitor_;
  std::vector<int> current_;
  std::vector<int> initial_;
  Trace trace_;
  std::size_t visited_ = 0;
  State start_state_{};
};

void require_horizon(std::size_t n) {
  if (n == 0) throw std::invalid_argument("horizon must be at least 1");
}

struct CollectVisitor {
  BehaviorSet* out;
  template <class E>
  void leaf(const E& e) {
    out->behaviors.emplace(e.trace(), Behavior{e.visited(), e.witness()});
  }
};

struct SummaryVisitor {
  BehaviorSummary* out;
  template <class E>
  void leaf(const E& e) {
    ++out->count;
    ++out->by_visited[e.visited()];
    out->max_visited = std::max(out->max_visited, e.visited());
  }
};

struct MaxVisitor {
  std::size_t best_ = 0;
  bool any = false;
  [[nodiscard]] std::size_t best() const { return any ? best_ : 0; }
  template <class E>
  void leaf(const E& e) {
    if (!any || e.visited() > best_) best_ = e.visited();
    any = true;
  }
};

// Smallest double >= x, nudged up so the rounding of log2 and the division is covered.
double round_up(double x, int ulps) {
  for (int i = 0; i < ulps; ++i) x = std::nextafter(x, std::numeric_limits<double>::infinity());
  return x;
}

}  // namespace

BehaviorSet enumerate_behaviors(const TuringMachine& machine, std::size_t n, Budget& budget) {
  require_horizon(n);
  BehaviorSet set;
  set.horizon = n;
  CollectVisitor visitor{&set};
  Explorer<CollectVisitor, false> explorer(machine, n, budget, visitor);
  try {
    explorer.explore();
  } catch (const BudgetExceeded& e) {
    throw EnumerationBudgetExceeded(e.what(), set.size());
  }
  return set;
}

BehaviorSummary summarize_behaviors(const TuringMachine& machine, std::size_t n, Budget& budget) {
  require_horizon(n);
  BehaviorSummary summary;
  summary.horizon = n;
  SummaryVisitor visitor{&summary};
  Explorer<SummaryVisitor, false> explorer(machine, n, budget, visitor);
  try {
    explorer.explore();
  } catch (const BudgetExceeded& e) {
    throw EnumerationBudgetExceeded(e.what(), summary.count);
  }
  return summary;
}

Rational speed_upper(const TuringMachine& machine, std::size_t n, Budget& budget) {
  require_horizon(n);
  MaxVisitor visitor;
  Explorer<MaxVisitor, true> explorer(machine, n, budget, visitor);
  explorer.explore();
  return {static_cast<std::int64_t>(visitor.best()), static_cast<std::int64_t>(n)};
}

double entropy_upper(const BehaviorSummary& summary) {
  require_horizon(summary.horizon);
  const std::uint64_t count = summary.count;
  const auto n = static_cast<double>(summary.horizon);
  if (std::has_single_bit(count)) {
    const auto e = static_cast<double>(std::countr_zero(count));
    const double v = e / n;
    return v * n == e ? v : round_up(v, 1);
  }
  return round_up(std::log2(static_cast<double>(count)) / n, 4);
}

double entropy_upper(const TuringMachine& machine, std::size_t n, Budget& budget) {
  return entropy_upper(summarize_behaviors(machine, n, budget));
}

double pressure_estimate(const BehaviorSummary& summary, double x) {
  require_horizon(summary.horizon);
  if (x < 0) throw std::invalid_argument("pressure needs x >= 0");
  double peak = -std::numeric_limits<double>::infinity();
  for (const auto& [s, cnt] : summary.by_visited)
    peak = std::max(peak, std::log2(static_cast<double>(cnt)) + x * static_cast<double>(s));
  double sum = 0;
  for (const auto& [s, cnt] : summary.by_visited)
    sum += std::exp2(std::log2(static_cast<double>(cnt)) + x * static_cast<double>(s) - peak);
  return (peak + std::log2(sum)) / static_cast<double>(summary.horizon);
}

double pressure_estimate(const TuringMachine& machine, std::size_t n, double x, Budget& budget) {
  return pressure_estimate(summarize_behaviors(machine, n, budget), x);
}

BehaviorSet oracle_window_enumeration(const TuringMachine& machine, std::size_t n,
                                      std::size_t max_n) {
  require_horizon(n);
  if (n > max_n)
    throw std::invalid_argument("oracle enumeration limited to n <= " + std::to_string(max_n));
  const std::size_t width = 2 * n - 1;
  const std::size_t sigma = machine.num_symbols();
  BehaviorSet set;
  set.horizon = n;
  WindowConfiguration w;
  w.origin = -static_cast<std::int64_t>(n - 1);
  w.head = n - 1;
  w.segment.assign(width, Symbol{0});
  std::vector<std::size_t> digits(width, 0);
  for (std::size_t q = 0; q < machine.num_states(); ++q) {
    w.state = static_cast<State>(q);
    std::fill(digits.begin(), digits.end(), 0);
    while (true) {
      for (std::size_t i = 0; i < width; ++i) w.segment[i] = static_cast<Symbol>(digits[i]);
      RunRecord rec = run(machine, w, n);
      if (rec.steps != n) throw std::logic_error("oracle window too small");
      const std::size_t s = rec.visited_counts.back();
      auto [it, inserted] = set.behaviors.emplace(rec.trace, Behavior{s, w});
      if (!inserted && it->second.visited != s)
        throw std::logic_error("trace does not determine s_n");
      std::size_t i = 0;
      while (i < width && ++digits[i] == sigma) digits[i++] = 0;
      if (i == width) break;
    }
  }
  return set;
}

bool same_behaviors(const BehaviorSet& a, const BehaviorSet& b) {
  if (a.horizon != b.horizon || a.size() != b.size()) return false;
  auto ia = a.behaviors.begin();
  auto ib = b.behaviors.begin();
  for (; ia != a.behaviors.end(); ++ia, ++ib) {
    if (ia->first != ib->first || ia->second.visited != ib->second.visited) return false;
  }
  return true;
}

}  // namespace tmdyn
