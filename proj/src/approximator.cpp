#include "tmdyn/approximator.hpp"

#include <cmath>
#include <cstdio>

#include "tmdyn/exhaustive.hpp"

namespace tmdyn {

std::string to_string(Quantity q) { return q == Quantity::Speed ? "speed" : "entropy"; }

std::string to_string(Status s) {
  return s == Status::Converged ? "converged" : "budget_exhausted";
}

namespace {

std::string decimal(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Alternates the two tracks. Each step callback returns false once its track is finished.
template <typename Upper, typename Lower, typename Done>
void interleave(Upper&& upper_step, Lower&& lower_step, Done&& done) {
  bool upper_alive = true;
  bool lower_alive = true;
  while ((upper_alive || lower_alive) && !done()) {
    if (upper_alive) upper_alive = upper_step();
    if (done()) break;
    if (lower_alive) lower_alive = lower_step();
  }
}

}  // namespace

IntervalResult approximate_speed(const TuringMachine& machine, double epsilon,
                                 const ApproximatorOptions& options) {
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  IntervalResult r;
  r.quantity = Quantity::Speed;
  r.epsilon = epsilon;
  Rational lower(0);
  Rational upper(1);  // s_n <= n always
  r.stay_extension_used = machine.has_stay_moves();

  Budget upper_budget(options.limits);
  Budget lower_budget(options.limits);
  CrossingAnalyzer forward(machine);
  CrossingAnalyzer backward(mirror(machine));
  std::size_t n = 1;
  std::size_t k = 1;
  const auto done = [&] { return r.best_n > 0 && (upper - lower).to_double() <= epsilon; };

  const auto upper_step = [&] {
    ScheduleEntry entry{'n', n, false, "", 0, 0, ""};
    try {
      const Rational u = speed_upper(machine, n, upper_budget);
      entry.completed = true;
      entry.value = u.str();
      entry.numeric = u.to_double();
      if (u < upper || r.best_n == 0) {
        upper = std::min(upper, u);
        r.best_n = n;
      }
    } catch (const BudgetExceeded& e) {
      entry.note = e.what();
    }
    entry.elapsed = upper_budget.elapsed_seconds();
    r.schedule.push_back(entry);
    n *= 2;
    return entry.completed && n <= options.max_n;
  };

  const auto lower_step = [&] {
    ScheduleEntry entry{'k', k, false, "", 0, 0, ""};
    try {
      auto s = speed_lower(forward, backward, k, lower_budget);
      entry.completed = true;
      entry.value = s.value.str();
      entry.numeric = s.value.to_double();
      r.stay_extension_used = r.stay_extension_used || s.stay_extension_used;
      if (r.best_k == 0 || s.value > lower) {
        lower = s.value;
        r.best_k = k;
        if (s.cycle) r.speed_witness = SpeedWitness{*s.cycle, std::move(s.graph), s.from_mirror, {}};
      }
    } catch (const BudgetExceeded& e) {
      entry.note = e.what();
    }
    entry.elapsed = lower_budget.elapsed_seconds();
    r.schedule.push_back(entry);
    k += 2;
    return entry.completed && k <= options.max_k;
  };

  interleave(upper_step, lower_step, done);

  if (options.attempt_exact && lower > Rational(0) && lower != upper) {
    r.exact = exact_speed(machine, lower, lower_budget);
    if (r.exact->value) lower = upper = *r.exact->value;
  }
  if (r.speed_witness) {
    const auto& w = *r.speed_witness;
    const auto& m = w.from_mirror ? backward.machine() : forward.machine();
    r.speed_witness->certificate = periodic_certificate(m, w.graph, w.cycle);
  }
  r.lower_exact = lower;
  r.upper_exact = upper;
  r.lower = lower.to_double();
  r.upper = upper.to_double();
  r.status = done() ? Status::Converged : Status::BudgetExhausted;
  r.elapsed = std::max(upper_budget.elapsed_seconds(), lower_budget.elapsed_seconds());
  return r;
}

IntervalResult approximate_entropy(const TuringMachine& machine, double epsilon,
                                   const ApproximatorOptions& options) {
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  IntervalResult r;
  r.quantity = Quantity::Entropy;
  r.epsilon = epsilon;
  const double delta = epsilon / 4;
  double lower = 0;
  // |T_n| <= (|Q||Σ|)^n: one trace letter per step.
  double upper = std::log2(static_cast<double>(machine.num_states() * machine.num_symbols()));
  r.stay_extension_used = machine.has_stay_moves();

  Budget upper_budget(options.limits);
  Budget lower_budget(options.limits);
  CrossingAnalyzer forward(machine);
  CrossingAnalyzer backward(mirror(machine));
  std::size_t n = 1;
  std::size_t k = 1;
  const auto done = [&] { return r.best_n > 0 && upper - lower <= epsilon; };

  const auto upper_step = [&] {
    ScheduleEntry entry{'n', n, false, "", 0, 0, ""};
    try {
      const double u = entropy_upper(machine, n, upper_budget);
      entry.completed = true;
      entry.value = decimal(u);
      entry.numeric = u;
      if (u < upper || r.best_n == 0) {
        upper = std::min(upper, u);
        r.best_n = n;
      }
    } catch (const BudgetExceeded& e) {
      entry.note = e.what();
    }
    entry.elapsed = upper_budget.elapsed_seconds();
    r.schedule.push_back(entry);
    n *= 2;
    return entry.completed && n <= options.max_n;
  };

  const auto lower_step = [&] {
    ScheduleEntry entry{'k', k, false, "", 0, 0, ""};
    try {
      const auto s = entropy_lower(forward, backward, k, delta, lower_budget);
      entry.completed = true;
      entry.value = decimal(s.value);
      entry.numeric = s.value;
      if (!s.converged) entry.note = "spectral enclosure wider than requested";
      r.stay_extension_used = r.stay_extension_used || s.stay_extension_used;
      if (r.best_k == 0 || s.value > lower) {
        lower = s.value;
        r.best_k = k;
        r.entropy_witness = s;
      }
    } catch (const BudgetExceeded& e) {
      entry.note = e.what();
    }
    entry.elapsed = lower_budget.elapsed_seconds();
    r.schedule.push_back(entry);
    k += 2;
    return entry.completed && k <= options.max_k;
  };

  interleave(upper_step, lower_step, done);

  r.lower = lower;
  r.upper = upper;
  r.status = done() ? Status::Converged : Status::BudgetExhausted;
  r.elapsed = std::max(upper_budget.elapsed_seconds(), lower_budget.elapsed_seconds());
  return r;
}

}  // namespace tmdyn
