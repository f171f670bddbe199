#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tmdyn/budget.hpp"
#include "tmdyn/graph_analysis.hpp"
#include "tmdyn/machine.hpp"
#include "tmdyn/rational.hpp"

namespace tmdyn {

enum class Quantity { Speed, Entropy };
enum class Status { Converged, BudgetExhausted };

std::string to_string(Quantity q);
std::string to_string(Status s);

struct ScheduleEntry {
  char track;            // 'n' for upper bounds, 'k' for lower bounds
  std::size_t level;
  bool completed;        // false when the bound ran out of budget
  std::string value;     // "p/q" for speed, decimal for entropy; empty if not completed
  double numeric = 0;
  double elapsed = 0;    // seconds since the start of the run
  std::string note;
};

struct SpeedWitness {
  WeightedCycle cycle;
  CrossingGraph graph;
  bool from_mirror = false;
  std::optional<PeriodicCertificate> certificate;
};

struct IntervalResult {
  Quantity quantity = Quantity::Speed;
  double lower = 0;
  double upper = 0;
  std::optional<Rational> lower_exact;  // speed only
  std::optional<Rational> upper_exact;
  Status status = Status::BudgetExhausted;
  double epsilon = 0;
  std::size_t best_n = 0;  // level of the reported upper bound (0: none yet)
  std::size_t best_k = 0;  // level of the reported lower bound (0: none yet)
  std::vector<ScheduleEntry> schedule;
  bool stay_extension_used = false;
  std::optional<SpeedWitness> speed_witness;
  std::optional<EntropyLowerBound> entropy_witness;
  std::optional<ExactSpeed> exact;
  double elapsed = 0;

  [[nodiscard]] double width() const { return upper - lower; }
};

struct ApproximatorOptions {
  Limits limits;                 // applied to each track separately; the clock is shared
  std::size_t max_n = 1u << 10;  // upper-bound horizons stop after this
  std::size_t max_k = 31;        // lower-bound levels stop after this
  bool attempt_exact = true;     // try the exact mode once a positive lower bound is known
};

/// Interleaves speed_upper(n), n = 1, 2, 4, ..., with speed_lower(k), k = 1, 3, 5, ..., until
/// the interval is at most epsilon wide or both tracks run out.
IntervalResult approximate_speed(const TuringMachine& machine, double epsilon,
                                 const ApproximatorOptions& options = {});

/// Same schedule for entropy; the spectral precision is epsilon / 4.
IntervalResult approximate_entropy(const TuringMachine& machine, double epsilon,
                                   const ApproximatorOptions& options = {});

}  // namespace tmdyn
