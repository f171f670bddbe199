#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "tmdyn/exhaustive.hpp"

using namespace tmdyn;
using tmdyn::testing::ticker;
using tmdyn::testing::zigzag;

namespace {
Budget roomy() { return Budget(Limits{}); }
}  // namespace

TEST_CASE("trace counts of the reference machines") {
  auto b = roomy();
  CHECK(enumerate_behaviors(zigzag(), 1, b).size() == 4);
  CHECK(enumerate_behaviors(ticker(), 2, b).size() == 6);
  CHECK(summarize_behaviors(ticker(), 2, b).count == 6);
}

TEST_CASE("speed upper bounds") {
  auto b = roomy();
  CHECK(speed_upper(ticker(), 2, b) == Rational(1));
  CHECK(speed_upper(ticker(), 4, b) == Rational(3, 4));
  CHECK(speed_upper(ticker(), 32, b) == Rational(17, 32));
  for (std::size_t n : {1, 5, 12, 40}) CHECK(speed_upper(zigzag(), n, b) == Rational(1));
}

TEST_CASE("entropy upper bounds") {
  auto b = roomy();
  CHECK(entropy_upper(zigzag(), 1, b) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(entropy_upper(zigzag(), 1, b) >= 2.0);
  CHECK(entropy_upper(ticker(), 2, b) == doctest::Approx(0.5 * std::log2(6.0)).epsilon(1e-12));
  CHECK(entropy_upper(ticker(), 2, b) >= 0.5 * std::log2(6.0));
  const auto single = parse_machine("states: s\nalphabet: a\nrule: s a -> s a R\n");
  for (std::size_t n : {1, 3, 9}) CHECK(entropy_upper(single, n, b) == 0.0);
}

TEST_CASE("pressure") {
  auto b = roomy();
  CHECK(pressure_estimate(zigzag(), 1, 1.0, b) == doctest::Approx(3.0));
  const auto s = summarize_behaviors(ticker(), 6, b);
  CHECK(std::abs(pressure_estimate(s, 0.0) - entropy_upper(s)) <= 1e-12);
  double prev = -1;
  for (double x : {0.0, 0.25, 0.5, 1.0, 2.0}) {
    const double p = pressure_estimate(s, x);
    CHECK(p >= prev);
    prev = p;
  }
  CHECK_THROWS_AS(pressure_estimate(s, -1.0), std::invalid_argument);
}

TEST_CASE("branch-on-demand enumeration matches the window oracle") {
  auto b = roomy();
  for (const auto& [name, m] : tmdyn::testing::corpus()) {
    for (std::size_t n = 1; n <= 5; ++n) {
      INFO(name << " n=" << n);
      CHECK(same_behaviors(enumerate_behaviors(m, n, b), oracle_window_enumeration(m, n)));
    }
  }
  std::mt19937_64 rng(21);
  for (int i = 0; i < 40; ++i) {
    const auto m = tmdyn::testing::random_machine(rng, 1 + i % 3, 2);
    for (std::size_t n = 1; n <= 4; ++n)
      CHECK(same_behaviors(enumerate_behaviors(m, n, b), oracle_window_enumeration(m, n)));
  }
  CHECK_THROWS(oracle_window_enumeration(zigzag(), 9));
}

TEST_CASE("witnesses replay to their traces") {
  auto b = roomy();
  std::mt19937_64 rng(4);
  for (int i = 0; i < 20; ++i) {
    const auto m = tmdyn::testing::random_machine(rng, 3, 2);
    const auto set = enumerate_behaviors(m, 6, b);
    for (const auto& [trace, beh] : set.behaviors) {
      const auto rec = run(m, beh.witness, 6);
      REQUIRE_FALSE(rec.exited);
      CHECK(rec.trace == trace);
      CHECK(rec.visited_counts.back() == beh.visited);
    }
  }
}

TEST_CASE("subadditivity and mirror invariance of the maxima") {
  auto b = roomy();
  std::mt19937_64 rng(8);
  for (int i = 0; i < 30; ++i) {
    const auto m = tmdyn::testing::random_machine(rng, 1 + i % 3, 2);
    std::vector<BehaviorSummary> s(9);
    for (std::size_t n = 1; n <= 8; ++n) s[n] = summarize_behaviors(m, n, b);
    for (std::size_t n = 1; n <= 8; ++n)
      for (std::size_t k = 1; n + k <= 8; ++k) {
        CHECK(s[n + k].max_visited <= s[n].max_visited + s[k].max_visited);
        CHECK(std::log2(double(s[n + k].count)) <=
              std::log2(double(s[n].count)) + std::log2(double(s[k].count)) + 1e-9);
      }
    const auto mm = mirror(m);
    for (std::size_t n = 1; n <= 6; ++n) {
      CHECK(speed_upper(m, n, b) == speed_upper(mm, n, b));
      CHECK(summarize_behaviors(mm, n, b).count == s[n].count);
    }
  }
}

TEST_CASE("pruned speed bound equals the full maximum") {
  auto b = roomy();
  std::mt19937_64 rng(17);
  for (int i = 0; i < 30; ++i) {
    const auto m = tmdyn::testing::random_machine(rng, 1 + i % 3, 2);
    for (std::size_t n = 1; n <= 7; ++n) {
      const auto s = summarize_behaviors(m, n, b);
      CHECK(speed_upper(m, n, b) ==
            Rational(static_cast<std::int64_t>(s.max_visited), static_cast<std::int64_t>(n)));
    }
  }
}

TEST_CASE("entropy bound is controlled by the speed bound") {
  auto b = roomy();
  std::mt19937_64 rng(23);
  for (int i = 0; i < 20; ++i) {
    const auto m = tmdyn::testing::random_machine(rng, 1 + i % 3, 2);
    for (std::size_t n = 2; n <= 8; ++n) {
      // A trace is fixed by the start state and the symbols met on first reads, so
      // |T_n| <= |Q| * (1 + |Σ| + ... + |Σ|^{g_n}) < 2 |Q| 2^{g_n} for |Σ| = 2.
      const double slack = (std::log2(double(m.num_states())) + 1) / double(n) + 1e-9;
      CHECK(entropy_upper(m, n, b) <= speed_upper(m, n, b).to_double() + slack);
    }
  }
}

TEST_CASE("trace counts of annotated products") {
  auto b = roomy();
  for (const auto& m : {ticker(), zigzag()}) {
    const auto p = annotate_product(m, 2);
    for (std::size_t n = 1; n <= 5; ++n) {
      const auto base = summarize_behaviors(m, n, b);
      std::uint64_t expected = 0;
      for (const auto& [s, count] : base.by_visited) expected += count << s;
      CHECK(summarize_behaviors(p, n, b).count == expected);
    }
  }
}

TEST_CASE("running out of budget is a hard error") {
  Budget tiny(Limits{50, 10, 1000, 1000});
  CHECK_THROWS_AS(summarize_behaviors(zigzag(), 12, tiny), EnumerationBudgetExceeded);
  Budget tiny2(Limits{50, 10, 1000, 1000});
  CHECK_THROWS_AS(speed_upper(ticker(), 40, tiny2),
                  BudgetExceeded);
}
