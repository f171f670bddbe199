#include <doctest.h>

#include <random>

#include "support.hpp"
#include "tmdyn/approximator.hpp"
#include "tmdyn/report.hpp"

using namespace tmdyn;
using tmdyn::testing::ticker;
using tmdyn::testing::zigzag;

TEST_CASE("speed intervals of the reference machines") {
  const auto z = approximate_speed(zigzag(), 0.1);
  CHECK(z.status == Status::Converged);
  CHECK(*z.lower_exact == Rational(1));
  CHECK(*z.upper_exact == Rational(1));
  CHECK(z.best_n == 1);
  CHECK(z.best_k == 1);
  REQUIRE(z.speed_witness);
  REQUIRE(z.speed_witness->certificate);
  CHECK(z.speed_witness->certificate->verified);

  const auto t = approximate_speed(ticker(), 0.1);
  CHECK(t.status == Status::Converged);
  CHECK(*t.lower_exact == Rational(1, 2));
  CHECK(*t.upper_exact >= Rational(1, 2));
  CHECK(t.width() <= 0.1);
  CHECK(t.stay_extension_used);

  const auto runner = parse_machine("states: s\nalphabet: a b\nrule: s a -> s a R\nrule: s b -> s b R\n");
  const auto r = approximate_speed(runner, 0.01);
  CHECK(r.status == Status::Converged);
  CHECK(*r.lower_exact == Rational(1));
  CHECK(r.schedule.size() == 2);
}

TEST_CASE("entropy intervals of the reference machines") {
  const auto single = parse_machine("states: s\nalphabet: a\nrule: s a -> s a R\n");
  const auto s = approximate_entropy(single, 0.1);
  CHECK(s.status == Status::Converged);
  CHECK(s.lower == 0.0);
  CHECK(s.upper == 0.0);
  CHECK(s.best_n == 1);

  const auto t = approximate_entropy(ticker(), 0.2);
  CHECK(t.status == Status::Converged);
  CHECK(t.lower <= 0.5);
  CHECK(t.upper >= 0.5);

  ApproximatorOptions opts;
  opts.limits = tmdyn::testing::small_limits(5'000'000);
  const auto z = approximate_entropy(zigzag(), 0.01, opts);
  CHECK(z.status == Status::BudgetExhausted);
  CHECK(z.lower == 0.0);
  CHECK(z.upper > 0.0);
}

TEST_CASE("bad precision") {
  CHECK_THROWS_AS(approximate_speed(zigzag(), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(approximate_entropy(zigzag(), -1.0), std::invalid_argument);
}

TEST_CASE("mirror invariance, determinism and budget monotonicity") {
  std::mt19937_64 rng(71);
  for (int i = 0; i < 12; ++i) {
    const auto m = tmdyn::testing::random_machine(rng, 1 + i % 3, 2);
    ApproximatorOptions opts;
    opts.limits = tmdyn::testing::small_limits(300'000);
    opts.attempt_exact = false;
    const auto a = approximate_speed(m, 0.02, opts);
    const auto b = approximate_speed(mirror(m), 0.02, opts);
    CHECK(*a.lower_exact == *b.lower_exact);
    CHECK(*a.upper_exact == *b.upper_exact);
    CHECK(dump(to_json(m, a, false)) == dump(to_json(m, approximate_speed(m, 0.02, opts), false)));

    ApproximatorOptions more = opts;
    more.limits.nodes *= 4;
    const auto c = approximate_speed(m, 0.02, more);
    CHECK(*c.lower_exact >= *a.lower_exact);
    CHECK(*c.upper_exact <= *a.upper_exact);

    const auto e1 = approximate_entropy(m, 0.05, opts);
    const auto e2 = approximate_entropy(m, 0.05, more);
    CHECK(e2.lower >= e1.lower);
    CHECK(e2.upper <= e1.upper);
    CHECK(dump(to_json(m, e1, false)) == dump(to_json(m, approximate_entropy(m, 0.05, opts), false)));
  }
}

TEST_CASE("schedule order") {
  const auto t = approximate_speed(ticker(), 0.05);
  REQUIRE(t.schedule.size() >= 4);
  CHECK(t.schedule[0].track == 'n');
  CHECK(t.schedule[0].level == 1);
  CHECK(t.schedule[1].track == 'k');
  CHECK(t.schedule[1].level == 1);
  CHECK(t.schedule[2].level == 2);
  CHECK(t.schedule[3].level == 3);
}
