#include <doctest.h>

#include <random>

#include "support.hpp"
#include "tmdyn/machine.hpp"

using namespace tmdyn;
using tmdyn::testing::ticker;
using tmdyn::testing::zigzag;

TEST_CASE("reference machines parse") {
  const auto t = ticker();
  CHECK(t.num_states() == 2);
  CHECK(t.num_symbols() == 2);
  CHECK(t.table().size() == 4);
  CHECK(t.delta(t.find_state("q1"), t.find_symbol("a")) ==
        Transition{t.find_state("q2"), t.find_symbol("a"), Move::Stay});
  CHECK(t.has_stay_moves());

  const auto z = zigzag();
  CHECK(z.table().size() == 4);
  CHECK(z.delta(z.find_state("r"), z.find_symbol("b")) ==
        Transition{z.find_state("l"), z.find_symbol("a"), Move::Left});
  CHECK_FALSE(z.has_stay_moves());
}

TEST_CASE("parse errors name the problem") {
  const std::string missing =
      "states: q1 q2\nalphabet: a b\n"
      "rule: q1 a -> q2 a S\nrule: q1 b -> q2 b S\nrule: q2 a -> q1 a R\n";
  try {
    parse_machine(missing);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("(q2,b)") != std::string::npos);
  }

  try {
    parse_machine("states: q\nalphabet: a\nrule: q a -> q a X\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_machine("states: q q\nalphabet: a\nrule: q a -> q a R\n"), ParseError);
  CHECK_THROWS_AS(parse_machine("states: q\nalphabet: a\nrule: q a -> p a R\n"), ParseError);
  CHECK_THROWS_AS(parse_machine("states: q\nalphabet: a\nrule: q a -> q a R\nrule: q a -> q a L\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_machine("alphabet: a\n"), ParseError);
  CHECK_THROWS_AS(parse_machine("states: q\nalphabet: a\nbogus\n"), ParseError);
  CHECK_THROWS(load_machine("/nonexistent/machine.tm"));
}

TEST_CASE("comments and blank lines are ignored") {
  const auto m = parse_machine("# header\n\nstates: s   # one\nalphabet: a\n  rule: s a -> s a R  \n");
  CHECK(m.num_states() == 1);
  CHECK(m.delta(State{0}, Symbol{0}).move == Move::Right);
}

TEST_CASE("serialization round-trips and digests are stable") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const auto m = tmdyn::testing::random_machine(rng, 1 + i % 3, 1 + i % 3);
    CHECK(parse_machine(serialize(m)) == m);
    CHECK(digest(m) == digest(parse_machine(serialize(m))));
    CHECK(digest(m).size() == 16);
  }
  CHECK(digest(ticker()) != digest(zigzag()));
}

TEST_CASE("mirror negates moves and is an involution") {
  const auto t = ticker();
  const auto mt = mirror(t);
  CHECK(mt.delta(t.find_state("q2"), Symbol{0}).move == Move::Left);
  CHECK(mt.delta(t.find_state("q1"), Symbol{0}).move == Move::Stay);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const auto m = tmdyn::testing::random_machine(rng, 3, 2);
    CHECK(mirror(mirror(m)) == m);
  }
}

TEST_CASE("disjoint union keeps components apart") {
  const auto t = ticker();
  const auto u = disjoint_union(t, mirror(t));
  CHECK(u.num_states() == 4);
  CHECK(u.table().size() == 8);
  CHECK(u.state_names()[0] == "q1#1");
  CHECK(u.state_names()[3] == "q2#2");
  for (std::size_t q = 0; q < 4; ++q)
    for (std::size_t a = 0; a < 2; ++a)
      CHECK((index(u.delta(State(q), Symbol(a)).next) < 2) == (q < 2));
  CHECK_THROWS_AS(disjoint_union(t, parse_machine("states: s\nalphabet: x\nrule: s x -> s x R\n")),
                  std::invalid_argument);
}

TEST_CASE("annotated product acts on the base symbol only") {
  const auto z = zigzag();
  const auto p = annotate_product(z, 2);
  CHECK(p.num_states() == 2);
  CHECK(p.num_symbols() == 4);
  CHECK(p.symbol_names()[3] == "b.1");
  const auto& t = p.delta(z.find_state("r"), p.find_symbol("b.1"));
  CHECK(t.write == p.find_symbol("a.1"));
  CHECK(t.move == Move::Left);
  CHECK_THROWS_AS(annotate_product(z, 1), std::invalid_argument);
}
