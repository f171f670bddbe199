#include <doctest.h>

#include <map>
#include <random>

#include "support.hpp"
#include "tmdyn/crossing.hpp"

using namespace tmdyn;
using tmdyn::testing::ticker;
using tmdyn::testing::zigzag;

namespace {

std::vector<std::size_t> random_path(const CrossingGraph& g, std::mt19937_64& rng,
                                     std::size_t max_len) {
  const auto out = g.out_edges();
  std::vector<std::size_t> path;
  std::size_t v = g.initials[rng() % g.initials.size()];
  const std::size_t len = 1 + rng() % max_len;
  while (path.size() < len && !out[v].empty()) {
    const auto e = out[v][rng() % out[v].size()];
    path.push_back(e);
    v = g.edges[e].target;
  }
  return path;
}

std::vector<CrossingWord> all_words(std::size_t states, std::size_t max_len) {
  std::vector<CrossingWord> words{{}};
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (words[i].size() == max_len) continue;
    for (std::size_t q = 0; q < states; ++q) {
      auto w = words[i];
      w.push_back(State(q));
      words.push_back(w);
    }
  }
  return words;
}

}  // namespace

TEST_CASE("left relation examples") {
  const auto z = zigzag();
  const auto r = z.find_state("r");
  CHECK(left_matches(z, {}, {}, Symbol{0}) == MatchOutcome{true, 0, false});
  CHECK(left_matches(z, {r}, {r}, z.find_symbol("a")) == MatchOutcome{true, 1, false});
  const auto t = ticker();
  const auto q1 = t.find_state("q1");
  CHECK(left_matches(t, {q1}, {q1}, t.find_symbol("a")) == MatchOutcome{true, 2, false});
  CHECK_FALSE(left_matches(t, {q1}, {t.find_state("q2")}, t.find_symbol("a")).member);
}

TEST_CASE("stay loops never leave the cell") {
  const auto m = parse_machine(
      "states: s t\nalphabet: a b\n"
      "rule: s a -> t b S\nrule: t b -> s a S\nrule: s b -> s b R\nrule: t a -> t a R\n");
  const auto out = left_matches(m, {State{0}}, {State{0}}, Symbol{0});
  CHECK_FALSE(out.member);
  CHECK(out.diverges);
}

TEST_CASE("G_1 of the reference machines") {
  Budget b;
  const auto z = zigzag();
  const auto gz = build_graph(z, 1, b);
  REQUIRE(gz.vertices.size() == 2);
  CHECK(gz.vertices[0] == CrossingWord{z.find_state("r")});
  CHECK(gz.vertices[1] == CrossingWord{z.find_state("l")});
  REQUIRE(gz.edges.size() == 2);
  CHECK(gz.edges[0].source == 0);
  CHECK(gz.edges[0].target == 0);
  CHECK(gz.edges[0].label == z.find_symbol("a"));
  CHECK(gz.edges[0].weight == 1);
  CHECK(gz.edges[1].source == 1);
  CHECK(gz.edges[1].label == z.find_symbol("b"));

  const auto t = ticker();
  const auto gt = build_graph(t, 1, b);
  std::size_t loops = 0;
  for (const auto& e : gt.edges) {
    if (e.source == 0 && e.target == 0) {
      ++loops;
      CHECK(e.weight == 2);
    }
  }
  CHECK(loops == 2);

  const auto dot = to_dot(z, gz);
  CHECK(dot.find("[r]") != std::string::npos);
  CHECK(dot.find("a/1") != std::string::npos);
  CHECK(word_label(z, {z.find_state("r"), z.find_state("l")}) == "[r l]");
}

TEST_CASE("relation sweep: termination, parity, weight law") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 20; ++i) {
    const auto m = tmdyn::testing::random_machine(rng, 2, 2, i % 2 == 0);
    CrossingAnalyzer an(m);
    const auto words = all_words(2, 3);
    for (const auto& w : words)
      for (const auto& w2 : words)
        for (std::size_t a = 0; a < 2; ++a) {
          const auto out = an.left_matches(w, w2, Symbol(a));
          if (!out.member) continue;
          CHECK((w.size() + w2.size()) % 2 == 0);
          if (!m.has_stay_moves()) CHECK(out.steps * 2 == w.size() + w2.size());
          CHECK_FALSE(out.diverges);
        }
  }
}

TEST_CASE("successor generation agrees with the relation") {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 20; ++i) {
    const auto m = tmdyn::testing::random_machine(rng, 2, 2);
    CrossingAnalyzer an(m);
    Budget b;
    for (const auto& w : all_words(2, 3)) {
      for (std::size_t a = 0; a < 2; ++a) {
        std::map<CrossingWord, std::uint32_t> listed;
        for (const auto& [w2, steps] : an.left_successors(w, Symbol(a), 5, b)) listed[w2] = steps;
        for (const auto& w2 : all_words(2, 5)) {
          const auto out = an.left_matches(w, w2, Symbol(a));
          CHECK(out.member == listed.contains(w2));
          if (out.member && listed.contains(w2)) CHECK(out.steps == listed[w2]);
        }
      }
    }
  }
}

TEST_CASE("graph invariants") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 30; ++i) {
    const auto m = tmdyn::testing::random_machine(rng, 1 + i % 3, 2);
    Budget b(tmdyn::testing::small_limits());
    CrossingAnalyzer an(m);
    const auto g1 = an.build_graph(1, b);
    const auto g3 = an.build_graph(3, b);
    const auto g5 = an.build_graph(5, b);
    for (const auto* g : {&g1, &g3, &g5}) {
      CHECK(g->initials.size() == m.num_states());
      for (const auto& w : g->vertices) {
        CHECK(w.size() % 2 == 1);
        CHECK(w.size() <= g->k);
      }
      for (const auto& e : g->edges) {
        CHECK(e.weight >= 1);
        const auto out = an.left_matches(g->vertices[e.source], g->vertices[e.target], e.label);
        CHECK(out.member);
        CHECK(out.steps == e.weight);
        if (!m.has_stay_moves())
          CHECK(2 * e.weight == g->vertices[e.source].size() + g->vertices[e.target].size());
      }
    }
    // G_k sits inside G_{k+2}.
    for (const auto& [small, big] : {std::pair{&g1, &g3}, std::pair{&g3, &g5}}) {
      for (const auto& w : small->vertices) CHECK(big->find(w) != CrossingGraph::npos);
      for (const auto& e : small->edges) {
        const auto s = big->find(small->vertices[e.source]);
        const auto t = big->find(small->vertices[e.target]);
        CHECK(std::any_of(big->edges.begin(), big->edges.end(), [&](const CrossingEdge& f) {
          return f.source == s && f.target == t && f.label == e.label && f.weight == e.weight;
        }));
      }
    }
  }
}

TEST_CASE("paths replay on the machine") {
  Budget b;
  const auto z = zigzag();
  const auto gz = build_graph(z, 1, b);
  const auto rep = validate_against_simulation(z, gz, std::vector<std::size_t>(10, 0));
  CHECK(rep.valid);
  CHECK(rep.exact);
  CHECK(validate_against_simulation(z, gz, {}).valid);

  const auto t = ticker();
  const auto gt = build_graph(t, 1, b);
  std::size_t a_loop = 0;
  while (!(gt.edges[a_loop].source == 0 && gt.edges[a_loop].target == 0 &&
           gt.edges[a_loop].label == t.find_symbol("a")))
    ++a_loop;
  const auto rt = validate_against_simulation(t, gt, std::vector<std::size_t>(5, a_loop));
  CHECK(rt.valid);
  CHECK(rt.exact);

  std::mt19937_64 rng(43);
  for (int i = 0; i < 40; ++i) {
    const auto m = tmdyn::testing::random_machine(rng, 1 + i % 3, 2);
    Budget bb(tmdyn::testing::small_limits());
    const auto g = build_graph(m, 3, bb);
    for (int j = 0; j < 10; ++j) {
      const auto path = random_path(g, rng, 12);
      const auto rep2 = validate_against_simulation(m, g, path);
      INFO(serialize(m));
      CHECK(rep2.valid);
    }
  }
}

TEST_CASE("label words determine paths between fixed vertices") {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 20; ++i) {
    const auto m = tmdyn::testing::random_machine(rng, 1 + i % 3, 2);
    Budget b(tmdyn::testing::small_limits());
    const auto g = build_graph(m, 3, b);
    const auto out = g.out_edges();
    for (std::size_t s = 0; s < std::min<std::size_t>(g.vertices.size(), 12); ++s) {
      // (label word, end vertex) -> number of paths from s.
      std::map<std::pair<std::vector<std::size_t>, std::size_t>, int> count;
      std::vector<std::size_t> labels;
      auto dfs = [&](auto&& self, std::size_t v, std::size_t depth) -> void {
        if (depth > 0) ++count[{labels, v}];
        if (depth == 5) return;
        for (const auto e : out[v]) {
          labels.push_back(index(g.edges[e].label));
          self(self, g.edges[e].target, depth + 1);
          labels.pop_back();
        }
      };
      dfs(dfs, s, 0);
      for (const auto& [key, c] : count) CHECK(c == 1);
    }
  }
}
