#include <random>

#include "doctest.h"
#include "guarded/glts.hpp"
#include "support.hpp"

using namespace guarded;

namespace {

// Transitive closure by Warshall over an adjacency matrix.
std::vector<std::vector<bool>> closure(const Glts& g) {
  const auto n = g.num_states();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    r[i][i] = true;
    for (const auto& [a, t] : g.trans(StateId{static_cast<std::uint32_t>(i)}))
      r[i][t.value] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = true;
  return r;
}

}  // namespace

TEST_CASE("running example is well formed") {
  auto g = example_fig1();
  CHECK(validate(g).empty());
  CHECK(g.num_states() == 6);
  CHECK(g.num_actions() == 2);
  CHECK(successors(g, g.state("x0"), g.action("ff")) ==
        FinSet<StateId>{g.state("x1"), g.state("x2")});
  CHECK(successors(g, g.state("y0"), g.action("tt")).is_empty());
  CHECK(initials(g, g.state("y1")) == FinSet<ActionId>{g.action("ff"), g.action("tt")});
}

TEST_CASE("lookups fail loudly") {
  auto g = example_fig1();
  CHECK_THROWS_AS(g.state("z9"), LookupError);
  CHECK_THROWS_AS(g.action("maybe"), LookupError);
  CHECK_THROWS_AS(g.trans(StateId{42}), LookupError);
  CHECK_FALSE(g.find_state("z9").has_value());

  GltsBuilder b;
  b.state("p").action("a").transition("p", "a", "q");
  try {
    (void)b.build();
    FAIL("expected LookupError");
  } catch (const LookupError& e) {
    CHECK(std::string(e.what()).find("q") != std::string::npos);
  }
}

TEST_CASE("reachable matches a transitive closure oracle") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 200; ++i) {
    auto g = testing::random_glts(rng);
    auto r = closure(g);
    for (auto x : g.states()) {
      auto got = reachable(g, x);
      for (auto y : g.states()) CHECK(member(y, got) == r[x.value][y.value]);
    }
  }
}

TEST_CASE("text and json round trips") {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 100; ++i) {
    auto g = testing::random_glts(rng);
    CHECK(parse_glts(to_glts_text(g)) == g);
    CHECK(glts_from_json(to_json(g)) == g);
  }
  auto g = example_fig1();
  CHECK(parse_glts(to_glts_text(g)) == g);
}

TEST_CASE("text format accepts any order and comments") {
  auto g = parse_glts(
      "# forward references are fine\n"
      "trans p a q\n"
      "state q\n\n"
      "action a   # inline\n"
      "state p\n");
  CHECK(g.num_states() == 2);
  CHECK(successors(g, g.state("p"), g.action("a")) == FinSet<StateId>{g.state("q")});
}

TEST_CASE("text format errors carry the line") {
  try {
    (void)parse_glts("state p\naction a\ntrans p a nowhere\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 3);
  }
  CHECK_THROWS_AS(parse_glts("stat p\n"), ParseError);
  CHECK_THROWS_AS(parse_glts("trans p a\n"), ParseError);
}

TEST_CASE("coalgebra view") {
  auto g = example_fig1();
  auto view = as_coalgebra(g);
  CHECK(view.carrier == 6);
  REQUIRE(view.structure.size() == 6);
  for (auto x : g.states()) {
    CHECK(fk::conforms(view.functor, view.structure[x.value], view.carrier));
    CHECK(view.structure[x.value] == edges_to_value(g.trans(x)));
  }
}

TEST_CASE("shipped fixture matches the built-in example") {
  CHECK(load_glts(std::string(GUARDED_DATA_DIR) + "/fig1.glts") == example_fig1());
}
