#include <random>

#include "doctest.h"
#include "guarded/approx.hpp"
#include "guarded/bisim.hpp"
#include "guarded/hml.hpp"
#include "support.hpp"

using namespace guarded;
using namespace guarded::hml;

TEST_CASE("formula syntax") {
  CHECK(parse_formula("[a]<b>tt") == Formula::box("a", Formula::dia("b", Formula::tt())));
  CHECK(parse_formula("<a>(tt & ff)") ==
        Formula::dia("a", Formula::conj(Formula::tt(), Formula::ff())));
  CHECK(parse_formula("tt | ff & tt") ==
        Formula::disj(Formula::tt(), Formula::conj(Formula::ff(), Formula::tt())));
  CHECK(parse_formula("<'a><tau>tt") ==
        Formula::dia("'a", Formula::dia("tau", Formula::tt())));
  try {
    (void)parse_formula("[a");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 2);
  }
  CHECK_THROWS_AS(parse_formula("tt &"), ParseError);
  CHECK_THROWS_AS(parse_formula("tt tt"), ParseError);
  auto f = parse_formula("([a]<b>tt | ff) & <c>(tt | [d]ff)");
  CHECK(parse_formula(f.to_string()) == f);
  CHECK(f.modal_depth() == 2);
}

TEST_CASE("satisfaction on the branching example") {
  auto h = testing::hml_fixture();
  const auto& g = h.sys.glts;
  auto phi = parse_formula("[a]<b>tt");
  CHECK(sat(g, h.q, phi, 0));
  CHECK_FALSE(sat(g, h.q, phi, 1));
  CHECK(sat(g, h.p, phi, 1));
  CHECK(sat(g, h.q, Formula::tt(), 3));
  CHECK_FALSE(sat(g, h.q, Formula::ff(), 3));
  CHECK_THROWS_AS(sat(g, h.q, parse_formula("<zz>tt"), 1), LookupError);
}

TEST_CASE("deadlock") {
  auto g = testing::glts_of(1, {"a"}, {});
  for (std::uint32_t n = 0; n < 3; ++n) {
    CHECK(sat(g, StateId{0}, parse_formula("[a]ff"), n));
    CHECK_FALSE(sat(g, StateId{0}, parse_formula("<a>tt"), n));
  }
}

TEST_CASE("level zero is vacuous under modalities") {
  auto g = testing::glts_of(2, {"a"}, {{0, "a", 1}});
  CHECK(sat(g, StateId{0}, parse_formula("[a]ff"), 0));
  CHECK(sat(g, StateId{0}, parse_formula("<a>ff"), 0));
  CHECK_FALSE(sat(g, StateId{0}, parse_formula("<a>ff"), 1));
}

TEST_CASE("distinguishing formulas") {
  auto h = testing::hml_fixture();
  const auto& g = h.sys.glts;
  CHECK_FALSE(distinguish(g, h.p, h.q, 0).has_value());
  auto d = distinguish(g, h.p, h.q, 1);
  REQUIRE(d.has_value());
  CHECK(sat(g, h.p, d->formula, 1) == d->holds_at_first);
  CHECK(sat(g, h.q, d->formula, 1) != d->holds_at_first);
  CHECK_FALSE(distinguish(g, h.p, h.p, 3).has_value());

  auto fig = example_fig1();
  for (std::uint32_t n = 0; n < 6; ++n)
    CHECK_FALSE(distinguish(fig, fig.state("x0"), fig.state("y0"), n).has_value());
}

TEST_CASE("satisfaction is determined by evaluation") {
  std::mt19937_64 rng(71);
  std::vector<Formula> fs;
  for (const char* src : {"<a0>tt", "[a0]<a1>tt", "<a0>([a1]ff | <a0>tt)",
                          "[a1](<a0>tt & <a1>tt)", "<a0><a0><a0>tt"})
    fs.push_back(parse_formula(src));
  for (int i = 0; i < 100; ++i) {
    auto g = testing::random_glts(rng, {5, 2, 3});
    if (g.num_actions() < 2) continue;
    const std::uint32_t n = 2;
    std::vector<ProcTree> roots;
    for (auto x : g.states()) roots.push_back(eval(g, x, n));
    auto ts = tree_system(roots, g.action_names());
    for (auto x : g.states()) {
      auto tx = ts.glts.state("t" + std::to_string(
                                        std::find(ts.trees.begin(), ts.trees.end(), roots[x.value]) -
                                        ts.trees.begin()));
      for (const auto& f : fs) CHECK(sat(g, x, f, n) == sat(ts.glts, tx, f, n));
    }
  }
}

TEST_CASE("returned formulas always separate") {
  std::mt19937_64 rng(72);
  for (int i = 0; i < 100; ++i) {
    auto g = testing::random_glts(rng, {5, 2, 3});
    for (std::uint32_t n = 0; n <= 3; ++n) {
      auto b = bisim_level(g, n);
      for (auto x : g.states())
        for (auto y : g.states()) {
          auto d = distinguish(g, x, y, n);
          if (b.holds(x, y)) CHECK_FALSE(d.has_value());
          if (d) {
            CHECK(sat(g, x, d->formula, n) == d->holds_at_first);
            CHECK(sat(g, y, d->formula, n) != d->holds_at_first);
          }
        }
    }
  }
}

TEST_CASE("a non-bisimilar pair that no formula separates") {
  // x: a->d, a->s.  y: the same plus a->t.  s offers {a, b}, t offers {a}.
  // At level 1 the extra branch breaks B_1, but level-0 truth is monotone
  // in the action set, so every formula that holds at t holds at s or d.
  auto g = testing::glts_of(5, {"a", "b"},
                            {{0, "a", 2}, {0, "a", 3}, {1, "a", 2}, {1, "a", 3}, {1, "a", 4},
                             {3, "a", 2}, {3, "b", 2}, {4, "a", 2}});
  StateId x{0};
  StateId y{1};
  CHECK(bisim_level(g, 0).holds(x, y));
  CHECK_FALSE(bisim_level(g, 1).holds(x, y));
  CHECK_FALSE(distinguish(g, x, y, 1).has_value());
  for (const char* src : {"<a>(<a>tt & [b]ff)", "[a](<b>tt | [a]ff)", "<a><a>tt", "[a]<a>tt"})
    CHECK(sat(g, x, parse_formula(src), 1) == sat(g, y, parse_formula(src), 1));
  CHECK(distinguish(g, x, y, 2).has_value());
}
