#include <random>

#include "doctest.h"
#include "guarded/approx.hpp"
#include "guarded/bisim.hpp"
#include "support.hpp"

using namespace guarded;

namespace {

// Greatest fixed point by brute force: the union of all relations that
// are guarded bisimulations for the step function, iterated from the top.
bool brute_bisim(const Glts& g, StateId x, StateId y, std::uint32_t n) {
  if (n == 0) return initials(g, x) == initials(g, y);
  auto match = [&](StateId s, StateId t) {
    for (const auto& [a, s2] : g.trans(s)) {
      bool found = false;
      for (const auto& [b, t2] : g.trans(t))
        if (a == b && brute_bisim(g, s2, t2, n - 1)) found = true;
      if (!found) return false;
    }
    return true;
  };
  return match(x, y) && match(y, x);
}

}  // namespace

TEST_CASE("running example: stable relation") {
  auto g = example_fig1();
  auto st = bisim_stable(g);
  auto s = [&](const char* n) { return g.state(n).value; };
  CHECK(st.rel.holds(s("x0"), s("y0")));
  CHECK(st.rel.holds(s("x1"), s("y1")));
  CHECK(st.rel.holds(s("x0"), s("y2")));
  CHECK(st.rel.holds(s("x2"), s("y1")));
  CHECK_FALSE(st.rel.holds(s("x0"), s("x1")));
  CHECK(st.level <= 6 * 6 + 1);
  CHECK(check_is_bisimulation(g, st.rel));
}

TEST_CASE("branching example: level 0 only") {
  auto h = testing::hml_fixture();
  const auto& g = h.sys.glts;
  CHECK(bisim_level(g, 0).holds(h.p, h.q));
  for (std::uint32_t n = 1; n <= 5; ++n) CHECK_FALSE(bisim_level(g, n).holds(h.p, h.q));
  auto why = explain_failure(g, h.p, h.q, 1);
  REQUIRE(why.has_value());
  CHECK_FALSE(explain_failure(g, h.p, h.q, 0).has_value());
}

TEST_CASE("levels are equivalences and descend") {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 200; ++i) {
    auto g = testing::random_glts(rng);
    auto chain = bisim_chain(g, 5);
    for (std::size_t k = 0; k < chain.size(); ++k) {
      const auto& b = chain[k];
      for (auto x : g.states()) {
        CHECK(b.holds(x, x));
        for (auto y : g.states()) {
          CHECK(b.holds(x, y) == b.holds(y, x));
          for (auto z : g.states())
            if (b.holds(x, y) && b.holds(y, z)) CHECK(b.holds(x, z));
          if (k > 0 && b.holds(x, y)) CHECK(chain[k - 1].holds(x, y));
        }
      }
    }
  }
}

TEST_CASE("levels agree with a recursive oracle") {
  std::mt19937_64 rng(52);
  for (int i = 0; i < 100; ++i) {
    auto g = testing::random_glts(rng, {4, 2, 2});
    for (std::uint32_t n = 0; n <= 3; ++n) {
      auto b = bisim_level(g, n);
      for (auto x : g.states())
        for (auto y : g.states()) CHECK(b.holds(x, y) == brute_bisim(g, x, y, n));
    }
  }
}

TEST_CASE("stabilization: the stable relation is the greatest bisimulation") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 60; ++i) {
    auto g = testing::random_glts(rng, {3, 2, 2});
    auto st = bisim_stable(g);
    CHECK(bisim_level(g, st.level + 1).rel.pairs() == st.rel.pairs());
    CHECK(check_is_bisimulation(g, st.rel));
    // Every relation over <= 3 states that is a bisimulation and refines
    // action-set equality is contained in the stable one.
    const auto n = g.num_states();
    const std::size_t cells = n * n;
    for (std::uint32_t mask = 0; mask < (1u << cells); ++mask) {
      std::vector<StatePair> ps;
      for (std::uint32_t c = 0; c < cells; ++c)
        if (mask & (1u << c))
          ps.emplace_back(StateId{c / static_cast<std::uint32_t>(n)},
                          StateId{c % static_cast<std::uint32_t>(n)});
      auto r = relation_of(g, ps);
      bool same_initials = true;
      for (const auto& [x, y] : ps) same_initials = same_initials && initials(g, x) == initials(g, y);
      if (same_initials && check_is_bisimulation(g, r))
        CHECK(r.is_subset_of(st.rel));
    }
  }
}

TEST_CASE("coincidence with evaluation") {
  std::mt19937_64 rng(54);
  for (int i = 0; i < 100; ++i) {
    auto g = testing::random_glts(rng);
    for (std::uint32_t n = 0; n <= 3; ++n) CHECK(coincidence(g, n).holds);
  }
}

TEST_CASE("coalgebraic check agrees with the chain") {
  std::mt19937_64 rng(55);
  for (int i = 0; i < 60; ++i) {
    auto g = testing::random_glts(rng, {4, 2, 3});
    auto chain = bisim_chain(g, 3);
    for (std::size_t k = 1; k < chain.size(); ++k)
      CHECK(coalgebraic_bisim_check(g, chain[k].rel, chain[k - 1].rel));
    // The full relation fails as soon as two states differ one level down.
    auto all = fk::Relation::total(g.num_states(), g.num_states());
    bool level1_total = chain[1].rel.pairs() == all.pairs();
    CHECK(coalgebraic_bisim_check(g, all, chain[0].rel) == level1_total);
  }
}

TEST_CASE("final coalgebra coincidence") {
  CHECK(final_coalgebra_coincidence(example_fig1(), 3));
  std::mt19937_64 rng(56);
  for (int i = 0; i < 40; ++i)
    CHECK(final_coalgebra_coincidence(testing::random_glts(rng, {4, 2, 2}), 2));
}
