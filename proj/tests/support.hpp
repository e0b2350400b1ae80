#ifndef GUARDED_TESTS_SUPPORT_HPP
#define GUARDED_TESTS_SUPPORT_HPP

// Random instance generators shared by the unit and acceptance suites.

#include <cstdint>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "guarded/approx.hpp"
#include "guarded/ccs.hpp"
#include "guarded/glts.hpp"

namespace guarded::testing {

struct GltsShape {
  std::size_t max_states = 6;
  std::size_t max_actions = 3;
  std::size_t max_out = 3;
};

/// States s0.., actions a0..; every state gets 0..max_out random edges.
inline Glts random_glts(std::mt19937_64& rng, const GltsShape& shape = {}) {
  std::uniform_int_distribution<std::size_t> ns(1, shape.max_states);
  std::uniform_int_distribution<std::size_t> na(1, shape.max_actions);
  const auto n = ns(rng);
  const auto k = na(rng);
  GltsBuilder b;
  for (std::size_t i = 0; i < n; ++i) b.state("s" + std::to_string(i));
  for (std::size_t i = 0; i < k; ++i) b.action("a" + std::to_string(i));
  std::uniform_int_distribution<std::size_t> deg(0, shape.max_out);
  std::uniform_int_distribution<std::size_t> pick_s(0, n - 1);
  std::uniform_int_distribution<std::size_t> pick_a(0, k - 1);
  for (std::size_t i = 0; i < n; ++i) {
    auto d = deg(rng);
    for (std::size_t e = 0; e < d; ++e)
      b.transition("s" + std::to_string(i), "a" + std::to_string(pick_a(rng)),
                   "s" + std::to_string(pick_s(rng)));
  }
  return b.build();
}

/// Two-state-name-free system from an explicit edge list over states
/// named by index; convenient for hand-written fixtures.
inline Glts glts_of(std::size_t n, std::vector<std::string> actions,
                    const std::vector<std::tuple<int, std::string, int>>& edges) {
  GltsBuilder b;
  for (std::size_t i = 0; i < n; ++i) b.state("q" + std::to_string(i));
  for (auto& a : actions) b.action(a);
  for (const auto& [s, a, t] : edges)
    b.transition("q" + std::to_string(s), a, "q" + std::to_string(t));
  return b.build();
}

/// The two processes p = a.(b + c) and q = a.b + a.c compiled together.
struct HmlFixture {
  ccs::Program program;
  ccs::CcsSystem sys;
  StateId p;
  StateId q;
};

inline HmlFixture hml_fixture() {
  auto prog = ccs::parse_program("p = a.(b + c)\nq = a.b + a.c\n");
  auto sys = ccs::to_glts({prog.defs[0].process, prog.defs[1].process},
                          prog.names, 100);
  auto p = sys.roots[0];
  auto q = sys.roots[1];
  return {std::move(prog), std::move(sys), p, q};
}

}  // namespace guarded::testing

#endif  // GUARDED_TESTS_SUPPORT_HPP
