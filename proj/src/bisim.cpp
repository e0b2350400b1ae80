#include "guarded/bisim.hpp"

#include <stdexcept>

#include "guarded/approx.hpp"

namespace guarded {

namespace {

// Dense square matrix view used while iterating the chain.
class Square {
 public:
  explicit Square(std::size_t n) : n_(n), bits_(n * n, 0) {}

  bool get(std::uint32_t x, std::uint32_t y) const { return bits_[x * n_ + y]; }
  void set(std::uint32_t x, std::uint32_t y, bool v) { bits_[x * n_ + y] = v; }
  friend bool operator==(const Square&, const Square&) = default;

  StateRelation to_relation() const {
    std::vector<fk::Relation::Pair> ps;
    for (std::uint32_t x = 0; x < n_; ++x)
      for (std::uint32_t y = 0; y < n_; ++y)
        if (get(x, y)) ps.emplace_back(x, y);
    return StateRelation(n_, n_,
                         FinSet<fk::Relation::Pair>::from_sorted_unique(std::move(ps)));
  }

 private:
  std::size_t n_;
  std::vector<char> bits_;
};

template <typename Rel>
bool matches(const Glts& g, StateId x, StateId y, const Rel& next) {
  const auto& ex = g.trans(x);
  const auto& ey = g.trans(y);
  for (const auto& [a, x1] : ex) {
    bool found = false;
    for (const auto& [b, y1] : ey) {
      if (b == a && next(x1, y1)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  for (const auto& [b, y1] : ey) {
    bool found = false;
    for (const auto& [a, x1] : ex) {
      if (a == b && next(x1, y1)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

Square level_zero(const Glts& g) {
  const auto n = g.num_states();
  std::vector<FinSet<ActionId>> acts;
  for (auto x : g.states()) acts.push_back(initials(g, x));
  Square s(n);
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y) s.set(x, y, acts[x] == acts[y]);
  return s;
}

Square step(const Glts& g, const Square& prev) {
  const auto n = g.num_states();
  Square s(n);
  auto next = [&](StateId a, StateId b) { return prev.get(a.value, b.value); };
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      s.set(x, y, matches(g, {x}, {y}, next));
    }
  }
  return s;
}

}  // namespace

StateRelation relation_of(const Glts& g, const std::vector<StatePair>& pairs) {
  std::vector<fk::Relation::Pair> ps;
  for (const auto& [x, y] : pairs) ps.emplace_back(x.value, y.value);
  return StateRelation(g.num_states(), g.num_states(),
                       FinSet<fk::Relation::Pair>::from_unsorted(std::move(ps)));
}

bool back_and_forth(const Glts& g, StateId x, StateId y,
                    const StateRelation& next) {
  return matches(g, x, y,
                 [&](StateId a, StateId b) { return next.holds(a.value, b.value); });
}

std::vector<LevelRelation> bisim_chain(const Glts& g, std::uint32_t n) {
  std::vector<LevelRelation> out;
  Square cur = level_zero(g);
  out.push_back({0, cur.to_relation()});
  for (std::uint32_t k = 1; k <= n; ++k) {
    cur = step(g, cur);
    out.push_back({k, cur.to_relation()});
  }
  return out;
}

LevelRelation bisim_level(const Glts& g, std::uint32_t n) {
  Square cur = level_zero(g);
  for (std::uint32_t k = 1; k <= n; ++k) cur = step(g, cur);
  return {n, cur.to_relation()};
}

StableBisim bisim_stable(const Glts& g) {
  const std::size_t bound = g.num_states() * g.num_states() + 1;
  Square cur = level_zero(g);
  for (std::uint32_t k = 0; k <= bound; ++k) {
    Square next = step(g, cur);
    if (next == cur) return {cur.to_relation(), k};
    cur = std::move(next);
  }
  throw std::logic_error("bisimilarity chain did not stabilize within " +
                         std::to_string(bound) + " iterations");
}

bool check_is_bisimulation(const Glts& g, const StateRelation& r) {
  for (const auto& [x, y] : r.pairs())
    if (!back_and_forth(g, {x}, {y}, r)) return false;
  return true;
}

CoincidenceReport coincidence(const Glts& g, std::uint32_t n) {
  auto b = bisim_level(g, n);
  auto trees = eval_all(g, n);
  CoincidenceReport report;
  for (auto x : g.states()) {
    for (auto y : g.states()) {
      bool bis = b.holds(x, y);
      bool eq = trees[x.value] == trees[y.value];
      if (bis != eq) {
        report.holds = false;
        report.counterexample = StatePair{x, y};
        report.bisimilar = bis;
        report.trees_equal = eq;
        return report;
      }
    }
  }
  return report;
}

bool coalgebraic_bisim_check(const Glts& g, const StateRelation& r,
                             const StateRelation& prev, const Limits& limits) {
  const auto f = glts_functor(g.num_actions());
  for (const auto& [x, y] : r.pairs()) {
    auto u = edges_to_value(g.trans({x}));
    auto v = edges_to_value(g.trans({y}));
    if (!fk::rel_lift_witness(f, prev, u, v, limits)) return false;
  }
  return true;
}

bool final_coalgebra_coincidence(const Glts& g, std::uint32_t n) {
  auto roots = eval_all(g, n);
  auto ts = tree_system(roots, g.action_names());
  auto chain = bisim_chain(ts.glts, n);
  const auto count = ts.trees.size();
  for (std::uint32_t s = 0; s < count; ++s) {
    if (ts.sink && s == ts.sink->value) continue;
    for (std::uint32_t t = 0; t < count; ++t) {
      if (ts.sink && t == ts.sink->value) continue;
      const auto k = ts.trees[s].budget();
      if (ts.trees[t].budget() != k) continue;
      // Distinct states of the tree system hold distinct trees.
      if (chain[k].rel.holds(s, t) != (s == t)) return false;
    }
  }
  return true;
}

std::optional<BisimFailure> explain_failure(const Glts& g, StateId x,
                                            StateId y, std::uint32_t n) {
  if (n == 0) {
    auto ax = initials(g, x);
    auto ay = initials(g, y);
    for (auto a : ax)
      if (!ay.contains(a)) return BisimFailure{true, a, std::nullopt};
    for (auto a : ay)
      if (!ax.contains(a)) return BisimFailure{false, a, std::nullopt};
    return std::nullopt;
  }
  auto prev = bisim_level(g, n - 1);
  for (const auto& [a, x1] : g.trans(x)) {
    bool found = false;
    for (const auto& [b, y1] : g.trans(y))
      if (a == b && prev.holds(x1, y1)) found = true;
    if (!found) return BisimFailure{true, a, x1};
  }
  for (const auto& [b, y1] : g.trans(y)) {
    bool found = false;
    for (const auto& [a, x1] : g.trans(x))
      if (a == b && prev.holds(x1, y1)) found = true;
    if (!found) return BisimFailure{false, b, y1};
  }
  return std::nullopt;
}

}  // namespace guarded
