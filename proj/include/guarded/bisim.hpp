#ifndef GUARDED_BISIM_HPP
#define GUARDED_BISIM_HPP

// Level-indexed guarded bisimilarity.
//
//   B_0(x, y)     iff x and y have the same action set
//   B_{k+1}(x, y) iff every a-step of x is matched by an a-step of y with
//                 successors in B_k, and vice versa
//
// Level 0 compares action sets only: the delayed continuation clause is
// trivially true at the bottom of the step-indexed model.  Each B_k is an
// equivalence and B_{k+1} is contained in B_k, so on a finite system the
// chain stabilizes.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "guarded/errors.hpp"
#include "guarded/functor_kit.hpp"
#include "guarded/glts.hpp"

namespace guarded {

using StatePair = std::pair<StateId, StateId>;

/// Relation over the states of one system.
using StateRelation = fk::Relation;

struct LevelRelation {
  std::uint32_t level = 0;
  StateRelation rel{0, 0};

  bool holds(StateId x, StateId y) const { return rel.holds(x.value, y.value); }
};

StateRelation relation_of(const Glts& g, const std::vector<StatePair>& pairs);

/// The back-and-forth clause for (x, y) with continuations judged by `next`.
bool back_and_forth(const Glts& g, StateId x, StateId y,
                    const StateRelation& next);

LevelRelation bisim_level(const Glts& g, std::uint32_t n);

/// B_0, .., B_n.
std::vector<LevelRelation> bisim_chain(const Glts& g, std::uint32_t n);

struct StableBisim {
  StateRelation rel{0, 0};
  /// First k with B_{k+1} == B_k.
  std::uint32_t level = 0;
};

/// Iterates the chain until it stabilizes; throws std::logic_error if it
/// has not done so within |states|^2 + 1 steps.
StableBisim bisim_stable(const Glts& g);

/// True iff every pair of R satisfies the back-and-forth clause with
/// continuations again in R.
bool check_is_bisimulation(const Glts& g, const StateRelation& r);

struct CoincidenceReport {
  bool holds = true;
  /// Lexicographically least failing pair, if any.
  std::optional<StatePair> counterexample;
  bool bisimilar = false;
  bool trees_equal = false;
};

/// B_n(x, y) iff eval(x, n) == eval(y, n), over all pairs.
CoincidenceReport coincidence(const Glts& g, std::uint32_t n);

/// For every (x, y) in R, a relation-lifting witness exists between
/// trans(x) and trans(y) for Pfin(Const(actions) x Id) relative to `prev`.
bool coalgebraic_bisim_check(const Glts& g, const StateRelation& r,
                             const StateRelation& prev,
                             const Limits& limits = {});

/// On the system of trees obtained from eval at budget n, B_k coincides
/// with tree equality for every budget-k tree, k = 0..n.
bool final_coalgebra_coincidence(const Glts& g, std::uint32_t n);

/// A transition of x (or of y, when `from_left` is false) that has no
/// level-(n-1) match on the other side; at level 0, an unmatched action.
struct BisimFailure {
  bool from_left = true;
  ActionId action;
  std::optional<StateId> successor;
};

/// Explains why B_n(x, y) fails; nullopt if it holds.
std::optional<BisimFailure> explain_failure(const Glts& g, StateId x,
                                            StateId y, std::uint32_t n);

}  // namespace guarded

#endif  // GUARDED_BISIM_HPP
