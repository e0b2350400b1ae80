#ifndef GUARDED_APPROX_HPP
#define GUARDED_APPROX_HPP

// Depth-indexed approximants of the final guarded coalgebra
// Proc = fix X. Pfin(A x later X).
//
// A ProcTree of budget n is an element of the n-th approximant: at budget
// 0 the delayed component is the unit and only the action set is kept; at
// budget k+1 it is a set of (action, tree of budget k) branches.  Budget n
// therefore observes n+1 transition layers.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "guarded/canon_set.hpp"
#include "guarded/glts.hpp"

namespace guarded {

class ProcTree;
using ProcTreePtr = std::shared_ptr<const ProcTree>;

class ProcTree {
 public:
  /// A branch of a budget-(k+1) node; `next` is null at budget 0.
  struct Branch {
    ActionId action;
    ProcTreePtr next;

    friend bool operator==(const Branch& a, const Branch& b);
    friend bool operator<(const Branch& a, const Branch& b);
  };

  /// Budget-0 tree with the given action set.
  static ProcTree leaf(FinSet<ActionId> actions);
  /// Budget-(k+1) tree; every child must have budget k.
  static ProcTree node(std::uint32_t budget,
                       std::vector<std::pair<ActionId, ProcTree>> children);
  static ProcTree node(std::uint32_t budget, std::vector<Branch> branches);

  std::uint32_t budget() const { return budget_; }
  const FinSet<Branch>& branches() const { return branches_; }
  FinSet<ActionId> actions() const;

  /// `{a, b}` at budget 0, `{(a, {...}), ...}` above; action names from g.
  std::string render(const Glts& g) const;
  std::string render(const std::vector<std::string>& action_names) const;

  friend bool operator==(const ProcTree& a, const ProcTree& b);
  friend bool operator!=(const ProcTree& a, const ProcTree& b) {
    return !(a == b);
  }
  friend bool operator<(const ProcTree& a, const ProcTree& b);

 private:
  std::uint32_t budget_ = 0;
  FinSet<Branch> branches_;
};

/// eval(x, 0) = {a | (a, x') in trans(x)};
/// eval(x, k+1) = {(a, eval(x', k)) | (a, x') in trans(x)}.
/// Results are memoized per (state, budget) and share subtrees.
class Evaluator {
 public:
  explicit Evaluator(const Glts& g) : g_(g) {}

  ProcTreePtr eval(StateId x, std::uint32_t budget);

 private:
  const Glts& g_;
  std::vector<std::vector<ProcTreePtr>> memo_;  // [budget][state]
};

ProcTree eval(const Glts& g, StateId x, std::uint32_t budget);

/// eval at every state, indexed by state id.
std::vector<ProcTree> eval_all(const Glts& g, std::uint32_t budget);

/// Drops the deepest layer: budget n -> n-1.  Throws ShapeError at budget 0.
ProcTree restrict(const ProcTree& t);

/// A candidate family h[k][x] of trees for budgets 0..n.
using TreeFamily = std::vector<std::vector<ProcTree>>;

/// True iff h has budget k at level k for every state and satisfies the
/// coalgebra recurrence at every level 0..n.
bool check_unique(const Glts& g, const TreeFamily& h, std::uint32_t n);

/// eval as a TreeFamily for budgets 0..n.
TreeFamily eval_family(const Glts& g, std::uint32_t n);

/// The system whose states are the distinct subtrees of `roots` plus a
/// sink standing for the unit below budget 0, with unfold as transitions.
struct TreeSystem {
  Glts glts;
  std::vector<ProcTree> trees;  // per state id; the sink holds an empty leaf
  std::optional<StateId> sink;
};

TreeSystem tree_system(const std::vector<ProcTree>& roots,
                       const std::vector<std::string>& action_names);

}  // namespace guarded

#endif  // GUARDED_APPROX_HPP
