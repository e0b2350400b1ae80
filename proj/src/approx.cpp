#include "guarded/approx.hpp"

#include <map>

#include "guarded/errors.hpp"

namespace guarded {

bool operator==(const ProcTree::Branch& a, const ProcTree::Branch& b) {
  if (a.action != b.action) return false;
  if (a.next == b.next) return true;
  if (!a.next || !b.next) return false;
  return *a.next == *b.next;
}

bool operator<(const ProcTree::Branch& a, const ProcTree::Branch& b) {
  if (a.action != b.action) return a.action < b.action;
  if (a.next == b.next) return false;
  if (!a.next) return true;
  if (!b.next) return false;
  return *a.next < *b.next;
}

bool operator==(const ProcTree& a, const ProcTree& b) {
  return a.budget_ == b.budget_ && a.branches_ == b.branches_;
}

bool operator<(const ProcTree& a, const ProcTree& b) {
  if (a.budget_ != b.budget_) return a.budget_ < b.budget_;
  return a.branches_ < b.branches_;
}

ProcTree ProcTree::leaf(FinSet<ActionId> actions) {
  ProcTree t;
  std::vector<Branch> bs;
  bs.reserve(actions.size());
  for (auto a : actions) bs.push_back({a, nullptr});
  t.branches_ = FinSet<Branch>::from_sorted_unique(std::move(bs));
  return t;
}

ProcTree ProcTree::node(std::uint32_t budget,
                        std::vector<std::pair<ActionId, ProcTree>> children) {
  std::vector<Branch> bs;
  bs.reserve(children.size());
  for (auto& [a, c] : children)
    bs.push_back({a, std::make_shared<const ProcTree>(std::move(c))});
  return node(budget, std::move(bs));
}

ProcTree ProcTree::node(std::uint32_t budget, std::vector<Branch> branches) {
  if (budget == 0) {
    for (const auto& b : branches)
      if (b.next) throw ShapeError("budget-0 tree cannot have children");
  } else {
    for (const auto& b : branches) {
      if (!b.next || b.next->budget() != budget - 1)
        throw ShapeError("child budget must be " + std::to_string(budget - 1));
    }
  }
  ProcTree t;
  t.budget_ = budget;
  t.branches_ = FinSet<Branch>::from_unsorted(std::move(branches));
  return t;
}

FinSet<ActionId> ProcTree::actions() const {
  return map([](const Branch& b) { return b.action; }, branches_);
}

std::string ProcTree::render(const Glts& g) const {
  return render(g.action_names());
}

std::string ProcTree::render(const std::vector<std::string>& names) const {
  auto action = [&](ActionId a) {
    return a.value < names.size() ? names[a.value]
                                  : "#" + std::to_string(a.value);
  };
  return guarded::render(branches_, [&](const Branch& b) {
    if (!b.next) return action(b.action);
    return "(" + action(b.action) + ", " + b.next->render(names) + ")";
  });
}

// ---------------------------------------------------------------------------

ProcTreePtr Evaluator::eval(StateId x, std::uint32_t budget) {
  g_.trans(x);  // throws on unknown state
  while (memo_.size() <= budget) memo_.emplace_back(g_.num_states());
  auto& slot = memo_[budget][x.value];
  if (slot) return slot;
  ProcTree t;
  if (budget == 0) {
    t = ProcTree::leaf(initials(g_, x));
  } else {
    std::vector<ProcTree::Branch> bs;
    for (const auto& [a, y] : g_.trans(x)) bs.push_back({a, eval(y, budget - 1)});
    t = ProcTree::node(budget, std::move(bs));
  }
  // eval(y, budget - 1) may have grown memo_, so index afresh.
  auto& fresh = memo_[budget][x.value];
  fresh = std::make_shared<const ProcTree>(std::move(t));
  return fresh;
}

ProcTree eval(const Glts& g, StateId x, std::uint32_t budget) {
  Evaluator ev(g);
  return *ev.eval(x, budget);
}

std::vector<ProcTree> eval_all(const Glts& g, std::uint32_t budget) {
  Evaluator ev(g);
  std::vector<ProcTree> out;
  out.reserve(g.num_states());
  for (auto x : g.states()) out.push_back(*ev.eval(x, budget));
  return out;
}

ProcTree restrict(const ProcTree& t) {
  if (t.budget() == 0) throw ShapeError("cannot restrict a budget-0 tree");
  if (t.budget() == 1) return ProcTree::leaf(t.actions());
  std::vector<ProcTree::Branch> bs;
  for (const auto& b : t.branches())
    bs.push_back({b.action, std::make_shared<const ProcTree>(restrict(*b.next))});
  return ProcTree::node(t.budget() - 1, std::move(bs));
}

TreeFamily eval_family(const Glts& g, std::uint32_t n) {
  Evaluator ev(g);
  TreeFamily h(n + 1);
  for (std::uint32_t k = 0; k <= n; ++k)
    for (auto x : g.states()) h[k].push_back(*ev.eval(x, k));
  return h;
}

bool check_unique(const Glts& g, const TreeFamily& h, std::uint32_t n) {
  if (h.size() < n + 1) return false;
  for (std::uint32_t k = 0; k <= n; ++k) {
    if (h[k].size() != g.num_states()) return false;
    for (auto x : g.states()) {
      const ProcTree& got = h[k][x.value];
      if (got.budget() != k) return false;
      ProcTree expected;
      if (k == 0) {
        expected = ProcTree::leaf(initials(g, x));
      } else {
        std::vector<std::pair<ActionId, ProcTree>> cs;
        for (const auto& [a, y] : g.trans(x)) cs.emplace_back(a, h[k - 1][y.value]);
        expected = ProcTree::node(k, std::move(cs));
      }
      if (got != expected) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

TreeSystem tree_system(const std::vector<ProcTree>& roots,
                       const std::vector<std::string>& action_names) {
  std::map<ProcTree, std::uint32_t> index;
  std::vector<ProcTree> trees;
  std::vector<const ProcTree*> stack;
  for (const auto& r : roots) stack.push_back(&r);
  while (!stack.empty()) {
    const ProcTree* t = stack.back();
    stack.pop_back();
    if (index.count(*t)) continue;
    index.emplace(*t, static_cast<std::uint32_t>(trees.size()));
    trees.push_back(*t);
    for (const auto& b : t->branches())
      if (b.next) stack.push_back(b.next.get());
  }
  bool needs_sink = false;
  for (const auto& t : trees)
    if (t.budget() == 0 && !t.branches().is_empty()) needs_sink = true;

  std::vector<std::string> names;
  for (std::size_t i = 0; i < trees.size(); ++i) names.push_back("t" + std::to_string(i));
  std::optional<StateId> sink;
  if (needs_sink) {
    sink = StateId{static_cast<std::uint32_t>(trees.size())};
    names.push_back("*");
  }
  std::vector<FinSet<Edge>> trans;
  for (const auto& t : trees) {
    std::vector<Edge> es;
    for (const auto& b : t.branches()) {
      StateId target = b.next ? StateId{index.at(*b.next)} : *sink;
      es.emplace_back(b.action, target);
    }
    trans.push_back(FinSet<Edge>::from_unsorted(std::move(es)));
  }
  if (needs_sink) {
    trans.emplace_back();
    trees.push_back(ProcTree::leaf({}));
  }
  return {Glts(std::move(names), action_names, std::move(trans)), std::move(trees),
          sink};
}

}  // namespace guarded
