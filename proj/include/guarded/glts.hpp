#ifndef GUARDED_GLTS_HPP
#define GUARDED_GLTS_HPP

// Guarded labelled transition systems over finite state and action sets.
//
// A successor state is stored as the plain target state; the delay on it
// is realized by the consumers (eval, bisimilarity, satisfaction) reading
// it one level lower.

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "guarded/canon_set.hpp"
#include "guarded/functor_kit.hpp"

namespace guarded {

struct StateId {
  std::uint32_t value = 0;
  auto operator<=>(const StateId&) const = default;
};

struct ActionId {
  std::uint32_t value = 0;
  auto operator<=>(const ActionId&) const = default;
};

std::ostream& operator<<(std::ostream& os, StateId x);
std::ostream& operator<<(std::ostream& os, ActionId a);

using Edge = std::pair<ActionId, StateId>;

struct Transition {
  StateId source;
  ActionId label;
  StateId target;
  auto operator<=>(const Transition&) const = default;
};

/// States and actions are interned names; ids follow the order of the
/// names handed to the constructor (GltsBuilder sorts them).
class Glts {
 public:
  Glts() = default;
  Glts(std::vector<std::string> states, std::vector<std::string> actions,
       std::vector<FinSet<Edge>> trans);

  std::size_t num_states() const { return states_.size(); }
  std::size_t num_actions() const { return actions_.size(); }
  const std::vector<std::string>& state_names() const { return states_; }
  const std::vector<std::string>& action_names() const { return actions_; }

  const std::string& name(StateId x) const;
  const std::string& name(ActionId a) const;

  /// Throws LookupError for unknown names.
  StateId state(const std::string& name) const;
  ActionId action(const std::string& name) const;
  std::optional<StateId> find_state(const std::string& name) const;
  std::optional<ActionId> find_action(const std::string& name) const;

  /// The outgoing (action, target) pairs of x.  Throws LookupError.
  const FinSet<Edge>& trans(StateId x) const;
  const std::vector<FinSet<Edge>>& trans_table() const { return trans_; }

  std::vector<StateId> states() const;
  std::vector<Transition> transitions() const;

  friend bool operator==(const Glts&, const Glts&) = default;

 private:
  std::vector<std::string> states_;
  std::vector<std::string> actions_;
  std::vector<FinSet<Edge>> trans_;
};

/// Accumulates declarations by name, in any order.
class GltsBuilder {
 public:
  GltsBuilder& state(std::string name);
  GltsBuilder& action(std::string name);
  GltsBuilder& transition(std::string source, std::string label,
                          std::string target);

  /// Throws LookupError naming the first transition that mentions an
  /// undeclared state or action.
  Glts build() const;

 private:
  std::vector<std::string> states_;
  std::vector<std::string> actions_;
  std::vector<std::array<std::string, 3>> trans_;
};

/// Every invariant violation, one message each; empty means valid.
std::vector<std::string> validate(const Glts& g);

/// {x' | (a, x') in trans(x)}.
FinSet<StateId> successors(const Glts& g, StateId x, ActionId a);

/// Action set of x: the level-0 observation.
FinSet<ActionId> initials(const Glts& g, StateId x);

/// Least set containing x closed under transitions.
FinSet<StateId> reachable(const Glts& g, StateId x);

/// g as a coalgebra for Pfin(Const(actions) x Id).
struct CoalgebraView {
  fk::Functor functor;
  std::size_t carrier;
  std::vector<fk::FValue> structure;
};

fk::Functor glts_functor(std::size_t num_actions);
fk::FValue edges_to_value(const FinSet<Edge>& edges);
CoalgebraView as_coalgebra(const Glts& g);

/// `.glts` text: `state <id>`, `action <id>`, `trans <src> <label> <dst>`,
/// one per line, any order; blank lines and `#` comments are ignored.
/// Throws ParseError (offset is the 1-based line number) on malformed
/// lines and unknown identifiers.
Glts parse_glts(const std::string& text);
Glts load_glts(const std::string& path);
std::string to_glts_text(const Glts& g);

std::string to_json(const Glts& g);
Glts glts_from_json(const std::string& json);

/// The six-state, two-action running example.
Glts example_fig1();

}  // namespace guarded

#endif  // GUARDED_GLTS_HPP
