#ifndef GUARDED_HML_HPP
#define GUARDED_HML_HPP

// Hennessy-Milner logic with step-indexed satisfaction.
//
// At level n a modality inspects the transitions of the state and judges
// the continuation at level n-1.  At level 0 the continuation is trivially
// true, so [a]phi always holds and <a>phi holds iff some a-step exists.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "guarded/glts.hpp"

namespace guarded::hml {

class Formula {
 public:
  enum class Kind : std::uint8_t { True, False, And, Or, Box, Dia };

  static Formula tt();
  static Formula ff();
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula box(std::string action, Formula body);
  static Formula dia(std::string action, Formula body);

  /// Folds with tt / ff as the empty case.
  static Formula conj_all(std::vector<Formula> fs);
  static Formula disj_all(std::vector<Formula> fs);

  Kind kind() const { return node_->kind; }
  const std::string& action() const { return node_->action; }
  const Formula& left() const { return node_->kids.at(0); }
  const Formula& right() const { return node_->kids.at(1); }
  const Formula& body() const { return node_->kids.at(0); }

  /// Nesting depth of modalities.
  std::uint32_t modal_depth() const;
  std::size_t size() const;

  /// Parseable text, e.g. `[a]<b>tt`.
  std::string to_string() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) {
    return !(a == b);
  }

 private:
  struct Node {
    Kind kind;
    std::string action;
    std::vector<Formula> kids;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Grammar: `phi ::= phi | phi  >  phi & phi  >  [a]phi | <a>phi | tt | ff
/// | (phi)`, where `a` is an identifier, `'a`, or `tau`.  Throws
/// ParseError with the offset of the offending character.
Formula parse_formula(const std::string& src);

/// Step-indexed satisfaction.  Throws LookupError for unknown states or
/// actions.
bool sat(const Glts& g, StateId x, const Formula& phi, std::uint32_t n);

/// A formula telling x and y apart at level n.  Without negation the
/// formula may hold of either one; `holds_at_first` says which.
struct Distinction {
  Formula formula;
  bool holds_at_first = true;
};

/// A formula true at x and false at y at level n, if one exists.
std::optional<Formula> separate(const Glts& g, StateId x, StateId y,
                                std::uint32_t n);

/// Tries separate(x, y), then separate(y, x).  Returns nullopt exactly
/// when x and y satisfy the same formulas at level n.
std::optional<Distinction> distinguish(const Glts& g, StateId x, StateId y,
                                       std::uint32_t n);

}  // namespace guarded::hml

#endif  // GUARDED_HML_HPP
