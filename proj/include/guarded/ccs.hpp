#ifndef GUARDED_CCS_HPP
#define GUARDED_CCS_HPP

// CCS with guarded recursion.
//
// Names are numbered by binding depth: a term in scope n may mention names
// 0..n-1, and `nu` over a scope-n term binds name n in its body.  A file's
// free channel names take 0..k-1 in order of first appearance.  Recursion
// variables use ordinary De Bruijn indices (the innermost `mu` is 0).
//
// Surface syntax, loosest to tightest:
//
//   P ::= P | P            parallel
//       | P + P            choice
//       | l.P | nu a. P | mu X. P | 0 | X | D | l | ( P )
//   l ::= a | 'a | tau     input, output, silent
//
// Binders extend as far right as possible.  A bare label `l` abbreviates
// `l.0`.  Lower-case identifiers are channels; upper-case identifiers are
// recursion variables when bound by an enclosing `mu`, and otherwise refer
// to an earlier definition of the same file.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "guarded/canon_set.hpp"
#include "guarded/errors.hpp"
#include "guarded/glts.hpp"

namespace guarded::ccs {

struct Label {
  enum class Kind : std::uint8_t { In, Out, Tau };
  Kind kind = Kind::Tau;
  std::uint32_t name = 0;  // unused for Tau

  static Label in(std::uint32_t n) { return {Kind::In, n}; }
  static Label out(std::uint32_t n) { return {Kind::Out, n}; }
  static Label tau() { return {Kind::Tau, 0}; }

  bool complements(const Label& o) const {
    return kind != Kind::Tau && o.kind != Kind::Tau && kind != o.kind &&
           name == o.name;
  }
  auto operator<=>(const Label&) const = default;
};

class Process {
 public:
  enum class Kind : std::uint8_t { Nil, Prefix, Sum, Par, Nu, Var, Mu };

  static Process nil();
  static Process prefix(Label l, Process p);
  static Process sum(Process p, Process q);
  static Process par(Process p, Process q);
  static Process nu(Process p);
  static Process var(std::uint32_t index);
  static Process mu(Process p);

  Kind kind() const { return node_->kind; }
  const Label& label() const { return node_->label; }
  std::uint32_t var_index() const { return node_->index; }
  const Process& body() const { return node_->kids.at(0); }
  const Process& left() const { return node_->kids.at(0); }
  const Process& right() const { return node_->kids.at(1); }

  friend bool operator==(const Process& a, const Process& b);
  friend bool operator!=(const Process& a, const Process& b) {
    return !(a == b);
  }
  friend bool operator<(const Process& a, const Process& b);

  /// Constructor-style rendering with raw indices, e.g.
  /// `Mu(Prefix(in 0, Var 0))`.
  std::string debug_string() const;

 private:
  struct Node {
    Kind kind;
    Label label;
    std::uint32_t index = 0;
    std::vector<Process> kids;
  };
  Process() = default;
  explicit Process(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static int compare(const Process& a, const Process& b);

  std::shared_ptr<const Node> node_;
};

using Step = std::pair<Label, Process>;
using Steps = FinSet<Step>;

/// Free channel names in order; index i is name i.
using NameTable = std::vector<std::string>;

// ---------------------------------------------------------------------------
// Scope and guardedness

/// True iff every name is < scope and every recursion variable is bound.
bool well_scoped(const Process& p, std::uint32_t scope);

/// First unguarded recursion binder, as its nesting depth from the root;
/// nullopt if every bound variable occurs under a prefix.
std::optional<std::uint32_t> first_unguarded(const Process& p);

// ---------------------------------------------------------------------------
// Substitution and transitions

/// Replaces recursion variable `var` in p by q (closed in recursion
/// variables, scope n).  Names bound inside q are renumbered to stay
/// distinct from names bound in p around the insertion point.
Process subst(const Process& p, const Process& q, std::uint32_t var,
              std::uint32_t scope);

/// Renumbers names >= cutoff by +delta.
Process shift_names(const Process& p, std::uint32_t cutoff,
                    std::uint32_t delta);

Steps act_left(const Steps& u, const Process& q);
Steps act_right(const Process& p, const Steps& u);
Steps synch(const Steps& u, const Steps& v);

/// Drops steps on the restricted name `scope` (input or output) and wraps
/// the remaining continuations in `nu`.  Throws ShapeError on labels
/// outside scope + 1.
Steps act_nu(const Steps& u, std::uint32_t scope);

/// The transitions of a closed, guarded term in the given scope.
Steps act(const Process& p, std::uint32_t scope);

// ---------------------------------------------------------------------------
// Parsing and printing

struct Definition {
  std::string name;
  Process process;
};

struct Program {
  NameTable names;
  std::vector<Definition> defs;

  const Definition* find(const std::string& name) const;
  std::uint32_t scope() const { return static_cast<std::uint32_t>(names.size()); }
};

/// Parses one process expression; free channels are appended to `names`.
/// Throws ParseError for syntax, scope, and guardedness violations.
Process parse(const std::string& src, NameTable& names);
Process parse(const std::string& src);

/// `.ccs` files: one `name = process` definition per line, `#` comments.
Program parse_program(const std::string& text);
Program load_program(const std::string& path);

/// Parseable surface text.  Bound names and recursion variables get
/// generated names.
std::string print(const Process& p, const NameTable& names);
std::string print_label(const Label& l, const NameTable& names);

// ---------------------------------------------------------------------------
// Compilation to a finite system

struct CcsSystem {
  Glts glts;
  std::vector<Process> terms;  // by state id
  std::vector<StateId> roots;  // one per requested root
};

/// Explores the act-reachable terms from `roots` (all in scope
/// names.size()).  States are terms up to structural equality, named
/// s0, s1, .. in exploration order, which always takes the least pending
/// term.  Throws LimitExceeded past `state_limit` states.
CcsSystem to_glts(const std::vector<Process>& roots, const NameTable& names,
                  std::size_t state_limit);

}  // namespace guarded::ccs

#endif  // GUARDED_CCS_HPP
