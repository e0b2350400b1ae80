#ifndef GUARDED_FUNCTOR_KIT_HPP
#define GUARDED_FUNCTOR_KIT_HPP

// A closed grammar of container functors
//
//   F ::= Const(k) | Id | F x F | F + F | Pfin(F)
//
// together with their values over a finite carrier {0, .., n-1}, the
// functorial action, and relation lifting in two independent forms:
//
//  * rel_lift_bf: the structural back-and-forth decision, defined by
//    recursion on F;
//  * rel_lift_witness / witness_count: search for values t of F over the
//    graph of R whose two projections are exactly u and v.
//
// The first is the truncated (propositional) lifting; the second exposes
// the untruncated one, whose witnesses need not be unique.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "guarded/canon_set.hpp"
#include "guarded/errors.hpp"

namespace guarded::fk {

using Index = std::uint32_t;

class Functor {
 public:
  enum class Kind { Const, Id, Prod, Sum, Pfin };

  static Functor constant(std::size_t atoms);
  static Functor id();
  static Functor prod(Functor left, Functor right);
  static Functor sum(Functor left, Functor right);
  static Functor pfin(Functor inner);

  Kind kind() const { return node_->kind; }
  /// Universe size of a Const node.
  std::size_t atoms() const { return node_->atoms; }
  const Functor& left() const { return node_->args.at(0); }
  const Functor& right() const { return node_->args.at(1); }
  const Functor& inner() const { return node_->args.at(0); }

  std::string to_string() const;

 private:
  struct Node {
    Kind kind;
    std::size_t atoms = 0;
    std::vector<Functor> args;
  };
  explicit Functor(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// A value of F(X).  Sets are held in canonical order with no duplicates.
class FValue {
 public:
  enum class Kind { Atom, Elem, Pair, Inl, Inr, Set };

  static FValue atom(Index a);
  static FValue elem(Index x);
  static FValue pair(FValue first, FValue second);
  static FValue inl(FValue v);
  static FValue inr(FValue v);
  static FValue set(std::vector<FValue> items);

  Kind kind() const { return kind_; }
  Index index() const { return index_; }
  const std::vector<FValue>& items() const { return items_; }
  const FValue& first() const { return items_.at(0); }
  const FValue& second() const { return items_.at(1); }
  const FValue& payload() const { return items_.at(0); }

  std::string to_string() const;

  friend bool operator==(const FValue& a, const FValue& b);
  friend bool operator!=(const FValue& a, const FValue& b) { return !(a == b); }
  friend bool operator<(const FValue& a, const FValue& b);

 private:
  Kind kind_ = Kind::Atom;
  Index index_ = 0;
  std::vector<FValue> items_;
};

/// Finite proof-irrelevant relation between {0..dom-1} and {0..cod-1}.
/// Its pairs, in canonical order, are also its graph: index i of the
/// graph carrier stands for pairs()[i].
class Relation {
 public:
  using Pair = std::pair<Index, Index>;

  Relation(std::size_t dom, std::size_t cod, FinSet<Pair> pairs);
  Relation(std::size_t dom, std::size_t cod) : Relation(dom, cod, {}) {}

  static Relation equality(std::size_t n);
  static Relation total(std::size_t dom, std::size_t cod);

  std::size_t dom() const { return dom_; }
  std::size_t cod() const { return cod_; }
  const FinSet<Pair>& pairs() const { return pairs_; }
  bool holds(Index x, Index y) const { return pairs_.contains({x, y}); }
  bool is_subset_of(const Relation& other) const {
    return pairs_.is_subset_of(other.pairs_);
  }

  /// Graph projections, as carrier maps from graph indices.
  Index graph_first(Index g) const { return pairs_[g].first; }
  Index graph_second(Index g) const { return pairs_[g].second; }

  friend bool operator==(const Relation& a, const Relation& b) {
    return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.pairs_ == b.pairs_;
  }

 private:
  std::size_t dom_;
  std::size_t cod_;
  FinSet<Pair> pairs_;
};

using CarrierMap = std::function<Index(Index)>;

/// True iff v is a value of F over a carrier of the given size.
bool conforms(const Functor& f, const FValue& v, std::size_t carrier);

/// Applies `map` at every Id leaf; sets are re-canonicalized.
/// Throws ShapeError if v is not shaped by f.
FValue fmap(const Functor& f, const CarrierMap& map, const FValue& v);

/// All values of F over {0..carrier-1} in which every set has at most
/// `set_budget` members.  Throws LimitExceeded past the configured caps.
std::vector<FValue> enumerate(const Functor& f, std::size_t carrier,
                              std::size_t set_budget,
                              const Limits& limits = {});

/// Structural back-and-forth lifting of R along F.
bool rel_lift_bf(const Functor& f, const Relation& r, const FValue& u,
                 const FValue& v);

/// Searches F(graph R) for t with fmap(first, t) == u and
/// fmap(second, t) == v.  The returned value has graph indices at its Id
/// leaves.
std::optional<FValue> rel_lift_witness(const Functor& f, const Relation& r,
                                       const FValue& u, const FValue& v,
                                       const Limits& limits = {});

/// Number of distinct t in F(graph R) projecting to u and v.
std::uint64_t witness_count(const Functor& f, const Relation& r,
                            const FValue& u, const FValue& v,
                            const Limits& limits = {});

}  // namespace guarded::fk

#endif  // GUARDED_FUNCTOR_KIT_HPP
