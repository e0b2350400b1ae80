#include "guarded/functor_kit.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace guarded::fk {

// ---------------------------------------------------------------------------
// Functor

Functor Functor::constant(std::size_t atoms) {
  return Functor(std::make_shared<const Node>(Node{Kind::Const, atoms, {}}));
}

Functor Functor::id() {
  return Functor(std::make_shared<const Node>(Node{Kind::Id, 0, {}}));
}

Functor Functor::prod(Functor left, Functor right) {
  return Functor(std::make_shared<const Node>(
      Node{Kind::Prod, 0, {std::move(left), std::move(right)}}));
}

Functor Functor::sum(Functor left, Functor right) {
  return Functor(std::make_shared<const Node>(
      Node{Kind::Sum, 0, {std::move(left), std::move(right)}}));
}

Functor Functor::pfin(Functor inner) {
  return Functor(
      std::make_shared<const Node>(Node{Kind::Pfin, 0, {std::move(inner)}}));
}

std::string Functor::to_string() const {
  switch (kind()) {
    case Kind::Const:
      return "Const(" + std::to_string(atoms()) + ")";
    case Kind::Id:
      return "Id";
    case Kind::Prod:
      return "(" + left().to_string() + " x " + right().to_string() + ")";
    case Kind::Sum:
      return "(" + left().to_string() + " + " + right().to_string() + ")";
    case Kind::Pfin:
      return "Pfin(" + inner().to_string() + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// FValue

FValue FValue::atom(Index a) {
  FValue v;
  v.kind_ = Kind::Atom;
  v.index_ = a;
  return v;
}

FValue FValue::elem(Index x) {
  FValue v;
  v.kind_ = Kind::Elem;
  v.index_ = x;
  return v;
}

FValue FValue::pair(FValue first, FValue second) {
  FValue v;
  v.kind_ = Kind::Pair;
  v.items_.reserve(2);
  v.items_.push_back(std::move(first));
  v.items_.push_back(std::move(second));
  return v;
}

FValue FValue::inl(FValue payload) {
  FValue v;
  v.kind_ = Kind::Inl;
  v.items_.push_back(std::move(payload));
  return v;
}

FValue FValue::inr(FValue payload) {
  FValue v;
  v.kind_ = Kind::Inr;
  v.items_.push_back(std::move(payload));
  return v;
}

FValue FValue::set(std::vector<FValue> items) {
  FValue v;
  v.kind_ = Kind::Set;
  v.items_ = FinSet<FValue>::from_unsorted(std::move(items)).elems();
  return v;
}

bool operator==(const FValue& a, const FValue& b) {
  return a.kind_ == b.kind_ && a.index_ == b.index_ && a.items_ == b.items_;
}

bool operator<(const FValue& a, const FValue& b) {
  if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
  if (a.index_ != b.index_) return a.index_ < b.index_;
  return std::lexicographical_compare(a.items_.begin(), a.items_.end(),
                                      b.items_.begin(), b.items_.end());
}

std::string FValue::to_string() const {
  switch (kind_) {
    case Kind::Atom:
      return "#" + std::to_string(index_);
    case Kind::Elem:
      return std::to_string(index_);
    case Kind::Pair:
      return "(" + first().to_string() + ", " + second().to_string() + ")";
    case Kind::Inl:
      return "inl " + payload().to_string();
    case Kind::Inr:
      return "inr " + payload().to_string();
    case Kind::Set: {
      std::string out = "{";
      for (std::size_t i = 0; i < items_.size(); ++i) {
        if (i) out += ", ";
        out += items_[i].to_string();
      }
      return out + "}";
    }
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Relation

Relation::Relation(std::size_t dom, std::size_t cod, FinSet<Pair> pairs)
    : dom_(dom), cod_(cod), pairs_(std::move(pairs)) {
  for (const auto& [x, y] : pairs_) {
    if (x >= dom_ || y >= cod_) {
      throw ShapeError("relation pair (" + std::to_string(x) + ", " +
                       std::to_string(y) + ") outside its domain/codomain");
    }
  }
}

Relation Relation::equality(std::size_t n) {
  std::vector<Pair> ps;
  for (Index i = 0; i < n; ++i) ps.emplace_back(i, i);
  return Relation(n, n, FinSet<Pair>::from_sorted_unique(std::move(ps)));
}

Relation Relation::total(std::size_t dom, std::size_t cod) {
  std::vector<Pair> ps;
  for (Index i = 0; i < dom; ++i)
    for (Index j = 0; j < cod; ++j) ps.emplace_back(i, j);
  return Relation(dom, cod, FinSet<Pair>::from_sorted_unique(std::move(ps)));
}

// ---------------------------------------------------------------------------
// Shape and functorial action

bool conforms(const Functor& f, const FValue& v, std::size_t carrier) {
  using K = FValue::Kind;
  switch (f.kind()) {
    case Functor::Kind::Const:
      return v.kind() == K::Atom && v.index() < f.atoms();
    case Functor::Kind::Id:
      return v.kind() == K::Elem && v.index() < carrier;
    case Functor::Kind::Prod:
      return v.kind() == K::Pair && conforms(f.left(), v.first(), carrier) &&
             conforms(f.right(), v.second(), carrier);
    case Functor::Kind::Sum:
      if (v.kind() == K::Inl) return conforms(f.left(), v.payload(), carrier);
      if (v.kind() == K::Inr) return conforms(f.right(), v.payload(), carrier);
      return false;
    case Functor::Kind::Pfin:
      if (v.kind() != K::Set) return false;
      return std::all_of(v.items().begin(), v.items().end(),
                         [&](const FValue& e) {
                           return conforms(f.inner(), e, carrier);
                         });
  }
  return false;
}

namespace {

[[noreturn]] void shape_mismatch(const Functor& f, const FValue& v) {
  throw ShapeError("value " + v.to_string() + " is not shaped by " +
                   f.to_string());
}

}  // namespace

FValue fmap(const Functor& f, const CarrierMap& map, const FValue& v) {
  using K = FValue::Kind;
  switch (f.kind()) {
    case Functor::Kind::Const:
      if (v.kind() != K::Atom) shape_mismatch(f, v);
      return v;
    case Functor::Kind::Id:
      if (v.kind() != K::Elem) shape_mismatch(f, v);
      return FValue::elem(map(v.index()));
    case Functor::Kind::Prod:
      if (v.kind() != K::Pair) shape_mismatch(f, v);
      return FValue::pair(fmap(f.left(), map, v.first()),
                          fmap(f.right(), map, v.second()));
    case Functor::Kind::Sum:
      if (v.kind() == K::Inl) return FValue::inl(fmap(f.left(), map, v.payload()));
      if (v.kind() == K::Inr)
        return FValue::inr(fmap(f.right(), map, v.payload()));
      shape_mismatch(f, v);
    case Functor::Kind::Pfin: {
      if (v.kind() != K::Set) shape_mismatch(f, v);
      std::vector<FValue> image;
      image.reserve(v.items().size());
      for (const auto& e : v.items()) image.push_back(fmap(f.inner(), map, e));
      return FValue::set(std::move(image));
    }
  }
  shape_mismatch(f, v);
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

void check_count(std::size_t n, const Limits& limits) {
  if (n > limits.max_values) {
    throw LimitExceeded("enumeration would produce " + std::to_string(n) +
                        " values (limit " +
                        std::to_string(limits.max_values) + ")");
  }
}

// Number of subsets of an m-element set with at most k members, saturating.
std::size_t bounded_subset_count(std::size_t m, std::size_t k,
                                 std::size_t cap) {
  std::size_t total = 0;
  std::size_t binom = 1;  // C(m, i)
  for (std::size_t i = 0; i <= k && i <= m; ++i) {
    total += binom;
    if (total > cap) return cap + 1;
    binom = binom * (m - i) / (i + 1);
  }
  return total;
}

void subsets_rec(const std::vector<FValue>& pool, std::size_t start,
                 std::size_t budget, std::vector<FValue>& current,
                 std::vector<FValue>& out) {
  out.push_back(FValue::set(current));
  if (current.size() == budget) return;
  for (std::size_t i = start; i < pool.size(); ++i) {
    current.push_back(pool[i]);
    subsets_rec(pool, i + 1, budget, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<FValue> enumerate(const Functor& f, std::size_t carrier,
                              std::size_t set_budget, const Limits& limits) {
  if (carrier > limits.max_carrier) {
    throw LimitExceeded("carrier of size " + std::to_string(carrier) +
                        " exceeds limit " +
                        std::to_string(limits.max_carrier));
  }
  std::vector<FValue> out;
  switch (f.kind()) {
    case Functor::Kind::Const:
      check_count(f.atoms(), limits);
      for (Index a = 0; a < f.atoms(); ++a) out.push_back(FValue::atom(a));
      break;
    case Functor::Kind::Id:
      for (Index x = 0; x < carrier; ++x) out.push_back(FValue::elem(x));
      break;
    case Functor::Kind::Prod: {
      auto ls = enumerate(f.left(), carrier, set_budget, limits);
      auto rs = enumerate(f.right(), carrier, set_budget, limits);
      if (!ls.empty() && rs.size() > limits.max_values / ls.size()) {
        check_count(limits.max_values + 1, limits);
      }
      out.reserve(ls.size() * rs.size());
      for (const auto& l : ls)
        for (const auto& r : rs) out.push_back(FValue::pair(l, r));
      break;
    }
    case Functor::Kind::Sum: {
      auto ls = enumerate(f.left(), carrier, set_budget, limits);
      auto rs = enumerate(f.right(), carrier, set_budget, limits);
      check_count(ls.size() + rs.size(), limits);
      for (auto& l : ls) out.push_back(FValue::inl(std::move(l)));
      for (auto& r : rs) out.push_back(FValue::inr(std::move(r)));
      break;
    }
    case Functor::Kind::Pfin: {
      auto pool = enumerate(f.inner(), carrier, set_budget, limits);
      std::size_t budget = std::min(set_budget, pool.size());
      if (budget > limits.max_set_card) {
        throw LimitExceeded("set cardinality " + std::to_string(budget) +
                            " exceeds limit " +
                            std::to_string(limits.max_set_card));
      }
      check_count(bounded_subset_count(pool.size(), budget, limits.max_values),
                  limits);
      std::vector<FValue> current;
      subsets_rec(pool, 0, budget, current, out);
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Back-and-forth lifting

namespace {

bool lift_bf(const Functor& f, const Relation& r, const FValue& u,
             const FValue& v) {
  using K = FValue::Kind;
  switch (f.kind()) {
    case Functor::Kind::Const:
      return u.index() == v.index();
    case Functor::Kind::Id:
      return r.holds(u.index(), v.index());
    case Functor::Kind::Prod:
      return lift_bf(f.left(), r, u.first(), v.first()) &&
             lift_bf(f.right(), r, u.second(), v.second());
    case Functor::Kind::Sum:
      if (u.kind() != v.kind()) return false;
      return lift_bf(u.kind() == K::Inl ? f.left() : f.right(), r,
                     u.payload(), v.payload());
    case Functor::Kind::Pfin: {
      auto forth = std::all_of(
          u.items().begin(), u.items().end(), [&](const FValue& s) {
            return std::any_of(
                v.items().begin(), v.items().end(),
                [&](const FValue& t) { return lift_bf(f.inner(), r, s, t); });
          });
      if (!forth) return false;
      return std::all_of(
          v.items().begin(), v.items().end(), [&](const FValue& t) {
            return std::any_of(
                u.items().begin(), u.items().end(),
                [&](const FValue& s) { return lift_bf(f.inner(), r, s, t); });
          });
    }
  }
  return false;
}

void check_shapes(const Functor& f, const Relation& r, const FValue& u,
                  const FValue& v) {
  if (!conforms(f, u, r.dom())) shape_mismatch(f, u);
  if (!conforms(f, v, r.cod())) shape_mismatch(f, v);
}

}  // namespace

bool rel_lift_bf(const Functor& f, const Relation& r, const FValue& u,
                 const FValue& v) {
  check_shapes(f, r, u, v);
  return lift_bf(f, r, u, v);
}

// ---------------------------------------------------------------------------
// Witness search over F(graph R)

namespace {

enum class Want { First, All };

class WitnessSearch {
 public:
  WitnessSearch(const Relation& r, const Limits& limits)
      : r_(r), limits_(limits) {}

  // Witnesses t with both projections equal to (u, v).  With Want::First
  // the result has at most one element.
  std::vector<FValue> collect(const Functor& f, const FValue& u,
                              const FValue& v, Want want) {
    using K = FValue::Kind;
    switch (f.kind()) {
      case Functor::Kind::Const:
        if (u == v) return {u};
        return {};
      case Functor::Kind::Id: {
        auto it = std::lower_bound(r_.pairs().begin(), r_.pairs().end(),
                                   Relation::Pair{u.index(), v.index()});
        if (it == r_.pairs().end() || *it != Relation::Pair{u.index(), v.index()})
          return {};
        return {FValue::elem(static_cast<Index>(it - r_.pairs().begin()))};
      }
      case Functor::Kind::Prod: {
        auto ls = collect(f.left(), u.first(), v.first(), want);
        if (ls.empty()) return {};
        auto rs = collect(f.right(), u.second(), v.second(), want);
        std::vector<FValue> out;
        for (const auto& l : ls) {
          for (const auto& r : rs) {
            out.push_back(FValue::pair(l, r));
            if (want == Want::First) return out;
            bound(out.size());
          }
        }
        return out;
      }
      case Functor::Kind::Sum: {
        if (u.kind() != v.kind()) return {};
        bool left = u.kind() == K::Inl;
        auto inner = collect(left ? f.left() : f.right(), u.payload(),
                             v.payload(), want);
        for (auto& w : inner) w = left ? FValue::inl(std::move(w)) : FValue::inr(std::move(w));
        return inner;
      }
      case Functor::Kind::Pfin: {
        Cover cover = candidates(f.inner(), u, v, want);
        std::vector<FValue> out;
        for_each_cover(cover, [&](std::uint64_t mask) {
          out.push_back(materialize(cover, mask));
          if (want == Want::First) return false;
          bound(out.size());
          return true;
        });
        return out;
      }
    }
    return {};
  }

  std::uint64_t count(const Functor& f, const FValue& u, const FValue& v) {
    using K = FValue::Kind;
    switch (f.kind()) {
      case Functor::Kind::Const:
        return u == v ? 1 : 0;
      case Functor::Kind::Id:
        return r_.holds(u.index(), v.index()) ? 1 : 0;
      case Functor::Kind::Prod: {
        auto l = count(f.left(), u.first(), v.first());
        if (l == 0) return 0;
        return l * count(f.right(), u.second(), v.second());
      }
      case Functor::Kind::Sum:
        if (u.kind() != v.kind()) return 0;
        return count(u.kind() == K::Inl ? f.left() : f.right(), u.payload(),
                     v.payload());
      case Functor::Kind::Pfin: {
        Cover cover = candidates(f.inner(), u, v, Want::All);
        std::uint64_t n = 0;
        for_each_cover(cover, [&](std::uint64_t) {
          ++n;
          return true;
        });
        return n;
      }
    }
    return 0;
  }

 private:
  // Candidate members of a witness set: inner witnesses for each pair of
  // members (s, t), tagged with which member of u and v they project to.
  struct Cover {
    std::vector<FValue> items;
    std::vector<std::uint64_t> left_bit;
    std::vector<std::uint64_t> right_bit;
    std::uint64_t left_full = 0;
    std::uint64_t right_full = 0;
  };

  Cover candidates(const Functor& inner, const FValue& u, const FValue& v,
                   Want want) {
    if (u.items().size() > 63 || v.items().size() > 63) {
      throw LimitExceeded("set too large for witness search");
    }
    Cover c;
    c.left_full = (std::uint64_t{1} << u.items().size()) - 1;
    c.right_full = (std::uint64_t{1} << v.items().size()) - 1;
    for (std::size_t i = 0; i < u.items().size(); ++i) {
      for (std::size_t j = 0; j < v.items().size(); ++j) {
        // One inner witness per member pair suffices for existence: any
        // covering choice can swap in any other witness of the same pair.
        for (auto& w : collect(inner, u.items()[i], v.items()[j], want)) {
          c.items.push_back(std::move(w));
          c.left_bit.push_back(std::uint64_t{1} << i);
          c.right_bit.push_back(std::uint64_t{1} << j);
        }
      }
    }
    if (c.items.size() >= 64 ||
        (std::uint64_t{1} << c.items.size()) > limits_.max_search) {
      throw LimitExceeded("witness search over " +
                          std::to_string(c.items.size()) +
                          " candidates exceeds search limit " +
                          std::to_string(limits_.max_search));
    }
    return c;
  }

  // Visits every subset of candidates whose projections cover u and v,
  // largest mask first.  The visitor returns false to stop.
  template <typename Visit>
  void for_each_cover(const Cover& c, Visit&& visit) {
    const std::uint64_t n = std::uint64_t{1} << c.items.size();
    for (std::uint64_t k = 0; k < n; ++k) {
      std::uint64_t mask = n - 1 - k;
      std::uint64_t left = 0;
      std::uint64_t right = 0;
      for (std::uint64_t m = mask; m != 0; m &= m - 1) {
        int i = __builtin_ctzll(m);
        left |= c.left_bit[i];
        right |= c.right_bit[i];
      }
      if (left == c.left_full && right == c.right_full) {
        if (!visit(mask)) return;
      }
    }
  }

  FValue materialize(const Cover& c, std::uint64_t mask) {
    std::vector<FValue> chosen;
    for (std::uint64_t m = mask; m != 0; m &= m - 1) {
      chosen.push_back(c.items[__builtin_ctzll(m)]);
    }
    return FValue::set(std::move(chosen));
  }

  void bound(std::size_t n) {
    if (n > limits_.max_values) {
      throw LimitExceeded("witness enumeration exceeds " +
                          std::to_string(limits_.max_values) + " values");
    }
  }

  const Relation& r_;
  const Limits& limits_;
};

}  // namespace

std::optional<FValue> rel_lift_witness(const Functor& f, const Relation& r,
                                       const FValue& u, const FValue& v,
                                       const Limits& limits) {
  check_shapes(f, r, u, v);
  WitnessSearch search(r, limits);
  auto found = search.collect(f, u, v, Want::First);
  if (found.empty()) return std::nullopt;
  FValue t = std::move(found.front());
  auto first = [&](Index g) { return r.graph_first(g); };
  auto second = [&](Index g) { return r.graph_second(g); };
  if (fmap(f, first, t) != u || fmap(f, second, t) != v) {
    throw std::logic_error("witness search produced a non-witness " +
                           t.to_string());
  }
  return t;
}

std::uint64_t witness_count(const Functor& f, const Relation& r,
                            const FValue& u, const FValue& v,
                            const Limits& limits) {
  check_shapes(f, r, u, v);
  WitnessSearch search(r, limits);
  return search.count(f, u, v);
}

}  // namespace guarded::fk
