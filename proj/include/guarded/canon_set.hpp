#ifndef GUARDED_CANON_SET_HPP
#define GUARDED_CANON_SET_HPP

// Finite powerset values in normal form.
//
// A FinSet<T> stores its members as a strictly increasing vector under
// T's operator<.  Because every value is kept in this normal form, the
// semilattice laws (unit, associativity, idempotence, commutativity of
// union) hold as plain structural equality, and structural equality
// coincides with extensional equality.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace guarded {

template <typename T>
class FinSet {
 public:
  using value_type = T;
  using const_iterator = typename std::vector<T>::const_iterator;

  FinSet() = default;

  FinSet(std::initializer_list<T> items) : elems_(items) { normalize(); }

  /// Builds a set from arbitrary (unsorted, possibly duplicated) items.
  static FinSet from_unsorted(std::vector<T> items) {
    FinSet s;
    s.elems_ = std::move(items);
    s.normalize();
    return s;
  }

  /// Adopts a vector the caller guarantees is already strictly ascending.
  static FinSet from_sorted_unique(std::vector<T> items) {
    FinSet s;
    s.elems_ = std::move(items);
    return s;
  }

  static FinSet empty() { return FinSet(); }

  static FinSet singleton(T a) {
    FinSet s;
    s.elems_.push_back(std::move(a));
    return s;
  }

  bool contains(const T& a) const {
    return std::binary_search(elems_.begin(), elems_.end(), a);
  }

  bool is_subset_of(const FinSet& other) const {
    return std::includes(other.elems_.begin(), other.elems_.end(),
                         elems_.begin(), elems_.end());
  }

  FinSet unite(const FinSet& other) const {
    FinSet out;
    out.elems_.reserve(elems_.size() + other.elems_.size());
    std::set_union(elems_.begin(), elems_.end(), other.elems_.begin(),
                   other.elems_.end(), std::back_inserter(out.elems_));
    return out;
  }

  /// Inserts in place, keeping the normal form.
  void insert(T a) {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), a);
    if (it == elems_.end() || a < *it) elems_.insert(it, std::move(a));
  }

  std::size_t size() const { return elems_.size(); }
  bool is_empty() const { return elems_.empty(); }
  const_iterator begin() const { return elems_.begin(); }
  const_iterator end() const { return elems_.end(); }
  const T& operator[](std::size_t i) const { return elems_[i]; }
  const std::vector<T>& elems() const { return elems_; }

  friend bool operator==(const FinSet& a, const FinSet& b) {
    return a.elems_ == b.elems_;
  }
  friend bool operator!=(const FinSet& a, const FinSet& b) {
    return !(a == b);
  }
  friend bool operator<(const FinSet& a, const FinSet& b) {
    return std::lexicographical_compare(a.elems_.begin(), a.elems_.end(),
                                        b.elems_.begin(), b.elems_.end());
  }

 private:
  void normalize() {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end(),
                             [](const T& x, const T& y) {
                               return !(x < y) && !(y < x);
                             }),
                 elems_.end());
  }

  std::vector<T> elems_;
};

template <typename T>
FinSet<T> set_union(const FinSet<T>& x, const FinSet<T>& y) {
  return x.unite(y);
}

template <typename T>
bool member(const T& a, const FinSet<T>& x) {
  return x.contains(a);
}

template <typename T>
bool subset(const FinSet<T>& x, const FinSet<T>& y) {
  return x.is_subset_of(y);
}

/// Functorial action: the canonical image of x under f.
template <typename T, typename F>
auto map(F&& f, const FinSet<T>& x)
    -> FinSet<std::decay_t<std::invoke_result_t<F&, const T&>>> {
  using U = std::decay_t<std::invoke_result_t<F&, const T&>>;
  std::vector<U> image;
  image.reserve(x.size());
  for (const auto& a : x) image.push_back(f(a));
  return FinSet<U>::from_unsorted(std::move(image));
}

/// Returns the order-least a in x with f(a) == b, if any.
template <typename T, typename F, typename U>
std::optional<T> preimage_witness(F&& f, const FinSet<T>& x, const U& b) {
  for (const auto& a : x) {
    if (f(a) == b) return a;
  }
  return std::nullopt;
}

/// Renders `{e1, e2, ...}` in canonical order using `show` for elements.
template <typename T, typename Show>
std::string render(const FinSet<T>& x, Show&& show) {
  std::string out = "{";
  bool first = true;
  for (const auto& e : x) {
    if (!first) out += ", ";
    first = false;
    out += show(e);
  }
  out += "}";
  return out;
}

template <typename T>
  requires requires(std::ostream& os, const T& e) { os << e; }
std::ostream& operator<<(std::ostream& os, const FinSet<T>& x) {
  os << render(x, [](const T& e) {
    std::ostringstream ss;
    ss << e;
    return ss.str();
  });
  return os;
}

}  // namespace guarded

#endif  // GUARDED_CANON_SET_HPP
