#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "guarded/canon_set.hpp"

using guarded::FinSet;

namespace {

FinSet<char> random_set(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(0, 6);
  std::uniform_int_distribution<int> ch(0, 7);
  std::vector<char> items;
  for (int i = len(rng); i > 0; --i) items.push_back(static_cast<char>('a' + ch(rng)));
  return FinSet<char>::from_unsorted(items);
}

const std::string kUniverse = "abcdefgh";

}  // namespace

TEST_CASE("constructors produce canonical values") {
  auto e = FinSet<char>::empty();
  CHECK(e.is_empty());
  CHECK_FALSE(guarded::member('a', e));

  auto a = FinSet<char>::singleton('a');
  CHECK(a.elems() == std::vector<char>{'a'});
  CHECK(guarded::member('a', a));
  CHECK(guarded::set_union(a, a) == a);

  FinSet<char> messy{'c', 'a', 'c', 'b', 'a'};
  CHECK(messy.elems() == std::vector<char>{'a', 'b', 'c'});
}

TEST_CASE("union agrees with a membership oracle") {
  FinSet<char> x{'a', 'b'};
  FinSet<char> y{'b', 'c'};
  auto u = guarded::set_union(x, y);
  for (char c : kUniverse) {
    CHECK(guarded::member(c, u) == (guarded::member(c, x) || guarded::member(c, y)));
  }
  CHECK(u == FinSet<char>{'a', 'b', 'c'});
}

TEST_CASE("member and subset") {
  FinSet<char> abc{'a', 'b', 'c'};
  CHECK(guarded::member('b', abc));
  CHECK_FALSE(guarded::member('d', abc));
  CHECK(guarded::subset(FinSet<char>{'a'}, FinSet<char>{'a', 'b'}));
  CHECK_FALSE(guarded::subset(FinSet<char>{'a', 'b'}, FinSet<char>{'a'}));
  CHECK(guarded::subset(FinSet<char>{}, abc));
}

TEST_CASE("semilattice laws hold as structural equality") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    auto x = random_set(rng);
    auto y = random_set(rng);
    auto z = random_set(rng);
    CHECK(guarded::set_union(FinSet<char>::empty(), x) == x);
    CHECK(guarded::set_union(x, y) == guarded::set_union(y, x));
    CHECK(guarded::set_union(guarded::set_union(x, y), z) ==
          guarded::set_union(x, guarded::set_union(y, z)));
    CHECK(guarded::set_union(x, x) == x);
    for (char c : kUniverse) {
      CHECK(guarded::member(c, guarded::set_union(x, y)) ==
            (guarded::member(c, x) || guarded::member(c, y)));
    }
  }
}

TEST_CASE("structural equality is extensional") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 500; ++i) {
    auto x = random_set(rng);
    auto y = random_set(rng);
    bool same_members = true;
    for (char c : kUniverse)
      same_members = same_members && guarded::member(c, x) == guarded::member(c, y);
    CHECK((x == y) == same_members);
    CHECK((guarded::subset(x, y) && guarded::subset(y, x)) == (x == y));
  }
}

TEST_CASE("functorial action") {
  auto to_upper = [](char c) { return static_cast<char>(c - 'a' + 'A'); };
  auto constant = [](char) { return 'z'; };
  CHECK(guarded::map(to_upper, FinSet<char>{}).is_empty());
  CHECK(guarded::map(constant, FinSet<char>{'a', 'b'}) == FinSet<char>{'z'});

  std::mt19937_64 rng(13);
  auto id = [](char c) { return c; };
  auto rot = [](char c) { return static_cast<char>('a' + (c - 'a' + 3) % 8); };
  auto half = [](char c) { return static_cast<char>('a' + (c - 'a') / 2); };
  for (int i = 0; i < 200; ++i) {
    auto x = random_set(rng);
    CHECK(guarded::map(id, x) == x);
    CHECK(guarded::map([&](char c) { return half(rot(c)); }, x) ==
          guarded::map(half, guarded::map(rot, x)));
  }
}

TEST_CASE("preimage witness") {
  auto inc = [](int v) { return v + 1; };
  FinSet<int> x{1, 4, 9};
  CHECK(guarded::preimage_witness(inc, x, 5) == 4);
  CHECK_FALSE(guarded::preimage_witness(inc, x, 3).has_value());

  auto constant = [](int) { return 7; };
  FinSet<int> pair{3, 2};
  CHECK(guarded::preimage_witness(constant, pair, 7) == 2);  // order-least
}

TEST_CASE("rendering lists members in canonical order") {
  std::ostringstream ss;
  ss << FinSet<int>{3, 1, 2};
  CHECK(ss.str() == "{1, 2, 3}");
  CHECK(guarded::render(FinSet<int>{}, [](int v) { return std::to_string(v); }) == "{}");
}
