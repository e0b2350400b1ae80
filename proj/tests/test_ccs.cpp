#include <map>
#include <memory>
#include <random>
#include <set>

#include "doctest.h"
#include "guarded/bisim.hpp"
#include "guarded/ccs.hpp"
#include "support.hpp"

using namespace guarded;
using namespace guarded::ccs;

namespace {

// Independent named semantics: channels and binders are strings,
// recursion is unfolded by textual substitution.
struct Named;
using NamedPtr = std::shared_ptr<const Named>;
struct Named {
  enum Kind { Nil, Prefix, Sum, Par, Nu, Var, Mu } kind;
  std::string label;  // "a", "'a", "tau"; or the bound name / variable
  std::vector<NamedPtr> kids;
};

NamedPtr mk(Named::Kind k, std::string l = {}, std::vector<NamedPtr> kids = {}) {
  return std::make_shared<const Named>(Named{k, std::move(l), std::move(kids)});
}

NamedPtr subst_named(const NamedPtr& p, const std::string& var, const NamedPtr& q) {
  switch (p->kind) {
    case Named::Var:
      return p->label == var ? q : p;
    case Named::Mu:
      if (p->label == var) return p;
      [[fallthrough]];
    default: {
      std::vector<NamedPtr> kids;
      for (const auto& k : p->kids) kids.push_back(subst_named(k, var, q));
      return mk(p->kind, p->label, kids);
    }
  }
}

std::string channel(const std::string& l) { return l[0] == '\'' ? l.substr(1) : l; }

std::vector<std::pair<std::string, NamedPtr>> act_named(const NamedPtr& p) {
  std::vector<std::pair<std::string, NamedPtr>> out;
  switch (p->kind) {
    case Named::Nil:
    case Named::Var:
      break;
    case Named::Prefix:
      out.emplace_back(p->label, p->kids[0]);
      break;
    case Named::Sum:
      out = act_named(p->kids[0]);
      for (auto& s : act_named(p->kids[1])) out.push_back(s);
      break;
    case Named::Par: {
      auto l = act_named(p->kids[0]);
      auto r = act_named(p->kids[1]);
      for (auto& [a, l2] : l) out.emplace_back(a, mk(Named::Par, {}, {l2, p->kids[1]}));
      for (auto& [a, r2] : r) out.emplace_back(a, mk(Named::Par, {}, {p->kids[0], r2}));
      for (auto& [a, l2] : l)
        for (auto& [b, r2] : r)
          if (a != "tau" && b != "tau" && channel(a) == channel(b) && a != b)
            out.emplace_back("tau", mk(Named::Par, {}, {l2, r2}));
      break;
    }
    case Named::Nu:
      for (auto& [a, q] : act_named(p->kids[0]))
        if (a == "tau" || channel(a) != p->label)
          out.emplace_back(a, mk(Named::Nu, p->label, {q}));
      break;
    case Named::Mu:
      return act_named(subst_named(p->kids[0], p->label, p));
  }
  return out;
}

// Depth-bounded observation tree, identity-agnostic.
struct Obs {
  std::set<std::pair<std::string, Obs>> kids;
  bool operator<(const Obs& o) const { return kids < o.kids; }
  bool operator==(const Obs& o) const { return kids == o.kids; }
};

Obs observe_named(const NamedPtr& p, int depth) {
  Obs o;
  for (auto& [a, q] : act_named(p))
    o.kids.emplace(a, depth == 0 ? Obs{} : observe_named(q, depth - 1));
  return o;
}

Obs observe(const Process& p, std::uint32_t scope, const NameTable& names, int depth) {
  Obs o;
  for (const auto& [l, q] : act(p, scope))
    o.kids.emplace(print_label(l, names), depth == 0 ? Obs{} : observe(q, scope, names, depth - 1));
  return o;
}

std::string render_named(const NamedPtr& p) {
  switch (p->kind) {
    case Named::Nil: return "0";
    case Named::Prefix: return p->label + ".(" + render_named(p->kids[0]) + ")";
    case Named::Sum: return "(" + render_named(p->kids[0]) + ") + (" + render_named(p->kids[1]) + ")";
    case Named::Par: return "(" + render_named(p->kids[0]) + ") | (" + render_named(p->kids[1]) + ")";
    case Named::Nu: return "nu " + p->label + ". (" + render_named(p->kids[0]) + ")";
    case Named::Var: return p->label;
    case Named::Mu: return "mu " + p->label + ". (" + render_named(p->kids[0]) + ")";
  }
  return "";
}

struct Gen {
  std::mt19937_64& rng;
  int fresh = 0;

  int roll(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

  NamedPtr go(int depth, std::vector<std::string> chans, std::vector<std::string> vars,
              bool guarded) {
    int choice = depth == 0 ? roll(2) : roll(8);
    if (choice == 1 && !(guarded && !vars.empty())) choice = 0;
    switch (choice) {
      case 0: return mk(Named::Nil);
      case 1: return mk(Named::Var, vars[roll(static_cast<int>(vars.size()))]);
      case 2:
      case 3: {
        int k = roll(3);
        std::string l = k == 2 ? "tau" : (k == 1 ? "'" : "") + chans[roll(static_cast<int>(chans.size()))];
        return mk(Named::Prefix, l, {go(depth - 1, chans, vars, true)});
      }
      case 4: return mk(Named::Sum, {}, {go(depth - 1, chans, vars, guarded), go(depth - 1, chans, vars, guarded)});
      case 5: return mk(Named::Par, {}, {go(depth - 1, chans, vars, guarded), go(depth - 1, chans, vars, guarded)});
      case 6: {
        auto c = "c" + std::to_string(fresh++);
        chans.push_back(c);
        return mk(Named::Nu, c, {go(depth - 1, chans, vars, guarded)});
      }
      default: {
        auto v = "X" + std::to_string(fresh++);
        vars.push_back(v);
        return mk(Named::Mu, v, {go(depth - 1, chans, vars, false)});
      }
    }
  }
};

Steps steps_of(std::initializer_list<Step> s) { return Steps(s); }

}  // namespace

TEST_CASE("parsing") {
  CHECK(parse("0").debug_string() == "Nil");
  CHECK(parse("mu X. a.X").debug_string() == "Mu(Prefix(in 0, Var 0))");
  NameTable names;
  auto p = parse("a.0 | 'a.0", names);
  CHECK(names == NameTable{"a"});
  CHECK(p.debug_string() == "Par(Prefix(in 0, Nil), Prefix(out 0, Nil))");
  CHECK(parse("nu a. (a.0 | 'a.0)").debug_string() ==
        "Nu(Par(Prefix(in 0, Nil), Prefix(out 0, Nil)))");
  CHECK(parse("a.b + c | d") == parse("((a.b.0) + c.0) | d.0"));
  CHECK(parse("tau").debug_string() == "Prefix(tau, Nil)");
}

TEST_CASE("parse errors") {
  try {
    (void)parse("mu X. (a.0 | X)");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("X") != std::string::npos);
  }
  CHECK_THROWS_AS(parse("mu X. X"), ParseError);
  CHECK_THROWS_AS(parse("a.(b"), ParseError);
  CHECK_THROWS_AS(parse("Y"), ParseError);
  CHECK_THROWS_AS(parse("a.0 +"), ParseError);
}

TEST_CASE("programs reference earlier definitions") {
  auto prog = parse_program("# two processes\nP = a.b\nQ = P | 'a\n");
  REQUIRE(prog.defs.size() == 2);
  REQUIRE(prog.find("Q") != nullptr);
  CHECK(prog.find("R") == nullptr);
  CHECK(prog.find("Q")->process == parse("a.b | 'a", prog.names));
  CHECK_THROWS_AS(parse_program("P = Q\n"), ParseError);
}

TEST_CASE("transition rules") {
  auto p = parse("a.0 | 'a.0");
  auto nil = Process::nil();
  auto a = Label::in(0);
  auto abar = Label::out(0);
  CHECK(act(p, 1) == steps_of({{a, Process::par(nil, Process::prefix(abar, nil))},
                               {abar, Process::par(Process::prefix(a, nil), nil)},
                               {Label::tau(), Process::par(nil, nil)}}));
  CHECK(act(parse("nu a. (a.0 | 'a.0)"), 0) ==
        steps_of({{Label::tau(), Process::nu(Process::par(nil, nil))}}));
  CHECK(act(nil, 0).is_empty());
}

TEST_CASE("restriction clauses") {
  auto nil = Process::nil();
  Steps u{{Label::in(0), nil}, {Label::out(1), nil}, {Label::in(1), nil}, {Label::tau(), nil}};
  CHECK(act_nu(u, 1) == Steps{{Label::in(0), Process::nu(nil)}, {Label::tau(), Process::nu(nil)}});
  CHECK_THROWS_AS(act_nu(Steps{{Label::in(3), nil}}, 1), ShapeError);
}

TEST_CASE("synchronisation needs complementary labels") {
  auto nil = Process::nil();
  auto x = Process::prefix(Label::tau(), nil);
  Steps u{{Label::in(0), nil}, {Label::tau(), x}};
  Steps v{{Label::out(0), x}, {Label::out(1), nil}};
  CHECK(synch(u, v) == Steps{{Label::tau(), Process::par(nil, x)}});
  CHECK(synch(v, v).is_empty());
}

TEST_CASE("compilation to a finite system") {
  auto sys = to_glts({parse("a.(b + c)")}, {"a", "b", "c"}, 100);
  CHECK(sys.glts.num_states() == 3);

  NameTable names;
  auto loop = parse("mu X. a.X", names);
  auto one = to_glts({loop}, names, 100);
  REQUIRE(one.glts.num_states() == 1);
  CHECK(one.glts.trans(StateId{0}) == FinSet<Edge>{{ActionId{0}, StateId{0}}});

  NameTable n2;
  CHECK_THROWS_AS(to_glts({parse("mu X. a.(X | X)", n2)}, n2, 10), LimitExceeded);
}

TEST_CASE("substitution keeps bound names apart") {
  // mu X. nu c. (c.X): unfolding nests a fresh restriction.
  NameTable names;
  auto p = parse("mu X. nu c. c.X", names);
  CHECK(act(p, 0).is_empty());
  auto q = parse("mu X. nu c. (tau.X | 'c)", names);
  auto s = act(q, 0);
  REQUIRE(s.size() == 1);
  for (const auto& [l, next] : s) {
    CHECK(well_scoped(next, 0));
    CHECK(act(next, 0).size() == 1);
  }
}

TEST_CASE("scope is preserved by transitions") {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 300; ++i) {
    Gen gen{rng};
    auto t = gen.go(4, {"a", "b"}, {}, false);
    NameTable names{"a", "b"};
    auto p = parse(render_named(t), names);
    const auto scope = static_cast<std::uint32_t>(names.size());
    REQUIRE(well_scoped(p, scope));
    for (const auto& [l, q] : act(p, scope)) CHECK(well_scoped(q, scope));
  }
}

TEST_CASE("agreement with the named semantics") {
  std::mt19937_64 rng(62);
  for (int i = 0; i < 400; ++i) {
    Gen gen{rng};
    auto t = gen.go(3, {"a", "b"}, {}, false);
    NameTable names{"a", "b"};
    auto src = render_named(t);
    auto p = parse(src, names);
    INFO(src);
    CHECK(observe(p, static_cast<std::uint32_t>(names.size()), names, 3) == observe_named(t, 3));
  }
}

TEST_CASE("printing round trips") {
  std::mt19937_64 rng(63);
  for (int i = 0; i < 300; ++i) {
    Gen gen{rng};
    auto t = gen.go(4, {"a", "b"}, {}, false);
    NameTable names{"a", "b"};
    auto p = parse(render_named(t), names);
    auto text = print(p, names);
    INFO(text);
    NameTable again = names;
    CHECK(parse(text, again) == p);
  }
  NameTable names;
  auto p = parse("nu c. ('c.0 | c.mu X. tau.X) + a", names);
  NameTable again = names;
  CHECK(parse(print(p, names), again) == p);
}

TEST_CASE("compiled systems satisfy coincidence") {
  auto h = testing::hml_fixture();
  CHECK(validate(h.sys.glts).empty());
  for (std::uint32_t n = 0; n <= 4; ++n) CHECK(coincidence(h.sys.glts, n).holds);
  auto prog = parse_program("r = (mu X. a.X + 'a.b) | (nu c. c | 'c.tau)\n");
  auto sys = to_glts({prog.defs[0].process}, prog.names, 100);
  for (std::uint32_t n = 0; n <= 4; ++n) CHECK(coincidence(sys.glts, n).holds);
}

TEST_CASE("shipped fixture matches the built-in example") {
  auto prog = load_program(std::string(GUARDED_DATA_DIR) + "/hml.ccs");
  auto h = testing::hml_fixture();
  REQUIRE(prog.defs.size() == 2);
  CHECK(prog.names == h.program.names);
  CHECK(prog.defs[0].process == h.program.defs[0].process);
  CHECK(prog.defs[1].process == h.program.defs[1].process);
}
