#include "guarded/ccs.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace guarded::ccs {

// ---------------------------------------------------------------------------
// Process

Process Process::nil() {
  return Process(std::make_shared<const Node>(Node{Kind::Nil, {}, 0, {}}));
}

Process Process::prefix(Label l, Process p) {
  return Process(
      std::make_shared<const Node>(Node{Kind::Prefix, l, 0, {std::move(p)}}));
}

Process Process::sum(Process p, Process q) {
  return Process(std::make_shared<const Node>(
      Node{Kind::Sum, {}, 0, {std::move(p), std::move(q)}}));
}

Process Process::par(Process p, Process q) {
  return Process(std::make_shared<const Node>(
      Node{Kind::Par, {}, 0, {std::move(p), std::move(q)}}));
}

Process Process::nu(Process p) {
  return Process(
      std::make_shared<const Node>(Node{Kind::Nu, {}, 0, {std::move(p)}}));
}

Process Process::var(std::uint32_t index) {
  return Process(std::make_shared<const Node>(Node{Kind::Var, {}, index, {}}));
}

Process Process::mu(Process p) {
  return Process(
      std::make_shared<const Node>(Node{Kind::Mu, {}, 0, {std::move(p)}}));
}

int Process::compare(const Process& a, const Process& b) {
  if (a.node_ == b.node_) return 0;
  const Node& x = *a.node_;
  const Node& y = *b.node_;
  if (x.kind != y.kind) return x.kind < y.kind ? -1 : 1;
  if (x.label != y.label) return x.label < y.label ? -1 : 1;
  if (x.index != y.index) return x.index < y.index ? -1 : 1;
  for (std::size_t i = 0; i < x.kids.size(); ++i) {
    int c = compare(x.kids[i], y.kids[i]);
    if (c != 0) return c;
  }
  return 0;
}

bool operator==(const Process& a, const Process& b) {
  return Process::compare(a, b) == 0;
}

bool operator<(const Process& a, const Process& b) {
  return Process::compare(a, b) < 0;
}

namespace {

std::string debug_label(const Label& l) {
  switch (l.kind) {
    case Label::Kind::In:
      return "in " + std::to_string(l.name);
    case Label::Kind::Out:
      return "out " + std::to_string(l.name);
    case Label::Kind::Tau:
      return "tau";
  }
  return "?";
}

}  // namespace

std::string Process::debug_string() const {
  switch (kind()) {
    case Kind::Nil:
      return "Nil";
    case Kind::Prefix:
      return "Prefix(" + debug_label(label()) + ", " + body().debug_string() + ")";
    case Kind::Sum:
      return "Sum(" + left().debug_string() + ", " + right().debug_string() + ")";
    case Kind::Par:
      return "Par(" + left().debug_string() + ", " + right().debug_string() + ")";
    case Kind::Nu:
      return "Nu(" + body().debug_string() + ")";
    case Kind::Var:
      return "Var " + std::to_string(var_index());
    case Kind::Mu:
      return "Mu(" + body().debug_string() + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Scope and guardedness

namespace {

bool scoped(const Process& p, std::uint32_t scope, std::uint32_t rec_depth) {
  using K = Process::Kind;
  switch (p.kind()) {
    case K::Nil:
      return true;
    case K::Prefix:
      if (p.label().kind != Label::Kind::Tau && p.label().name >= scope)
        return false;
      return scoped(p.body(), scope, rec_depth);
    case K::Sum:
    case K::Par:
      return scoped(p.left(), scope, rec_depth) &&
             scoped(p.right(), scope, rec_depth);
    case K::Nu:
      return scoped(p.body(), scope + 1, rec_depth);
    case K::Var:
      return p.var_index() < rec_depth;
    case K::Mu:
      return scoped(p.body(), scope, rec_depth + 1);
  }
  return false;
}

// Checks that variable `var` (relative to the current position) occurs
// only under a prefix.
bool var_guarded(const Process& p, std::uint32_t var) {
  using K = Process::Kind;
  switch (p.kind()) {
    case K::Nil:
    case K::Prefix:
      return true;
    case K::Sum:
    case K::Par:
      return var_guarded(p.left(), var) && var_guarded(p.right(), var);
    case K::Nu:
      return var_guarded(p.body(), var);
    case K::Var:
      return p.var_index() != var;
    case K::Mu:
      return var_guarded(p.body(), var + 1);
  }
  return true;
}

std::optional<std::uint32_t> unguarded_from(const Process& p,
                                            std::uint32_t depth) {
  using K = Process::Kind;
  switch (p.kind()) {
    case K::Nil:
    case K::Var:
      return std::nullopt;
    case K::Prefix:
    case K::Nu:
      return unguarded_from(p.body(), depth);
    case K::Sum:
    case K::Par:
      if (auto l = unguarded_from(p.left(), depth)) return l;
      return unguarded_from(p.right(), depth);
    case K::Mu:
      if (!var_guarded(p.body(), 0)) return depth;
      return unguarded_from(p.body(), depth + 1);
  }
  return std::nullopt;
}

}  // namespace

bool well_scoped(const Process& p, std::uint32_t scope) {
  return scoped(p, scope, 0);
}

std::optional<std::uint32_t> first_unguarded(const Process& p) {
  return unguarded_from(p, 0);
}

// ---------------------------------------------------------------------------
// Substitution

Process shift_names(const Process& p, std::uint32_t cutoff,
                    std::uint32_t delta) {
  using K = Process::Kind;
  if (delta == 0) return p;
  switch (p.kind()) {
    case K::Nil:
    case K::Var:
      return p;
    case K::Prefix: {
      Label l = p.label();
      if (l.kind != Label::Kind::Tau && l.name >= cutoff) l.name += delta;
      return Process::prefix(l, shift_names(p.body(), cutoff, delta));
    }
    case K::Sum:
      return Process::sum(shift_names(p.left(), cutoff, delta),
                          shift_names(p.right(), cutoff, delta));
    case K::Par:
      return Process::par(shift_names(p.left(), cutoff, delta),
                          shift_names(p.right(), cutoff, delta));
    case K::Nu:
      return Process::nu(shift_names(p.body(), cutoff, delta));
    case K::Mu:
      return Process::mu(shift_names(p.body(), cutoff, delta));
  }
  return p;
}

namespace {

Process subst_at(const Process& p, const Process& q, std::uint32_t var,
                 std::uint32_t scope, std::uint32_t nus) {
  using K = Process::Kind;
  switch (p.kind()) {
    case K::Nil:
      return p;
    case K::Var:
      if (p.var_index() == var) return shift_names(q, scope, nus);
      if (p.var_index() > var) return Process::var(p.var_index() - 1);
      return p;
    case K::Prefix:
      return Process::prefix(p.label(), subst_at(p.body(), q, var, scope, nus));
    case K::Sum:
      return Process::sum(subst_at(p.left(), q, var, scope, nus),
                          subst_at(p.right(), q, var, scope, nus));
    case K::Par:
      return Process::par(subst_at(p.left(), q, var, scope, nus),
                          subst_at(p.right(), q, var, scope, nus));
    case K::Nu:
      return Process::nu(subst_at(p.body(), q, var, scope, nus + 1));
    case K::Mu:
      return Process::mu(subst_at(p.body(), q, var + 1, scope, nus));
  }
  return p;
}

}  // namespace

Process subst(const Process& p, const Process& q, std::uint32_t var,
              std::uint32_t scope) {
  return subst_at(p, q, var, scope, 0);
}

// ---------------------------------------------------------------------------
// Transitions

Steps act_left(const Steps& u, const Process& q) {
  return map([&](const Step& s) { return Step{s.first, Process::par(s.second, q)}; },
             u);
}

Steps act_right(const Process& p, const Steps& u) {
  return map([&](const Step& s) { return Step{s.first, Process::par(p, s.second)}; },
             u);
}

Steps synch(const Steps& u, const Steps& v) {
  std::vector<Step> out;
  for (const auto& [l1, p] : u)
    for (const auto& [l2, q] : v)
      if (l1.complements(l2)) out.emplace_back(Label::tau(), Process::par(p, q));
  return Steps::from_unsorted(std::move(out));
}

Steps act_nu(const Steps& u, std::uint32_t scope) {
  std::vector<Step> out;
  for (const auto& [l, p] : u) {
    if (l.kind != Label::Kind::Tau) {
      if (l.name == scope) continue;
      if (l.name > scope)
        throw ShapeError("label name " + std::to_string(l.name) +
                         " outside scope " + std::to_string(scope + 1));
    }
    out.emplace_back(l, Process::nu(p));
  }
  return Steps::from_unsorted(std::move(out));
}

Steps act(const Process& p, std::uint32_t scope) {
  using K = Process::Kind;
  switch (p.kind()) {
    case K::Nil:
      return {};
    case K::Prefix:
      return Steps::singleton({p.label(), p.body()});
    case K::Sum:
      return act(p.left(), scope).unite(act(p.right(), scope));
    case K::Par: {
      auto u = act(p.left(), scope);
      auto v = act(p.right(), scope);
      return act_left(u, p.right())
          .unite(act_right(p.left(), v))
          .unite(synch(u, v));
    }
    case K::Nu:
      return act_nu(act(p.body(), scope + 1), scope);
    case K::Mu:
      return act(subst(p.body(), p, 0, scope), scope);
    case K::Var:
      throw ShapeError("act on an open term (free recursion variable)");
  }
  return {};
}

// ---------------------------------------------------------------------------
// Surface syntax

namespace {

// Named syntax tree produced by the parser before name resolution.
struct Syn {
  enum class Kind { Nil, Prefix, Sum, Par, Nu, Mu, Ident };
  Kind kind = Kind::Nil;
  Label::Kind label = Label::Kind::Tau;
  std::string name;  // channel, binder, or identifier
  std::size_t offset = 0;
  std::vector<std::shared_ptr<const Syn>> kids;
};
using SynPtr = std::shared_ptr<const Syn>;

bool is_upper(const std::string& s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

class Parser {
 public:
  explicit Parser(const std::string& src, std::size_t base = 0)
      : src_(src), base_(base) {}

  SynPtr parse_all() {
    auto p = parse_par();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(base_ + pos_, what);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool ident_start() {
    skip_ws();
    return pos_ < src_.size() &&
           (std::isalpha(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_');
  }

  std::string ident() {
    if (!ident_start()) fail("expected identifier");
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    return src_.substr(start, pos_ - start);
  }

  static SynPtr make(Syn s) { return std::make_shared<const Syn>(std::move(s)); }

  SynPtr parse_par() {
    auto l = parse_sum();
    while (peek('|')) {
      std::size_t at = base_ + pos_;
      ++pos_;
      auto r = parse_sum();
      l = make({Syn::Kind::Par, {}, "", at, {l, r}});
    }
    return l;
  }

  SynPtr parse_sum() {
    auto l = parse_prefixed();
    while (peek('+')) {
      std::size_t at = base_ + pos_;
      ++pos_;
      auto r = parse_prefixed();
      l = make({Syn::Kind::Sum, {}, "", at, {l, r}});
    }
    return l;
  }

  SynPtr parse_prefixed() {
    skip_ws();
    std::size_t at = base_ + pos_;
    if (pos_ >= src_.size()) fail("expected a process");
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      auto p = parse_par();
      expect(')');
      return p;
    }
    if (c == '0') {
      ++pos_;
      return make({Syn::Kind::Nil, {}, "", at, {}});
    }
    if (c == '\'') {
      ++pos_;
      std::string ch = ident();
      if (ch == "tau" || ch == "nu" || ch == "mu")
        fail("'" + ch + " is not an output label");
      return after_label(Label::Kind::Out, ch, at);
    }
    if (!ident_start()) fail("expected a process");
    std::string id = ident();
    if (id == "nu" || id == "mu") {
      std::string bound = ident();
      expect('.');
      auto body = parse_par();
      if (id == "nu") {
        if (is_upper(bound)) fail("channel names must start in lower case");
        return make({Syn::Kind::Nu, {}, bound, at, {body}});
      }
      if (!is_upper(bound)) fail("recursion variables must start in upper case");
      return make({Syn::Kind::Mu, {}, bound, at, {body}});
    }
    if (id == "tau") return after_label(Label::Kind::Tau, "", at);
    if (is_upper(id)) {
      if (peek('.')) fail("'" + id + "' is a process, not an action");
      return make({Syn::Kind::Ident, {}, id, at, {}});
    }
    return after_label(Label::Kind::In, id, at);
  }

  SynPtr after_label(Label::Kind kind, std::string ch, std::size_t at) {
    SynPtr body;
    if (peek('.')) {
      ++pos_;
      body = parse_prefixed();
    } else {
      body = make({Syn::Kind::Nil, {}, "", at, {}});
    }
    return make({Syn::Kind::Prefix, kind, std::move(ch), at, {body}});
  }

  const std::string& src_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

// Guardedness on the named tree: a mu-bound variable may only occur under a
// prefix inside its binder.
void check_guarded(const Syn& s, std::vector<std::pair<std::string, bool>>& env) {
  switch (s.kind) {
    case Syn::Kind::Nil:
      return;
    case Syn::Kind::Prefix: {
      auto saved = env;
      for (auto& e : env) e.second = true;
      check_guarded(*s.kids[0], env);
      env = std::move(saved);
      return;
    }
    case Syn::Kind::Sum:
    case Syn::Kind::Par:
      check_guarded(*s.kids[0], env);
      check_guarded(*s.kids[1], env);
      return;
    case Syn::Kind::Nu:
      check_guarded(*s.kids[0], env);
      return;
    case Syn::Kind::Mu:
      env.emplace_back(s.name, false);
      check_guarded(*s.kids[0], env);
      env.pop_back();
      return;
    case Syn::Kind::Ident:
      for (auto it = env.rbegin(); it != env.rend(); ++it) {
        if (it->first == s.name) {
          if (!it->second)
            throw ParseError(s.offset, "recursion variable " + s.name +
                                           " is not guarded by an action");
          return;
        }
      }
      return;
  }
}

void collect_free(const Syn& s, std::vector<std::string>& bound,
                  NameTable& names) {
  switch (s.kind) {
    case Syn::Kind::Prefix:
      if (s.label != Label::Kind::Tau &&
          std::find(bound.begin(), bound.end(), s.name) == bound.end() &&
          std::find(names.begin(), names.end(), s.name) == names.end())
        names.push_back(s.name);
      break;
    case Syn::Kind::Nu:
      bound.push_back(s.name);
      collect_free(*s.kids[0], bound, names);
      bound.pop_back();
      return;
    default:
      break;
  }
  for (const auto& k : s.kids) collect_free(*k, bound, names);
}

class Resolver {
 public:
  Resolver(const NameTable& names,
           const std::vector<std::pair<std::string, SynPtr>>& defs)
      : names_(names), defs_(defs) {}

  Process resolve(const Syn& s) {
    std::vector<std::string> channels;
    std::vector<std::string> vars;
    return go(s, channels, vars, 0);
  }

 private:
  Process go(const Syn& s, std::vector<std::string>& channels,
             std::vector<std::string>& vars, int depth) {
    if (depth > 64) throw ParseError(s.offset, "definitions nest too deeply");
    switch (s.kind) {
      case Syn::Kind::Nil:
        return Process::nil();
      case Syn::Kind::Prefix: {
        Label l{s.label, 0};
        if (s.label != Label::Kind::Tau) l.name = channel(s, channels);
        return Process::prefix(l, go(*s.kids[0], channels, vars, depth));
      }
      case Syn::Kind::Sum:
        return Process::sum(go(*s.kids[0], channels, vars, depth),
                            go(*s.kids[1], channels, vars, depth));
      case Syn::Kind::Par:
        return Process::par(go(*s.kids[0], channels, vars, depth),
                            go(*s.kids[1], channels, vars, depth));
      case Syn::Kind::Nu: {
        channels.push_back(s.name);
        auto body = go(*s.kids[0], channels, vars, depth);
        channels.pop_back();
        return Process::nu(std::move(body));
      }
      case Syn::Kind::Mu: {
        vars.push_back(s.name);
        auto body = go(*s.kids[0], channels, vars, depth);
        vars.pop_back();
        return Process::mu(std::move(body));
      }
      case Syn::Kind::Ident: {
        for (std::size_t i = vars.size(); i-- > 0;)
          if (vars[i] == s.name)
            return Process::var(static_cast<std::uint32_t>(vars.size() - 1 - i));
        for (const auto& [name, syn] : defs_) {
          if (name == s.name) {
            // Definitions are closed: they see only the file's free
            // channels, but bind new names above the current depth.
            std::vector<std::string> inner_channels(channels.size(), "");
            std::vector<std::string> inner_vars;
            return go(*syn, inner_channels, inner_vars, depth + 1);
          }
        }
        throw ParseError(s.offset, "unbound process variable " + s.name);
      }
    }
    return Process::nil();
  }

  std::uint32_t channel(const Syn& s, const std::vector<std::string>& channels) {
    for (std::size_t i = channels.size(); i-- > 0;)
      if (!channels[i].empty() && channels[i] == s.name)
        return static_cast<std::uint32_t>(names_.size() + i);
    auto it = std::find(names_.begin(), names_.end(), s.name);
    if (it == names_.end())
      throw ParseError(s.offset, "unknown channel " + s.name);
    return static_cast<std::uint32_t>(it - names_.begin());
  }

  const NameTable& names_;
  const std::vector<std::pair<std::string, SynPtr>>& defs_;
};

SynPtr parse_syn(const std::string& src, std::size_t base) {
  Parser p(src, base);
  auto syn = p.parse_all();
  std::vector<std::pair<std::string, bool>> env;
  check_guarded(*syn, env);
  return syn;
}

}  // namespace

Process parse(const std::string& src, NameTable& names) {
  auto syn = parse_syn(src, 0);
  std::vector<std::string> bound;
  collect_free(*syn, bound, names);
  std::vector<std::pair<std::string, SynPtr>> no_defs;
  return Resolver(names, no_defs).resolve(*syn);
}

Process parse(const std::string& src) {
  NameTable names;
  return parse(src, names);
}

const Definition* Program::find(const std::string& name) const {
  for (const auto& d : defs)
    if (d.name == name) return &d;
  return nullptr;
}

Program parse_program(const std::string& text) {
  std::vector<std::pair<std::string, SynPtr>> syns;
  std::istringstream in(text);
  std::string line;
  std::size_t line_start = 0;
  while (std::getline(in, line)) {
    std::size_t this_start = line_start;
    line_start += line.size() + 1;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (eq == std::string::npos)
      throw ParseError(this_start, "expected 'name = process'");
    std::string name = line.substr(0, eq);
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t") + 1);
    bool valid = !name.empty() &&
                 (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_') &&
                 std::all_of(name.begin(), name.end(), [](char c) {
                   return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
                 });
    if (!valid) throw ParseError(this_start, "bad definition name '" + name + "'");
    for (const auto& [n, s] : syns)
      if (n == name) throw ParseError(this_start, "duplicate definition " + name);
    syns.emplace_back(name, parse_syn(line.substr(eq + 1), this_start + eq + 1));
  }
  Program prog;
  std::vector<std::string> bound;
  for (const auto& [n, s] : syns) collect_free(*s, bound, prog.names);
  for (std::size_t i = 0; i < syns.size(); ++i) {
    // Each definition may refer to the ones before it.
    std::vector<std::pair<std::string, SynPtr>> earlier(syns.begin(),
                                                        syns.begin() + i);
    prog.defs.push_back(
        {syns[i].first, Resolver(prog.names, earlier).resolve(*syns[i].second)});
  }
  return prog;
}

Program load_program(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LookupError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_program(ss.str());
}

// ---------------------------------------------------------------------------
// Printing

namespace {

class Printer {
 public:
  explicit Printer(const NameTable& names) : names_(names) {}

  std::string label(const Label& l, std::uint32_t) const {
    switch (l.kind) {
      case Label::Kind::Tau:
        return "tau";
      case Label::Kind::In:
        return channel(l.name);
      case Label::Kind::Out:
        return "'" + channel(l.name);
    }
    return "?";
  }

  // prec: 0 = parallel context, 1 = sum operand, 2 = prefix body.
  // Both infix operators associate to the left, so a right operand of the
  // same operator is printed one level tighter.
  std::string go(const Process& p, int prec, std::uint32_t scope,
                 std::uint32_t rec, bool top) const {
    using K = Process::Kind;
    auto wrap = [](bool need, std::string s) {
      return need ? "(" + s + ")" : s;
    };
    switch (p.kind()) {
      case K::Nil:
        return "0";
      case K::Prefix:
        return label(p.label(), scope) + "." + go(p.body(), 2, scope, rec, false);
      case K::Sum:
        return wrap(prec > 1, go(p.left(), 1, scope, rec, false) + " + " +
                                  go(p.right(), 2, scope, rec, false));
      case K::Par:
        return wrap(prec > 0, go(p.left(), 0, scope, rec, false) + " | " +
                                  go(p.right(), 1, scope, rec, false));
      case K::Nu:
        return wrap(!top, "nu " + channel(scope) + ". " +
                              go(p.body(), 0, scope + 1, rec, true));
      case K::Mu:
        return wrap(!top, "mu X" + std::to_string(rec) + ". " +
                              go(p.body(), 0, scope, rec + 1, true));
      case K::Var:
        return "X" + std::to_string(rec - 1 - p.var_index());
    }
    return "?";
  }

  std::string channel(std::uint32_t n) const {
    if (n < names_.size()) return names_[n];
    std::string s = "c" + std::to_string(n);
    while (std::find(names_.begin(), names_.end(), s) != names_.end()) s += "_";
    return s;
  }

 private:
  const NameTable& names_;
};

}  // namespace

std::string print(const Process& p, const NameTable& names) {
  return Printer(names).go(p, 0, static_cast<std::uint32_t>(names.size()), 0,
                           true);
}

std::string print_label(const Label& l, const NameTable& names) {
  return Printer(names).label(l, 0);
}

// ---------------------------------------------------------------------------
// Exploration

CcsSystem to_glts(const std::vector<Process>& roots, const NameTable& names,
                  std::size_t state_limit) {
  const auto scope = static_cast<std::uint32_t>(names.size());
  std::map<Process, std::uint32_t> ids;
  std::vector<Process> terms;
  std::set<Process> pending;
  auto discover = [&](const Process& p) {
    auto [it, fresh] = ids.emplace(p, static_cast<std::uint32_t>(terms.size()));
    if (fresh) {
      if (terms.size() >= state_limit)
        throw LimitExceeded("CCS exploration exceeds " +
                            std::to_string(state_limit) + " states");
      terms.push_back(p);
      pending.insert(p);
    }
    return it->second;
  };

  CcsSystem sys;
  for (const auto& r : roots) {
    if (!well_scoped(r, scope))
      throw ShapeError("process is not closed in scope " + std::to_string(scope));
    if (first_unguarded(r)) throw ShapeError("process has unguarded recursion");
    sys.roots.push_back({discover(r)});
  }

  std::vector<std::vector<std::pair<Label, std::uint32_t>>> edges;
  while (!pending.empty()) {
    Process p = *pending.begin();
    pending.erase(pending.begin());
    std::uint32_t id = ids.at(p);
    if (edges.size() <= id) edges.resize(id + 1);
    for (const auto& [l, q] : act(p, scope)) edges[id].emplace_back(l, discover(q));
  }
  edges.resize(terms.size());

  std::set<std::string> label_names;
  for (const auto& es : edges)
    for (const auto& [l, q] : es) label_names.insert(print_label(l, names));
  std::vector<std::string> actions(label_names.begin(), label_names.end());

  std::vector<FinSet<Edge>> trans;
  for (const auto& es : edges) {
    std::vector<Edge> out;
    for (const auto& [l, q] : es) {
      auto name = print_label(l, names);
      auto a = std::lower_bound(actions.begin(), actions.end(), name) - actions.begin();
      out.emplace_back(ActionId{static_cast<std::uint32_t>(a)}, StateId{q});
    }
    trans.push_back(FinSet<Edge>::from_unsorted(std::move(out)));
  }
  std::vector<std::string> state_names;
  for (std::size_t i = 0; i < terms.size(); ++i) state_names.push_back("s" + std::to_string(i));
  sys.glts = Glts(std::move(state_names), std::move(actions), std::move(trans));
  sys.terms = std::move(terms);
  return sys;
}

}  // namespace guarded::ccs
