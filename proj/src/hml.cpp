#include "guarded/hml.hpp"

#include <cctype>
#include <map>
#include <tuple>

#include "guarded/errors.hpp"

namespace guarded::hml {

Formula Formula::tt() {
  return Formula(std::make_shared<const Node>(Node{Kind::True, "", {}}));
}

Formula Formula::ff() {
  return Formula(std::make_shared<const Node>(Node{Kind::False, "", {}}));
}

Formula Formula::conj(Formula l, Formula r) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::And, "", {std::move(l), std::move(r)}}));
}

Formula Formula::disj(Formula l, Formula r) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::Or, "", {std::move(l), std::move(r)}}));
}

Formula Formula::box(std::string action, Formula body) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::Box, std::move(action), {std::move(body)}}));
}

Formula Formula::dia(std::string action, Formula body) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::Dia, std::move(action), {std::move(body)}}));
}

Formula Formula::conj_all(std::vector<Formula> fs) {
  if (fs.empty()) return tt();
  Formula acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
  return acc;
}

Formula Formula::disj_all(std::vector<Formula> fs) {
  if (fs.empty()) return ff();
  Formula acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = disj(acc, fs[i]);
  return acc;
}

std::uint32_t Formula::modal_depth() const {
  switch (kind()) {
    case Kind::True:
    case Kind::False:
      return 0;
    case Kind::And:
    case Kind::Or:
      return std::max(left().modal_depth(), right().modal_depth());
    case Kind::Box:
    case Kind::Dia:
      return 1 + body().modal_depth();
  }
  return 0;
}

std::size_t Formula::size() const {
  std::size_t n = 1;
  for (const auto& k : node_->kids) n += k.size();
  return n;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  return a.kind() == b.kind() && a.node_->action == b.node_->action &&
         a.node_->kids == b.node_->kids;
}

namespace {

std::string show(const Formula& f, int prec) {
  using K = Formula::Kind;
  auto wrap = [](bool need, std::string s) { return need ? "(" + s + ")" : s; };
  switch (f.kind()) {
    case K::True:
      return "tt";
    case K::False:
      return "ff";
    case K::Or:
      return wrap(prec > 0, show(f.left(), 0) + " | " + show(f.right(), 1));
    case K::And:
      return wrap(prec > 1, show(f.left(), 1) + " & " + show(f.right(), 2));
    case K::Box:
      return "[" + f.action() + "]" + show(f.body(), 2);
    case K::Dia:
      return "<" + f.action() + ">" + show(f.body(), 2);
  }
  return "?";
}

class FormulaParser {
 public:
  explicit FormulaParser(const std::string& src) : src_(src) {}

  Formula parse() {
    auto f = disjunction();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(pos_, what);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool word_char(std::size_t i) const {
    return i < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[i])) || src_[i] == '_');
  }

  std::string action() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < src_.size() && src_[pos_] == '\'') ++pos_;
    std::size_t word = pos_;
    while (word_char(pos_)) ++pos_;
    if (pos_ == word) fail("expected an action");
    return src_.substr(start, pos_ - start);
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept('|')) f = Formula::disj(f, conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept('&')) f = Formula::conj(f, unary());
    return f;
  }

  Formula unary() {
    skip_ws();
    if (accept('[')) {
      auto a = action();
      expect(']');
      return Formula::box(a, unary());
    }
    if (accept('<')) {
      auto a = action();
      expect('>');
      return Formula::dia(a, unary());
    }
    if (accept('(')) {
      auto f = disjunction();
      expect(')');
      return f;
    }
    std::size_t start = pos_;
    while (word_char(pos_)) ++pos_;
    std::string w = src_.substr(start, pos_ - start);
    if (w == "tt") return Formula::tt();
    if (w == "ff") return Formula::ff();
    pos_ = start;
    fail(w.empty() ? "expected a formula" : "unknown atom '" + w + "'");
  }

  const std::string& src_;
  std::size_t pos_ = 0;
};

ActionId resolve(const Glts& g, const std::string& action) {
  if (auto a = g.find_action(action)) return *a;
  throw LookupError("action '" + action + "' is not in the alphabet");
}

}  // namespace

std::string Formula::to_string() const { return show(*this, 0); }

Formula parse_formula(const std::string& src) {
  return FormulaParser(src).parse();
}

bool sat(const Glts& g, StateId x, const Formula& phi, std::uint32_t n) {
  using K = Formula::Kind;
  switch (phi.kind()) {
    case K::True:
      g.trans(x);
      return true;
    case K::False:
      g.trans(x);
      return false;
    case K::And:
      return sat(g, x, phi.left(), n) && sat(g, x, phi.right(), n);
    case K::Or:
      return sat(g, x, phi.left(), n) || sat(g, x, phi.right(), n);
    case K::Box: {
      auto a = resolve(g, phi.action());
      if (n == 0) return true;
      for (const auto& [b, y] : g.trans(x))
        if (b == a && !sat(g, y, phi.body(), n - 1)) return false;
      return true;
    }
    case K::Dia: {
      auto a = resolve(g, phi.action());
      for (const auto& [b, y] : g.trans(x))
        if (b == a && (n == 0 || sat(g, y, phi.body(), n - 1))) return true;
      return false;
    }
  }
  return false;
}

namespace {

// Builds formulas true at x and false at y, bottom-up from the failure of
// the logical preorder at each level.
class Separator {
 public:
  explicit Separator(const Glts& g) : g_(g) {}

  std::optional<Formula> run(StateId x, StateId y, std::uint32_t n) {
    auto key = std::make_tuple(x.value, y.value, n);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    auto result = compute(x, y, n);
    memo_.emplace(key, result);
    return result;
  }

 private:
  std::optional<Formula> compute(StateId x, StateId y, std::uint32_t n) {
    for (std::uint32_t ai = 0; ai < g_.num_actions(); ++ai) {
      ActionId a{ai};
      const auto& name = g_.name(a);
      auto xs = successors(g_, x, a);
      auto ys = successors(g_, y, a);
      if (!xs.is_empty() && ys.is_empty()) return Formula::dia(name, Formula::tt());
      if (n == 0) continue;
      // Some a-successor of x is separated from every a-successor of y.
      for (auto x1 : xs) {
        std::vector<Formula> parts;
        for (auto y1 : ys) {
          auto f = run(x1, y1, n - 1);
          if (!f) break;
          parts.push_back(*f);
        }
        if (parts.size() == ys.size())
          return Formula::dia(name, Formula::conj_all(std::move(parts)));
      }
      // Some a-successor of y is separated from every a-successor of x.
      for (auto y1 : ys) {
        std::vector<Formula> parts;
        for (auto x1 : xs) {
          auto f = run(x1, y1, n - 1);
          if (!f) break;
          parts.push_back(*f);
        }
        if (parts.size() == xs.size())
          return Formula::box(name, Formula::disj_all(std::move(parts)));
      }
    }
    return std::nullopt;
  }

  const Glts& g_;
  std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>,
           std::optional<Formula>>
      memo_;
};

}  // namespace

std::optional<Formula> separate(const Glts& g, StateId x, StateId y,
                                std::uint32_t n) {
  g.trans(x);
  g.trans(y);
  return Separator(g).run(x, y, n);
}

std::optional<Distinction> distinguish(const Glts& g, StateId x, StateId y,
                                       std::uint32_t n) {
  Separator sep(g);
  g.trans(x);
  g.trans(y);
  if (auto f = sep.run(x, y, n)) return Distinction{*f, true};
  if (auto f = sep.run(y, x, n)) return Distinction{*f, false};
  return std::nullopt;
}

}  // namespace guarded::hml
