#include "guarded/glts.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "guarded/errors.hpp"
#include "json.hpp"

namespace guarded {

namespace {

std::optional<std::uint32_t> find_name(const std::vector<std::string>& names,
                                       const std::string& name) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<std::uint32_t>(it - names.begin());
}

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

Glts::Glts(std::vector<std::string> states, std::vector<std::string> actions,
           std::vector<FinSet<Edge>> trans)
    : states_(std::move(states)),
      actions_(std::move(actions)),
      trans_(std::move(trans)) {}

const std::string& Glts::name(StateId x) const {
  if (x.value >= states_.size())
    throw LookupError("state id " + std::to_string(x.value) + " out of range");
  return states_[x.value];
}

const std::string& Glts::name(ActionId a) const {
  if (a.value >= actions_.size())
    throw LookupError("action id " + std::to_string(a.value) + " out of range");
  return actions_[a.value];
}

std::optional<StateId> Glts::find_state(const std::string& n) const {
  if (auto i = find_name(states_, n)) return StateId{*i};
  return std::nullopt;
}

std::optional<ActionId> Glts::find_action(const std::string& n) const {
  if (auto i = find_name(actions_, n)) return ActionId{*i};
  return std::nullopt;
}

StateId Glts::state(const std::string& n) const {
  if (auto x = find_state(n)) return *x;
  throw LookupError("unknown state '" + n + "'");
}

ActionId Glts::action(const std::string& n) const {
  if (auto a = find_action(n)) return *a;
  throw LookupError("unknown action '" + n + "'");
}

const FinSet<Edge>& Glts::trans(StateId x) const {
  if (x.value >= trans_.size())
    throw LookupError("state id " + std::to_string(x.value) + " out of range");
  return trans_[x.value];
}

std::vector<StateId> Glts::states() const {
  std::vector<StateId> out;
  for (std::uint32_t i = 0; i < states_.size(); ++i) out.push_back({i});
  return out;
}

std::vector<Transition> Glts::transitions() const {
  std::vector<Transition> out;
  for (std::uint32_t i = 0; i < trans_.size(); ++i)
    for (const auto& [a, y] : trans_[i]) out.push_back({{i}, a, y});
  return out;
}

// ---------------------------------------------------------------------------

GltsBuilder& GltsBuilder::state(std::string name) {
  states_.push_back(std::move(name));
  return *this;
}

GltsBuilder& GltsBuilder::action(std::string name) {
  actions_.push_back(std::move(name));
  return *this;
}

GltsBuilder& GltsBuilder::transition(std::string source, std::string label,
                                     std::string target) {
  trans_.push_back({std::move(source), std::move(label), std::move(target)});
  return *this;
}

Glts GltsBuilder::build() const {
  auto states = sorted_unique(states_);
  auto actions = sorted_unique(actions_);
  std::vector<std::vector<Edge>> edges(states.size());
  auto index_of = [](const std::vector<std::string>& names,
                     const std::string& n) -> std::optional<std::uint32_t> {
    auto it = std::lower_bound(names.begin(), names.end(), n);
    if (it == names.end() || *it != n) return std::nullopt;
    return static_cast<std::uint32_t>(it - names.begin());
  };
  for (const auto& [src, label, dst] : trans_) {
    auto s = index_of(states, src);
    auto a = index_of(actions, label);
    auto d = index_of(states, dst);
    if (!s || !a || !d) {
      std::string bad = !s ? "state '" + src + "'"
                           : !a ? "action '" + label + "'"
                                : "state '" + dst + "'";
      throw LookupError("transition (" + src + ", " + label + ", " + dst +
                        ") mentions unknown " + bad);
    }
    edges[*s].emplace_back(ActionId{*a}, StateId{*d});
  }
  std::vector<FinSet<Edge>> trans;
  trans.reserve(edges.size());
  for (auto& e : edges) trans.push_back(FinSet<Edge>::from_unsorted(std::move(e)));
  return Glts(std::move(states), std::move(actions), std::move(trans));
}

// ---------------------------------------------------------------------------

std::vector<std::string> validate(const Glts& g) {
  std::vector<std::string> report;
  auto dup_check = [&](const std::vector<std::string>& names,
                       const char* what) {
    std::set<std::string> seen;
    for (const auto& n : names) {
      if (!seen.insert(n).second)
        report.push_back(std::string("duplicate ") + what + " '" + n + "'");
    }
  };
  dup_check(g.state_names(), "state");
  dup_check(g.action_names(), "action");
  if (g.trans_table().size() != g.num_states()) {
    report.push_back("transition map covers " +
                     std::to_string(g.trans_table().size()) + " states, expected " +
                     std::to_string(g.num_states()));
  }
  const auto& table = g.trans_table();
  for (std::size_t i = 0; i < table.size(); ++i) {
    std::string src = i < g.num_states() ? g.state_names()[i]
                                         : "#" + std::to_string(i);
    for (const auto& [a, y] : table[i]) {
      bool bad_a = a.value >= g.num_actions();
      bool bad_y = y.value >= g.num_states();
      if (!bad_a && !bad_y) continue;
      std::string label = bad_a ? "#" + std::to_string(a.value) : g.name(a);
      std::string dst = bad_y ? "#" + std::to_string(y.value) : g.name(y);
      report.push_back("transition (" + src + ", " + label + ", " + dst +
                       ") mentions unknown " + (bad_a ? "action" : "state"));
    }
  }
  return report;
}

FinSet<StateId> successors(const Glts& g, StateId x, ActionId a) {
  std::vector<StateId> out;
  for (const auto& [b, y] : g.trans(x))
    if (b == a) out.push_back(y);
  // Edges are sorted by (action, target), so targets of one action are
  // already ascending.
  return FinSet<StateId>::from_sorted_unique(std::move(out));
}

FinSet<ActionId> initials(const Glts& g, StateId x) {
  return map([](const Edge& e) { return e.first; }, g.trans(x));
}

FinSet<StateId> reachable(const Glts& g, StateId x) {
  std::vector<bool> seen(g.num_states(), false);
  std::vector<StateId> stack{x};
  g.trans(x);
  seen[x.value] = true;
  while (!stack.empty()) {
    auto s = stack.back();
    stack.pop_back();
    for (const auto& [a, y] : g.trans(s)) {
      if (!seen[y.value]) {
        seen[y.value] = true;
        stack.push_back(y);
      }
    }
  }
  std::vector<StateId> out;
  for (std::uint32_t i = 0; i < seen.size(); ++i)
    if (seen[i]) out.push_back({i});
  return FinSet<StateId>::from_sorted_unique(std::move(out));
}

fk::Functor glts_functor(std::size_t num_actions) {
  return fk::Functor::pfin(
      fk::Functor::prod(fk::Functor::constant(num_actions), fk::Functor::id()));
}

fk::FValue edges_to_value(const FinSet<Edge>& edges) {
  std::vector<fk::FValue> items;
  items.reserve(edges.size());
  for (const auto& [a, y] : edges)
    items.push_back(fk::FValue::pair(fk::FValue::atom(a.value),
                                     fk::FValue::elem(y.value)));
  return fk::FValue::set(std::move(items));
}

CoalgebraView as_coalgebra(const Glts& g) {
  CoalgebraView view{glts_functor(g.num_actions()), g.num_states(), {}};
  for (const auto& edges : g.trans_table())
    view.structure.push_back(edges_to_value(edges));
  return view;
}

// ---------------------------------------------------------------------------
// Text and JSON formats

Glts parse_glts(const std::string& text) {
  GltsBuilder b;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::set<std::string> states;
  std::set<std::string> actions;
  std::vector<std::pair<std::size_t, std::array<std::string, 3>>> trans;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream words(line);
    std::vector<std::string> w;
    for (std::string s; words >> s;) w.push_back(s);
    if (w.empty()) continue;
    if (w[0] == "state" && w.size() == 2) {
      states.insert(w[1]);
    } else if (w[0] == "action" && w.size() == 2) {
      actions.insert(w[1]);
    } else if (w[0] == "trans" && w.size() == 4) {
      trans.push_back({lineno, {w[1], w[2], w[3]}});
    } else {
      throw ParseError(lineno, "malformed declaration '" + line + "'");
    }
  }
  for (const auto& [at, t] : trans) {
    const auto& [src, label, dst] = t;
    const char* unknown = !states.count(src)     ? "state"
                          : !actions.count(label) ? "action"
                          : !states.count(dst)    ? "state"
                                                  : nullptr;
    if (unknown) {
      throw ParseError(at, std::string("unknown ") + unknown +
                               " in transition (" + src + ", " + label +
                               ", " + dst + ")");
    }
    b.transition(src, label, dst);
  }
  for (const auto& s : states) b.state(s);
  for (const auto& a : actions) b.action(a);
  return b.build();
}

Glts load_glts(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LookupError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_glts(ss.str());
}

std::string to_glts_text(const Glts& g) {
  std::ostringstream out;
  for (const auto& s : g.state_names()) out << "state " << s << "\n";
  for (const auto& a : g.action_names()) out << "action " << a << "\n";
  for (const auto& t : g.transitions())
    out << "trans " << g.name(t.source) << " " << g.name(t.label) << " "
        << g.name(t.target) << "\n";
  return out.str();
}

std::string to_json(const Glts& g) {
  nlohmann::json j;
  j["states"] = g.state_names();
  j["actions"] = g.action_names();
  auto ts = nlohmann::json::array();
  for (const auto& t : g.transitions())
    ts.push_back({g.name(t.source), g.name(t.label), g.name(t.target)});
  j["transitions"] = ts;
  return j.dump();
}

Glts glts_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.byte, e.what());
  }
  GltsBuilder b;
  try {
    for (const auto& s : j.at("states")) b.state(s.get<std::string>());
    for (const auto& a : j.at("actions")) b.action(a.get<std::string>());
    for (const auto& t : j.at("transitions"))
      b.transition(t.at(0).get<std::string>(), t.at(1).get<std::string>(),
                   t.at(2).get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("bad glts json: ") + e.what());
  }
  return b.build();
}

std::ostream& operator<<(std::ostream& os, StateId x) { return os << '#' << x.value; }
std::ostream& operator<<(std::ostream& os, ActionId a) { return os << '@' << a.value; }

Glts example_fig1() {
  GltsBuilder b;
  for (const char* s : {"x0", "x1", "x2", "y0", "y1", "y2"}) b.state(s);
  b.action("ff").action("tt");
  b.transition("x0", "ff", "x1").transition("x0", "ff", "x2");
  b.transition("x1", "tt", "x0").transition("x1", "ff", "x2");
  b.transition("x2", "tt", "x0").transition("x2", "ff", "x2");
  b.transition("y0", "ff", "y1");
  b.transition("y1", "ff", "y1").transition("y1", "tt", "y2");
  b.transition("y2", "ff", "y1");
  return b.build();
}

}  // namespace guarded
