// guarded-proc: batch front end over the library.
//
// Exit status: 0 ok, 1 property failed, 2 usage or input error, 3 resource
// limit.  GUARDED_PROC_LIMITS overrides budgets, e.g. "states=500".

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "guarded/approx.hpp"
#include "guarded/bisim.hpp"
#include "guarded/ccs.hpp"
#include "guarded/errors.hpp"
#include "guarded/functor_kit.hpp"
#include "guarded/glts.hpp"
#include "guarded/hml.hpp"

using namespace guarded;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;
constexpr int kLimit = 3;

bool ends_with(const std::string& s, const std::string& tail) {
  return s.size() >= tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LookupError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A system loaded from a .glts / .json file, or compiled from every
// definition of a .ccs file.  Definition names resolve to their root.
struct Loaded {
  Glts glts;
  std::map<std::string, StateId> roots;
  std::optional<ccs::Program> program;

  StateId resolve(const std::string& name) const {
    auto it = roots.find(name);
    if (it != roots.end()) return it->second;
    return glts.state(name);
  }

  std::string label(StateId x) const {
    for (const auto& [n, s] : roots)
      if (s == x) return n;
    return glts.name(x);
  }
};

Loaded load(const std::string& path, const Limits& limits) {
  Loaded out;
  if (ends_with(path, ".glts")) {
    out.glts = load_glts(path);
  } else if (ends_with(path, ".json")) {
    out.glts = glts_from_json(slurp(path));
  } else if (ends_with(path, ".ccs")) {
    auto prog = ccs::load_program(path);
    std::vector<ccs::Process> roots;
    for (const auto& d : prog.defs) roots.push_back(d.process);
    auto sys = ccs::to_glts(roots, prog.names, limits.max_states);
    for (std::size_t i = 0; i < prog.defs.size(); ++i)
      out.roots.emplace(prog.defs[i].name, sys.roots[i]);
    out.glts = std::move(sys.glts);
    out.program = std::move(prog);
  } else {
    throw ShapeError("unrecognized file type (expected .ccs, .glts or .json): " + path);
  }
  return out;
}

json tree_json(const ProcTree& t, const Glts& g) {
  json out = json::array();
  for (const auto& b : t.branches()) {
    if (b.next)
      out.push_back({g.name(b.action), tree_json(*b.next, g)});
    else
      out.push_back(g.name(b.action));
  }
  return out;
}

struct Options {
  bool json = false;
  Limits limits;
};

void emit(const Options& o, const json& j, const std::string& text) {
  if (o.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

// ---------------------------------------------------------------------------
// subcommands

int cmd_parse(const Options& o, const std::string& file) {
  json j;
  std::ostringstream text;
  if (ends_with(file, ".ccs")) {
    auto prog = ccs::load_program(file);
    j["names"] = prog.names;
    j["definitions"] = json::array();
    for (const auto& d : prog.defs) {
      auto printed = ccs::print(d.process, prog.names);
      j["definitions"].push_back(
          {{"name", d.name}, {"process", printed}, {"ast", d.process.debug_string()}});
      text << d.name << " = " << printed << "\n";
    }
  } else {
    auto g = load(file, o.limits).glts;
    auto problems = validate(g);
    j = json::parse(to_json(g));
    j["violations"] = problems;
    text << to_glts_text(g);
    for (const auto& p : problems) text << "# violation: " << p << "\n";
    emit(o, j, text.str());
    return problems.empty() ? kOk : kFailed;
  }
  emit(o, j, text.str());
  return kOk;
}

int cmd_lts(const Options& o, const std::string& file, const std::vector<std::string>& procs,
            std::optional<std::size_t> limit) {
  auto prog = ccs::load_program(file);
  std::vector<ccs::Process> roots;
  std::vector<std::string> names = procs;
  if (names.empty())
    for (const auto& d : prog.defs) names.push_back(d.name);
  for (const auto& n : names) {
    const auto* d = prog.find(n);
    if (!d) throw LookupError("no definition named " + n);
    roots.push_back(d->process);
  }
  auto sys = ccs::to_glts(roots, prog.names, limit.value_or(o.limits.max_states));
  json j = json::parse(to_json(sys.glts));
  j["roots"] = json::object();
  std::ostringstream text;
  for (std::size_t i = 0; i < names.size(); ++i) {
    j["roots"][names[i]] = sys.glts.name(sys.roots[i]);
    text << "# " << names[i] << " = " << sys.glts.name(sys.roots[i]) << "\n";
  }
  for (auto s : sys.glts.states())
    text << "# " << sys.glts.name(s) << ": " << ccs::print(sys.terms[s.value], prog.names)
         << "\n";
  text << to_glts_text(sys.glts);
  emit(o, j, text.str());
  return kOk;
}

int cmd_eval(const Options& o, const std::string& file, const std::string& state,
             std::uint32_t depth) {
  auto sys = load(file, o.limits);
  auto t = eval(sys.glts, sys.resolve(state), depth);
  json j{{"state", state}, {"depth", depth}, {"tree", t.render(sys.glts)},
         {"branches", tree_json(t, sys.glts)}};
  emit(o, j, t.render(sys.glts) + "\n");
  return kOk;
}

std::string describe_failure(const Loaded& sys, StateId x, StateId y, std::uint32_t n,
                             const BisimFailure& f, json& j) {
  const auto& g = sys.glts;
  StateId from = f.from_left ? x : y;
  StateId other = f.from_left ? y : x;
  j = {{"side", f.from_left ? "left" : "right"},
       {"state", sys.label(from)},
       {"action", g.name(f.action)},
       {"successor", f.successor ? json(g.name(*f.successor)) : json(nullptr)}};
  std::ostringstream s;
  if (f.successor)
    s << sys.label(from) << " --" << g.name(f.action) << "--> " << g.name(*f.successor)
      << " has no match from " << sys.label(other) << " at level " << n - 1;
  else
    s << sys.label(from) << " offers " << g.name(f.action) << " and "
      << sys.label(other) << " does not";
  return s.str();
}

int cmd_bisim(const Options& o, const std::string& file, const std::string& p,
              const std::string& q, std::optional<std::uint32_t> depth) {
  auto sys = load(file, o.limits);
  const auto& g = sys.glts;
  auto x = sys.resolve(p);
  auto y = sys.resolve(q);
  json j{{"left", p}, {"right", q}};
  std::uint32_t level = 0;
  bool holds = false;
  std::ostringstream text;
  if (depth) {
    level = *depth;
    holds = bisim_level(g, level).holds(x, y);
    j["stable"] = false;
    if (holds) text << "bisimilar at level " << level << "\n";
  } else {
    auto st = bisim_stable(g);
    j["stable"] = true;
    j["stabilized_at"] = st.level;
    holds = st.rel.holds(x.value, y.value);
    level = st.level;
    if (holds) {
      text << "bisimilar (stabilized at level " << st.level << ")\n";
    } else {
      // Report the first level at which the pair separates.
      auto chain = bisim_chain(g, st.level);
      level = 0;
      while (chain[level].holds(x, y)) ++level;
    }
  }
  j["level"] = level;
  j["bisimilar"] = holds;
  j["failure"] = nullptr;
  if (!holds) {
    auto f = explain_failure(g, x, y, level);
    text << "not bisimilar at level " << level;
    if (f) {
      json fj;
      text << "; distinguishing pair: " << describe_failure(sys, x, y, level, *f, fj);
      j["failure"] = fj;
    }
    text << "\n";
  }
  emit(o, j, text.str());
  return holds ? kOk : kFailed;
}

int cmd_coincide(const Options& o, const std::string& file, std::uint32_t depth) {
  auto sys = load(file, o.limits);
  const auto& g = sys.glts;
  json levels = json::array();
  std::ostringstream text;
  bool all = true;
  for (std::uint32_t n = 0; n <= depth; ++n) {
    auto r = coincidence(g, n);
    json lj{{"level", n}, {"holds", r.holds}, {"counterexample", nullptr}};
    text << "level " << n << ": ";
    if (r.holds) {
      text << "bisimilarity and evaluation agree on all " << g.num_states() * g.num_states()
           << " pairs\n";
    } else {
      all = false;
      const auto& [x, y] = *r.counterexample;
      lj["counterexample"] = {{"left", g.name(x)},
                              {"right", g.name(y)},
                              {"bisimilar", r.bisimilar},
                              {"trees_equal", r.trees_equal}};
      text << "counterexample (" << g.name(x) << ", " << g.name(y) << "): bisimilar="
           << r.bisimilar << " trees_equal=" << r.trees_equal << "\n";
    }
    levels.push_back(lj);
  }
  emit(o, json{{"depth", depth}, {"holds", all}, {"levels", levels}}, text.str());
  return all ? kOk : kFailed;
}

int cmd_hml(const Options& o, const std::string& file, const std::string& formula,
            std::vector<std::string> states, std::uint32_t depth) {
  auto sys = load(file, o.limits);
  auto phi = hml::parse_formula(formula);
  if (states.empty()) {
    if (!sys.roots.empty())
      for (const auto& [n, s] : sys.roots) states.push_back(n);
    else
      states = sys.glts.state_names();
  }
  json results = json::object();
  std::ostringstream text;
  bool all = true;
  for (const auto& s : states) {
    bool v = hml::sat(sys.glts, sys.resolve(s), phi, depth);
    all = all && v;
    results[s] = v;
    text << s << " |= " << phi.to_string() << " at level " << depth << ": "
         << (v ? "true" : "false") << "\n";
  }
  emit(o, json{{"formula", phi.to_string()}, {"depth", depth}, {"results", results}},
       text.str());
  return all ? kOk : kFailed;
}

int cmd_distinguish(const Options& o, const std::string& file, const std::string& p,
                    const std::string& q, std::uint32_t depth) {
  auto sys = load(file, o.limits);
  auto d = hml::distinguish(sys.glts, sys.resolve(p), sys.resolve(q), depth);
  json j{{"left", p}, {"right", q}, {"depth", depth}, {"formula", nullptr}};
  std::ostringstream text;
  if (d) {
    j["formula"] = d->formula.to_string();
    j["holds_at"] = d->holds_at_first ? p : q;
    text << d->formula.to_string() << "\n"
         << "holds at " << (d->holds_at_first ? p : q) << ", fails at "
         << (d->holds_at_first ? q : p) << " (level " << depth << ")\n";
  } else {
    text << "no distinguishing formula at level " << depth << "\n";
  }
  emit(o, j, text.str());
  return d ? kOk : kFailed;
}

// The worked examples, with their expected outcomes.
const char* const kBranchingSource = "p = a.(b + c)\nq = a.b + a.c\n";

int cmd_demo(const Options& o) {
  json checks = json::array();
  std::ostringstream text;
  bool all = true;
  auto check = [&](const std::string& what, const std::string& expected,
                   const std::string& actual) {
    bool ok = expected == actual;
    all = all && ok;
    checks.push_back({{"check", what}, {"expected", expected}, {"actual", actual}, {"ok", ok}});
    text << (ok ? "[ok]   " : "[FAIL] ") << what << ": expected " << expected << ", got "
         << actual << "\n";
  };

  text << "# six-state example\n";
  auto fig = example_fig1();
  auto st = bisim_stable(fig);
  for (auto [x, y] : {std::pair{"x0", "y0"}, {"x1", "y1"}, {"x0", "y2"}, {"x2", "y1"}})
    check(std::string(x) + " ~ " + y, "bisimilar",
          st.rel.holds(fig.state(x).value, fig.state(y).value) ? "bisimilar" : "not bisimilar");
  check("x0 ~ x1", "not bisimilar",
        st.rel.holds(fig.state("x0").value, fig.state("x1").value) ? "bisimilar"
                                                                   : "not bisimilar");

  text << "# a.(b + c) versus a.b + a.c\n";
  auto prog = ccs::parse_program(kBranchingSource);
  auto sys = ccs::to_glts({prog.defs[0].process, prog.defs[1].process}, prog.names,
                          o.limits.max_states);
  auto p = sys.roots[0];
  auto q = sys.roots[1];
  check("eval(p, 0)", "{a}", eval(sys.glts, p, 0).render(sys.glts));
  check("eval(p, 1)", "{(a, {b, c})}", eval(sys.glts, p, 1).render(sys.glts));
  check("eval(q, 1)", "{(a, {b}), (a, {c})}", eval(sys.glts, q, 1).render(sys.glts));
  for (std::uint32_t n = 0; n <= 3; ++n)
    check("p ~ q at level " + std::to_string(n), n == 0 ? "bisimilar" : "not bisimilar",
          bisim_level(sys.glts, n).holds(p, q) ? "bisimilar" : "not bisimilar");
  auto phi = hml::parse_formula("[a]<b>tt");
  check("q |= [a]<b>tt at level 0", "true", hml::sat(sys.glts, q, phi, 0) ? "true" : "false");
  check("q |= [a]<b>tt at level 1", "false", hml::sat(sys.glts, q, phi, 1) ? "true" : "false");

  text << "# lifting witnesses for the total relation on {x, y}\n";
  auto xy = fk::FValue::set({fk::FValue::elem(0), fk::FValue::elem(1)});
  auto count = fk::witness_count(fk::Functor::pfin(fk::Functor::id()),
                                 fk::Relation::total(2, 2), xy, xy, o.limits);
  check("witnesses relating {x, y} to itself", "7", std::to_string(count));

  emit(o, json{{"ok", all}, {"checks", checks}}, text.str());
  return all ? kOk : kFailed;
}

int run(int argc, char** argv) {
  CLI::App app{"Guarded process semantics: CCS, bisimilarity, evaluation, HML"};
  app.require_subcommand(1);
  Options opts;
  app.add_flag("--json", opts.json, "Emit JSON instead of text");
  app.fallthrough();

  std::string file;
  std::string p;
  std::string q;
  std::string formula;
  std::vector<std::string> procs;
  std::vector<std::string> states;
  std::uint32_t depth = 0;
  std::optional<std::uint32_t> bisim_depth;
  std::optional<std::size_t> limit;
  bool stable = false;

  auto* parse = app.add_subcommand("parse", "Validate a .ccs or .glts file and echo it");
  parse->add_option("file", file)->required()->check(CLI::ExistingFile);

  auto* lts = app.add_subcommand("lts", "Compile CCS definitions to a .glts system");
  lts->add_option("file", file)->required()->check(CLI::ExistingFile);
  lts->add_option("-p,--process", procs, "Definition to compile (default: all)");
  lts->add_option("--limit", limit, "Maximum number of states");

  auto* ev = app.add_subcommand("eval", "Print the depth-bounded process tree of a state");
  ev->add_option("file", file)->required()->check(CLI::ExistingFile);
  ev->add_option("state", p)->required();
  ev->add_option("--depth", depth)->required();

  auto* bis = app.add_subcommand("bisim", "Decide bisimilarity at a level or when stable");
  bis->add_option("file", file)->required()->check(CLI::ExistingFile);
  bis->add_option("left", p)->required();
  bis->add_option("right", q)->required();
  auto* depth_opt = bis->add_option("--depth", bisim_depth, "Level (default: stable)");
  bis->add_flag("--stable", stable, "Iterate to the stable relation")->excludes(depth_opt);

  auto* co = app.add_subcommand("coincide", "Check bisimilarity against evaluation");
  co->add_option("file", file)->required()->check(CLI::ExistingFile);
  co->add_option("--depth", depth)->required();

  auto* hc = app.add_subcommand("hml-check", "Check an HML formula at states");
  hc->add_option("file", file)->required()->check(CLI::ExistingFile);
  hc->add_option("states", states, "States or definitions (default: all roots)");
  hc->add_option("-f,--formula", formula)->required();
  hc->add_option("--depth", depth)->required();

  auto* di = app.add_subcommand("distinguish", "Find a formula telling two states apart");
  di->add_option("file", file)->required()->check(CLI::ExistingFile);
  di->add_option("left", p)->required();
  di->add_option("right", q)->required();
  di->add_option("--depth", depth)->required();

  auto* demo = app.add_subcommand("demo", "Run the worked examples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (const char* env = std::getenv("GUARDED_PROC_LIMITS")) opts.limits = parse_limits(env);
    if (*parse) return cmd_parse(opts, file);
    if (*lts) return cmd_lts(opts, file, procs, limit);
    if (*ev) return cmd_eval(opts, file, p, depth);
    if (*bis) return cmd_bisim(opts, file, p, q, bisim_depth);
    if (*co) return cmd_coincide(opts, file, depth);
    if (*hc) return cmd_hml(opts, file, formula, states, depth);
    if (*di) return cmd_distinguish(opts, file, p, q, depth);
    if (*demo) return cmd_demo(opts);
  } catch (const LimitExceeded& e) {
    std::cerr << "error: limit exceeded: " << e.what() << "\n";
    return kLimit;
  } catch (const ParseError& e) {
    std::cerr << "error: " << file << ": " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
