#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "efl/efl.hpp"
#include "efl/io.hpp"

namespace {

using namespace efl;

std::string formula_arg(const std::string& s) {
  if (s != "-") return s;
  std::ostringstream o;
  o << std::cin.rdbuf();
  return o.str();
}

std::string point_text(const Model& m, Point p) { return "(" + m.world_name(p.world) + ", " + m.agent_name(p.agent) + ")"; }

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

int cmd_check(const std::string& file, const std::string& world, const std::string& agent, const std::string& text) {
  const ModelFile mf = read_model(file);
  const Model& m = mf.model;
  const Point p{m.world_index(world), m.agent_index(agent)};
  Evaluator ev;
  const bool v = ev.satisfies(PointedModel{m, p}, parse_for(m, formula_arg(text)));
  std::cout << (v ? "true" : "false") << " at " << point_text(m, p) << "\n";
  return v ? 0 : 1;
}

int cmd_transform(const std::string& file, const std::string& text, const std::string& out) {
  const ModelFile mf = read_model(file);
  Formula f = parse_for(mf.model, formula_arg(text) + " true");
  if (const auto* s = f.as<node::Sugar>();
      s && (s->form.kind == SugarKind::del_friend || s->form.kind == SugarKind::add_friend))
    f = expand(f);
  if (!f.is<node::Dynamic>()) throw EvalError("expected one or more model-changing operators");
  Model m = mf.model;
  std::optional<Point> actual = mf.actual;
  Evaluator ev;
  while (const auto* d = f.as<node::Dynamic>()) {
    TransformResult r = apply_op(ev, m, d->op, false, nullptr);
    if (actual) actual = r.map(m, *actual);
    m = std::move(r.model);
    f = d->arg;
  }
  require_efl(m);
  write_model(m, out, actual);
  return 0;
}

int cmd_valid(const std::string& text, std::size_t worlds, const std::string& agents, const std::string& props,
              bool with_d, const std::string& undefined, const std::string& out) {
  Signature sig;
  sig.max_worlds = worlds;
  sig.agents = split(agents);
  sig.props = split(props);
  sig.include_d = with_d;
  NominalSet noms(sig.agents.begin(), sig.agents.end());
  const Formula phi = parse_formula(formula_arg(text), noms);
  UndefinedHandling h = UndefinedHandling::error;
  if (undefined == "vacuous") h = UndefinedHandling::vacuous;
  if (undefined == "skip") h = UndefinedHandling::skip_model;
  const Verdict v = check_valid(phi, sig, h);
  std::cout << "models " << v.models_checked;
  if (v.models_undefined) std::cout << " (operator undefined on " << v.models_undefined << ")";
  std::cout << "\n";
  if (v.valid) {
    std::cout << "ValidUpTo(" << worlds << " worlds, " << sig.agents.size() << " agents, " << sig.props.size()
              << " props" << (with_d ? ", with d" : "") << ")\n";
    return 0;
  }
  std::cout << "Countermodel at " << point_text(*v.countermodel, *v.point) << "\n";
  write_model(*v.countermodel, out.empty() ? "-" : out, v.point);
  return 1;
}

int cmd_scenario(const std::string& name, bool golden, const std::string& out) {
  const Scenario s = load_scenario(name);
  Evaluator ev;
  int rc = 0;
  std::cout << name << " at " << point_text(s.model, s.actual) << "\n";
  for (const auto& f : s.facts) {
    const bool v = ev.satisfies(PointedModel{s.model, s.actual}, parse_for(s.model, f.formula));
    std::cout << (v == f.expected ? "  ok   " : "  FAIL ") << f.formula << "  [" << (v ? "true" : "false") << "]  "
              << f.gloss << "\n";
    if (v != f.expected) rc = 1;
  }
  if (golden) {
    for (const auto& c : golden_suite()) {
      const bool ok = c.run();
      std::cout << (ok ? "PASS " : "FAIL ") << c.name << "\n";
      if (!ok) rc = 1;
    }
  }
  if (!out.empty()) write_model(s.model, out, s.actual);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Epistemic friendship logic: model checking, model change and bounded validity"};
  app.require_subcommand(1);

  std::string file, world, agent, text, out;
  auto* check = app.add_subcommand("check", "Evaluate a formula at a point of a model file");
  check->add_option("model", file, "Model file ('-' for stdin)")->required();
  check->add_option("world", world)->required();
  check->add_option("agent", agent)->required();
  check->add_option("formula", text, "Formula ('-' for stdin)")->required();

  auto* transform = app.add_subcommand("transform", "Apply model-changing operators to a model file");
  transform->add_option("model", file)->required();
  transform->add_option("operator", text, "Operators, e.g. \"[K := cutK(p)]\"")->required();
  transform->add_option("-o,--output", out, "Output file ('-' for stdout)")->required();

  std::size_t worlds = 3;
  std::string agents = "a,b,c", props = "p", undefined = "error";
  bool with_d = false;
  auto* valid = app.add_subcommand("valid", "Bounded validity by exhaustive model enumeration");
  valid->add_option("formula", text)->required();
  valid->add_option("--worlds", worlds, "Largest number of worlds")->capture_default_str();
  valid->add_option("--agents", agents, "Agents, each named by itself")->capture_default_str();
  valid->add_option("--props", props, "Propositions")->capture_default_str();
  valid->add_flag("--with-d", with_d, "Enumerate want relations too");
  valid->add_option("--undefined", undefined, "Operators yielding non-EFL structures")
      ->check(CLI::IsMember({"error", "vacuous", "skip"}))
      ->capture_default_str();
  valid->add_option("-o,--output", out, "Where to write a countermodel");

  std::string name;
  bool golden = false;
  auto* scen = app.add_subcommand("scenario", "Replay a built-in scenario");
  scen->add_option("name", name)->required()->check(CLI::IsMember(scenario_names()));
  scen->add_flag("--run-golden", golden, "Also run every golden check");
  scen->add_option("-o,--output", out, "Write the scenario model file");

  auto* dot = app.add_subcommand("export-dot", "Graphviz rendering of a model file");
  dot->add_option("model", file)->required();
  dot->add_option("-o,--output", out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*check) return cmd_check(file, world, agent, text);
    if (*transform) return cmd_transform(file, text, out);
    if (*valid) return cmd_valid(text, worlds, agents, props, with_d, undefined, out);
    if (*scen) return cmd_scenario(name, golden, out);
    if (*dot) {
      export_dot(read_model(file).model, out);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
