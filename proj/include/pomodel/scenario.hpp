#pragma once

// Scenario documents: one baseline, named systems, a grid and a task list.
// Parsing validates names and references; to_json/scenario_from_json
// round-trip.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "pomodel/io.hpp"

namespace pomodel {

struct NamedSystem {
  std::string name;
  Topology topology;
  ParamVector params;
  friend bool operator==(const NamedSystem&, const NamedSystem&) = default;
};

/// Curves for the listed systems; an empty list means every system.
struct EvalCurvesTask {
  std::vector<std::string> systems;
  friend bool operator==(const EvalCurvesTask&, const EvalCurvesTask&) = default;
};

struct CheckOrderTask {
  Relation relation;
  std::string a;
  std::string b;
  friend bool operator==(const CheckOrderTask&, const CheckOrderTask&) = default;
};

/// Theorem case on the scenario's baseline and grid.
struct VerifyTheoremTask {
  TheoremId theorem;
  CaseInputs inputs;
  friend bool operator==(const VerifyTheoremTask&, const VerifyTheoremTask&) = default;
};

struct ReproduceTask {
  CounterexampleId id;
  friend bool operator==(const ReproduceTask&, const ReproduceTask&) = default;
};

struct SweepTask {
  TheoremId theorem;
  std::size_t trials;
  std::uint64_t seed;
  std::optional<std::string> branch;
  friend bool operator==(const SweepTask&, const SweepTask&) = default;
};

using Task =
    std::variant<EvalCurvesTask, CheckOrderTask, VerifyTheoremTask, ReproduceTask, SweepTask>;

struct Scenario {
  Baseline baseline = Baseline::exponential(1.0);
  std::vector<NamedSystem> systems;
  GridSpec grid;
  std::vector<Task> tasks;

  const NamedSystem* find(const std::string& name) const {
    for (const auto& s : systems) {
      if (s.name == name) return &s;
    }
    return nullptr;
  }

  SystemModel model(const std::string& name) const {
    const NamedSystem* s = find(name);
    if (!s) throw ConfigError("undefined system '" + name + "'");
    return {s->topology, baseline, s->params};
  }

  /// Names unique and non-empty, every referenced name defined.
  void validate() const {
    std::set<std::string> seen;
    for (const auto& s : systems) {
      if (s.name.empty()) throw ConfigError("system names must be non-empty");
      if (!seen.insert(s.name).second) throw ConfigError("duplicate system name '" + s.name + "'");
    }
    grid.validate();
    for (const auto& t : tasks) {
      if (const auto* e = std::get_if<EvalCurvesTask>(&t)) {
        for (const auto& n : e->systems) model(n);
      } else if (const auto* c = std::get_if<CheckOrderTask>(&t)) {
        model(c->a);
        model(c->b);
      } else if (const auto* v = std::get_if<VerifyTheoremTask>(&t)) {
        TheoremCase{v->theorem, baseline, v->inputs, grid}.validate();
      } else if (const auto* s = std::get_if<SweepTask>(&t)) {
        if (s->trials < 1) throw ConfigError("sweep: trials must be >= 1");
      }
    }
  }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Relation names as accepted on the command line and in scenario files.
inline std::string relation_cli_name(Relation r) {
  switch (r) {
    case Relation::ageing_hr: return "age-hr";
    case Relation::ageing_rhr: return "age-rhr";
    default: return std::string(to_string(r));
  }
}

inline Relation parse_relation(const std::string& s) {
  for (Relation r : {Relation::st, Relation::hr, Relation::rhr, Relation::lr,
                     Relation::ageing_hr, Relation::ageing_rhr}) {
    if (s == relation_cli_name(r) || s == to_string(r)) return r;
  }
  throw ConfigError("unknown relation '" + s + "'");
}

inline Json to_json(const Task& task) {
  return std::visit(
      [](const auto& t) -> Json {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, EvalCurvesTask>) {
          return {{"kind", "eval_curves"}, {"systems", t.systems}};
        } else if constexpr (std::is_same_v<T, CheckOrderTask>) {
          return {{"kind", "check_order"}, {"relation", relation_cli_name(t.relation)},
                  {"a", t.a}, {"b", t.b}};
        } else if constexpr (std::is_same_v<T, VerifyTheoremTask>) {
          Json j = {{"kind", "verify_theorem"}, {"theorem", to_string(t.theorem)}};
          j.update(inputs_to_json(t.inputs));
          return j;
        } else if constexpr (std::is_same_v<T, ReproduceTask>) {
          return {{"kind", "reproduce"}, {"case", to_string(t.id)}};
        } else {
          Json j = {{"kind", "sweep"}, {"theorem", to_string(t.theorem)},
                    {"trials", t.trials}, {"seed", t.seed}};
          if (t.branch) j["branch"] = *t.branch;
          return j;
        }
      },
      task);
}

inline Task task_from_json(const Json& j) {
  using detail::require;
  const auto kind = require<std::string>(j, "kind");
  if (kind == "eval_curves") {
    EvalCurvesTask t;
    if (j.contains("systems")) t.systems = require<std::vector<std::string>>(j, "systems");
    return t;
  }
  if (kind == "check_order") {
    return CheckOrderTask{parse_relation(require<std::string>(j, "relation")),
                          require<std::string>(j, "a"), require<std::string>(j, "b")};
  }
  if (kind == "verify_theorem") {
    const TheoremId id = parse_theorem_id(require<std::string>(j, "theorem"));
    return VerifyTheoremTask{id, inputs_from_json(id, j)};
  }
  if (kind == "reproduce") {
    return ReproduceTask{parse_counterexample_id(require<std::string>(j, "case"))};
  }
  if (kind == "sweep") {
    SweepTask t{parse_theorem_id(require<std::string>(j, "theorem")),
                require<std::size_t>(j, "trials"), require<std::uint64_t>(j, "seed"),
                std::nullopt};
    if (j.contains("branch")) t.branch = require<std::string>(j, "branch");
    return t;
  }
  throw ConfigError("unknown task kind '" + kind + "'");
}

inline Json to_json(const Scenario& s) {
  Json systems = Json::array();
  for (const auto& m : s.systems) {
    systems.push_back(
        {{"name", m.name}, {"topology", to_string(m.topology)}, {"params", to_json(m.params)}});
  }
  Json tasks = Json::array();
  for (const auto& t : s.tasks) tasks.push_back(to_json(t));
  return {{"baseline", to_json(s.baseline)},
          {"systems", systems},
          {"grid", to_json(s.grid)},
          {"tasks", tasks}};
}

inline Scenario scenario_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("scenario must be a JSON object");
  Scenario s;
  s.baseline = baseline_from_json(detail::require<Json>(j, "baseline"));
  if (j.contains("systems")) {
    for (const auto& m : detail::require<Json>(j, "systems")) {
      s.systems.push_back({detail::require<std::string>(m, "name"),
                           parse_topology(detail::require<std::string>(m, "topology")),
                           params_from_json(m, "params")});
    }
  }
  if (j.contains("grid")) s.grid = grid_from_json(j.at("grid"));
  if (j.contains("tasks")) {
    for (const auto& t : detail::require<Json>(j, "tasks")) s.tasks.push_back(task_from_json(t));
  }
  s.validate();
  return s;
}

inline Scenario parse_scenario(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
  }
  return scenario_from_json(j);
}

}  // namespace pomodel
