#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "pomodel/pomodel.hpp"
#include "pomodel/scenario.hpp"

namespace pomodel::cli {
namespace {

namespace fs = std::filesystem;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("not a number: '" + s + "'");
  return v;
}

// exponential:RATE or weibull:SHAPE:SCALE
Baseline parse_baseline(const std::string& spec) {
  const auto p = split(spec, ':');
  try {
    if (p.size() == 2 && p[0] == "exponential") return Baseline::exponential(parse_number(p[1]));
    if (p.size() == 3 && p[0] == "weibull") {
      return Baseline::weibull(parse_number(p[1]), parse_number(p[2]));
    }
  } catch (const DomainError& e) {
    throw ConfigError(std::string("baseline: ") + e.what());
  }
  throw ConfigError("baseline must be exponential:RATE or weibull:SHAPE:SCALE, got '" + spec + "'");
}

// NAME=series:v1,v2,... or NAME=parallel:v1,v2,...
NamedSystem parse_system(const std::string& spec) {
  const auto eq = spec.find('=');
  const auto colon = spec.find(':', eq == std::string::npos ? 0 : eq);
  if (eq == std::string::npos || colon == std::string::npos) {
    throw ConfigError("system must be NAME=TOPOLOGY:v1,v2,..., got '" + spec + "'");
  }
  std::vector<double> values;
  for (const auto& v : split(spec.substr(colon + 1), ',')) values.push_back(parse_number(v));
  try {
    return {spec.substr(0, eq), parse_topology(spec.substr(eq + 1, colon - eq - 1)),
            ParamVector(values)};
  } catch (const DomainError& e) {
    throw ConfigError(std::string("system '") + spec + "': " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Output {
 public:
  Output(const std::string& dir, std::string prefix) : dir_(dir), prefix_(std::move(prefix)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_)) throw ConfigError("cannot create output directory '" + dir + "'");
  }

  std::string write(const std::string& name, const std::string& body) const {
    const fs::path p = dir_ / (prefix_ + name);
    std::ofstream f(p, std::ios::binary);
    f << body;
    if (!f) throw ConfigError("cannot write '" + p.string() + "'");
    return p.string();
  }

  std::string write_json(const std::string& name, const Json& j) const {
    return write(name, j.dump(2) + "\n");
  }

 private:
  fs::path dir_;
  std::string prefix_;
};

struct GridOptions {
  std::optional<double> t_min;
  std::optional<double> t_max;
  std::optional<std::size_t> count;
  std::optional<std::string> spacing;

  void add_to(CLI::App* app) {
    app->add_option("--t-min", t_min, "Smallest grid time (> 0)");
    app->add_option("--t-max", t_max, "Largest grid time");
    app->add_option("--count", count, "Number of grid points");
    app->add_option("--spacing", spacing, "linear or logarithmic");
  }

  GridSpec apply(GridSpec g) const {
    if (t_min) g.t_min = *t_min;
    if (t_max) g.t_max = *t_max;
    if (count) g.count = *count;
    if (spacing) g.spacing = parse_spacing(*spacing);
    g.validate();
    return g;
  }
};

// Where named systems come from: a scenario file, or --baseline and --system.
struct SystemSource {
  std::string scenario;
  std::string baseline = "exponential:1";
  std::vector<std::string> systems;
  GridOptions grid;

  void add_to(CLI::App* app) {
    app->add_option("--scenario", scenario, "Scenario JSON defining baseline, systems and grid");
    app->add_option("--baseline", baseline, "exponential:RATE or weibull:SHAPE:SCALE");
    app->add_option("--system", systems, "NAME=series:v1,v2,... or NAME=parallel:v1,v2,...");
    grid.add_to(app);
  }

  Scenario load() const {
    Scenario s;
    if (!scenario.empty()) {
      s = parse_scenario(read_file(scenario));
    } else {
      s.baseline = parse_baseline(baseline);
    }
    for (const auto& spec : systems) s.systems.push_back(parse_system(spec));
    s.grid = grid.apply(s.grid);
    s.validate();
    return s;
  }
};

// ---- task runners shared by the subcommands and `run` ----------------------

int do_eval(const Scenario& s, std::vector<std::string> names, const Output& o, std::ostream& out) {
  if (names.empty()) {
    for (const auto& m : s.systems) names.push_back(m.name);
  }
  if (names.empty()) throw ConfigError("eval: no systems defined");
  for (const auto& n : names) {
    std::ostringstream csv;
    write_curves_csv(csv, s.model(n), s.grid);
    out << o.write("curves_" + n + ".csv", csv.str()) << '\n';
  }
  return kOk;
}

int do_check(const Scenario& s, Relation r, const std::string& a, const std::string& b,
             const Output& o, std::ostream& out) {
  const OrderVerdict v = check(r, s.model(a), s.model(b), s.grid);
  Json j = {{"a", a}, {"b", b}};
  j.update(to_json(v));
  o.write_json("check_" + relation_cli_name(r) + "_" + a + "_" + b + ".json", j);
  out << j.dump(2) << '\n';
  return v.holds ? kOk : kFailed;
}

int do_verify(const TheoremCase& c, const Output& o, std::ostream& out) {
  const TheoremReport r = verify(c);
  Json j = to_json(r);
  j["case"] = to_json(c);
  o.write_json("verify_" + std::string(to_string(c.id)) + ".json", j);
  out << j.dump(2) << '\n';
  return r.consistent ? kOk : kFailed;
}

int do_reproduce(CounterexampleId id, const Output& o, std::ostream& out) {
  const CounterexampleReport r = reproduce_counterexample(id);
  const std::string name(to_string(id));
  o.write_json("reproduce_" + name + ".json", to_json(r));
  for (const auto& c : r.curves) {
    std::ostringstream csv;
    write_ratio_csv(csv, c);
    o.write("reproduce_" + name + "_" + c.name + ".csv", csv.str());
  }
  out << "case " << name << " (" << to_string(r.topology) << ", " << r.base.name() << ")\n";
  if (!r.values.empty()) {
    out << "label,x,published,computed,abs_error,tolerance,matches\n";
    for (const auto& v : r.values) {
      out << v.label << ',' << format9(v.x) << ',' << format9(v.published) << ','
          << format9(v.computed) << ',' << format9(v.abs_error()) << ',' << format9(v.tolerance)
          << ',' << (v.matches() ? "yes" : "no") << '\n';
    }
  }
  for (const auto& p : r.premises) {
    out << "premise " << p.name << ": " << (p.observed ? "true" : "false")
        << (p.observed == p.expected ? "" : " (unexpected)") << '\n';
  }
  if (r.verdict) {
    out << "verdict " << r.verdict_operands << ": " << (r.verdict->holds ? "holds" : "fails");
    if (!r.verdict->witnesses.empty()) out << " (first witness t=" << format9(r.verdict->witnesses.front().t) << ')';
    out << '\n';
  }
  for (const auto& c : r.curves) {
    out << "curve " << c.name << ": " << to_string(c.shape.kind);
    if (c.shape.witness) {
      const auto& w = *c.shape.witness;
      out << " at t=" << format9(w.t[0]) << ',' << format9(w.t[1]) << ',' << format9(w.t[2]);
    }
    out << '\n';
  }
  out << "reproduced: " << (r.reproduced() ? "yes" : "no") << '\n';
  return r.reproduced() ? kOk : kFailed;
}

int do_sweep(TheoremId id, std::size_t trials, std::uint64_t seed,
             const std::optional<std::string>& branch, const GridSpec& g, const Output& o,
             std::ostream& out) {
  const SweepReport r = sweep(id, trials, seed, branch, g);
  o.write_json("sweep_" + std::string(to_string(id)) + ".json", to_json(r));
  out << to_string(id) << ": " << r.consistent << '/' << r.n_trials << " consistent\n";
  for (const auto& b : r.branches) {
    out << "  " << b.branch << ": " << b.consistent << '/' << b.trials << '\n';
  }
  return r.all_consistent() ? kOk : kFailed;
}

int do_majorize(const std::string& rel, const std::vector<double>& x,
                const std::vector<double>& y, std::ostream& out) {
  bool result = false;
  if (rel == "m") {
    result = majorizes(x, y);
  } else if (rel == "wsup") {
    result = weak_supermajorizes(x, y);
  } else if (rel == "wsub") {
    result = weak_submajorizes(x, y);
  } else if (rel == "p") {
    result = p_larger(x, y);
  } else if (rel == "rm") {
    result = reciprocally_majorizes(x, y);
  } else {
    throw ConfigError("unknown majorization relation '" + rel + "'");
  }
  out << (result ? "true" : "false") << '\n';
  return kOk;
}

int run_task(const Scenario& s, const Task& task, const Output& o, std::ostream& out) {
  return std::visit(
      [&](const auto& t) -> int {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, EvalCurvesTask>) {
          return do_eval(s, t.systems, o, out);
        } else if constexpr (std::is_same_v<T, CheckOrderTask>) {
          return do_check(s, t.relation, t.a, t.b, o, out);
        } else if constexpr (std::is_same_v<T, VerifyTheoremTask>) {
          return do_verify({t.theorem, s.baseline, t.inputs, s.grid}, o, out);
        } else if constexpr (std::is_same_v<T, ReproduceTask>) {
          return do_reproduce(t.id, o, out);
        } else {
          return do_sweep(t.theorem, t.trials, t.seed, t.branch, s.grid, o, out);
        }
      },
      task);
}

std::string task_prefix(std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "task%02zu_", i);
  return buf;
}

}  // namespace

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  // `majorize ... x... -- y...`: the values after "--" are the second vector.
  std::vector<std::string> args = args_in;
  std::vector<std::string> y_words;
  const bool majorize_cmd = !args.empty() && args.front() == "majorize";
  if (majorize_cmd) {
    const auto sep = std::find(args.begin(), args.end(), "--");
    if (sep != args.end()) {
      y_words.assign(sep + 1, args.end());
      args.erase(sep, args.end());
    }
  }

  CLI::App app{"Proportional-odds series/parallel systems: curves, order checks, theorems"};
  app.name("pomodel");
  app.require_subcommand(1);
  std::string out_dir = ".";

  auto with_out = [&](CLI::App* sub) {
    sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
    return sub;
  };

  auto* eval_cmd = with_out(app.add_subcommand("eval", "Write lifetime curves per system"));
  SystemSource eval_src;
  std::vector<std::string> eval_names;
  eval_src.add_to(eval_cmd);
  eval_cmd->add_option("names", eval_names, "Systems to evaluate (default: all)");

  auto* check_cmd = with_out(app.add_subcommand("check", "Check an order relation between two systems"));
  SystemSource check_src;
  std::string check_rel;
  std::vector<std::string> check_names;
  check_src.add_to(check_cmd);
  check_cmd->add_option("--relation", check_rel, "st|hr|rhr|lr|age-hr|age-rhr")->required();
  check_cmd->add_option("systems", check_names, "A B")->required()->expected(2);

  auto* verify_cmd = with_out(app.add_subcommand("verify", "Verify one theorem case"));
  std::string theorem;
  std::string verify_base = "exponential:1";
  std::vector<double> v_lambda, v_mu;
  std::optional<double> v_lambda1, v_lambda2, v_mu1, v_mu2, v_eta, v_common;
  std::optional<int> v_n1, v_n2;
  GridOptions verify_grid;
  verify_cmd->add_option("--theorem", theorem, "Theorem id, e.g. T3.2")->required();
  verify_cmd->add_option("--baseline", verify_base, "exponential:RATE or weibull:SHAPE:SCALE");
  verify_cmd->add_option("--lambda", v_lambda, "X parameters")->delimiter(',');
  verify_cmd->add_option("--mu", v_mu, "Y parameters")->delimiter(',');
  verify_cmd->add_option("--lambda1", v_lambda1);
  verify_cmd->add_option("--lambda2", v_lambda2);
  verify_cmd->add_option("--mu1", v_mu1);
  verify_cmd->add_option("--mu2", v_mu2);
  verify_cmd->add_option("--eta", v_eta);
  verify_cmd->add_option("--n1", v_n1);
  verify_cmd->add_option("--n2", v_n2);
  verify_cmd->add_option("--common", v_common, "Homogeneous parameter of Y");
  verify_grid.add_to(verify_cmd);

  auto* repro_cmd = with_out(app.add_subcommand("reproduce", "Reproduce a published counterexample"));
  std::string case_id;
  repro_cmd->add_option("--case", case_id, "CE3.1, CE3.2, CE4.1a, CE4.1b, CE4.2, CE4.3a, CE4.3b, CE4.4")
      ->required();

  auto* sweep_cmd = with_out(app.add_subcommand("sweep", "Randomized theorem validation"));
  std::string sweep_theorem;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::optional<std::string> branch;
  GridOptions sweep_grid;
  sweep_cmd->add_option("--theorem", sweep_theorem)->required();
  sweep_cmd->add_option("--trials", trials)->capture_default_str();
  sweep_cmd->add_option("--seed", seed)->capture_default_str();
  sweep_cmd->add_option("--branch", branch, "Restrict to one hypothesis branch");
  sweep_grid.add_to(sweep_cmd);

  auto* maj_cmd = app.add_subcommand("majorize", "Evaluate a vector preorder: x... -- y...");
  std::string maj_rel;
  std::vector<double> maj_x;
  maj_cmd->add_option("--relation", maj_rel, "m|wsup|wsub|p|rm")->required();
  maj_cmd->add_option("x", maj_x)->required();

  auto* run_cmd = with_out(app.add_subcommand("run", "Execute every task of a scenario file"));
  std::string scenario_path;
  run_cmd->add_option("scenario", scenario_path)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (*eval_cmd) return do_eval(eval_src.load(), eval_names, Output(out_dir, ""), out);
    if (*check_cmd) {
      return do_check(check_src.load(), parse_relation(check_rel), check_names[0], check_names[1],
                      Output(out_dir, ""), out);
    }
    if (*verify_cmd) {
      const TheoremId id = parse_theorem_id(theorem);
      Json fields = Json::object();
      if (!v_lambda.empty()) fields["lambda"] = v_lambda;
      if (!v_mu.empty()) fields["mu"] = v_mu;
      if (v_lambda1) fields["lambda1"] = *v_lambda1;
      if (v_lambda2) fields["lambda2"] = *v_lambda2;
      if (v_mu1) fields["mu1"] = *v_mu1;
      if (v_mu2) fields["mu2"] = *v_mu2;
      if (v_eta) fields["eta"] = *v_eta;
      if (v_n1) fields["n1"] = *v_n1;
      if (v_n2) fields["n2"] = *v_n2;
      if (v_common) fields["common"] = *v_common;
      TheoremCase c{id, parse_baseline(verify_base), inputs_from_json(id, fields),
                    verify_grid.apply(GridSpec::default_grid())};
      c.validate();
      return do_verify(c, Output(out_dir, ""), out);
    }
    if (*repro_cmd) return do_reproduce(parse_counterexample_id(case_id), Output(out_dir, ""), out);
    if (*sweep_cmd) {
      return do_sweep(parse_theorem_id(sweep_theorem), trials, seed, branch,
                      sweep_grid.apply(GridSpec::default_grid()), Output(out_dir, ""), out);
    }
    if (*maj_cmd) {
      std::vector<double> y;
      for (const auto& w : y_words) y.push_back(parse_number(w));
      if (y.empty()) throw ConfigError("majorize: expected x... -- y...");
      return do_majorize(maj_rel, maj_x, y, out);
    }
    if (*run_cmd) {
      const Scenario s = parse_scenario(read_file(scenario_path));
      int code = kOk;
      for (std::size_t i = 0; i < s.tasks.size(); ++i) {
        const int c = run_task(s, s.tasks[i], Output(out_dir, task_prefix(i)), out);
        if (c != kOk) code = kFailed;
      }
      return code;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const GenerationError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}

}  // namespace pomodel::cli
