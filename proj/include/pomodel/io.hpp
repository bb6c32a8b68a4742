#pragma once

// JSON encoding of model inputs and reports, plus the CSV curve writer.
// Numbers are emitted with 9 significant digits; non-finite values become
// null in JSON and "nan"/"inf" in CSV.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "pomodel/baseline.hpp"
#include "pomodel/counterexamples.hpp"
#include "pomodel/errors.hpp"
#include "pomodel/majorization.hpp"
#include "pomodel/order_checks.hpp"
#include "pomodel/sweep.hpp"
#include "pomodel/systems.hpp"
#include "pomodel/theorems.hpp"

namespace pomodel {

using Json = nlohmann::ordered_json;

inline std::string format9(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

/// v rounded to 9 significant digits, as a JSON number (null if non-finite).
inline Json number9(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::strtod(format9(v).c_str(), nullptr);
}

namespace detail {

template <typename T>
T require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("field '") + key + "' has the wrong type");
  }
}

inline Json numbers9(std::span<const double> v) {
  Json a = Json::array();
  for (double x : v) a.push_back(number9(x));
  return a;
}

}  // namespace detail

// ---- inputs ---------------------------------------------------------------

inline Json to_json(const Baseline& b) {
  return std::visit(
      [](const auto& f) -> Json {
        if constexpr (std::is_same_v<std::decay_t<decltype(f)>, Exponential>) {
          return {{"family", "exponential"}, {"rate", f.rate}};
        } else {
          return {{"family", "weibull"}, {"shape", f.shape}, {"scale", f.scale}};
        }
      },
      b.family());
}

inline Baseline baseline_from_json(const Json& j) {
  const auto family = detail::require<std::string>(j, "family");
  try {
    if (family == "exponential") return Baseline::exponential(detail::require<double>(j, "rate"));
    if (family == "weibull") {
      return Baseline::weibull(detail::require<double>(j, "shape"),
                               detail::require<double>(j, "scale"));
    }
  } catch (const DomainError& e) {
    throw ConfigError(std::string("baseline: ") + e.what());
  }
  throw ConfigError("baseline: unknown family '" + family + "'");
}

inline std::string to_string(Spacing s) { return s == Spacing::linear ? "linear" : "logarithmic"; }

inline Spacing parse_spacing(const std::string& s) {
  if (s == "linear") return Spacing::linear;
  if (s == "logarithmic" || s == "log") return Spacing::logarithmic;
  throw ConfigError("unknown grid spacing '" + s + "'");
}

inline Json to_json(const GridSpec& g) {
  return {{"t_min", g.t_min}, {"t_max", g.t_max}, {"count", g.count},
          {"spacing", to_string(g.spacing)}};
}

inline GridSpec grid_from_json(const Json& j) {
  GridSpec g;
  if (j.contains("t_min")) g.t_min = detail::require<double>(j, "t_min");
  if (j.contains("t_max")) g.t_max = detail::require<double>(j, "t_max");
  if (j.contains("count")) g.count = detail::require<std::size_t>(j, "count");
  if (j.contains("spacing")) g.spacing = parse_spacing(detail::require<std::string>(j, "spacing"));
  g.validate();
  return g;
}

inline Topology parse_topology(const std::string& s) {
  if (s == "series") return Topology::series;
  if (s == "parallel") return Topology::parallel;
  throw ConfigError("unknown topology '" + s + "'");
}

inline ParamVector params_from_json(const Json& j, const char* key) {
  try {
    return ParamVector(detail::require<std::vector<double>>(j, key));
  } catch (const DomainError& e) {
    throw ConfigError(std::string(key) + ": " + e.what());
  }
}

inline Json to_json(const ParamVector& p) {
  return Json(std::vector<double>(p.begin(), p.end()));
}

inline Json to_json(const SystemModel& m) {
  return {{"topology", to_string(m.topology())}, {"params", to_json(m.params())}};
}

inline Json inputs_to_json(const CaseInputs& in) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, HeterogeneousPair>) {
          return {{"lambda", to_json(v.lambda)}, {"mu", to_json(v.mu)}};
        } else if constexpr (std::is_same_v<T, OutlierPair>) {
          return {{"lambda1", v.lambda1}, {"lambda2", v.lambda2}, {"mu1", v.mu1},
                  {"mu2", v.mu2},         {"n1", v.n1},           {"n2", v.n2}};
        } else if constexpr (std::is_same_v<T, SharedOutlierPair>) {
          return {{"lambda1", v.lambda1}, {"mu1", v.mu1}, {"eta", v.eta},
                  {"n1", v.n1},           {"n2", v.n2}};
        } else {
          return {{"lambda", to_json(v.lambda)}, {"common", v.common}};
        }
      },
      in);
}

/// Reads the inputs a theorem's shape needs from the fields of j.
inline CaseInputs inputs_from_json(TheoremId id, const Json& j) {
  using detail::require;
  try {
    switch (shape_of(id)) {
      case CaseShape::heterogeneous_pair:
        return HeterogeneousPair{params_from_json(j, "lambda"), params_from_json(j, "mu")};
      case CaseShape::outlier_pair:
        return OutlierPair{require<double>(j, "lambda1"), require<double>(j, "lambda2"),
                           require<double>(j, "mu1"),     require<double>(j, "mu2"),
                           require<int>(j, "n1"),         require<int>(j, "n2")};
      case CaseShape::shared_outlier_pair:
        return SharedOutlierPair{require<double>(j, "lambda1"), require<double>(j, "mu1"),
                                 require<double>(j, "eta"), require<int>(j, "n1"),
                                 require<int>(j, "n2")};
      case CaseShape::homogeneous_comparison:
        return HomogeneousComparison{params_from_json(j, "lambda"), require<double>(j, "common")};
    }
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("unknown case shape");
}

inline Json to_json(const TheoremCase& c) {
  Json j = {{"theorem", to_string(c.id)}, {"baseline", to_json(c.base)}};
  j.update(inputs_to_json(c.inputs));
  j["grid"] = to_json(c.grid);
  return j;
}

// ---- reports --------------------------------------------------------------

inline Json to_json(const OrderVerdict& v) {
  Json w = Json::array();
  for (const auto& x : v.witnesses) {
    w.push_back({{"t", number9(x.t)}, {"lhs", number9(x.lhs)}, {"rhs", number9(x.rhs)}});
  }
  return {{"relation", to_string(v.relation)}, {"holds", v.holds},    {"witnesses", w},
          {"grid", to_json(v.grid)},           {"skipped", v.skipped}, {"degraded", v.degraded}};
}

inline Json to_json(const MonotonicityResult& m) {
  Json j = {{"kind", to_string(m.kind)}, {"witness", nullptr}};
  if (m.witness) {
    j["witness"] = {{"t", detail::numbers9(m.witness->t)},
                    {"value", detail::numbers9(m.witness->value)}};
  }
  return j;
}

inline Json to_json(const Hypothesis& h) {
  Json c = Json::array();
  for (const auto& x : h.conditions) {
    c.push_back({{"name", x.name},
                 {"holds", x.holds},
                 {"role", x.role == ConditionRole::required ? "required" : "alternative"}});
  }
  return {{"holds", h.holds}, {"conditions", c}};
}

inline Json to_json(const TheoremReport& r) {
  return {{"id", to_string(r.id)},
          {"hypothesis_holds", r.hypothesis.holds},
          {"hypothesis", to_json(r.hypothesis)},
          {"conclusion", {{"relation", to_string(r.conclusion.relation)},
                          {"operands", r.conclusion.swapped ? "Y,X" : "X,Y"}}},
          {"conclusion_verdict", r.verdict ? to_json(*r.verdict) : Json(nullptr)},
          {"consistent", r.consistent}};
}

inline Json to_json(const CounterexampleReport& r) {
  Json premises = Json::array();
  for (const auto& p : r.premises) {
    premises.push_back({{"name", p.name}, {"expected", p.expected}, {"observed", p.observed}});
  }
  Json values = Json::array();
  for (const auto& v : r.values) {
    values.push_back({{"label", v.label},
                      {"x", number9(v.x)},
                      {"published", v.published},
                      {"computed", number9(v.computed)},
                      {"abs_error", number9(v.abs_error())},
                      {"tolerance", v.tolerance},
                      {"matches", v.matches()}});
  }
  Json curves = Json::array();
  for (const auto& c : r.curves) {
    curves.push_back({{"name", c.name}, {"shape", to_json(c.shape)}});
  }
  return {{"id", to_string(r.id)},
          {"topology", to_string(r.topology)},
          {"baseline", to_json(r.base)},
          {"x", to_json(r.x)},
          {"y", to_json(r.y)},
          {"grid", to_json(r.grid)},
          {"premises", premises},
          {"values", values},
          {"verdict_operands", r.verdict_operands},
          {"verdict", r.verdict ? to_json(*r.verdict) : Json(nullptr)},
          {"curves", curves},
          {"reproduced", r.reproduced()}};
}

inline Json to_json(const SweepReport& s) {
  Json branches = Json::array();
  for (const auto& b : s.branches) {
    branches.push_back({{"branch", b.branch}, {"trials", b.trials}, {"consistent", b.consistent}});
  }
  Json bad = Json::array();
  for (const auto& t : s.inconsistencies) {
    bad.push_back({{"trial", t.trial},
                   {"branch", t.branch},
                   {"case", to_json(t.instance)},
                   {"report", to_json(t.report)}});
  }
  return {{"theorem", to_string(s.id)}, {"seed", s.seed},         {"n_trials", s.n_trials},
          {"consistent", s.consistent}, {"branches", branches},   {"inconsistencies", bad}};
}

// ---- curves ---------------------------------------------------------------

/// t,survival,cdf,density,hazard,reversed_hazard for each grid point.
inline void write_curves_csv(std::ostream& out, const SystemModel& m, const GridSpec& g) {
  out << "t,survival,cdf,density,hazard,reversed_hazard\n";
  for (double t : g.points()) {
    const SystemPoint p = m.evaluate(t);
    out << format9(t) << ',' << format9(p.survival) << ',' << format9(p.cdf) << ','
        << format9(p.density) << ',' << format9(p.hazard) << ',' << format9(p.reversed_hazard)
        << '\n';
  }
}

inline void write_ratio_csv(std::ostream& out, const RatioCurve& c) {
  out << "t,ratio\n";
  for (std::size_t i = 0; i < c.t.size(); ++i) {
    out << format9(c.t[i]) << ',' << format9(c.ratio[i]) << '\n';
  }
}

}  // namespace pomodel
