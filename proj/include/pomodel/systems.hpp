#pragma once

// Series (minimum) and parallel (maximum) systems of independent PO
// components sharing one baseline.
//
// Products of component survivals (series) or component cdfs (parallel) are
// accumulated as sums of logarithms. Each factor's logarithm is taken through
// log1p of its complement when that complement is small, so both the product
// and one minus the product stay accurate at either end of the time axis.

#include <cmath>
#include <limits>
#include <string>

#include "pomodel/baseline.hpp"
#include "pomodel/errors.hpp"
#include "pomodel/majorization.hpp"
#include "pomodel/po_model.hpp"

namespace pomodel {

enum class Topology { series, parallel };

inline std::string to_string(Topology t) { return t == Topology::series ? "series" : "parallel"; }

/// System lifetime functions at one time point. Entries that are undefined at
/// that point (a hazard past survival underflow, a reversed hazard at t = 0)
/// hold NaN.
struct SystemPoint {
  double t;
  double survival;
  double cdf;
  double density;
  double hazard;
  double reversed_hazard;
};

class SystemModel {
 public:
  SystemModel(Topology topology, Baseline base, ParamVector params)
      : topology_(topology), base_(std::move(base)), params_(std::move(params)) {}

  static SystemModel series(Baseline base, ParamVector params) {
    return {Topology::series, std::move(base), std::move(params)};
  }
  static SystemModel parallel(Baseline base, ParamVector params) {
    return {Topology::parallel, std::move(base), std::move(params)};
  }

  Topology topology() const noexcept { return topology_; }
  const Baseline& baseline() const noexcept { return base_; }
  const ParamVector& params() const noexcept { return params_; }

  SystemPoint evaluate(double t) const {
    if (!(t >= 0.0)) throw DomainError("system: time must be >= 0");
    const BaselinePoint bp = base_.evaluate(t);
    return topology_ == Topology::series ? evaluate_series(bp) : evaluate_parallel(bp);
  }

  double survival(double t) const { return evaluate(t).survival; }
  double cdf(double t) const { return evaluate(t).cdf; }

  double density(double t) const {
    if (topology_ == Topology::parallel && !(t > 0.0)) {
      throw DomainError("parallel density: time must be > 0");
    }
    return evaluate(t).density;
  }

  double hazard(double t) const {
    const double h = evaluate(t).hazard;
    if (std::isnan(h)) throw RangeError("system hazard: survival vanishes at t");
    return h;
  }

  double reversed_hazard(double t) const {
    if (!(t > 0.0)) throw DomainError("system reversed hazard: time must be > 0");
    const double r = evaluate(t).reversed_hazard;
    if (std::isnan(r)) throw RangeError("system reversed hazard: cdf vanishes at t");
    return r;
  }

  friend bool operator==(const SystemModel&, const SystemModel&) = default;

 private:
  static constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

  SystemPoint evaluate_series(const BaselinePoint& bp) const {
    double log_surv = 0.0;
    double hazard = 0.0;
    for (double lambda : params_) {
      const PoParameter a(lambda);
      const ComponentPoint c = po_component(a, bp);
      log_surv += c.cdf < 0.5 ? std::log1p(-c.cdf) : po_log_survival(a, bp);
      hazard += c.hazard;
    }
    SystemPoint s{};
    s.t = bp.t;
    s.survival = std::exp(log_surv);
    s.cdf = -std::expm1(log_surv);
    if (bp.survival == 0.0 || s.survival == 0.0) {
      s.hazard = kNaN;
      s.density = 0.0;
    } else {
      s.hazard = hazard;
      s.density = s.survival * hazard;
    }
    s.reversed_hazard = s.cdf > 0.0 ? s.density / s.cdf : kNaN;
    return s;
  }

  SystemPoint evaluate_parallel(const BaselinePoint& bp) const {
    double log_cdf = 0.0;
    double rev = 0.0;
    for (double lambda : params_) {
      const ComponentPoint c = po_component(PoParameter(lambda), bp);
      log_cdf += c.survival < 0.5 ? std::log1p(-c.survival) : std::log(c.cdf);
      rev += c.reversed_hazard;
    }
    SystemPoint s{};
    s.t = bp.t;
    s.cdf = std::exp(log_cdf);
    s.survival = -std::expm1(log_cdf);
    if (bp.t > 0.0) {
      s.reversed_hazard = rev;
      s.density = s.cdf * rev;
    } else {
      s.reversed_hazard = kNaN;
      s.density = kNaN;
    }
    s.hazard = s.survival > 0.0 ? s.density / s.survival : kNaN;
    return s;
  }

  Topology topology_;
  Baseline base_;
  ParamVector params_;
};

namespace detail {
inline void require_topology(const SystemModel& m, Topology want, const char* op) {
  if (m.topology() != want) {
    throw ConfigError(std::string(op) + ": requires a " + to_string(want) + " system");
  }
}
}  // namespace detail

inline double series_survival(const SystemModel& m, double t) {
  detail::require_topology(m, Topology::series, "series_survival");
  return m.survival(t);
}

inline double series_hazard(const SystemModel& m, double t) {
  detail::require_topology(m, Topology::series, "series_hazard");
  return m.hazard(t);
}

inline double series_density(const SystemModel& m, double t) {
  detail::require_topology(m, Topology::series, "series_density");
  return m.density(t);
}

inline double parallel_survival(const SystemModel& m, double t) {
  detail::require_topology(m, Topology::parallel, "parallel_survival");
  return m.survival(t);
}

inline double parallel_reversed_hazard(const SystemModel& m, double t) {
  detail::require_topology(m, Topology::parallel, "parallel_reversed_hazard");
  return m.reversed_hazard(t);
}

inline double parallel_density(const SystemModel& m, double t) {
  detail::require_topology(m, Topology::parallel, "parallel_density");
  return m.density(t);
}

namespace detail {
inline void require_homogeneous_args(double lambda, int n, double t) {
  if (n < 1) throw DomainError("homogeneous system: n must be >= 1");
  if (!(lambda > 0.0)) throw DomainError("homogeneous system: lambda must be > 0");
  if (!(t >= 0.0)) throw DomainError("homogeneous system: time must be >= 0");
}
}  // namespace detail

/// (lambda S / (1 - (1-lambda) S))^n
inline double homogeneous_series_survival(double lambda, int n, const Baseline& base, double t) {
  detail::require_homogeneous_args(lambda, n, t);
  return std::exp(n * po_log_survival_accurate(PoParameter(lambda), base.evaluate(t)));
}

/// 1 - (F / (1 - (1-lambda) S))^n
inline double homogeneous_parallel_survival(double lambda, int n, const Baseline& base, double t) {
  detail::require_homogeneous_args(lambda, n, t);
  return -std::expm1(n * po_log_cdf(PoParameter(lambda), base.evaluate(t)));
}

/// n r / (1 - (1-lambda) S)
inline double homogeneous_series_hazard(double lambda, int n, const Baseline& base, double t) {
  detail::require_homogeneous_args(lambda, n, t);
  return n * po_hazard(PoParameter(lambda), base, t);
}

/// n lambda r~ / (1 - (1-lambda) S)
inline double homogeneous_parallel_reversed_hazard(double lambda, int n, const Baseline& base,
                                                   double t) {
  detail::require_homogeneous_args(lambda, n, t);
  return n * po_reversed_hazard(PoParameter(lambda), base, t);
}

}  // namespace pomodel
