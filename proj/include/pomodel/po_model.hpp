#pragma once

// Proportional-odds transform of a baseline lifetime. A component with
// parameter alpha has survival alpha*S / (1 - (1-alpha)*S), i.e. its odds of
// survival are alpha times the baseline odds.

#include <cmath>

#include "pomodel/baseline.hpp"
#include "pomodel/errors.hpp"

namespace pomodel {

class PoParameter {
 public:
  explicit PoParameter(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
      throw DomainError("PO parameter must be finite and > 0");
    }
  }

  double alpha() const noexcept { return alpha_; }
  double alpha_bar() const noexcept { return 1.0 - alpha_; }
  /// |1 - alpha| below 1e-15 is treated as alpha == 1.
  bool is_identity() const noexcept { return std::abs(alpha_bar()) < 1e-15; }

 private:
  double alpha_;
};

/// Lifetime functions of one PO component at one time point.
struct ComponentPoint {
  double survival;
  double cdf;
  double density;
  double hazard;
  double reversed_hazard;
};

namespace detail {

// 1 - (1-a) S, written as F + a S so that no cancellation occurs.
inline double po_denominator(double alpha, const BaselinePoint& p) {
  return p.cdf + alpha * p.survival;
}

}  // namespace detail

inline ComponentPoint po_component(const PoParameter& a, const BaselinePoint& p) {
  if (a.is_identity()) {
    return {p.survival, p.cdf, p.density, p.hazard, p.reversed_hazard};
  }
  const double alpha = a.alpha();
  const double d = detail::po_denominator(alpha, p);
  ComponentPoint c{};
  c.survival = alpha * p.survival / d;
  c.cdf = p.cdf / d;
  c.density = alpha * p.density / (d * d);
  c.hazard = p.hazard / d;
  c.reversed_hazard = alpha * p.reversed_hazard / d;
  return c;
}

/// log of the component survival; finite even where the survival underflows.
inline double po_log_survival(const PoParameter& a, const BaselinePoint& p) {
  if (a.is_identity()) return p.log_survival;
  return std::log(a.alpha()) + p.log_survival - std::log(detail::po_denominator(a.alpha(), p));
}

/// log of one minus the component survival, accurate at both ends.
inline double po_log_cdf(const PoParameter& a, const BaselinePoint& p) {
  const ComponentPoint c = po_component(a, p);
  return c.survival < 0.5 ? std::log1p(-c.survival) : std::log(c.cdf);
}

/// log of the component survival, accurate at both ends.
inline double po_log_survival_accurate(const PoParameter& a, const BaselinePoint& p) {
  const ComponentPoint c = po_component(a, p);
  return c.cdf < 0.5 ? std::log1p(-c.cdf) : po_log_survival(a, p);
}

inline double po_survival(const PoParameter& a, const Baseline& base, double t) {
  if (!(t >= 0.0)) throw DomainError("po_survival: time must be >= 0");
  return po_component(a, base.evaluate(t)).survival;
}

inline double po_cdf(const PoParameter& a, const Baseline& base, double t) {
  if (!(t >= 0.0)) throw DomainError("po_cdf: time must be >= 0");
  return po_component(a, base.evaluate(t)).cdf;
}

inline double po_density(const PoParameter& a, const Baseline& base, double t) {
  if (!(t >= 0.0)) throw DomainError("po_density: time must be >= 0");
  return po_component(a, base.evaluate(t)).density;
}

/// Baseline hazard divided by 1 - (1-alpha) S(t). Fails where S(t) has
/// underflowed to zero.
inline double po_hazard(const PoParameter& a, const Baseline& base, double t) {
  if (!(t >= 0.0)) throw DomainError("po_hazard: time must be >= 0");
  const auto p = base.evaluate(t);
  if (p.survival == 0.0) throw RangeError("po_hazard: survival vanishes at t");
  return po_component(a, p).hazard;
}

inline double po_reversed_hazard(const PoParameter& a, const Baseline& base, double t) {
  if (!(t > 0.0)) throw DomainError("po_reversed_hazard: time must be > 0");
  return po_component(a, base.evaluate(t)).reversed_hazard;
}

inline double po_odds(const PoParameter& a, const Baseline& base, double t) {
  if (!(t > 0.0)) throw DomainError("po_odds: time must be > 0");
  const auto p = base.evaluate(t);
  return a.alpha() * (p.survival / p.cdf);
}

}  // namespace pomodel
