#pragma once

// Parametric baseline lifetime distributions.

#include <cmath>
#include <limits>
#include <string>
#include <type_traits>
#include <variant>

#include "pomodel/errors.hpp"

namespace pomodel {

struct Exponential {
  double rate;
  friend bool operator==(const Exponential&, const Exponential&) = default;
};

struct Weibull {
  double shape;
  double scale;
  friend bool operator==(const Weibull&, const Weibull&) = default;
};

/// Every lifetime function of a baseline at one time point. Survival and cdf
/// are computed separately so that neither loses precision near 0 or 1.
struct BaselinePoint {
  double t;
  double survival;
  double cdf;
  double log_survival;
  double density;
  double hazard;
  double reversed_hazard;
};

class Baseline {
 public:
  using Family = std::variant<Exponential, Weibull>;

  static Baseline exponential(double rate) { return Baseline(Exponential{rate}); }
  static Baseline weibull(double shape, double scale) {
    return Baseline(Weibull{shape, scale});
  }

  explicit Baseline(Family family) : family_(family) {
    std::visit([](const auto& f) { validate(f); }, family_);
  }

  const Family& family() const noexcept { return family_; }

  std::string name() const {
    return std::visit(
        [](const auto& f) -> std::string {
          if constexpr (std::is_same_v<std::decay_t<decltype(f)>, Exponential>) {
            return "exponential";
          } else {
            return "weibull";
          }
        },
        family_);
  }

  BaselinePoint evaluate(double t) const {
    if (!(t >= 0.0)) throw DomainError("baseline: time must be >= 0");
    // z is the cumulative hazard; h its derivative.
    double z = 0.0;
    double h = 0.0;
    if (const auto* e = std::get_if<Exponential>(&family_)) {
      z = e->rate * t;
      h = e->rate;
    } else {
      const auto& w = std::get<Weibull>(family_);
      const double u = t / w.scale;
      z = std::pow(u, w.shape);
      if (t == 0.0) {
        h = w.shape < 1.0 ? std::numeric_limits<double>::infinity()
                          : (w.shape == 1.0 ? 1.0 / w.scale : 0.0);
      } else {
        h = w.shape / w.scale * std::pow(u, w.shape - 1.0);
      }
    }
    BaselinePoint p{};
    p.t = t;
    p.log_survival = -z;
    p.survival = std::exp(-z);
    p.cdf = -std::expm1(-z);
    p.hazard = h;
    p.density = h * p.survival;
    // f/F = h * S / F = h / (e^z - 1)
    p.reversed_hazard = t > 0.0 ? h / std::expm1(z) : std::numeric_limits<double>::infinity();
    return p;
  }

  double survival(double t) const { return evaluate(t).survival; }
  double cdf(double t) const { return evaluate(t).cdf; }
  double density(double t) const { return evaluate(t).density; }
  double hazard(double t) const { return evaluate(t).hazard; }

  double reversed_hazard(double t) const {
    if (!(t > 0.0)) throw DomainError("baseline reversed hazard: time must be > 0");
    return evaluate(t).reversed_hazard;
  }

  /// Odds of survival, S(t) / F(t).
  double odds(double t) const {
    if (!(t > 0.0)) throw DomainError("baseline odds: time must be > 0");
    const auto p = evaluate(t);
    return p.survival / p.cdf;
  }

  friend bool operator==(const Baseline&, const Baseline&) = default;

 private:
  static void validate(const Exponential& e) {
    if (!(e.rate > 0.0) || !std::isfinite(e.rate)) {
      throw DomainError("exponential baseline: rate must be > 0");
    }
  }
  static void validate(const Weibull& w) {
    if (!(w.shape > 0.0) || !(w.scale > 0.0) || !std::isfinite(w.shape) ||
        !std::isfinite(w.scale)) {
      throw DomainError("weibull baseline: shape and scale must be > 0");
    }
  }

  Family family_;
};

}  // namespace pomodel
