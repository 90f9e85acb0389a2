#pragma once

#include <cmath>
#include <string>

#include "restopo/errors.hpp"

namespace restopo {

enum class VariogramModel { exponential, gaussian };

inline std::string to_string(VariogramModel m) {
  return m == VariogramModel::exponential ? "exponential" : "gaussian";
}

inline VariogramModel variogram_model_from_string(const std::string& s) {
  if (s == "exponential" || s == "exp") return VariogramModel::exponential;
  if (s == "gaussian" || s == "gauss") return VariogramModel::gaussian;
  throw parse_error("unknown variogram model '" + s + "'");
}

/// Stationary isotropic two-point model in physical (meter) distance.
///
/// Covariance:  exponential  C(h) = sill * exp(-h / range)
///              gaussian     C(h) = sill * exp(-(h / range)^2)
/// Semivariogram: gamma(h) = C(0) - C(h) = sill * (1 - exp(...)).
struct Variogram {
  VariogramModel model = VariogramModel::exponential;
  double sill = 1.0;
  double range = 1.0;

  void validate() const {
    if (!(sill > 0.0)) throw config_error("variogram sill must be > 0");
    if (!(range > 0.0)) throw config_error("variogram range must be > 0");
  }

  double covariance(double h) const {
    if (h < 0.0) throw config_error("lag distance must be >= 0");
    if (model == VariogramModel::exponential) return sill * std::exp(-h / range);
    const double r = h / range;
    return sill * std::exp(-r * r);
  }

  double gamma(double h) const { return sill - covariance(h); }
};

}  // namespace restopo
