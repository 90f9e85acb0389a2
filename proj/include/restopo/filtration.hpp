#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "restopo/errors.hpp"
#include "restopo/grid.hpp"

namespace restopo {

/// An alpha field together with the increasing threshold grid ε_1 < … < ε_M;
/// the induced excursion sets are nested, D_{ε_1} ⊆ … ⊆ D_{ε_M}.
class Filtration {
 public:
  Filtration(ScalarField field, std::vector<double> thresholds)
      : field_(std::move(field)), thresholds_(std::move(thresholds)) {
    if (field_.kind() != ValueKind::alpha)
      throw config_error("filtrations require a normalized (alpha) field");
    if (thresholds_.empty()) throw config_error("empty threshold list");
    for (size_t i = 0; i + 1 < thresholds_.size(); ++i)
      if (!(thresholds_[i] < thresholds_[i + 1]))
        throw config_error("thresholds must be strictly increasing (" +
                           std::to_string(thresholds_[i]) + " then " +
                           std::to_string(thresholds_[i + 1]) + ")");
    for (const double t : thresholds_)
      if (!std::isfinite(t)) throw config_error("non-finite threshold");
  }

  /// Arithmetic grid 0, step, 2·step, …, 1 (the default comparison grid;
  /// step 0.01 gives 101 thresholds).
  static Filtration fixed_step(ScalarField field, double step = 0.01) {
    if (!(step > 0.0) || step > 1.0)
      throw config_error("filtration step must be in (0, 1]");
    std::vector<double> ts;
    for (int i = 0;; ++i) {
      const double t = i * step;
      if (t >= 1.0 - 1e-12) break;
      ts.push_back(t);
    }
    ts.push_back(1.0);
    return Filtration(std::move(field), std::move(ts));
  }

  /// Thresholds at the sorted distinct field values: the finest filtration,
  /// with one step per value actually taken.
  static Filtration distinct_values(ScalarField field) {
    std::vector<double> ts(field.values().begin(), field.values().end());
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    return Filtration(std::move(field), std::move(ts));
  }

  const ScalarField& field() const { return field_; }
  const std::vector<double>& thresholds() const { return thresholds_; }
  size_t steps() const { return thresholds_.size(); }

  CellSet excursion(size_t i) const {
    return excursion_set(field_, thresholds_.at(i));
  }

  /// Step at which a value enters the filtration: the smallest i with
  /// value <= ε_i, or steps() if it never enters.
  size_t admission_step(double value) const {
    return size_t(std::lower_bound(thresholds_.begin(), thresholds_.end(), value) -
                  thresholds_.begin());
  }

 private:
  ScalarField field_;
  std::vector<double> thresholds_;
};

}  // namespace restopo
