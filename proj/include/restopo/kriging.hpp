#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "restopo/errors.hpp"
#include "restopo/grid.hpp"
#include "restopo/variogram.hpp"

namespace restopo {

enum class KrigingMode { ordinary, simple };

inline std::string to_string(KrigingMode m) {
  return m == KrigingMode::ordinary ? "ordinary" : "simple";
}

inline KrigingMode kriging_mode_from_string(const std::string& s) {
  if (s == "ordinary" || s == "ok") return KrigingMode::ordinary;
  if (s == "simple" || s == "sk") return KrigingMode::simple;
  throw parse_error("unknown kriging mode '" + s + "'");
}

struct KrigingResult {
  double estimate = 0.0;
  double variance = 0.0;          // estimation variance, >= 0
  std::vector<double> weights;    // one per data point
  double lagrange = 0.0;          // ordinary mode only
};

namespace detail {

/// In-place Gaussian elimination with partial pivoting on an n x (n+1)
/// augmented row-major matrix. Fills x with the solution.
inline void solve_dense(std::vector<double>& a, int n, std::vector<double>& x) {
  const int cols = n + 1;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    double best = std::abs(a[size_t(col) * cols + col]);
    for (int r = col + 1; r < n; ++r) {
      const double v = std::abs(a[size_t(r) * cols + col]);
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (!(best > 1e-12))
      throw solver_error("kriging system is singular (pivot " +
                         std::to_string(best) + " at column " +
                         std::to_string(col) + ")");
    if (pivot != col)
      for (int c = col; c < cols; ++c)
        std::swap(a[size_t(pivot) * cols + c], a[size_t(col) * cols + c]);
    const double inv = 1.0 / a[size_t(col) * cols + col];
    for (int r = col + 1; r < n; ++r) {
      const double f = a[size_t(r) * cols + col] * inv;
      if (f == 0.0) continue;
      for (int c = col; c < cols; ++c)
        a[size_t(r) * cols + c] -= f * a[size_t(col) * cols + c];
    }
  }
  x.assign(size_t(n), 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double s = a[size_t(r) * cols + n];
    for (int c = r + 1; c < n; ++c) s -= a[size_t(r) * cols + c] * x[size_t(c)];
    x[size_t(r)] = s / a[size_t(r) * cols + r];
  }
}

}  // namespace detail

/// Kriging estimate at `target` from data (`points`, `values`).
///
/// Ordinary mode solves the covariance system with the unit-sum constraint
/// via a Lagrange multiplier; simple mode uses the known stationary `mean`.
/// The reported variance is the quadratic form
///   Var(Z* - Z0) = C(0) - 2 w'k + w'Kw,
/// which is nonnegative for a positive-semidefinite model up to rounding;
/// tiny negative values are clamped, anything below -1e-9 means the solve
/// went bad and raises solver_error.
inline KrigingResult krige(const Variogram& vario, std::span<const Vec3> points,
                           std::span<const double> values, const Vec3& target,
                           KrigingMode mode, double mean = 0.0) {
  vario.validate();
  if (points.size() != values.size())
    throw config_error("kriging: " + std::to_string(points.size()) +
                       " points but " + std::to_string(values.size()) +
                       " values");
  const int n = int(points.size());
  if (n == 0) {
    if (mode == KrigingMode::ordinary)
      throw config_error("ordinary kriging needs at least one data point");
    return {mean, vario.covariance(0.0), {}, 0.0};
  }

  std::vector<double> K(size_t(n) * n, 0.0);
  std::vector<double> k(size_t(n), 0.0);
  for (int i = 0; i < n; ++i) {
    k[size_t(i)] = vario.covariance(distance(points[size_t(i)], target));
    for (int j = 0; j < n; ++j)
      K[size_t(i) * n + j] =
          vario.covariance(distance(points[size_t(i)], points[size_t(j)]));
  }

  KrigingResult res;
  if (mode == KrigingMode::ordinary) {
    const int m = n + 1;
    std::vector<double> aug(size_t(m) * (m + 1), 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j)
        aug[size_t(i) * (m + 1) + j] = K[size_t(i) * n + j];
      aug[size_t(i) * (m + 1) + n] = 1.0;
      aug[size_t(i) * (m + 1) + m] = k[size_t(i)];
    }
    for (int j = 0; j < n; ++j) aug[size_t(n) * (m + 1) + j] = 1.0;
    aug[size_t(n) * (m + 1) + m] = 1.0;
    std::vector<double> sol;
    detail::solve_dense(aug, m, sol);
    res.weights.assign(sol.begin(), sol.begin() + n);
    res.lagrange = sol[size_t(n)];
  } else {
    std::vector<double> aug(size_t(n) * (n + 1));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j)
        aug[size_t(i) * (n + 1) + j] = K[size_t(i) * n + j];
      aug[size_t(i) * (n + 1) + n] = k[size_t(i)];
    }
    detail::solve_dense(aug, n, res.weights);
  }

  double est = 0.0;
  if (mode == KrigingMode::simple) {
    est = mean;
    for (int i = 0; i < n; ++i)
      est += res.weights[size_t(i)] * (values[size_t(i)] - mean);
  } else {
    for (int i = 0; i < n; ++i) est += res.weights[size_t(i)] * values[size_t(i)];
  }
  res.estimate = est;

  double wk = 0.0, wKw = 0.0;
  for (int i = 0; i < n; ++i) {
    wk += res.weights[size_t(i)] * k[size_t(i)];
    double row = 0.0;
    for (int j = 0; j < n; ++j)
      row += K[size_t(i) * n + j] * res.weights[size_t(j)];
    wKw += res.weights[size_t(i)] * row;
  }
  double var = vario.covariance(0.0) - 2.0 * wk + wKw;
  if (var < 0.0) {
    if (var < -1e-9)
      throw solver_error("kriging variance " + std::to_string(var) +
                         " is negative beyond rounding tolerance");
    var = 0.0;
  }
  res.variance = var;
  return res;
}

}  // namespace restopo
