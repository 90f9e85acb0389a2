#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "restopo/errors.hpp"
#include "restopo/grid.hpp"
#include "restopo/kriging.hpp"
#include "restopo/rng.hpp"
#include "restopo/variogram.hpp"

namespace restopo {

/// Standard normal CDF.
inline double gaussian_cdf(double z) {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

enum class MarginalTransform { gaussian_cdf, none };

inline std::string to_string(MarginalTransform t) {
  return t == MarginalTransform::gaussian_cdf ? "gaussian_cdf" : "none";
}

inline MarginalTransform marginal_transform_from_string(const std::string& s) {
  if (s == "gaussian_cdf" || s == "cdf") return MarginalTransform::gaussian_cdf;
  if (s == "none") return MarginalTransform::none;
  throw parse_error("unknown marginal transform '" + s + "'");
}

/// Hard datum honored exactly by the simulation, given in the Gaussian
/// (z-score) domain.
struct ConditioningPoint {
  int ix = 0, iy = 0, iz = 0;
  double value = 0.0;
};

struct SgsConfig {
  Variogram variogram{VariogramModel::exponential, 1.0, 1.0};
  KrigingMode mode = KrigingMode::ordinary;
  double mean = 0.0;          // stationary mean of the Gaussian field
  int max_points = 16;        // nearest known cells used per estimate
  double search_radius = 0.0; // meters; 0 means 2 * variogram.range
  uint64_t seed = 1;
  MarginalTransform transform = MarginalTransform::gaussian_cdf;
  std::vector<ConditioningPoint> conditioning;

  double effective_radius() const {
    return search_radius > 0.0 ? search_radius : 2.0 * variogram.range;
  }

  void validate(const GridGeometry& g) const {
    variogram.validate();
    if (max_points < 1) throw config_error("max_points must be >= 1");
    if (search_radius < 0.0) throw config_error("search_radius must be >= 0");
    for (const auto& c : conditioning)
      if (!g.in_grid(c.ix, c.iy, c.iz))
        throw config_error("conditioning point (" + std::to_string(c.ix) + "," +
                           std::to_string(c.iy) + "," + std::to_string(c.iz) +
                           ") is outside the " + g.shape_string() + " grid");
  }
};

namespace detail {

struct Offset {
  int dx, dy, dz;
  double dist;
};

/// All nonzero cell offsets within `radius` (physical), nearest first. Ties
/// break on (dz, dy, dx) so the visit order is fully reproducible.
inline std::vector<Offset> search_template(const GridGeometry& g,
                                           double radius) {
  const int mx = std::min(g.nx() - 1, int(std::floor(radius / g.dx())));
  const int my = std::min(g.ny() - 1, int(std::floor(radius / g.dy())));
  const int mz = std::min(g.nz() - 1, int(std::floor(radius / g.dz())));
  const int64_t span = int64_t(2 * mx + 1) * (2 * my + 1) * (2 * mz + 1);
  if (span > 20'000'000)
    throw config_error("search radius " + std::to_string(radius) +
                       " m spans too many cells; reduce it");
  std::vector<Offset> out;
  out.reserve(size_t(span / 2));
  const double r2 = radius * radius;
  for (int dz = -mz; dz <= mz; ++dz)
    for (int dy = -my; dy <= my; ++dy)
      for (int dx = -mx; dx <= mx; ++dx) {
        if (dx == 0 && dy == 0 && dz == 0) continue;
        const double px = dx * g.dx(), py = dy * g.dy(), pz = dz * g.dz();
        const double d2 = px * px + py * py + pz * pz;
        if (d2 <= r2) out.push_back({dx, dy, dz, std::sqrt(d2)});
      }
  std::sort(out.begin(), out.end(), [](const Offset& a, const Offset& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    if (a.dz != b.dz) return a.dz < b.dz;
    if (a.dy != b.dy) return a.dy < b.dy;
    return a.dx < b.dx;
  });
  return out;
}

}  // namespace detail

/// Sequential Gaussian simulation.
///
/// Visits the unconditioned cells in a seeded random order; at each cell,
/// kriges from up to max_points nearest already-known cells (data plus
/// previously simulated) inside the search radius, then draws
///   Z = Z* + sqrt(variance) * N(0, 1).
/// Candidates correlated above 0.99 with an already-selected neighbor are
/// passed over; they carry almost no extra information and would otherwise
/// crowd out informative directions on strongly anisotropic grids.
/// One normal deviate is consumed per simulated cell even when the variance
/// is zero, so the realization for a seed does not depend on how often that
/// happens. With the default unit-sill model and gaussian_cdf transform the
/// output is an alpha field with marginal close to uniform on (0, 1); simple
/// kriging reproduces it exactly, ordinary kriging widens the tails a little
/// because its estimation variance can exceed the sill.
inline ScalarField simulate_sgs(const GridGeometry& g, const SgsConfig& cfg) {
  cfg.validate(g);
  const int64_t n = g.cell_count();
  std::vector<double> z(size_t(n), 0.0);
  std::vector<uint8_t> known(size_t(n), 0);

  for (const auto& c : cfg.conditioning) {
    const int64_t cell = g.linear(c.ix, c.iy, c.iz);
    if (known[size_t(cell)] && z[size_t(cell)] != c.value)
      throw config_error("conflicting conditioning values at cell (" +
                         std::to_string(c.ix) + "," + std::to_string(c.iy) +
                         "," + std::to_string(c.iz) + ")");
    z[size_t(cell)] = c.value;
    known[size_t(cell)] = 1;
  }

  std::vector<int64_t> path;
  path.reserve(size_t(n));
  for (int64_t i = 0; i < n; ++i)
    if (!known[size_t(i)]) path.push_back(i);

  Rng rng(cfg.seed);
  shuffle(path, rng);

  const auto offsets = detail::search_template(g, cfg.effective_radius());
  const double sill = cfg.variogram.covariance(0.0);

  std::vector<Vec3> pts;
  std::vector<double> vals;
  pts.reserve(size_t(cfg.max_points));
  vals.reserve(size_t(cfg.max_points));

  // A neighbor whose correlation with one already selected exceeds this adds
  // nearly no information but degrades the conditioning of the kriging
  // system. Skipping such candidates matters when one axis is spaced much
  // finer than the range (flat reservoir cells): pure nearest-first would
  // fill every slot from the same vertical column.
  constexpr double kRedundantCorrelation = 0.99;
  const double redundant_cov = kRedundantCorrelation * sill;

  for (int64_t cell : path) {
    const auto [ix, iy, iz] = g.unlinear(cell);
    pts.clear();
    vals.clear();
    for (const auto& o : offsets) {
      const int jx = ix + o.dx, jy = iy + o.dy, jz = iz + o.dz;
      if (!g.in_grid(jx, jy, jz)) continue;
      const int64_t j = g.linear(jx, jy, jz);
      if (!known[size_t(j)]) continue;
      const Vec3 c = g.center(jx, jy, jz);
      bool redundant = false;
      for (const Vec3& p : pts)
        if (cfg.variogram.covariance(distance(p, c)) > redundant_cov) {
          redundant = true;
          break;
        }
      if (redundant) continue;
      pts.push_back(c);
      vals.push_back(z[size_t(j)]);
      if (int(pts.size()) == cfg.max_points) break;
    }

    double est, var;
    if (pts.empty()) {
      est = cfg.mean;
      var = sill;
    } else {
      // When the spacing is tiny compared to the range (flat reservoir cells,
      // kilometric ranges) the nearest neighbors are so strongly correlated
      // that the covariance system turns numerically singular. The surplus
      // points carry no independent information, so keep halving the
      // neighborhood, nearest first, until the solve goes through; a single
      // point always does.
      int use = int(pts.size());
      for (;;) {
        try {
          const auto kr = krige(cfg.variogram,
                                std::span(pts.data(), size_t(use)),
                                std::span(vals.data(), size_t(use)),
                                g.center(ix, iy, iz), cfg.mode, cfg.mean);
          est = kr.estimate;
          var = kr.variance;
          break;
        } catch (const solver_error&) {
          if (use == 1) throw;
          use = (use + 1) / 2;
        }
      }
    }
    const double xi = rng.next_normal();
    z[size_t(cell)] = est + std::sqrt(var) * xi;
    known[size_t(cell)] = 1;
  }

  if (cfg.transform == MarginalTransform::none)
    return ScalarField(g, std::move(z), ValueKind::z_value);
  for (double& v : z) v = gaussian_cdf(v);
  return ScalarField(g, std::move(z), ValueKind::alpha);
}

}  // namespace restopo
