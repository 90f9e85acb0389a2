#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "restopo/errors.hpp"

namespace restopo {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline double distance(const Vec3& a, const Vec3& b) {
  const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

/// Axis-aligned box split into nx*ny*nz elementary cells.
///
/// Cells are addressed with 0-based (ix, iy, iz); file formats use 1-based
/// indices. Linear storage order is x-fastest, then y, then z (GSLIB
/// convention). Physical positions are in meters.
class GridGeometry {
 public:
  GridGeometry(int nx, int ny, int nz, double dx, double dy, double dz,
               double x0 = 0.0, double y0 = 0.0, double z0 = 0.0)
      : nx_(nx), ny_(ny), nz_(nz), dx_(dx), dy_(dy), dz_(dz),
        origin_{x0, y0, z0} {
    if (nx < 1 || ny < 1 || nz < 1)
      throw config_error("grid counts must be >= 1, got " + shape_string());
    if (!(dx > 0.0) || !(dy > 0.0) || !(dz > 0.0))
      throw config_error("grid spacings must be > 0");
  }

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int nz() const { return nz_; }
  double dx() const { return dx_; }
  double dy() const { return dy_; }
  double dz() const { return dz_; }
  const Vec3& origin() const { return origin_; }

  int64_t cell_count() const {
    return int64_t(nx_) * int64_t(ny_) * int64_t(nz_);
  }

  bool in_grid(int ix, int iy, int iz) const {
    return ix >= 0 && ix < nx_ && iy >= 0 && iy < ny_ && iz >= 0 && iz < nz_;
  }

  int64_t linear(int ix, int iy, int iz) const {
    return int64_t(ix) + int64_t(nx_) * (int64_t(iy) + int64_t(ny_) * iz);
  }

  std::array<int, 3> unlinear(int64_t cell) const {
    const int ix = int(cell % nx_);
    const int iy = int((cell / nx_) % ny_);
    const int iz = int(cell / (int64_t(nx_) * ny_));
    return {ix, iy, iz};
  }

  /// Center of cell (ix, iy, iz) in physical coordinates.
  Vec3 center(int ix, int iy, int iz) const {
    return {origin_.x + (ix + 0.5) * dx_,
            origin_.y + (iy + 0.5) * dy_,
            origin_.z + (iz + 0.5) * dz_};
  }

  std::string shape_string() const {
    return std::to_string(nx_) + "x" + std::to_string(ny_) + "x" +
           std::to_string(nz_);
  }

  friend bool operator==(const GridGeometry& a, const GridGeometry& b) {
    return a.nx_ == b.nx_ && a.ny_ == b.ny_ && a.nz_ == b.nz_ &&
           a.dx_ == b.dx_ && a.dy_ == b.dy_ && a.dz_ == b.dz_ &&
           a.origin_.x == b.origin_.x && a.origin_.y == b.origin_.y &&
           a.origin_.z == b.origin_.z;
  }

 private:
  int nx_, ny_, nz_;
  double dx_, dy_, dz_;
  Vec3 origin_;
};

enum class ValueKind { raw_gl, z_value, alpha };

inline std::string to_string(ValueKind k) {
  switch (k) {
    case ValueKind::raw_gl: return "gl";
    case ValueKind::z_value: return "z";
    case ValueKind::alpha: return "alpha";
  }
  return "z";
}

inline ValueKind value_kind_from_string(const std::string& s) {
  if (s == "gl") return ValueKind::raw_gl;
  if (s == "z") return ValueKind::z_value;
  if (s == "alpha") return ValueKind::alpha;
  throw parse_error("unknown value kind '" + s + "'");
}

/// One scalar per grid cell. Immutable after construction.
class ScalarField {
 public:
  ScalarField(GridGeometry geometry, std::vector<double> values, ValueKind kind)
      : geometry_(std::move(geometry)), values_(std::move(values)), kind_(kind) {
    if (int64_t(values_.size()) != geometry_.cell_count())
      throw config_error("field has " + std::to_string(values_.size()) +
                         " values for a " + geometry_.shape_string() + " grid");
  }

  const GridGeometry& geometry() const { return geometry_; }
  ValueKind kind() const { return kind_; }
  std::span<const double> values() const { return values_; }
  double operator[](int64_t cell) const { return values_[size_t(cell)]; }
  double at(int ix, int iy, int iz) const {
    return values_[size_t(geometry_.linear(ix, iy, iz))];
  }

 private:
  GridGeometry geometry_;
  std::vector<double> values_;
  ValueKind kind_;
};

/// A subset of grid cells, e.g. an excursion set {alpha <= alpha0}.
class CellSet {
 public:
  CellSet(GridGeometry geometry, std::vector<uint8_t> membership,
          std::optional<double> threshold = std::nullopt)
      : geometry_(std::move(geometry)), membership_(std::move(membership)),
        threshold_(threshold) {
    if (int64_t(membership_.size()) != geometry_.cell_count())
      throw config_error("membership size does not match grid " +
                         geometry_.shape_string());
    filled_ = 0;
    for (uint8_t m : membership_) filled_ += (m != 0);
  }

  static CellSet full(const GridGeometry& g) {
    return CellSet(g, std::vector<uint8_t>(size_t(g.cell_count()), 1));
  }
  static CellSet empty(const GridGeometry& g) {
    return CellSet(g, std::vector<uint8_t>(size_t(g.cell_count()), 0));
  }

  const GridGeometry& geometry() const { return geometry_; }
  std::span<const uint8_t> membership() const { return membership_; }
  std::optional<double> threshold() const { return threshold_; }

  bool contains(int64_t cell) const { return membership_[size_t(cell)] != 0; }
  bool contains(int ix, int iy, int iz) const {
    return contains(geometry_.linear(ix, iy, iz));
  }
  /// Number of member cells (the volume in cell units).
  int64_t size() const { return filled_; }

 private:
  GridGeometry geometry_;
  std::vector<uint8_t> membership_;
  std::optional<double> threshold_;
  int64_t filled_ = 0;
};

enum class ClampPolicy {
  clamp_unit,  // map out-of-range values onto [0, 1]
  keep         // keep raw values (diagnostics only)
};

struct NormalizeStats {
  int64_t below_zero = 0;    // alpha < 0 before clamping
  int64_t at_or_above_one = 0;  // alpha >= 1 before clamping
};

struct NormalizeResult {
  ScalarField field;
  NormalizeStats stats;
};

/// Normalizes gamma-log readings to the excursion parameter
/// alpha = (gl - gl_min) / (gl_max - gl_min).
///
/// The calibration bounds come from reference samples, not necessarily from
/// the field extremes, so alpha can fall outside [0, 1); such cells are
/// counted and, under the default policy, clamped so that the level set at
/// alpha0 = 1 is the whole grid.
inline NormalizeResult normalize_gl(const ScalarField& gl, double gl_min,
                                    double gl_max,
                                    ClampPolicy policy = ClampPolicy::clamp_unit) {
  if (!(gl_max > gl_min))
    throw config_error("invalid calibration: gl_max (" + std::to_string(gl_max) +
                       ") must exceed gl_min (" + std::to_string(gl_min) + ")");
  const double scale = 1.0 / (gl_max - gl_min);
  NormalizeStats stats;
  std::vector<double> out(gl.values().begin(), gl.values().end());
  for (double& v : out) {
    double a = (v - gl_min) * scale;
    if (a < 0.0) {
      ++stats.below_zero;
      if (policy == ClampPolicy::clamp_unit) a = 0.0;
    } else if (a >= 1.0) {
      ++stats.at_or_above_one;
      if (policy == ClampPolicy::clamp_unit) a = std::min(a, 1.0);
    }
    v = a;
  }
  return {ScalarField(gl.geometry(), std::move(out), ValueKind::alpha), stats};
}

/// Level set {cell : alpha(cell) <= alpha0}.
inline CellSet excursion_set(const ScalarField& field, double alpha0) {
  if (field.kind() != ValueKind::alpha)
    throw config_error("excursion sets require a normalized (alpha) field");
  std::vector<uint8_t> member(size_t(field.geometry().cell_count()));
  auto vals = field.values();
  for (size_t i = 0; i < member.size(); ++i) member[i] = vals[i] <= alpha0;
  return CellSet(field.geometry(), std::move(member), alpha0);
}

}  // namespace restopo
