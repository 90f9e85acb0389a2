#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "restopo/errors.hpp"
#include "restopo/grid.hpp"

namespace restopo {

/// Cell-class counts of the unstacked cubic complex of a cell set.
struct CellCounts {
  int64_t c0 = 0;  // vertex classes
  int64_t c1 = 0;  // edge classes
  int64_t c2 = 0;  // face classes
  int64_t c3 = 0;  // cubes
  int64_t euler() const { return c0 - c1 + c2 - c3; }
  friend bool operator==(const CellCounts&, const CellCounts&) = default;
};

namespace detail {

/// Around one lattice vertex sit up to 8 cubes (octants, bit = i + 2j + 4k).
/// Copies of that vertex merge exactly when their cubes are glued through a
/// face containing it, i.e. when the octants differ in one coordinate bit.
/// The number of distinct vertex classes at the position is therefore the
/// component count of the filled-octant subgraph of the 3-cube graph.
struct OctantLut {
  std::array<uint8_t, 256> ncomp{};
  std::array<std::array<int8_t, 8>, 256> label{};  // -1 where unfilled
};

inline const OctantLut& octant_lut() {
  static const OctantLut lut = [] {
    OctantLut t;
    for (int mask = 0; mask < 256; ++mask) {
      auto& lab = t.label[size_t(mask)];
      lab.fill(-1);
      int8_t next = 0;
      for (int s = 0; s < 8; ++s) {
        if (!(mask & (1 << s)) || lab[size_t(s)] != -1) continue;
        int stack[8], top = 0;
        stack[top++] = s;
        lab[size_t(s)] = next;
        while (top) {
          const int u = stack[--top];
          for (int axis = 0; axis < 3; ++axis) {
            const int v = u ^ (1 << axis);
            if ((mask & (1 << v)) && lab[size_t(v)] == -1) {
              lab[size_t(v)] = next;
              stack[top++] = v;
            }
          }
        }
        ++next;
      }
      t.ncomp[size_t(mask)] = uint8_t(next);
    }
    return t;
  }();
  return lut;
}

/// Around one lattice edge sit up to 4 cubes forming a cycle; consecutive
/// slots are face-adjacent through a face containing the edge, diagonal slots
/// are not. Edge classes at the position = components of the filled slots in
/// that 4-cycle.
struct RingLut {
  std::array<uint8_t, 16> ncomp{};
  std::array<std::array<int8_t, 4>, 16> label{};
};

inline const RingLut& ring_lut() {
  static const RingLut lut = [] {
    RingLut t;
    for (int mask = 0; mask < 16; ++mask) {
      auto& lab = t.label[size_t(mask)];
      lab.fill(-1);
      int8_t next = 0;
      for (int s = 0; s < 4; ++s) {
        if (!(mask & (1 << s)) || lab[size_t(s)] != -1) continue;
        int stack[4], top = 0;
        stack[top++] = s;
        lab[size_t(s)] = next;
        while (top) {
          const int u = stack[--top];
          for (const int v : {(u + 1) & 3, (u + 3) & 3}) {
            if ((mask & (1 << v)) && lab[size_t(v)] == -1) {
              lab[size_t(v)] = next;
              stack[top++] = v;
            }
          }
        }
        ++next;
      }
      t.ncomp[size_t(mask)] = uint8_t(next);
    }
    return t;
  }();
  return lut;
}

/// Ring slot offsets, cyclic order. For an x-edge the slots are the (dy, dz)
/// cube offsets relative to the edge's lattice position; analogous for y
/// (dx, dz) and z (dx, dy).
inline constexpr int kRingOff[4][2] = {{-1, -1}, {0, -1}, {0, 0}, {-1, 0}};

/// Local cell numbering within one cube:
///   vertices v = i + 2j + 4k for corner (i, j, k) in {0,1}^3
///   edges    x-directed 0..3 = 0 + (j + 2k), y 4..7 = 4 + (i + 2k),
///            z 8..11 = 8 + (i + 2j)
///   faces    0 -x, 1 +x, 2 -y, 3 +y, 4 -z, 5 +z
inline constexpr int kFaceEdges[6][4] = {
    {4, 6, 8, 10}, {5, 7, 9, 11}, {0, 2, 8, 9},
    {1, 3, 10, 11}, {0, 1, 4, 5}, {2, 3, 6, 7}};

inline constexpr int kEdgeCorners[12][2] = {
    {0, 1}, {2, 3}, {4, 5}, {6, 7},   // x edges
    {0, 2}, {1, 3}, {4, 6}, {5, 7},   // y edges
    {0, 4}, {1, 5}, {2, 6}, {3, 7}};  // z edges

/// Local edge index of the edge lying at ring slot `s` of an axis-`a` lattice
/// edge, inside the cube occupying that slot.
inline constexpr int kRingLocalEdge[3][4] = {
    {3, 2, 0, 1},    // x edges: e = 0 + (j + 2k), slot offsets give (j,k)
    {7, 6, 4, 5},    // y edges: e = 4 + (i + 2k)
    {11, 10, 8, 9}}; // z edges: e = 8 + (i + 2j)

}  // namespace detail

/// Class counts of the unstacked complex, computed positionally: every class
/// lives at one lattice position, and the number of classes per position
/// follows from the local filled pattern (octant graph for vertices, 4-ring
/// for edges, at most two incident cubes for faces). This avoids building
/// the complex and runs in O(cells).
inline CellCounts cell_counts(const CellSet& set) {
  const auto& g = set.geometry();
  const int nx = g.nx(), ny = g.ny(), nz = g.nz();
  const auto filled = [&](int ix, int iy, int iz) -> bool {
    return g.in_grid(ix, iy, iz) && set.contains(ix, iy, iz);
  };

  CellCounts cc;
  cc.c3 = set.size();
  if (cc.c3 == 0) return cc;

  int64_t pairs = 0;
  for (int iz = 0; iz < nz; ++iz)
    for (int iy = 0; iy < ny; ++iy)
      for (int ix = 0; ix < nx; ++ix) {
        if (!set.contains(ix, iy, iz)) continue;
        pairs += filled(ix + 1, iy, iz);
        pairs += filled(ix, iy + 1, iz);
        pairs += filled(ix, iy, iz + 1);
      }
  cc.c2 = 6 * cc.c3 - pairs;

  const auto& ring = detail::ring_lut();
  for (int axis = 0; axis < 3; ++axis) {
    const int ex_max = nx + (axis == 0 ? -1 : 0);
    const int ey_max = ny + (axis == 1 ? -1 : 0);
    const int ez_max = nz + (axis == 2 ? -1 : 0);
    for (int ez = 0; ez <= ez_max; ++ez)
      for (int ey = 0; ey <= ey_max; ++ey)
        for (int ex = 0; ex <= ex_max; ++ex) {
          int mask = 0;
          for (int s = 0; s < 4; ++s) {
            const int u = detail::kRingOff[s][0], v = detail::kRingOff[s][1];
            int ix = ex, iy = ey, iz = ez;
            if (axis == 0) { iy += u; iz += v; }
            else if (axis == 1) { ix += u; iz += v; }
            else { ix += u; iy += v; }
            if (filled(ix, iy, iz)) mask |= 1 << s;
          }
          cc.c1 += ring.ncomp[size_t(mask)];
        }
  }

  const auto& oct = detail::octant_lut();
  for (int vz = 0; vz <= nz; ++vz)
    for (int vy = 0; vy <= ny; ++vy)
      for (int vx = 0; vx <= nx; ++vx) {
        int mask = 0;
        for (int s = 0; s < 8; ++s)
          if (filled(vx - 1 + (s & 1), vy - 1 + ((s >> 1) & 1),
                     vz - 1 + ((s >> 2) & 1)))
            mask |= 1 << s;
        cc.c0 += oct.ncomp[size_t(mask)];
      }
  return cc;
}

inline int64_t euler_characteristic(const CellCounts& cc) { return cc.euler(); }

inline int64_t euler_characteristic(const CellSet& set) {
  return cell_counts(set).euler();
}

/// The unstacked cubic complex with identified cell classes made explicit.
///
/// Each filled cube starts with its own 8 vertices, 12 edges, 6 faces and
/// 1 volume; for every face-adjacent pair the shared face, its 4 edges and
/// 4 vertices are identified, and identifications close transitively. The
/// transitive closure is resolved per lattice position (see cell_counts), so
/// no union-find pass is needed. Class ids are dense per dimension.
class CubicComplex {
 public:
  struct Rep {
    int32_t cube = -1;  // cube id (index into cube_linear)
    uint8_t local = 0;  // local cell index within that cube
  };

  static constexpr int64_t kDefaultBudget = 2'000'000;

  explicit CubicComplex(const CellSet& set, int64_t budget = kDefaultBudget)
      : geom_(set.geometry()) {
    const CellCounts cc = cell_counts(set);
    const int64_t total = cc.c0 + cc.c1 + cc.c2 + cc.c3;
    if (total > budget)
      throw size_error("complex has " + std::to_string(total) +
                       " cells, over the budget of " + std::to_string(budget));
    counts_ = cc;
    build(set);
  }

  const GridGeometry& geometry() const { return geom_; }
  const CellCounts& counts() const { return counts_; }
  int64_t size(int q) const {
    switch (q) {
      case 0: return counts_.c0;
      case 1: return counts_.c1;
      case 2: return counts_.c2;
      case 3: return counts_.c3;
    }
    return 0;
  }

  /// Filled-cube linear grid indices, ascending; index in this list is the
  /// cube's 3-cell class id.
  const std::vector<int64_t>& cube_cells() const { return cube_linear_; }
  int32_t cube_id(int64_t grid_cell) const {
    return cube_id_of_cell_[size_t(grid_cell)];
  }

  /// Class id of a local cell of a filled cube. q = 0..3; local indexing per
  /// the tables in detail:: (corner, edge, face); local must be 0 for q = 3.
  int32_t class_of(int q, int32_t cube, int local) const {
    switch (q) {
      case 0: return cube_vertex_[size_t(cube)][size_t(local)];
      case 1: return cube_edge_[size_t(cube)][size_t(local)];
      case 2: return cube_face_[size_t(cube)][size_t(local)];
      default: return cube;
    }
  }

  /// One (cube, local) representative per class.
  Rep rep(int q, int32_t cls) const {
    switch (q) {
      case 0: return vertex_rep_[size_t(cls)];
      case 1: return edge_rep_[size_t(cls)];
      case 2: return face_rep_[size_t(cls)];
      default: return Rep{cls, 0};
    }
  }

  /// Boundary of a q-cell as (q-1)-class ids; over Z2 every listed id has
  /// coefficient 1 (the ids within one boundary are pairwise distinct since
  /// they sit at distinct lattice positions).
  std::vector<int32_t> boundary(int q, int32_t cls) const {
    std::vector<int32_t> out;
    if (q == 1) {
      const Rep r = edge_rep_[size_t(cls)];
      for (const int c : detail::kEdgeCorners[r.local])
        out.push_back(cube_vertex_[size_t(r.cube)][size_t(c)]);
    } else if (q == 2) {
      const Rep r = face_rep_[size_t(cls)];
      for (const int e : detail::kFaceEdges[r.local])
        out.push_back(cube_edge_[size_t(r.cube)][size_t(e)]);
    } else if (q == 3) {
      for (const int32_t f : cube_face_[size_t(cls)]) out.push_back(f);
    }
    return out;
  }

 private:
  void build(const CellSet& set) {
    const auto& g = geom_;
    const int nx = g.nx(), ny = g.ny(), nz = g.nz();
    const auto filled = [&](int ix, int iy, int iz) -> bool {
      return g.in_grid(ix, iy, iz) && set.contains(ix, iy, iz);
    };

    cube_id_of_cell_.assign(size_t(g.cell_count()), -1);
    cube_linear_.reserve(size_t(counts_.c3));
    for (int64_t i = 0; i < g.cell_count(); ++i)
      if (set.contains(i)) {
        cube_id_of_cell_[size_t(i)] = int32_t(cube_linear_.size());
        cube_linear_.push_back(i);
      }
    const size_t n3 = cube_linear_.size();
    cube_vertex_.assign(n3, {});
    cube_edge_.assign(n3, {});
    cube_face_.assign(n3, {});

    const auto cube_at = [&](int ix, int iy, int iz) -> int32_t {
      return cube_id_of_cell_[size_t(g.linear(ix, iy, iz))];
    };

    // Vertex classes per lattice vertex position.
    const auto& oct = detail::octant_lut();
    vertex_rep_.reserve(size_t(counts_.c0));
    for (int vz = 0; vz <= nz; ++vz)
      for (int vy = 0; vy <= ny; ++vy)
        for (int vx = 0; vx <= nx; ++vx) {
          int mask = 0;
          for (int s = 0; s < 8; ++s)
            if (filled(vx - 1 + (s & 1), vy - 1 + ((s >> 1) & 1),
                       vz - 1 + ((s >> 2) & 1)))
              mask |= 1 << s;
          if (!mask) continue;
          const auto& lab = oct.label[size_t(mask)];
          const int32_t base = int32_t(vertex_rep_.size());
          const int ncomp = oct.ncomp[size_t(mask)];
          for (int c = 0; c < ncomp; ++c) vertex_rep_.push_back(Rep{});
          for (int s = 0; s < 8; ++s) {
            if (!(mask & (1 << s))) continue;
            const int32_t cls = base + lab[size_t(s)];
            const int32_t cube = cube_at(vx - 1 + (s & 1), vy - 1 + ((s >> 1) & 1),
                                         vz - 1 + ((s >> 2) & 1));
            const int corner = 7 - s;  // cube corner touching this vertex
            cube_vertex_[size_t(cube)][size_t(corner)] = cls;
            if (vertex_rep_[size_t(cls)].cube < 0)
              vertex_rep_[size_t(cls)] = Rep{cube, uint8_t(corner)};
          }
        }

    // Edge classes per lattice edge position, three orientations.
    const auto& ring = detail::ring_lut();
    edge_rep_.reserve(size_t(counts_.c1));
    for (int axis = 0; axis < 3; ++axis) {
      const int ex_max = nx + (axis == 0 ? -1 : 0);
      const int ey_max = ny + (axis == 1 ? -1 : 0);
      const int ez_max = nz + (axis == 2 ? -1 : 0);
      for (int ez = 0; ez <= ez_max; ++ez)
        for (int ey = 0; ey <= ey_max; ++ey)
          for (int ex = 0; ex <= ex_max; ++ex) {
            int mask = 0;
            std::array<int32_t, 4> slot_cube{-1, -1, -1, -1};
            for (int s = 0; s < 4; ++s) {
              const int u = detail::kRingOff[s][0], v = detail::kRingOff[s][1];
              int ix = ex, iy = ey, iz = ez;
              if (axis == 0) { iy += u; iz += v; }
              else if (axis == 1) { ix += u; iz += v; }
              else { ix += u; iy += v; }
              if (filled(ix, iy, iz)) {
                mask |= 1 << s;
                slot_cube[size_t(s)] = cube_at(ix, iy, iz);
              }
            }
            if (!mask) continue;
            const auto& lab = ring.label[size_t(mask)];
            const int32_t base = int32_t(edge_rep_.size());
            for (int c = 0; c < ring.ncomp[size_t(mask)]; ++c)
              edge_rep_.push_back(Rep{});
            for (int s = 0; s < 4; ++s) {
              if (!(mask & (1 << s))) continue;
              const int32_t cls = base + lab[size_t(s)];
              const int local = detail::kRingLocalEdge[axis][s];
              cube_edge_[size_t(slot_cube[size_t(s)])][size_t(local)] = cls;
              if (edge_rep_[size_t(cls)].cube < 0)
                edge_rep_[size_t(cls)] = Rep{slot_cube[size_t(s)], uint8_t(local)};
            }
          }
    }

    // Face classes: one class per lattice face with >= 1 incident filled
    // cube (two incident cubes are glued through this very face).
    face_rep_.reserve(size_t(counts_.c2));
    for (int axis = 0; axis < 3; ++axis) {
      const int fx_max = nx + (axis == 0 ? 0 : -1);
      const int fy_max = ny + (axis == 1 ? 0 : -1);
      const int fz_max = nz + (axis == 2 ? 0 : -1);
      for (int fz = 0; fz <= fz_max; ++fz)
        for (int fy = 0; fy <= fy_max; ++fy)
          for (int fx = 0; fx <= fx_max; ++fx) {
            int mx = fx, my = fy, mz = fz;  // cube on the minus side
            if (axis == 0) mx -= 1;
            else if (axis == 1) my -= 1;
            else mz -= 1;
            const bool lo = filled(mx, my, mz);
            const bool hi = filled(fx, fy, fz);
            if (!lo && !hi) continue;
            const int32_t cls = int32_t(face_rep_.size());
            const int plus_local = axis == 0 ? 1 : axis == 1 ? 3 : 5;
            const int minus_local = plus_local - 1;
            if (lo) {
              const int32_t cube = cube_at(mx, my, mz);
              cube_face_[size_t(cube)][size_t(plus_local)] = cls;
              face_rep_.push_back(Rep{cube, uint8_t(plus_local)});
            }
            if (hi) {
              const int32_t cube = cube_at(fx, fy, fz);
              cube_face_[size_t(cube)][size_t(minus_local)] = cls;
              if (!lo) face_rep_.push_back(Rep{cube, uint8_t(minus_local)});
            }
          }
    }
  }

  GridGeometry geom_;
  CellCounts counts_;
  std::vector<int64_t> cube_linear_;
  std::vector<int32_t> cube_id_of_cell_;
  std::vector<std::array<int32_t, 8>> cube_vertex_;
  std::vector<std::array<int32_t, 12>> cube_edge_;
  std::vector<std::array<int32_t, 6>> cube_face_;
  std::vector<Rep> vertex_rep_;
  std::vector<Rep> edge_rep_;
  std::vector<Rep> face_rep_;
};

inline CubicComplex build_complex(const CellSet& set,
                                  int64_t budget = CubicComplex::kDefaultBudget) {
  return CubicComplex(set, budget);
}

inline int64_t euler_characteristic(const CubicComplex& cx) {
  return cx.counts().euler();
}

}  // namespace restopo
