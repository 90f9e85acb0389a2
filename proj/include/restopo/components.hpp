#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "restopo/errors.hpp"
#include "restopo/grid.hpp"

namespace restopo {

/// Digital connectivity on the cubic grid: face (6 neighbors), face+edge
/// (18), or face+edge+vertex (26).
enum class Connectivity { face6, edge18, vertex26 };

inline std::string to_string(Connectivity c) {
  switch (c) {
    case Connectivity::face6: return "6";
    case Connectivity::edge18: return "18";
    case Connectivity::vertex26: return "26";
  }
  return "6";
}

/// Background connectivity paired with the face-connected foreground so that
/// the complement count matches the cavities (b2) of the unstacked complex;
/// see complement_components for why this is 18 rather than 26.
inline constexpr Connectivity kComplementConnectivity = Connectivity::edge18;

struct ComponentLabels {
  int64_t count = 0;
  std::vector<int32_t> label;  // per grid cell; -1 outside the set
};

/// Face-adjacency (6-connectivity) components of the filled cells: the
/// percolation-faithful notion, equal to b0 of the unstacked complex.
inline ComponentLabels foreground_labels(const CellSet& set) {
  const auto& g = set.geometry();
  const int nx = g.nx(), ny = g.ny(), nz = g.nz();
  ComponentLabels out;
  out.label.assign(size_t(g.cell_count()), -1);
  std::vector<int64_t> stack;
  for (int64_t seedCell = 0; seedCell < g.cell_count(); ++seedCell) {
    if (!set.contains(seedCell) || out.label[size_t(seedCell)] != -1) continue;
    const int32_t id = int32_t(out.count++);
    out.label[size_t(seedCell)] = id;
    stack.push_back(seedCell);
    while (!stack.empty()) {
      const int64_t cell = stack.back();
      stack.pop_back();
      const auto [ix, iy, iz] = g.unlinear(cell);
      const int step[6][3] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0},
                              {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
      for (const auto& s : step) {
        const int jx = ix + s[0], jy = iy + s[1], jz = iz + s[2];
        if (jx < 0 || jx >= nx || jy < 0 || jy >= ny || jz < 0 || jz >= nz)
          continue;
        const int64_t j = g.linear(jx, jy, jz);
        if (set.contains(j) && out.label[size_t(j)] == -1) {
          out.label[size_t(j)] = id;
          stack.push_back(j);
        }
      }
    }
  }
  return out;
}

inline int64_t foreground_components(const CellSet& set) {
  return foreground_labels(set).count;
}

/// Number of components of the complement, computed on the grid padded with
/// a one-cell background shell (realizing the unbounded outside), under the
/// given background connectivity. Result >= 1; result - 1 counts bounded
/// cavities.
///
/// The default is 18-connectivity, not the 26 that pairs with 6-connected
/// foreground in classical digital topology. The unstacked complex separates
/// cubes meeting along an edge, so the background tunnels through every
/// edge-contact line (hence >= 18); but a background cell pair in vertex-only
/// contact whose remaining six octant cubes are all filled is sealed off,
/// because those six cubes form a face-glued ring whose vertex copies are all
/// identified (hence < 26). The homology oracle over exhaustive small sets
/// is the acceptance gate for this choice.
inline int64_t complement_components(
    const CellSet& set, Connectivity conn = kComplementConnectivity) {
  const auto& g = set.geometry();
  const int px = g.nx() + 2, py = g.ny() + 2, pz = g.nz() + 2;
  const auto pidx = [&](int ix, int iy, int iz) -> int64_t {
    return int64_t(ix) + int64_t(px) * (int64_t(iy) + int64_t(py) * iz);
  };
  // background = true on the pad shell and on unfilled grid cells
  std::vector<uint8_t> bg(size_t(px) * py * pz, 1);
  for (int iz = 0; iz < g.nz(); ++iz)
    for (int iy = 0; iy < g.ny(); ++iy)
      for (int ix = 0; ix < g.nx(); ++ix)
        if (set.contains(ix, iy, iz)) bg[size_t(pidx(ix + 1, iy + 1, iz + 1))] = 0;

  std::vector<std::array<int, 3>> steps;
  for (int dz = -1; dz <= 1; ++dz)
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        const int manhattan = std::abs(dx) + std::abs(dy) + std::abs(dz);
        if (manhattan == 0) continue;
        if (conn == Connectivity::face6 && manhattan > 1) continue;
        if (conn == Connectivity::edge18 && manhattan > 2) continue;
        steps.push_back({dx, dy, dz});
      }

  std::vector<uint8_t> seen(bg.size(), 0);
  std::vector<int64_t> stack;
  int64_t count = 0;
  for (int64_t seedCell = 0; seedCell < int64_t(bg.size()); ++seedCell) {
    if (!bg[size_t(seedCell)] || seen[size_t(seedCell)]) continue;
    ++count;
    seen[size_t(seedCell)] = 1;
    stack.push_back(seedCell);
    while (!stack.empty()) {
      const int64_t cell = stack.back();
      stack.pop_back();
      const int ix = int(cell % px);
      const int iy = int((cell / px) % py);
      const int iz = int(cell / (int64_t(px) * py));
      for (const auto& s : steps) {
        const int jx = ix + s[0], jy = iy + s[1], jz = iz + s[2];
        if (jx < 0 || jx >= px || jy < 0 || jy >= py || jz < 0 || jz >= pz)
          continue;
        const int64_t j = pidx(jx, jy, jz);
        if (bg[size_t(j)] && !seen[size_t(j)]) {
          seen[size_t(j)] = 1;
          stack.push_back(j);
        }
      }
    }
  }
  return count;
}

}  // namespace restopo
