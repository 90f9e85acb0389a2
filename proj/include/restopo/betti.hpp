#pragma once

#include <cstdint>

#include "restopo/components.hpp"
#include "restopo/cubical.hpp"
#include "restopo/grid.hpp"

namespace restopo {

struct BettiSummary {
  int64_t b0 = 0;
  int64_t b1 = 0;
  int64_t b2 = 0;
  int64_t chi = 0;
  int64_t volume = 0;     // filled-cell count
  double b0w = 0.0;       // b0 / volume, 0 for the empty set
  double b1w = 0.0;
  double b2w = 0.0;
  friend bool operator==(const BettiSummary&, const BettiSummary&) = default;
};

/// Betti numbers of the unstacked complex without homology computation:
///   b0  = face-connected components,
///   b2  = bounded complement components (duality),
///   chi = c0 - c1 + c2 - c3 from positional cell counts,
///   b1  = b0 + b2 - chi,
/// so chi = b0 - b1 + b2 holds by construction. The boundary-matrix oracle
/// validates the triple independently on small sets.
inline BettiSummary betti_numbers(const CellSet& set,
                                  Connectivity background = kComplementConnectivity) {
  BettiSummary s;
  s.volume = set.size();
  if (s.volume == 0) return s;
  s.b0 = foreground_components(set);
  s.b2 = complement_components(set, background) - 1;
  s.chi = euler_characteristic(cell_counts(set));
  s.b1 = s.b0 + s.b2 - s.chi;
  s.b0w = double(s.b0) / double(s.volume);
  s.b1w = double(s.b1) / double(s.volume);
  s.b2w = double(s.b2) / double(s.volume);
  return s;
}

}  // namespace restopo
