#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "restopo/cubical.hpp"
#include "restopo/errors.hpp"
#include "restopo/filtration.hpp"
#include "restopo/grid.hpp"

namespace restopo {

/// Multiset of finite (birth, death) pairs plus the births of essential
/// classes (death = ∞, kept separate so no infinity is ever serialized).
/// The diagonal is implicit with infinite multiplicity.
struct PersistenceDiagram {
  int q = 0;
  std::vector<std::array<double, 2>> points;  // birth < death
  std::vector<double> essential;              // births, ascending
  friend bool operator==(const PersistenceDiagram&,
                         const PersistenceDiagram&) = default;
};

namespace detail {

inline void sort_diagram(PersistenceDiagram& d) {
  std::sort(d.points.begin(), d.points.end());
  std::sort(d.essential.begin(), d.essential.end());
}

}  // namespace detail

/// q = 0 persistence by incremental union-find over the face-adjacency
/// graph. Cubes are admitted at their admission step (smallest threshold
/// not below their value) and processed in ascending linear order within a
/// step; on a merge the younger component dies at the current threshold
/// (elder rule). Same-step births that also die in that step are diagonal
/// points and are dropped, matching the snapshot view of the threshold
/// sequence. One essential class per final component.
inline PersistenceDiagram persistence_q0(const Filtration& filt) {
  const auto& g = filt.field().geometry();
  const auto& eps = filt.thresholds();
  const int64_t n = g.cell_count();

  std::vector<int64_t> admitted;  // cells entering the filtration, by step
  admitted.reserve(size_t(n));
  std::vector<int32_t> step_of(size_t(n), 0);
  for (int64_t i = 0; i < n; ++i) {
    const size_t s = filt.admission_step(filt.field()[i]);
    step_of[size_t(i)] = int32_t(s);
    if (s < filt.steps()) admitted.push_back(i);
  }
  std::stable_sort(admitted.begin(), admitted.end(),
                   [&](int64_t a, int64_t b) {
                     if (step_of[size_t(a)] != step_of[size_t(b)])
                       return step_of[size_t(a)] < step_of[size_t(b)];
                     return a < b;
                   });

  std::vector<int64_t> parent(size_t(n), -1);  // -1: not yet admitted
  std::vector<int32_t> birth(size_t(n), 0);    // valid at roots
  const auto find = [&](int64_t x) {
    while (parent[size_t(x)] != x) {
      parent[size_t(x)] = parent[size_t(parent[size_t(x)])];
      x = parent[size_t(x)];
    }
    return x;
  };

  PersistenceDiagram out;
  out.q = 0;
  for (const int64_t cell : admitted) {
    const int32_t step = step_of[size_t(cell)];
    parent[size_t(cell)] = cell;
    birth[size_t(cell)] = step;
    const auto [ix, iy, iz] = g.unlinear(cell);
    const int nbr[6][3] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0},
                           {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    for (const auto& s : nbr) {
      const int jx = ix + s[0], jy = iy + s[1], jz = iz + s[2];
      if (!g.in_grid(jx, jy, jz)) continue;
      const int64_t j = g.linear(jx, jy, jz);
      if (parent[size_t(j)] < 0) continue;
      int64_t ra = find(cell), rb = find(j);
      if (ra == rb) continue;
      if (birth[size_t(ra)] > birth[size_t(rb)]) std::swap(ra, rb);
      // rb is the younger component; it dies now
      if (birth[size_t(rb)] < step)
        out.points.push_back({eps[size_t(birth[size_t(rb)])], eps[size_t(step)]});
      parent[size_t(rb)] = ra;
    }
  }

  for (const int64_t cell : admitted)
    if (find(cell) == cell) out.essential.push_back(eps[size_t(birth[size_t(cell)])]);

  detail::sort_diagram(out);
  return out;
}

namespace detail {

/// Column over Z2 with echelon bookkeeping, rows indexed from 0; the pivot
/// of a column is its highest set row.
using BitCol = std::vector<uint64_t>;

inline int64_t top_bit(const BitCol& c, int64_t row_limit) {
  const int64_t words = (row_limit + 63) / 64;
  for (int64_t w = words - 1; w >= 0; --w) {
    uint64_t v = c[size_t(w)];
    if (w == words - 1 && row_limit % 64)
      v &= (uint64_t(1) << (row_limit % 64)) - 1;
    if (v) return w * 64 + (63 - int64_t(std::countl_zero(v)));
  }
  return -1;
}

inline void col_xor(BitCol& a, const BitCol& b) {
  for (size_t i = 0; i < b.size(); ++i) a[i] ^= b[i];
}

/// Maintains a set of columns in column-echelon form (distinct pivots).
class ColumnReducer {
 public:
  explicit ColumnReducer(int64_t rows)
      : rows_(rows), owner_(size_t(rows), -1) {}

  /// Reduces col against the stored columns; stores it if nonzero.
  /// Returns true when the rank grew.
  bool insert(BitCol col) {
    for (;;) {
      const int64_t p = top_bit(col, rows_);
      if (p < 0) return false;
      const int32_t o = owner_[size_t(p)];
      if (o < 0) {
        owner_[size_t(p)] = int32_t(cols_.size());
        cols_.push_back(std::move(col));
        return true;
      }
      col_xor(col, cols_[size_t(o)]);
    }
  }

  int64_t rank() const { return int64_t(cols_.size()); }

 private:
  int64_t rows_;
  std::vector<BitCol> cols_;
  std::vector<int32_t> owner_;
};

inline BitCol make_col(int64_t rows) {
  return BitCol(size_t((rows + 63) / 64), 0);
}

inline void set_bit(BitCol& c, int64_t r) {
  c[size_t(r / 64)] ^= uint64_t(1) << (r % 64);
}

/// One state of the growing complex: the complex plus, for the requested q,
/// a reduced basis of the boundary space B_q = im ∂_{q+1} and cycle
/// representatives of a homology basis. Representatives are stored as
/// (cube grid index, local cell) bit lists so they can be re-expressed in
/// any later state, where classes may have merged.
struct TowerState {
  std::unique_ptr<CubicComplex> cx;
  std::vector<BitCol> boundary_basis;                 // echelon, pivots below
  std::vector<int32_t> boundary_owner;                // row -> basis index
  std::vector<std::vector<std::pair<int64_t, uint8_t>>> reps;  // homology basis
};

inline void build_state(TowerState& st, int q) {
  const CubicComplex& cx = *st.cx;
  const int64_t nq = cx.size(q);
  const int64_t nlow = q == 0 ? 0 : cx.size(q - 1);
  const int64_t nhigh = cx.size(q + 1);

  // Reduce the columns of ∂_{q+1} to a basis of B_q.
  st.boundary_owner.assign(size_t(nq), -1);
  for (int64_t hc = 0; hc < nhigh; ++hc) {
    BitCol col = make_col(nq);
    for (const int32_t f : cx.boundary(q + 1, int32_t(hc))) set_bit(col, f);
    for (;;) {
      const int64_t p = top_bit(col, nq);
      if (p < 0) break;
      const int32_t o = st.boundary_owner[size_t(p)];
      if (o < 0) {
        st.boundary_owner[size_t(p)] = int32_t(st.boundary_basis.size());
        st.boundary_basis.push_back(std::move(col));
        break;
      }
      col_xor(col, st.boundary_basis[size_t(o)]);
    }
  }

  // Kernel basis of ∂_q via augmented column reduction, then filter modulo
  // B_q (and earlier picks) to get homology representatives.
  std::vector<BitCol> kernel;
  if (q == 0) {
    for (int64_t c = 0; c < nq; ++c) {
      BitCol unit = make_col(nq);
      set_bit(unit, c);
      kernel.push_back(std::move(unit));
    }
  } else {
    std::vector<BitCol> echelon;           // ∂ part
    std::vector<BitCol> echelon_tail;      // matching combination part
    std::vector<int32_t> owner(size_t(nlow), -1);
    for (int64_t c = 0; c < nq; ++c) {
      BitCol col = make_col(nlow);
      for (const int32_t f : cx.boundary(q, int32_t(c))) set_bit(col, f);
      BitCol tail = make_col(nq);
      set_bit(tail, c);
      for (;;) {
        const int64_t p = top_bit(col, nlow);
        if (p < 0) {
          kernel.push_back(std::move(tail));
          break;
        }
        const int32_t o = owner[size_t(p)];
        if (o < 0) {
          owner[size_t(p)] = int32_t(echelon.size());
          echelon.push_back(std::move(col));
          echelon_tail.push_back(std::move(tail));
          break;
        }
        col_xor(col, echelon[size_t(o)]);
        col_xor(tail, echelon_tail[size_t(o)]);
      }
    }
  }

  std::vector<BitCol> picked = st.boundary_basis;  // copy; extended below
  std::vector<int32_t> owner = st.boundary_owner;
  for (BitCol& cand : kernel) {
    for (;;) {
      const int64_t p = top_bit(cand, nq);
      if (p < 0) break;
      const int32_t o = owner[size_t(p)];
      if (o < 0) {
        // cand is a cycle independent modulo boundaries: a homology rep
        std::vector<std::pair<int64_t, uint8_t>> rep;
        for (int64_t r = 0; r < nq; ++r)
          if ((cand[size_t(r / 64)] >> (r % 64)) & 1) {
            const auto rp = cx.rep(q, int32_t(r));
            rep.push_back({cx.cube_cells()[size_t(rp.cube)], rp.local});
          }
        st.reps.push_back(std::move(rep));
        owner[size_t(p)] = int32_t(picked.size());
        picked.push_back(std::move(cand));
        break;
      }
      col_xor(cand, picked[size_t(o)]);
    }
  }
}

/// rank(H_q(state a) → H_q(state b)): push a's homology reps into b's
/// complex (classes may merge, bits cancel over Z2) and count how many are
/// independent modulo b's boundaries.
inline int64_t tower_rank(const TowerState& a, const TowerState& b, int q) {
  const CubicComplex& cxb = *b.cx;
  const int64_t nq = cxb.size(q);
  const size_t nb = b.boundary_basis.size();
  std::vector<BitCol> extra;
  std::vector<int32_t> owner = b.boundary_owner;
  int64_t rank = 0;
  for (const auto& rep : a.reps) {
    BitCol col = make_col(nq);
    for (const auto& [cube_cell, local] : rep) {
      const int32_t cube = cxb.cube_id(cube_cell);
      set_bit(col, cxb.class_of(q, cube, local));
    }
    for (;;) {
      const int64_t p = top_bit(col, nq);
      if (p < 0) break;
      const int32_t o = owner[size_t(p)];
      if (o < 0) {
        owner[size_t(p)] = int32_t(nb + extra.size());
        extra.push_back(std::move(col));
        ++rank;
        break;
      }
      col_xor(col, size_t(o) < nb ? b.boundary_basis[size_t(o)]
                                  : extra[size_t(o) - nb]);
    }
  }
  return rank;
}

}  // namespace detail

/// Persistence diagram in dimension q from the thresholded tower of
/// unstacked complexes, via the rank function of the maps
/// H_q(X_i) → H_q(X_j).
///
/// The tower is not a filtered complex: a cube arriving later can glue two
/// previously separate copies of a vertex or edge into one class, so the
/// structure maps merge cells instead of merely adding them, and one-shot
/// reduction of a global filtered boundary matrix does not apply. Interval
/// multiplicities come from inclusion-exclusion on the ranks, which is
/// exactly the interval decomposition of the persistence module. A class
/// alive at steps i..j is reported as (ε_i, ε_{j+1}); classes alive at the
/// last step are essential.
inline PersistenceDiagram persistence_matrix(
    const Filtration& filt, int q,
    int64_t budget = CubicComplex::kDefaultBudget) {
  if (q < 0 || q > 2) throw config_error("persistence dimension must be 0..2");
  const auto& g = filt.field().geometry();
  const auto& eps = filt.thresholds();
  const size_t M = filt.steps();
  const int64_t n = g.cell_count();

  // Distinct growth states; state_of[i] = state index after step i (state 0
  // is the empty complex before anything enters).
  std::vector<size_t> state_of(M);
  std::vector<std::vector<int64_t>> arrivals;  // cells entering per state
  {
    std::vector<size_t> step_of(size_t(n), 0);
    std::vector<int64_t> order;
    for (int64_t i = 0; i < n; ++i) {
      step_of[size_t(i)] = filt.admission_step(filt.field()[i]);
      if (step_of[size_t(i)] < M) order.push_back(i);
    }
    std::stable_sort(order.begin(), order.end(), [&](int64_t a, int64_t b) {
      return step_of[size_t(a)] < step_of[size_t(b)];
    });
    size_t pos = 0;
    size_t state = 0;
    for (size_t i = 0; i < M; ++i) {
      std::vector<int64_t> batch;
      while (pos < order.size() && step_of[size_t(order[pos])] == i)
        batch.push_back(order[pos++]);
      if (!batch.empty()) {
        arrivals.push_back(std::move(batch));
        ++state;
      }
      state_of[i] = state;
    }
  }
  const size_t K = arrivals.size();  // states 1..K are nonempty growth points

  // Build each state's complex and homology data.
  std::vector<detail::TowerState> states(K);
  {
    std::vector<uint8_t> member(size_t(n), 0);
    for (size_t k = 0; k < K; ++k) {
      for (const int64_t c : arrivals[k]) member[size_t(c)] = 1;
      CellSet set(g, member);
      states[k].cx = std::make_unique<CubicComplex>(set, budget);
      detail::build_state(states[k], q);
    }
  }

  // Rank table over states, extended with R(0, ·) = 0 for the empty state.
  std::vector<std::vector<int64_t>> R(K + 1, std::vector<int64_t>(K + 1, 0));
  for (size_t a = 1; a <= K; ++a)
    for (size_t b = a; b <= K; ++b)
      R[a][b] = a == b ? int64_t(states[a - 1].reps.size())
                       : detail::tower_rank(states[a - 1], states[b - 1], q);

  // r over steps (1-based step s corresponds to threshold eps[s-1]).
  const auto r = [&](size_t i, size_t j) -> int64_t {
    if (i < 1 || j < i || j > M) return 0;
    return R[state_of[i - 1]][state_of[j - 1]];
  };

  PersistenceDiagram out;
  out.q = q;
  for (size_t i = 1; i <= M; ++i) {
    for (size_t j = i; j < M; ++j) {
      const int64_t mult = r(i, j) - r(i - 1, j) - r(i, j + 1) + r(i - 1, j + 1);
      for (int64_t m = 0; m < mult; ++m)
        out.points.push_back({eps[i - 1], eps[j]});
    }
    const int64_t ess = r(i, M) - r(i - 1, M);
    for (int64_t m = 0; m < ess; ++m) out.essential.push_back(eps[i - 1]);
  }
  detail::sort_diagram(out);
  return out;
}

}  // namespace restopo
