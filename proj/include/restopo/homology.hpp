#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "restopo/cubical.hpp"
#include "restopo/errors.hpp"

namespace restopo {

/// Dense matrix over Z2, rows stored as 64-bit word bitsets.
class Z2Matrix {
 public:
  Z2Matrix(int64_t rows, int64_t cols)
      : rows_(rows), cols_(cols), words_((cols + 63) / 64),
        data_(size_t(rows * words_), 0) {}

  int64_t rows() const { return rows_; }
  int64_t cols() const { return cols_; }

  void set(int64_t r, int64_t c) {
    data_[size_t(r * words_ + c / 64)] ^= uint64_t(1) << (c % 64);
  }

  bool get(int64_t r, int64_t c) const {
    return (data_[size_t(r * words_ + c / 64)] >> (c % 64)) & 1;
  }

  /// Rank by Gaussian elimination on a copy.
  int64_t rank() const {
    std::vector<uint64_t> m = data_;
    const auto row = [&](int64_t r) { return m.data() + r * words_; };
    int64_t rk = 0;
    for (int64_t c = 0; c < cols_ && rk < rows_; ++c) {
      const int64_t w = c / 64;
      const uint64_t bit = uint64_t(1) << (c % 64);
      int64_t pivot = -1;
      for (int64_t r = rk; r < rows_; ++r)
        if (row(r)[w] & bit) {
          pivot = r;
          break;
        }
      if (pivot < 0) continue;
      if (pivot != rk)
        for (int64_t k = 0; k < words_; ++k)
          std::swap(row(pivot)[k], row(rk)[k]);
      for (int64_t r = rk + 1; r < rows_; ++r)
        if (row(r)[w] & bit)
          for (int64_t k = w; k < words_; ++k) row(r)[k] ^= row(rk)[k];
      ++rk;
    }
    return rk;
  }

  /// XOR the given row into acc (acc must have the same column count).
  void xor_row_into(int64_t r, std::vector<uint64_t>& acc) const {
    for (int64_t k = 0; k < words_; ++k)
      acc[size_t(k)] ^= data_[size_t(r * words_ + k)];
  }

  int64_t words() const { return words_; }

 private:
  int64_t rows_, cols_, words_;
  std::vector<uint64_t> data_;
};

/// Boundary operators of the identified complex; row r of d_q is the Z2
/// boundary chain of q-cell r over the (q-1)-cell classes.
struct BoundaryMatrices {
  Z2Matrix d1;  // edges x vertices
  Z2Matrix d2;  // faces x edges
  Z2Matrix d3;  // cubes x faces
};

inline BoundaryMatrices boundaries(const CubicComplex& cx) {
  const auto& cc = cx.counts();
  BoundaryMatrices m{Z2Matrix(cc.c1, cc.c0), Z2Matrix(cc.c2, cc.c1),
                     Z2Matrix(cc.c3, cc.c2)};
  for (int q = 1; q <= 3; ++q) {
    Z2Matrix& d = q == 1 ? m.d1 : q == 2 ? m.d2 : m.d3;
    for (int64_t cell = 0; cell < cx.size(q); ++cell)
      for (const int32_t f : cx.boundary(q, int32_t(cell))) d.set(cell, f);
  }
  return m;
}

/// Checks d_q(d_{q+1} row) = 0 for every row: the boundary of each
/// (q+1)-cell, pushed through d_q, must vanish over Z2.
inline bool boundary_squares_to_zero(const Z2Matrix& dhigh, const Z2Matrix& dlow) {
  std::vector<uint64_t> acc(size_t(dlow.words()));
  for (int64_t r = 0; r < dhigh.rows(); ++r) {
    std::fill(acc.begin(), acc.end(), 0);
    for (int64_t c = 0; c < dhigh.cols(); ++c)
      if (dhigh.get(r, c)) dlow.xor_row_into(c, acc);
    for (const uint64_t w : acc)
      if (w) return false;
  }
  return true;
}

struct HomologyRanks {
  int64_t b0 = 0;
  int64_t b1 = 0;
  int64_t b2 = 0;
  friend bool operator==(const HomologyRanks&, const HomologyRanks&) = default;
};

/// Z2 Betti numbers by rank-nullity: b_q = dim ker d_q - rank d_{q+1},
/// with d_0 = 0. Brute-force straight from the boundary matrices; this is
/// the independent oracle the fast duality path is tested against.
inline HomologyRanks homology_ranks(const BoundaryMatrices& m,
                                    const CellCounts& cc) {
  const int64_t r1 = m.d1.rank();
  const int64_t r2 = m.d2.rank();
  const int64_t r3 = m.d3.rank();
  return {cc.c0 - r1, cc.c1 - r1 - r2, cc.c2 - r2 - r3};
}

inline HomologyRanks homology_ranks(const CubicComplex& cx) {
  return homology_ranks(boundaries(cx), cx.counts());
}

}  // namespace restopo
