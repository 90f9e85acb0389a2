#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "restopo/errors.hpp"
#include "restopo/persistence.hpp"

namespace restopo {

/// Norm on the persistence plane used for point-to-point and
/// point-to-diagonal costs. L1 is the default (|u| = |x| + |y|); Linf is
/// the norm of the classical stability theorem.
enum class PlaneNorm { L1, Linf };

inline std::string to_string(PlaneNorm n) {
  return n == PlaneNorm::L1 ? "l1" : "linf";
}

inline PlaneNorm plane_norm_from_string(const std::string& s) {
  if (s == "l1" || s == "L1") return PlaneNorm::L1;
  if (s == "linf" || s == "Linf" || s == "LINF") return PlaneNorm::Linf;
  throw parse_error("unknown norm '" + s + "' (expected l1 or linf)");
}

namespace detail {

inline double point_cost(const std::array<double, 2>& a,
                         const std::array<double, 2>& b, PlaneNorm norm) {
  const double db = std::abs(a[0] - b[0]), dd = std::abs(a[1] - b[1]);
  return norm == PlaneNorm::L1 ? db + dd : std::max(db, dd);
}

/// Cost of sending a point to its nearest diagonal point.
inline double diag_cost(const std::array<double, 2>& a, PlaneNorm norm) {
  const double gap = a[1] - a[0];
  return norm == PlaneNorm::L1 ? gap : gap / 2.0;
}

/// Hopcroft-Karp saturation test: true iff a matching exists that covers
/// every left vertex, where left vertex i may pair with right vertex j iff
/// cost(lefts[i], j) <= t. Adjacency is implicit via the cost callback.
template <typename CostFn>
bool saturates(const std::vector<int>& lefts, int right_count, double t,
               CostFn&& cost) {
  const int L = int(lefts.size());
  if (L == 0) return true;
  if (right_count < L) return false;
  std::vector<int> match_l(size_t(L), -1), match_r(size_t(right_count), -1);
  std::vector<int> dist(size_t(L), 0);
  std::vector<int> frontier;
  int matched = 0;
  for (;;) {
    // BFS layering from free left vertices
    std::queue<int> bfs;
    const int inf = std::numeric_limits<int>::max();
    for (int i = 0; i < L; ++i) {
      dist[size_t(i)] = match_l[size_t(i)] < 0 ? 0 : inf;
      if (dist[size_t(i)] == 0) bfs.push(i);
    }
    bool reachable_free_right = false;
    while (!bfs.empty()) {
      const int i = bfs.front();
      bfs.pop();
      for (int j = 0; j < right_count; ++j) {
        if (cost(lefts[size_t(i)], j) > t) continue;
        const int k = match_r[size_t(j)];
        if (k < 0)
          reachable_free_right = true;
        else if (dist[size_t(k)] == inf) {
          dist[size_t(k)] = dist[size_t(i)] + 1;
          bfs.push(k);
        }
      }
    }
    if (!reachable_free_right) break;
    // DFS augmentation along layered paths
    std::vector<uint8_t> used_r(size_t(right_count), 0);
    const auto augment = [&](auto&& self, int i) -> bool {
      for (int j = 0; j < right_count; ++j) {
        if (used_r[size_t(j)] || cost(lefts[size_t(i)], j) > t) continue;
        const int k = match_r[size_t(j)];
        if (k >= 0 && dist[size_t(k)] != dist[size_t(i)] + 1) continue;
        used_r[size_t(j)] = 1;
        if (k < 0 || self(self, k)) {
          match_l[size_t(i)] = j;
          match_r[size_t(j)] = i;
          return true;
        }
      }
      return false;
    };
    for (int i = 0; i < L; ++i)
      if (match_l[size_t(i)] < 0 && augment(augment, i)) ++matched;
    if (matched == L) return true;
  }
  return matched == L;
}

}  // namespace detail

/// Exact bottleneck distance between two diagrams of equal dimension.
///
/// Essential classes (infinite death) can only pair with each other, so
/// their counts must match; they are matched in sorted birth order, which
/// minimizes the maximum |birth difference| on a line. Finite points may
/// also pair with the diagonal at diag_cost. Feasibility at threshold t
/// reduces to two saturation tests: every point whose diagonal cost exceeds
/// t must be matched to an opposite point at cost <= t (points that can
/// reach the diagonal are never an obstruction, and two one-sided coverings
/// combine into one matching). The answer is found by binary search over
/// the O(n^2) candidate costs.
inline double bottleneck_distance(const PersistenceDiagram& U,
                                  const PersistenceDiagram& V,
                                  PlaneNorm norm = PlaneNorm::L1) {
  if (U.q != V.q)
    throw metric_error("cannot compare diagrams of dimension " +
                       std::to_string(U.q) + " and " + std::to_string(V.q));
  if (U.essential.size() != V.essential.size())
    throw metric_error("essential class counts differ (" +
                       std::to_string(U.essential.size()) + " vs " +
                       std::to_string(V.essential.size()) +
                       "); no bijection exists");

  double essential_cost = 0.0;
  {
    std::vector<double> a = U.essential, b = V.essential;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (size_t i = 0; i < a.size(); ++i)
      essential_cost = std::max(essential_cost, std::abs(a[i] - b[i]));
  }

  const auto& A = U.points;
  const auto& B = V.points;
  if (A.empty() && B.empty()) return essential_cost;

  const int na = int(A.size()), nb = int(B.size());
  std::vector<double> cost(size_t(na) * size_t(std::max(nb, 1)));
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j)
      cost[size_t(i) * nb + j] = detail::point_cost(A[size_t(i)], B[size_t(j)], norm);
  std::vector<double> diag_a(size_t(na), 0.0), diag_b(size_t(nb), 0.0);
  for (int i = 0; i < na; ++i) diag_a[size_t(i)] = detail::diag_cost(A[size_t(i)], norm);
  for (int j = 0; j < nb; ++j) diag_b[size_t(j)] = detail::diag_cost(B[size_t(j)], norm);

  std::vector<double> cand;
  cand.reserve(cost.size() + diag_a.size() + diag_b.size() + 1);
  cand.push_back(0.0);
  cand.insert(cand.end(), cost.begin(), cost.end());
  cand.insert(cand.end(), diag_a.begin(), diag_a.end());
  cand.insert(cand.end(), diag_b.begin(), diag_b.end());
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  const auto feasible = [&](double t) {
    std::vector<int> hard_a, hard_b;
    for (int i = 0; i < na; ++i)
      if (diag_a[size_t(i)] > t) hard_a.push_back(i);
    for (int j = 0; j < nb; ++j)
      if (diag_b[size_t(j)] > t) hard_b.push_back(j);
    return detail::saturates(hard_a, nb, t,
                             [&](int i, int j) { return cost[size_t(i) * nb + j]; }) &&
           detail::saturates(hard_b, na, t,
                             [&](int j, int i) { return cost[size_t(i) * nb + j]; });
  };

  size_t lo = 0, hi = cand.size() - 1;
  // the largest candidate is always feasible (match everything pairwise or
  // to the diagonal at max cost)
  while (lo < hi) {
    const size_t mid = lo + (hi - lo) / 2;
    if (feasible(cand[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return std::max(essential_cost, cand[lo]);
}

}  // namespace restopo
