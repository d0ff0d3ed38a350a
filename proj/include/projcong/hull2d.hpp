#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "projcong/vec.hpp"

namespace projcong {

// Indices of the convex-hull corners of a 2D point set, counterclockwise,
// starting at the lexicographically smallest point. Points interior to the
// hull or interior to a hull edge are dropped. Exact.
inline std::vector<int> convex_hull_2d(const std::vector<Vec2>& pts) {
  const int n = static_cast<int>(pts.size());
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (pts[a] == pts[b]) return a < b;
    return lex_less2(pts[a], pts[b]);
  });
  idx.erase(std::unique(idx.begin(), idx.end(),
                        [&](int a, int b) { return pts[a] == pts[b]; }),
            idx.end());
  const int m = static_cast<int>(idx.size());
  if (m <= 2) {
    return idx;  // degenerate; callers reject polygons with <3 corners
  }
  std::vector<int> h(2 * m);
  int k = 0;
  for (int i = 0; i < m; ++i) {  // lower chain
    while (k >= 2 &&
           sgn(cross2(pts[h[k - 1]] - pts[h[k - 2]], pts[idx[i]] - pts[h[k - 2]])) <= 0)
      --k;
    h[k++] = idx[i];
  }
  for (int i = m - 2, lo = k + 1; i >= 0; --i) {  // upper chain
    while (k >= lo &&
           sgn(cross2(pts[h[k - 1]] - pts[h[k - 2]], pts[idx[i]] - pts[h[k - 2]])) <= 0)
      --k;
    h[k++] = idx[i];
  }
  h.resize(k - 1);
  return h;
}

}  // namespace projcong
