#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lcroots/rootsolver.hpp"

namespace lcroots {

// Hungarian algorithm with row/column potentials, O(n^3).
std::vector<int> match_roots(const std::vector<std::complex<double>>& a,
                             const std::vector<std::complex<double>>& b) {
  const int n = static_cast<int>(a.size());
  if (static_cast<int>(b.size()) != n) throw std::invalid_argument("match_roots: size mismatch");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based arrays; column 0 is a sentinel.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = std::abs(a[i0 - 1] - b[j - 1]) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> perm(n);
  for (int j = 1; j <= n; ++j) perm[p[j] - 1] = j - 1;
  return perm;
}

double matched_distance(const RootSet& a, const RootSet& b) {
  const auto va = a.values();
  const auto vb = b.values();
  const auto perm = match_roots(va, vb);
  double worst = 0.0;
  for (std::size_t i = 0; i < va.size(); ++i) {
    worst = std::max(worst, std::abs(va[i] - vb[perm[i]]) / (1.0 + std::abs(va[i])));
  }
  return worst;
}

}  // namespace lcroots
