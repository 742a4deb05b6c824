#pragma once

// Random strongly connected digraphs as 0/1 matrices (column = tail).
// Half of them are layered mod k so that large periods actually occur.

#include <algorithm>
#include <random>
#include <vector>

#include "conjo/matrix.hpp"

namespace testdg {

inline std::vector<std::vector<int>> adjacency(const conjo::IntMatrix& m) {
  std::vector<std::vector<int>> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.rows(); ++j)
      if (m(j, i) != 0) out[i].push_back(static_cast<int>(j));
  return out;
}

inline bool strongly_connected(const conjo::IntMatrix& m) {
  const auto out = adjacency(m);
  const std::size_t n = m.rows();
  for (int dir = 0; dir < 2; ++dir) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (std::size_t w = 0; w < n; ++w) {
        const bool arc = dir == 0 ? m(w, v) != 0 : m(v, w) != 0;
        if (arc && !seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    if (std::count(seen.begin(), seen.end(), false)) return false;
  }
  return !out.empty();
}

inline conjo::IntMatrix random_scc(std::mt19937& rng, std::size_t max_n) {
  std::uniform_int_distribution<std::size_t> size(2, max_n);
  std::uniform_real_distribution<double> u(0, 1);
  for (;;) {
    const std::size_t n = size(rng);
    const bool layered = u(rng) < 0.5;
    const int k = layered ? std::uniform_int_distribution<int>(2, static_cast<int>(n))(rng) : 1;
    std::vector<int> level(n);
    for (std::size_t i = 0; i < n; ++i) level[i] = static_cast<int>(i) % k;
    const double p = u(rng) * 0.5 + 0.15;
    conjo::IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (layered && level[j] != (level[i] + 1) % k) continue;
        if (u(rng) < p) m(j, i) = std::uniform_int_distribution<int>(1, 5)(rng);
      }
    if (strongly_connected(m)) return m;
  }
}

}  // namespace testdg
