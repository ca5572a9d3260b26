#pragma once

// Test-only shortest-path oracle over the decoding lattice, independent of
// the closed-form metric it cross-checks.

#include <cstdint>
#include <deque>
#include <vector>

#include "tsdec/lattice.hpp"

namespace tsdec::testing {

inline std::vector<int> bfs_distances(const CodeLattice& lat, std::uint32_t source) {
  std::vector<int> dist(lat.n_vertices(), -1);
  std::deque<std::uint32_t> q{source};
  dist[source] = 0;
  while (!q.empty()) {
    std::uint32_t v = q.front();
    q.pop_front();
    for (std::uint32_t e : lat.incident_edges(v)) {
      auto [a, b] = lat.edge_endpoints(e);
      std::uint32_t u = a == v ? b : a;
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        q.push_back(u);
      }
    }
  }
  return dist;
}

}  // namespace tsdec::testing
