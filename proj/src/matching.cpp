#include "tsdec/matching.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <stdexcept>

#include "tsdec/blossom.hpp"
#include "tsdec/errors.hpp"

namespace tsdec {

DefectGraph DefectGraph::build(const CodeLattice& lat, const SyndromeHistory& s) {
  return build(lat, set_bits(s.bits));
}

DefectGraph DefectGraph::build(const CodeLattice& lat, std::vector<std::uint32_t> defect_addresses) {
  DefectGraph g;
  g.defects = std::move(defect_addresses);
  const std::size_t n = g.defects.size();
  g.weight.assign(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      std::int64_t w = lat.distance(g.defects[i], g.defects[j]);
      g.weight[i][j] = w;
      g.weight[j][i] = w;
    }
  }
  return g;
}

Matching mwpm(const DefectGraph& g) {
  Matching m;
  const std::size_t n = g.defects.size();
  if (n == 0) return m;
  if (n % 2 != 0) {
    throw InvariantViolation("defect count is odd; syndrome parity invariant broken");
  }
  std::vector<int> mate = min_weight_perfect_matching(g.weight);
  for (std::size_t i = 0; i < n; ++i) {
    auto j = static_cast<std::size_t>(mate[i]);
    if (j > i) {
      m.pairs.emplace_back(g.defects[i], g.defects[j]);
      m.total_weight += g.weight[i][j];
    }
  }
  return m;
}

namespace {

void brute_force_rec(const DefectGraph& g, std::vector<bool>& used, std::vector<int>& mate,
                     std::int64_t acc, std::int64_t& best, std::vector<int>& best_mate) {
  std::size_t u = 0;
  while (u < used.size() && used[u]) ++u;
  if (u == used.size()) {
    if (acc < best) {
      best = acc;
      best_mate = mate;
    }
    return;
  }
  used[u] = true;
  for (std::size_t v = u + 1; v < used.size(); ++v) {
    if (used[v]) continue;
    used[v] = true;
    mate[u] = static_cast<int>(v);
    mate[v] = static_cast<int>(u);
    if (acc + g.weight[u][v] < best) {
      brute_force_rec(g, used, mate, acc + g.weight[u][v], best, best_mate);
    }
    used[v] = false;
  }
  used[u] = false;
}

}  // namespace

Matching brute_force_match(const DefectGraph& g) {
  Matching m;
  const std::size_t n = g.defects.size();
  if (n == 0) return m;
  if (n % 2 != 0) {
    throw InvariantViolation("defect count is odd; syndrome parity invariant broken");
  }
  if (n > 12) {
    throw std::invalid_argument("brute-force oracle limited to 12 defects");
  }
  std::vector<bool> used(n, false);
  std::vector<int> mate(n, -1), best_mate(n, -1);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  brute_force_rec(g, used, mate, 0, best, best_mate);
  for (std::size_t i = 0; i < n; ++i) {
    auto j = static_cast<std::size_t>(best_mate[i]);
    if (j > i) {
      m.pairs.emplace_back(g.defects[i], g.defects[j]);
      m.total_weight += g.weight[i][j];
    }
  }
  return m;
}

std::pair<Matching, std::uint64_t> timed_mwpm(const CodeLattice& lat,
                                              const std::vector<std::uint32_t>& defect_addresses) {
  const auto t0 = std::chrono::steady_clock::now();
  Matching m;
  if (!defect_addresses.empty()) {
    DefectGraph g = DefectGraph::build(lat, defect_addresses);
    m = mwpm(g);
  }
  const auto t1 = std::chrono::steady_clock::now();
  return {std::move(m), static_cast<std::uint64_t>(
                            std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count())};
}

MatchingCorrection correction_from_matching(const Matching& m, const CodeLattice& lat) {
  MatchingCorrection corr{ErrorConfig{BitVec(lat.n_edges())}, BitVec(lat.n_qubits())};
  const int d = lat.d();
  for (auto [ua, va] : m.pairs) {
    std::uint32_t start = std::min(ua, va);
    std::uint32_t goal = std::max(ua, va);
    VertexId u = lat.address_vertex(start);
    VertexId v = lat.address_vertex(goal);

    // Time legs first.
    int dt = lat.wrap_displacement(v.t - u.t);
    int t = u.t;
    while (dt != 0) {
      int step = dt > 0 ? 1 : -1;
      int t_low = step > 0 ? t : (t - 1 + d) % d;
      std::uint32_t vid_low = lat.vertex_address(VertexId{u.x, u.y, t_low});
      corr.edges.bits.flip(lat.time_edge_id(vid_low));
      t = (t + step + d) % d;
      dt -= step;
    }

    // Space legs: diagonal steps, zigzagging when one axis is exhausted.
    int dx = lat.wrap_displacement(v.x - u.x);
    int dy = lat.wrap_displacement(v.y - u.y);
    int x = u.x;
    int y = u.y;
    while (dx != 0 || dy != 0) {
      int sx;
      int sy;
      if (dx != 0 && dy != 0) {
        sx = dx > 0 ? 1 : -1;
        sy = dy > 0 ? 1 : -1;
      } else if (dx != 0) {
        sx = dx > 0 ? 1 : -1;
        sy = 1;
      } else {
        sx = 1;
        sy = dy > 0 ? 1 : -1;
      }
      int qx = (x + (sx > 0 ? 1 : 0)) % d;
      int qy = (y + (sy > 0 ? 1 : 0)) % d;
      std::uint32_t q = lat.qubit_id(qx, qy);
      corr.edges.bits.flip(lat.space_edge_id(q, t));
      corr.qubit_flips.flip(q);
      x = (x + sx + d) % d;
      y = (y + sy + d) % d;
      dx -= sx;
      dy -= sy;
    }
  }
  return corr;
}

}  // namespace tsdec
