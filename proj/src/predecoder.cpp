#include "tsdec/predecoder.hpp"

#include <stdexcept>
#include <string>

namespace tsdec {

IsolationMask isolation_mask(const CodeLattice& lat, const SyndromeHistory& s, int r) {
  if (r < 0) throw std::invalid_argument("isolation radius must be >= 0");
  IsolationMask m{BitVec(lat.n_vertices())};
  if (r == 0) {
    m.bits = s.bits;  // a ball holding only the defect itself never exceeds 2
    return m;
  }
  for (auto v = s.bits.find_first(); v != BitVec::npos; v = s.bits.find_next(v)) {
    int count = 0;
    for (std::uint32_t u : lat.ball_vertices(static_cast<std::uint32_t>(v), r)) {
      if (s.bits.test(u) && ++count > 2) break;
    }
    if (count <= 2) m.bits.set(v);
  }
  return m;
}

PredecodeOutcome predecode(const CodeLattice& lat, const SyndromeHistory& s,
                           const PredecoderParams& params) {
  PredecodeOutcome out{ErrorConfig{BitVec(lat.n_edges())}, SyndromeHistory{BitVec(lat.n_vertices())},
                       BitVec(lat.n_qubits())};
  if (!params.enabled()) {
    out.modified_syndrome = s;
    return out;
  }
  const BitVec masked = isolation_mask(lat, s, *params.radius).bits;

  for (auto v = s.bits.find_first(); v != BitVec::npos; v = s.bits.find_next(v)) {
    const auto vid = static_cast<std::uint32_t>(v);
    if (!masked.test(vid)) {
      out.modified_syndrome.bits.set(vid);  // masked-out defects pass through
      continue;
    }
    int matched_here = 0;
    for (std::uint32_t e : lat.incident_edges(vid)) {
      auto [a, b] = lat.edge_endpoints(e);
      std::uint32_t other = a == vid ? b : a;
      if (!masked.test(other)) continue;
      ++matched_here;
      if (other > vid) {  // record each matched edge once
        out.matched_edges.bits.set(e);
        if (lat.is_space_edge(e)) {
          out.qubit_correction.flip(lat.qubit_of_space_edge(e));
        }
      }
    }
    // Mod-2 update: the defect survives iff it saw an even number of matches.
    if (matched_here % 2 == 0) out.modified_syndrome.bits.set(vid);
  }
  return out;
}

int isolation_volume(int r) {
  if (r < 0) throw std::invalid_argument("isolation radius must be >= 0");
  const int k = std::max(r, 1) + 1;
  return 4 * k * k * k + 6 * k * k + 1;
}

std::vector<std::uint32_t> enumerate_disruptors(const CodeLattice& lat, std::uint32_t e0, int r) {
  if (lat.d() < 4 * r + 10) {
    throw std::invalid_argument("lattice too small for disruptor enumeration: need d >= " +
                                std::to_string(4 * r + 10));
  }
  const PredecoderParams params = PredecoderParams::with_radius(r);
  ErrorConfig base{BitVec(lat.n_edges())};
  base.bits.set(e0);

  // Candidates further than 2r + 4 from e0 act independently; skip them.
  const auto [a0, b0] = lat.edge_endpoints(e0);
  const int reach = 2 * r + 4;

  std::vector<std::uint32_t> out;
  for (std::uint32_t e1 = 0; e1 < lat.n_edges(); ++e1) {
    if (e1 == e0) continue;
    const auto [a1, b1] = lat.edge_endpoints(e1);
    if (lat.distance(a0, a1) > reach && lat.distance(a0, b1) > reach &&
        lat.distance(b0, a1) > reach && lat.distance(b0, b1) > reach) {
      continue;
    }
    ErrorConfig err = base;
    err.bits.flip(e1);
    PredecodeOutcome oc = predecode(lat, syndrome_of(lat, err), params);
    if (oc.modified_syndrome.bits.any()) out.push_back(e1);
  }
  return out;
}

}  // namespace tsdec
