#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tsdec/bitvec.hpp"
#include "tsdec/lattice.hpp"
#include "tsdec/noise.hpp"

namespace tsdec {

// Complete graph over the defects of a syndrome history, weighted by the
// taxicab metric of the decoding lattice.
struct DefectGraph {
  std::vector<std::uint32_t> defects;            // vertex addresses, ascending
  std::vector<std::vector<std::int64_t>> weight;  // |W| x |W| symmetric

  static DefectGraph build(const CodeLattice& lat, const SyndromeHistory& s);
  static DefectGraph build(const CodeLattice& lat, std::vector<std::uint32_t> defect_addresses);
};

struct Matching {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;  // vertex addresses
  std::int64_t total_weight = 0;
};

// Exact minimum-weight perfect matching. Throws InvariantViolation on odd
// defect counts.
Matching mwpm(const DefectGraph& g);

// Exhaustive oracle over all (|W|-1)!! pairings; refuses |W| > 12.
Matching brute_force_match(const DefectGraph& g);

// As mwpm, timed with a monotonic clock. Graph construction from the defect
// list is part of the measured interval.
std::pair<Matching, std::uint64_t> timed_mwpm(const CodeLattice& lat,
                                              const std::vector<std::uint32_t>& defect_addresses);

struct MatchingCorrection {
  ErrorConfig edges;      // full spacetime support of the correction paths
  BitVec qubit_flips;     // per-qubit parity of the space-like path edges
};

// Lays one canonical shortest path per matched pair: time displacement
// first, then space, each along the minimal wrap with ties at exactly d/2
// broken toward the positive direction.
MatchingCorrection correction_from_matching(const Matching& m, const CodeLattice& lat);

}  // namespace tsdec
