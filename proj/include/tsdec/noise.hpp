#pragma once

#include <random>

#include "tsdec/bitvec.hpp"
#include "tsdec/lattice.hpp"

namespace tsdec {

// Phenomenological noise: i.i.d. phase flips per qubit per round and
// measurement errors at the same rate (p_m = p). Both appear as edge faults
// on the decoding lattice, so a single per-edge rate covers the model.
struct NoiseParams {
  double p = 0.0;  // in [0, 1)
};

// One bit per edge of the decoding lattice; 1 = fault. XOR-composable.
struct ErrorConfig {
  BitVec bits;
  friend bool operator==(const ErrorConfig&, const ErrorConfig&) = default;
};

inline ErrorConfig operator^(const ErrorConfig& a, const ErrorConfig& b) {
  return ErrorConfig{a.bits ^ b.bits};
}

// One bit per spacetime vertex; 1 = defect. Symbol s_v(t).
struct SyndromeHistory {
  BitVec bits;
  friend bool operator==(const SyndromeHistory&, const SyndromeHistory&) = default;
};

inline SyndromeHistory operator^(const SyndromeHistory& a, const SyndromeHistory& b) {
  return SyndromeHistory{a.bits ^ b.bits};
}

// Samples each edge independently with probability p.
ErrorConfig sample_error(const CodeLattice& lat, const NoiseParams& params, std::mt19937_64& rng);

// Each vertex bit is the parity of its (6) incident faulty edges.
SyndromeHistory syndrome_of(const CodeLattice& lat, const ErrorConfig& error);

}  // namespace tsdec
