#pragma once

#include <optional>
#include <vector>

#include "tsdec/bitvec.hpp"
#include "tsdec/lattice.hpp"
#include "tsdec/noise.hpp"

namespace tsdec {

// Isolation radius of the greedy local stage. nullopt disables the stage
// entirely (pure global matching).
struct PredecoderParams {
  std::optional<int> radius;

  static PredecoderParams disabled() { return PredecoderParams{std::nullopt}; }
  static PredecoderParams with_radius(int r) { return PredecoderParams{r}; }
  bool enabled() const { return radius.has_value(); }
  // Effective radius in the closed-form volume/weight formulas; the r = 0
  // stage is the singular member of the family and shares the r = 1 values.
  int r_tilde() const { return std::max(radius.value(), 1); }
};

// Syndrome bits that survive the isolation test: a defect is kept only if
// the taxicab ball of radius r around it contains at most two defects.
struct IsolationMask {
  BitVec bits;  // masked syndrome, one bit per vertex
};

struct PredecodeOutcome {
  ErrorConfig matched_edges;        // all edges matched by the local stage
  SyndromeHistory modified_syndrome;
  BitVec qubit_correction;          // per-qubit parity of matched space edges
};

IsolationMask isolation_mask(const CodeLattice& lat, const SyndromeHistory& s, int r);

// Greedy local stage: every edge whose two endpoints both carry surviving
// defects is matched, all matchings in one concurrent step. Time-like
// matches record no correction; space-like matches toggle the qubit parity.
PredecodeOutcome predecode(const CodeLattice& lat, const SyndromeHistory& s,
                           const PredecoderParams& params);

// Closed-form isolation volume V_r = 4(r~+1)^3 + 6(r~+1)^2 + 1, r~ = max(r,1).
int isolation_volume(int r);

// All edges e1 != e0 whose fault, combined with a fault on e0, leaves the
// local stage with a non-empty modified syndrome. Requires d >= 4r + 10 so
// the neighborhood does not wrap onto itself.
std::vector<std::uint32_t> enumerate_disruptors(const CodeLattice& lat, std::uint32_t e0, int r);

}  // namespace tsdec
