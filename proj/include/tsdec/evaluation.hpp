#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "tsdec/lattice.hpp"
#include "tsdec/matching.hpp"
#include "tsdec/noise.hpp"
#include "tsdec/predecoder.hpp"

namespace tsdec {

struct TrialRecord {
  bool failure_x = false;  // odd winding across the vertical cut
  bool failure_y = false;  // odd winding across the horizontal cut
  std::uint32_t defects_raw = 0;
  std::uint32_t defects_after_predecode = 0;
  std::uint64_t matcher_time_ns = 0;
  std::uint64_t ideal_bits = 0;
  std::uint64_t model16_bits = 0;
  std::uint64_t master_seed = 0;
  std::uint64_t trial_index = 0;

  bool failed() const { return failure_x || failure_y; }
};

struct FailureStats {
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;  // either-axis (headline)
  std::uint64_t failures_x = 0;
  std::uint64_t failures_y = 0;
  bool zero_failure_upper_bound = false;  // no failures before max_trials

  double failure_probability() const {
    return trials == 0 ? 0.0 : static_cast<double>(failures) / static_cast<double>(trials);
  }
  double stderr_binomial() const;
};

// Defect-count statistics. Densities are quoted per fault location (one
// location per edge of the decoding lattice, 3V of them), which is the
// normalization under which the quadratic-suppression models are stated;
// the per-vertex variant is kept alongside for bandwidth accounting.
struct DefectStats {
  std::uint64_t trials = 0;
  std::uint64_t total_defects = 0;
  std::map<std::uint32_t, std::uint64_t> histogram;  // defect count -> trials

  double mean_defects() const {
    return trials == 0 ? 0.0 : static_cast<double>(total_defects) / static_cast<double>(trials);
  }
  double density_per_location(const CodeLattice& lat) const {
    return mean_defects() / static_cast<double>(lat.n_edges());
  }
  double density_per_vertex(const CodeLattice& lat) const {
    return mean_defects() / static_cast<double>(lat.n_vertices());
  }
};

struct StopRule {
  std::uint64_t min_failures = 10;
  std::uint64_t max_trials = 10'000'000;
};

// Winding parities of a syndrome-free residual error across the two fixed
// torus cuts. Throws InvariantViolation if the residual has defects.
std::pair<bool, bool> logical_failure(const CodeLattice& lat, const ErrorConfig& residual);

// Full two-stage pipeline on a fixed error configuration:
// syndrome -> local stage -> compress -> global matching -> combined
// correction -> winding check. The residual syndrome is asserted empty.
TrialRecord run_trial_on(const CodeLattice& lat, const ErrorConfig& error,
                         const PredecoderParams& params);

TrialRecord run_trial(const CodeLattice& lat, double p, const PredecoderParams& params,
                      std::uint64_t master_seed, std::uint64_t trial_index);

struct MonteCarloResult {
  FailureStats failures;
  DefectStats defects;
};

// Deterministic for fixed (seed, stop rule), independent of worker count:
// trials are evaluated in fixed-size blocks in index order.
MonteCarloResult direct_mc(const CodeLattice& lat, double p, const PredecoderParams& params,
                           const StopRule& stop, std::uint64_t seed, int workers = 0);

struct DensityFit {
  double rho_per_location = 0.0;  // slope of mean defects vs n_edges
  double rho_per_vertex = 0.0;    // slope of mean defects vs n_vertices
  std::vector<double> mean_defects;   // per lattice size
  std::vector<double> residuals;      // mean - rho * n_edges
  std::uint64_t trials_per_size = 0;
};

// Least-squares (through the origin) slope of mean defect count against
// volume over >= 2 lattice sizes. No matching is run; only the local stage.
DensityFit defect_density(const std::vector<const CodeLattice*>& lats, double p,
                          const PredecoderParams& params, std::uint64_t trials,
                          std::uint64_t seed, int workers = 0);

// Number of worker threads to use: `requested`, or TSDEC_WORKERS, or the
// hardware concurrency.
int resolve_workers(int requested);

}  // namespace tsdec
