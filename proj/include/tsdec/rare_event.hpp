#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "tsdec/evaluation.hpp"
#include "tsdec/lattice.hpp"
#include "tsdec/noise.hpp"
#include "tsdec/predecoder.hpp"

namespace tsdec {

// A least-weight error that defeats the configured scheme: a contiguous
// diagonal string of d/2 phase flips at one time slice with every
// (r~+2)-th interior flip removed, translated until the matcher's
// tie-breaking resolves against it. The result is verified failing.
ErrorConfig construct_failing_error(const CodeLattice& lat, const PredecoderParams& params);

// State of a Metropolis-Hastings chain over the failing-error set.
struct FailingChainState {
  ErrorConfig error;
  std::uint64_t fault_count = 0;
};

// Single-edge-toggle proposal, accepted with min(1, (p/(1-p))^d|E|) and only
// if the toggled configuration still fails the full pipeline. Consumes a
// fixed number of random draws per call regardless of outcome.
FailingChainState metropolis_step(const CodeLattice& lat, const PredecoderParams& params,
                                  const FailingChainState& state, double p, std::mt19937_64& rng);

struct RatioEstimate {
  double p_from = 0.0;
  double p_to = 0.0;
  double estimate = 0.0;  // f(p_to) / f(p_from)
  double stderr_value = 0.0;
  std::uint64_t sample_count = 0;
  double effective_sample_size = 0.0;
};

// Conditional-expectation estimator of f(p_to)/f(p_from) from fault counts
// of samples distributed over the failing set at p_from. The standard error
// uses an autocorrelation-based effective sample size.
RatioEstimate ratio_estimate(const std::vector<std::uint64_t>& fault_counts,
                             std::uint64_t n_edges, double p_from, double p_to);

struct ChainConfig {
  int n_samples = 1000;          // retained per rung (split over chains)
  int n_chains = 4;
  double burn_in_sweeps = 10.0;  // in units of N_edges steps
  double thin_sweeps = 1.0;
  double ess_floor = 50.0;
  double max_abs_log_ratio = 3.0;  // rung spacing bound; midpoints inserted
};

struct LadderRung {
  double p = 0.0;
  double f = 0.0;
  double f_stderr = 0.0;
  double ratio_from_prev = 1.0;  // f(p_k)/f(p_{k-1})
  double ratio_stderr = 0.0;
  double ess = 0.0;
  bool flagged = false;  // effective sample size below the configured floor
  bool inserted = false;  // auto-inserted intermediate rung
};

struct LadderResult {
  std::vector<LadderRung> rungs;
  FailureStats anchor;  // direct Monte Carlo at the first rung
};

// Splitting-method failure probabilities down a descending ladder of error
// rates, anchored by direct Monte Carlo at the first (largest) rate.
LadderResult splitting_ladder(const CodeLattice& lat, const PredecoderParams& params,
                              std::vector<double> p_ladder, const ChainConfig& chains,
                              const StopRule& anchor_stop, std::uint64_t seed, int workers = 0);

}  // namespace tsdec
