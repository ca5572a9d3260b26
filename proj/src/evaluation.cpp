#include "tsdec/evaluation.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <thread>

#include "tsdec/codec.hpp"
#include "tsdec/errors.hpp"
#include "tsdec/rng.hpp"

namespace tsdec {

double FailureStats::stderr_binomial() const {
  if (trials == 0) return 0.0;
  const double f = failure_probability();
  return std::sqrt(f * (1.0 - f) / static_cast<double>(trials));
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("TSDEC_WORKERS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

namespace {

// Runs fn(i) for i in [begin, end) across `workers` threads. fn must be a
// pure function of i writing only to per-index slots.
void parallel_for(std::uint64_t begin, std::uint64_t end, int workers,
                  const std::function<void(std::uint64_t)>& fn) {
  if (end <= begin) return;
  if (workers <= 1) {
    for (std::uint64_t i = begin; i < end; ++i) fn(i);
    return;
  }
  std::atomic<std::uint64_t> next{begin};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        std::uint64_t i = next.fetch_add(1);
        if (i >= end) return;
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

std::pair<bool, bool> logical_failure(const CodeLattice& lat, const ErrorConfig& residual) {
  if (syndrome_of(lat, residual).bits.any()) {
    throw InvariantViolation("residual error has a non-empty syndrome");
  }
  // Collapse the space-like faults over time into per-qubit parities.
  BitVec qubit(lat.n_qubits());
  for (auto e = residual.bits.find_first(); e != BitVec::npos; e = residual.bits.find_next(e)) {
    if (lat.is_space_edge(static_cast<std::uint32_t>(e))) {
      qubit.flip(lat.qubit_of_space_edge(static_cast<std::uint32_t>(e)));
    }
  }
  bool wind_x = false;  // crossings of the cut between columns d-1 and 0
  bool wind_y = false;  // crossings of the cut between rows d-1 and 0
  for (int k = 0; k < lat.d(); ++k) {
    if (qubit.test(lat.qubit_id(0, k))) wind_x = !wind_x;
    if (qubit.test(lat.qubit_id(k, 0))) wind_y = !wind_y;
  }
  return {wind_x, wind_y};
}

TrialRecord run_trial_on(const CodeLattice& lat, const ErrorConfig& error,
                         const PredecoderParams& params) {
  TrialRecord rec;
  const SyndromeHistory s = syndrome_of(lat, error);
  rec.defects_raw = static_cast<std::uint32_t>(s.bits.count());

  const PredecodeOutcome pre = predecode(lat, s, params);
  rec.defects_after_predecode = static_cast<std::uint32_t>(pre.modified_syndrome.bits.count());
  if (rec.defects_after_predecode % 2 != 0) {
    throw InvariantViolation("modified syndrome has odd defect count");
  }

  const CompressedSyndrome msg = compress(lat, pre.modified_syndrome);
  const BandwidthReport bw = bandwidth_report(msg, lat);
  rec.ideal_bits = bw.ideal_bits;
  rec.model16_bits = bw.model16_bits;

  auto [matched, ns] = timed_mwpm(lat, msg.addresses);
  rec.matcher_time_ns = ns;
  const MatchingCorrection corr = correction_from_matching(matched, lat);

  ErrorConfig residual = error ^ pre.matched_edges ^ corr.edges;
  auto [fx, fy] = logical_failure(lat, residual);
  rec.failure_x = fx;
  rec.failure_y = fy;
  return rec;
}

TrialRecord run_trial(const CodeLattice& lat, double p, const PredecoderParams& params,
                      std::uint64_t master_seed, std::uint64_t trial_index) {
  std::mt19937_64 rng = make_stream(master_seed, trial_index);
  TrialRecord rec = run_trial_on(lat, sample_error(lat, NoiseParams{p}, rng), params);
  rec.master_seed = master_seed;
  rec.trial_index = trial_index;
  return rec;
}

MonteCarloResult direct_mc(const CodeLattice& lat, double p, const PredecoderParams& params,
                           const StopRule& stop, std::uint64_t seed, int workers) {
  if (stop.min_failures == 0 || stop.max_trials == 0) {
    throw std::invalid_argument("stop criteria must be positive");
  }
  const int nworkers = resolve_workers(workers);
  constexpr std::uint64_t kBlock = 4096;  // fixed so results are worker-count independent

  MonteCarloResult out;
  std::vector<TrialRecord> block(kBlock);
  std::uint64_t done = 0;
  while (done < stop.max_trials && out.failures.failures < stop.min_failures) {
    const std::uint64_t count = std::min(kBlock, stop.max_trials - done);
    parallel_for(0, count, nworkers, [&](std::uint64_t i) {
      block[i] = run_trial(lat, p, params, seed, done + i);
    });
    for (std::uint64_t i = 0; i < count; ++i) {
      const TrialRecord& r = block[i];
      out.failures.trials += 1;
      out.failures.failures += r.failed() ? 1 : 0;
      out.failures.failures_x += r.failure_x ? 1 : 0;
      out.failures.failures_y += r.failure_y ? 1 : 0;
      out.defects.trials += 1;
      out.defects.total_defects += r.defects_after_predecode;
      out.defects.histogram[r.defects_after_predecode] += 1;
    }
    done += count;
  }
  out.failures.zero_failure_upper_bound = (out.failures.failures == 0);
  return out;
}

DensityFit defect_density(const std::vector<const CodeLattice*>& lats, double p,
                          const PredecoderParams& params, std::uint64_t trials,
                          std::uint64_t seed, int workers) {
  if (lats.size() < 2) {
    throw std::invalid_argument("density fit needs at least two lattice sizes");
  }
  const int nworkers = resolve_workers(workers);
  DensityFit fit;
  fit.trials_per_size = trials;

  std::vector<double> volumes_edges, volumes_vertices;
  for (std::size_t li = 0; li < lats.size(); ++li) {
    const CodeLattice& lat = *lats[li];
    std::vector<std::uint64_t> counts(trials, 0);
    parallel_for(0, trials, nworkers, [&](std::uint64_t i) {
      // Per-size seed stream; only the local stage runs.
      std::mt19937_64 rng = make_stream(splitmix64(seed + li), i);
      const SyndromeHistory s = syndrome_of(lat, sample_error(lat, NoiseParams{p}, rng));
      counts[i] = predecode(lat, s, params).modified_syndrome.bits.count();
    });
    std::uint64_t total = 0;
    for (std::uint64_t c : counts) total += c;
    fit.mean_defects.push_back(static_cast<double>(total) / static_cast<double>(trials));
    volumes_edges.push_back(static_cast<double>(lat.n_edges()));
    volumes_vertices.push_back(static_cast<double>(lat.n_vertices()));
  }

  // Model is mean = rho * volume; least squares through the origin.
  double sxy_e = 0, sxx_e = 0, sxy_v = 0, sxx_v = 0;
  for (std::size_t i = 0; i < fit.mean_defects.size(); ++i) {
    sxy_e += volumes_edges[i] * fit.mean_defects[i];
    sxx_e += volumes_edges[i] * volumes_edges[i];
    sxy_v += volumes_vertices[i] * fit.mean_defects[i];
    sxx_v += volumes_vertices[i] * volumes_vertices[i];
  }
  fit.rho_per_location = sxy_e / sxx_e;
  fit.rho_per_vertex = sxy_v / sxx_v;
  for (std::size_t i = 0; i < fit.mean_defects.size(); ++i) {
    fit.residuals.push_back(fit.mean_defects[i] - fit.rho_per_location * volumes_edges[i]);
  }
  return fit;
}

}  // namespace tsdec
