#include "tsdec/rare_event.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "tsdec/analysis.hpp"
#include "tsdec/errors.hpp"
#include "tsdec/rng.hpp"

namespace tsdec {

ErrorConfig construct_failing_error(const CodeLattice& lat, const PredecoderParams& params) {
  const int d = lat.d();
  if (d / 2 < 2) throw std::invalid_argument("need d/2 >= 2");
  const int m = d / 2;

  // Interior flips to remove: every (r~+2)-th position, provided a full run
  // of r~+1 kept flips still separates each gap from its neighbors and from
  // the string endpoints.
  std::vector<bool> keep(static_cast<std::size_t>(m) + 1, true);
  if (params.enabled()) {
    const int s = params.r_tilde() + 2;
    for (int j = s; j <= m - (s - 1); j += s) {
      keep[static_cast<std::size_t>(j)] = false;
    }
  }

  for (std::uint32_t base = 0; base < lat.n_stab(); ++base) {
    const VertexId c0 = lat.address_vertex(base);
    ErrorConfig err{BitVec(lat.n_edges())};
    for (int j = 1; j <= m; ++j) {
      if (!keep[static_cast<std::size_t>(j)]) continue;
      const std::uint32_t q = lat.qubit_id((c0.x + j) % d, (c0.y + j) % d);
      err.bits.set(lat.space_edge_id(q, 0));
    }
    if (run_trial_on(lat, err, params).failed()) return err;
  }
  throw InvariantViolation(
      "no translate of the least-weight string construction fails; path "
      "tie-breaking convention mismatch");
}

FailingChainState metropolis_step(const CodeLattice& lat, const PredecoderParams& params,
                                  const FailingChainState& state, double p, std::mt19937_64& rng) {
  // Fixed draw count per step keeps the stream position deterministic.
  std::uniform_int_distribution<std::uint32_t> pick(0, lat.n_edges() - 1);
  const std::uint32_t edge = pick(rng);
  const double u = uniform_unit(rng);

  const bool adding = !state.error.bits.test(edge);
  if (adding) {
    const double accept = p / (1.0 - p);
    if (u > accept) return state;
  }
  ErrorConfig proposal = state.error;
  proposal.bits.flip(edge);
  if (!run_trial_on(lat, proposal, params).failed()) return state;
  return FailingChainState{std::move(proposal), state.fault_count + (adding ? 1 : -1)};
}

RatioEstimate ratio_estimate(const std::vector<std::uint64_t>& fault_counts,
                             std::uint64_t n_edges, double p_from, double p_to) {
  if (fault_counts.empty()) throw std::invalid_argument("ratio estimate needs samples");
  if (p_from <= 0 || p_from >= 0.5 || p_to <= 0 || p_to >= 0.5) {
    throw std::invalid_argument("error rates must lie in (0, 0.5)");
  }
  const double la = std::log(p_to / p_from);
  const double lb = std::log((1.0 - p_to) / (1.0 - p_from));
  const std::size_t n = fault_counts.size();

  std::vector<double> logw(n);
  double logw_max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double e = static_cast<double>(fault_counts[i]);
    logw[i] = e * la + (static_cast<double>(n_edges) - e) * lb;
    logw_max = std::max(logw_max, logw[i]);
  }
  std::vector<double> w(n);
  double mean = 0;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = std::exp(logw[i] - logw_max);
    mean += w[i];
  }
  mean /= static_cast<double>(n);

  double var = 0;
  for (double x : w) var += (x - mean) * (x - mean);
  var = n > 1 ? var / static_cast<double>(n - 1) : 0.0;

  // Effective sample size from the initial positive autocorrelations of the
  // (thinned) weight series.
  double tau = 1.0;
  if (var > 0 && n > 2) {
    for (std::size_t k = 1; k < n / 4; ++k) {
      double acc = 0;
      for (std::size_t i = 0; i + k < n; ++i) acc += (w[i] - mean) * (w[i + k] - mean);
      const double rho = acc / (static_cast<double>(n - k) * var);
      if (rho <= 0.0) break;
      tau += 2.0 * rho;
    }
  }
  const double ess = static_cast<double>(n) / tau;

  RatioEstimate est;
  est.p_from = p_from;
  est.p_to = p_to;
  est.estimate = mean * std::exp(logw_max);
  est.stderr_value = std::sqrt(var / ess) * std::exp(logw_max);
  est.sample_count = n;
  est.effective_sample_size = ess;
  return est;
}

namespace {

// Worst-case |log likelihood ratio| over plausible fault counts; used to
// keep rung spacing tame.
double log_ratio_bound(double p_from, double p_to, std::uint64_t n_edges, int lw_weight) {
  const double la = std::log(p_to / p_from);
  const double lb = std::log((1.0 - p_to) / (1.0 - p_from));
  const double n = static_cast<double>(n_edges);
  const double e_lo = static_cast<double>(lw_weight);
  const double e_hi = std::max(e_lo, 2.0 * p_from * n);
  const double a = std::abs(e_lo * la + (n - e_lo) * lb);
  const double b = std::abs(e_hi * la + (n - e_hi) * lb);
  return std::max(a, b);
}

std::vector<double> expand_ladder(std::vector<double> ladder, std::uint64_t n_edges, int lw_weight,
                                  double max_abs_log_ratio, std::vector<bool>& inserted) {
  std::vector<double> out;
  std::vector<bool> flag;
  out.push_back(ladder.front());
  flag.push_back(false);
  for (std::size_t i = 1; i < ladder.size(); ++i) {
    // Geometric midpoints until each hop's log-ratio bound is acceptable.
    std::vector<double> stack{ladder[i]};
    while (!stack.empty()) {
      double next = stack.back();
      if (log_ratio_bound(out.back(), next, n_edges, lw_weight) > max_abs_log_ratio) {
        stack.push_back(std::sqrt(out.back() * next));
      } else {
        out.push_back(next);
        flag.push_back(stack.size() > 1);
        stack.pop_back();
      }
    }
    flag.back() = false;  // the original rung itself
  }
  inserted = flag;
  return out;
}

}  // namespace

LadderResult splitting_ladder(const CodeLattice& lat, const PredecoderParams& params,
                              std::vector<double> p_ladder, const ChainConfig& chains,
                              const StopRule& anchor_stop, std::uint64_t seed, int workers) {
  if (p_ladder.empty()) throw std::invalid_argument("empty ladder");
  for (std::size_t i = 1; i < p_ladder.size(); ++i) {
    if (p_ladder[i] >= p_ladder[i - 1]) {
      throw std::invalid_argument("ladder must be strictly descending");
    }
  }
  const Scheme scheme = params.enabled() ? Scheme::pre(*params.radius) : Scheme::mwpm_only();
  std::vector<bool> inserted;
  const std::vector<double> ladder =
      expand_ladder(std::move(p_ladder), lat.n_edges(), lw(lat.d(), scheme),
                    chains.max_abs_log_ratio, inserted);

  LadderResult result;
  result.anchor =
      direct_mc(lat, ladder.front(), params, anchor_stop, splitmix64(seed ^ 0xA11C0), workers).failures;

  LadderRung first;
  first.p = ladder.front();
  first.f = result.anchor.failure_probability();
  first.f_stderr = result.anchor.stderr_binomial();
  result.rungs.push_back(first);

  double f = first.f;
  double rel_var = first.f > 0 ? std::pow(first.f_stderr / first.f, 2.0) : 0.0;

  const ErrorConfig init = construct_failing_error(lat, params);
  const int nworkers = resolve_workers(workers);
  const auto n_steps_burn =
      static_cast<std::uint64_t>(std::ceil(chains.burn_in_sweeps * lat.n_edges()));
  const auto n_steps_thin =
      static_cast<std::uint64_t>(std::ceil(chains.thin_sweeps * lat.n_edges()));

  for (std::size_t k = 0; k + 1 < ladder.size(); ++k) {
    const double p_from = ladder[k];
    const double p_to = ladder[k + 1];

    std::vector<std::vector<std::uint64_t>> per_chain(static_cast<std::size_t>(chains.n_chains));
    std::vector<std::thread> pool;
    std::atomic<int> next_chain{0};
    auto run_chain = [&](int c) {
      std::mt19937_64 rng =
          make_stream(seed, (static_cast<std::uint64_t>(k) << 32) | static_cast<std::uint64_t>(c));
      FailingChainState state{init, init.bits.count()};
      for (std::uint64_t i = 0; i < n_steps_burn; ++i) {
        state = metropolis_step(lat, params, state, p_from, rng);
      }
      const int quota = chains.n_samples / chains.n_chains +
                        (c < chains.n_samples % chains.n_chains ? 1 : 0);
      for (int sidx = 0; sidx < quota; ++sidx) {
        for (std::uint64_t i = 0; i < n_steps_thin; ++i) {
          state = metropolis_step(lat, params, state, p_from, rng);
        }
        if (!run_trial_on(lat, state.error, params).failed()) {
          throw InvariantViolation("retained chain sample does not fail the pipeline");
        }
        per_chain[static_cast<std::size_t>(c)].push_back(state.fault_count);
      }
    };
    const int threads = std::min(nworkers, chains.n_chains);
    if (threads <= 1) {
      for (int c = 0; c < chains.n_chains; ++c) run_chain(c);
    } else {
      for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&]() {
          for (;;) {
            int c = next_chain.fetch_add(1);
            if (c >= chains.n_chains) return;
            run_chain(c);
          }
        });
      }
      for (auto& th : pool) th.join();
    }

    std::vector<std::uint64_t> samples;
    for (const auto& v : per_chain) samples.insert(samples.end(), v.begin(), v.end());

    const RatioEstimate ratio = ratio_estimate(samples, lat.n_edges(), p_from, p_to);
    f *= ratio.estimate;
    if (ratio.estimate > 0) {
      rel_var += std::pow(ratio.stderr_value / ratio.estimate, 2.0);
    }

    LadderRung rung;
    rung.p = p_to;
    rung.f = f;
    rung.f_stderr = f * std::sqrt(rel_var);
    rung.ratio_from_prev = ratio.estimate;
    rung.ratio_stderr = ratio.stderr_value;
    rung.ess = ratio.effective_sample_size;
    rung.flagged = ratio.effective_sample_size < chains.ess_floor;
    rung.inserted = inserted[k + 1];
    result.rungs.push_back(rung);
  }
  return result;
}

}  // namespace tsdec
