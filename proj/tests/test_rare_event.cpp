#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "tsdec/analysis.hpp"
#include "tsdec/rare_event.hpp"
#include "tsdec/rng.hpp"

using namespace tsdec;

TEST_CASE("constructed failing errors have the predicted weight and fail") {
  struct Case {
    int d;
    int r;
    int weight;
  };
  // Weights follow lw(d, scheme); spot values pinned directly.
  for (const Case& c : {Case{10, 0, 4}, Case{6, 0, 3}, Case{16, 0, 6}, Case{4, 0, 2}}) {
    auto lat = CodeLattice::build(c.d);
    auto params = PredecoderParams::with_radius(c.r);
    auto err = construct_failing_error(lat, params);
    CHECK(static_cast<int>(err.bits.count()) == c.weight);
    CHECK(static_cast<int>(err.bits.count()) == lw(c.d, Scheme::pre(c.r)));
    CHECK(run_trial_on(lat, err, params).failed());
  }
}

TEST_CASE("construction also defeats plain matching at weight d/2") {
  auto lat = CodeLattice::build(8);
  auto err = construct_failing_error(lat, PredecoderParams::disabled());
  CHECK(err.bits.count() == 4);
  CHECK(run_trial_on(lat, err, PredecoderParams::disabled()).failed());
}

TEST_CASE("metropolis: proposals that stop failing are always rejected") {
  auto lat = CodeLattice::build(6);
  auto params = PredecoderParams::with_radius(0);
  auto err = construct_failing_error(lat, params);
  FailingChainState state{err, err.bits.count()};
  // At p close to 1/2 the probability gate almost always passes, so
  // rejections are dominated by the failing-set restriction; the state must
  // always remain failing.
  auto rng = make_stream(8, 0);
  for (int i = 0; i < 300; ++i) {
    state = metropolis_step(lat, params, state, 0.49, rng);
    REQUIRE(run_trial_on(lat, state.error, params).failed());
    REQUIRE(state.fault_count == state.error.bits.count());
  }
}

TEST_CASE("removing a fault is always accepted when the result still fails") {
  auto lat = CodeLattice::build(6);
  auto params = PredecoderParams::with_radius(0);
  auto base = construct_failing_error(lat, params);
  // Add a far-away fault: the configuration still fails; a proposal that
  // removes it has delta |E| = -1 and acceptance probability 1.
  ErrorConfig padded = base;
  const std::uint32_t extra = lat.time_edge_id(lat.vertex_address(VertexId{1, 3, 4}));
  padded.bits.set(extra);
  REQUIRE(run_trial_on(lat, padded, params).failed());

  // Drive the chain with a stream and log acceptance whenever the sampled
  // edge happens to be `extra`.
  auto rng = make_stream(9, 1);
  FailingChainState state{padded, padded.bits.count()};
  bool saw_removal = false;
  for (int i = 0; i < 4000 && !saw_removal; ++i) {
    auto prev = state.fault_count;
    bool had = state.error.bits.test(extra);
    state = metropolis_step(lat, params, state, 0.001, rng);
    if (had && !state.error.bits.test(extra)) {
      CHECK(state.fault_count == prev - 1);
      saw_removal = true;
    }
  }
  CHECK(saw_removal);
}

TEST_CASE("ratio estimate: identity at equal rates and single-sample formula") {
  std::vector<std::uint64_t> counts{4, 5, 4, 6, 4};
  auto same = ratio_estimate(counts, 1000, 0.02, 0.02);
  CHECK(same.estimate == doctest::Approx(1.0));
  CHECK(same.stderr_value == doctest::Approx(0.0));

  auto single = ratio_estimate({7}, 500, 0.02, 0.01);
  const double expect = std::pow(0.01 / 0.02, 7.0) * std::pow(0.99 / 0.98, 500.0 - 7.0);
  CHECK(single.estimate == doctest::Approx(expect).epsilon(1e-12));
  CHECK_THROWS_AS(ratio_estimate({}, 100, 0.02, 0.01), std::invalid_argument);
}

TEST_CASE("chain equilibrium matches the exhaustively-computed conditional weight law") {
  // d=4 r=0: enumerate all failing configurations of weight 2 and 3 and
  // compare the chain's conditional visit ratio at p=0.1.
  auto lat = CodeLattice::build(4);
  auto params = PredecoderParams::with_radius(0);
  const std::uint32_t n = lat.n_edges();

  std::uint64_t n2 = 0, n3 = 0;
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = a + 1; b < n; ++b) {
      ErrorConfig e{BitVec(n)};
      e.bits.set(a);
      e.bits.set(b);
      if (run_trial_on(lat, e, params).failed()) ++n2;
      for (std::uint32_t c = b + 1; c < n; ++c) {
        ErrorConfig e3{BitVec(n)};
        e3.bits.set(a);
        e3.bits.set(b);
        e3.bits.set(c);
        if (run_trial_on(lat, e3, params).failed()) ++n3;
      }
    }
  }
  REQUIRE(n2 > 0);
  REQUIRE(n3 > 0);

  const double p = 0.1;
  const double q = p / (1 - p);
  const double expect_ratio = (static_cast<double>(n2) / static_cast<double>(n3)) / q;

  auto err = construct_failing_error(lat, params);
  FailingChainState state{err, err.bits.count()};
  auto rng = make_stream(4242, 0);
  for (std::uint32_t i = 0; i < 20 * n; ++i) state = metropolis_step(lat, params, state, p, rng);
  std::uint64_t visits2 = 0, visits3 = 0;
  const int steps = 400000;
  for (int i = 0; i < steps; ++i) {
    state = metropolis_step(lat, params, state, p, rng);
    if (state.fault_count == 2) ++visits2;
    if (state.fault_count == 3) ++visits3;
  }
  REQUIRE(visits2 > 100);
  REQUIRE(visits3 > 100);
  const double got_ratio = static_cast<double>(visits2) / static_cast<double>(visits3);
  // Correlated samples; allow a generous band around the exact law.
  CHECK(got_ratio == doctest::Approx(expect_ratio).epsilon(0.25));
}

TEST_CASE("ladder of length one reproduces the direct Monte Carlo anchor") {
  auto lat = CodeLattice::build(4);
  ChainConfig chains;
  chains.n_samples = 40;
  chains.n_chains = 2;
  auto out = splitting_ladder(lat, PredecoderParams::with_radius(0), {0.02}, chains,
                              StopRule{10, 50000}, 31);
  REQUIRE(out.rungs.size() == 1);
  CHECK(out.rungs[0].f == doctest::Approx(out.anchor.failure_probability()));
}

TEST_CASE("ladder output is monotone decreasing in p and deterministic") {
  auto lat = CodeLattice::build(6);
  ChainConfig chains;
  chains.n_samples = 120;
  chains.n_chains = 2;
  chains.burn_in_sweeps = 5.0;
  chains.thin_sweeps = 0.5;
  auto run = [&](int workers) {
    return splitting_ladder(lat, PredecoderParams::with_radius(0), {0.02, 0.015, 0.01}, chains,
                            StopRule{150, 200000}, 77, workers);
  };
  auto a = run(1);
  REQUIRE(a.rungs.size() == 3);
  CHECK(a.rungs[0].f > a.rungs[1].f);
  CHECK(a.rungs[1].f > a.rungs[2].f);
  for (const auto& rung : a.rungs) CHECK(rung.f > 0.0);

  auto b = run(2);
  for (std::size_t i = 0; i < a.rungs.size(); ++i) {
    CHECK(a.rungs[i].f == doctest::Approx(b.rungs[i].f).epsilon(1e-12));
    CHECK(a.rungs[i].ess == doctest::Approx(b.rungs[i].ess).epsilon(1e-12));
  }
}

TEST_CASE("ladder rejects malformed rate lists") {
  auto lat = CodeLattice::build(4);
  ChainConfig chains;
  CHECK_THROWS_AS(splitting_ladder(lat, PredecoderParams::with_radius(0), {}, chains, StopRule{},
                                   1),
                  std::invalid_argument);
  CHECK_THROWS_AS(splitting_ladder(lat, PredecoderParams::with_radius(0), {0.01, 0.02}, chains,
                                   StopRule{}, 1),
                  std::invalid_argument);
}

TEST_CASE("wide rungs get geometric midpoints inserted") {
  auto lat = CodeLattice::build(4);
  ChainConfig chains;
  chains.n_samples = 30;
  chains.n_chains = 1;
  chains.burn_in_sweeps = 2.0;
  chains.thin_sweeps = 0.25;
  // 0.02 -> 0.001 in one hop has |log ratio| far above 3.
  auto out = splitting_ladder(lat, PredecoderParams::with_radius(0), {0.02, 0.001}, chains,
                              StopRule{20, 100000}, 3);
  CHECK(out.rungs.size() > 2);
  bool any_inserted = false;
  for (const auto& rung : out.rungs) any_inserted |= rung.inserted;
  CHECK(any_inserted);
  CHECK(out.rungs.back().p == doctest::Approx(0.001));
}
