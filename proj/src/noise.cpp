#include "tsdec/noise.hpp"

#include <cmath>
#include <stdexcept>

#include "tsdec/rng.hpp"

namespace tsdec {

ErrorConfig sample_error(const CodeLattice& lat, const NoiseParams& params, std::mt19937_64& rng) {
  const double p = params.p;
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument("error rate must lie in [0, 1]");
  }
  ErrorConfig err{BitVec(lat.n_edges())};
  if (p == 0.0) return err;
  if (p == 1.0) {
    err.bits.set();
    return err;
  }
  // Geometric gap sampling: O(expected fault count) draws per trial.
  const double log_q = std::log1p(-p);
  const std::uint64_t n = lat.n_edges();
  std::uint64_t i = 0;
  for (;;) {
    double gap = std::floor(std::log(uniform_unit(rng)) / log_q);
    if (gap >= static_cast<double>(n - i)) break;
    i += static_cast<std::uint64_t>(gap);
    err.bits.set(i);
    if (++i >= n) break;
  }
  return err;
}

SyndromeHistory syndrome_of(const CodeLattice& lat, const ErrorConfig& error) {
  SyndromeHistory s{BitVec(lat.n_vertices())};
  for (auto e = error.bits.find_first(); e != BitVec::npos; e = error.bits.find_next(e)) {
    auto [a, b] = lat.edge_endpoints(static_cast<std::uint32_t>(e));
    s.bits.flip(a);
    s.bits.flip(b);
  }
  return s;
}

}  // namespace tsdec
