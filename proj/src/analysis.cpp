#include "tsdec/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "tsdec/predecoder.hpp"

namespace tsdec {

int lw(int d, const Scheme& scheme) {
  if (d < 4 || d % 2 != 0) throw std::invalid_argument("d must be even and >= 4");
  const int m = d / 2;
  if (scheme.is_mwpm_only()) return m;
  const int s = scheme.r_tilde() + 2;
  const int formula = ((s - 1) * (m + 1) + s - 1) / s;  // ceil((s-1)(m+1)/s)
  return std::min(m, formula);
}

double log2_multiplicity(int d, const Scheme& scheme, const AnsatzModel& model) {
  if (scheme.is_mwpm_only()) return 2.0 * d;  // 4^d = 2^{4 lw}
  if (model.kind == MultiplicityModel::Rough) return static_cast<double>(d);  // 2^d
  const int period = 2 * (scheme.r_tilde() + 2);
  const int a = (d + 2) / period;
  const int b = (d + 2) - period * a;
  return static_cast<double>(period * a - 2) + model.alpha * b;
}

double log_ansatz_failure(int d, double p, const Scheme& scheme, const AnsatzModel& model) {
  if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("p must lie in (0, 1)");
  return log2_multiplicity(d, scheme, model) * std::log(2.0) + lw(d, scheme) * std::log(p);
}

double ansatz_failure(int d, double p, const Scheme& scheme, const AnsatzModel& model) {
  return std::exp(log_ansatz_failure(d, p, scheme, model));
}

int required_distance(double p, double f_target, const Scheme& scheme, const AnsatzModel& model,
                      int d_max) {
  if (f_target <= 0.0 || f_target >= 1.0) throw std::invalid_argument("f_target must lie in (0, 1)");
  const double log_target = std::log(f_target);
  for (int d = 4; d <= d_max; d += 2) {
    if (log_ansatz_failure(d, p, scheme, model) <= log_target) return d;
  }
  throw std::runtime_error("no distance below d_max reaches the target failure probability");
}

double effective_mwpm_distance(int d, double p, const Scheme& scheme, const AnsatzModel& model) {
  if (scheme.is_mwpm_only()) return d;
  // Matching alone: log f(d') = d' (2 log 2 + log(p)/2), continuous in d'.
  const double log_f = log_ansatz_failure(d, p, scheme, model);
  return log_f / (2.0 * std::log(2.0) + 0.5 * std::log(p));
}

DensityModelResult density_model(double p, const Scheme& scheme) {
  if (scheme.is_mwpm_only()) return {2.0 * p, false};
  const int vr = isolation_volume(*scheme.r);
  const double rho = (*scheme.r == 0 ? 1.0 : 2.0) * p * p * vr;
  return {rho, p * vr >= 1.0};
}

double runtime_ratio_model(double p, const Scheme& scheme) {
  const double rho_pre = density_model(p, scheme).rho;
  const double rho_mwpm = density_model(p, Scheme::mwpm_only()).rho;
  const double ratio = rho_pre / rho_mwpm;
  return ratio * ratio;
}

double poisson_tail(double lambda, std::uint64_t m) {
  if (lambda <= 0.0) return 0.0;
  const long double ll = static_cast<long double>(lambda);
  if (static_cast<long double>(m) < ll) {
    // Head is the smaller piece only deep in the upper tail; here the lower
    // sum is accurate in extended precision.
    long double term = expl(-ll);
    long double cdf = 0.0L;
    for (std::uint64_t k = 0; k <= m; ++k) {
      cdf += term;
      term *= ll / static_cast<long double>(k + 1);
    }
    return static_cast<double>(1.0L - cdf);
  }
  long double term = expl(-ll + static_cast<long double>(m + 1) * logl(ll) -
                          lgammal(static_cast<long double>(m) + 2.0L));
  long double sum = 0.0L;
  for (std::uint64_t k = m + 1;; ++k) {
    sum += term;
    term *= ll / static_cast<long double>(k + 1);
    if (term < sum * 1e-25L) break;
  }
  return static_cast<double>(sum);
}

std::uint64_t poisson_mmax(double rho, double volume, double f) {
  if (f <= 0.0 || f >= 1.0) throw std::invalid_argument("percentile target must lie in (0, 1)");
  const double lambda = rho * volume / 2.0;
  if (lambda <= 0.0) throw std::invalid_argument("rho * volume must be positive");
  for (std::uint64_t m = 0;; ++m) {
    if (poisson_tail(lambda, m) <= f) return 2 * m;
  }
}

LinearFit ols(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("OLS needs at least two points");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("degenerate OLS abscissae");
  LinearFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    fit.residuals.push_back(y[i] - (fit.slope * x[i] + fit.intercept));
  }
  return fit;
}

ScalingFit scaling_fit(const std::vector<FailurePoint>& points) {
  // Group by p and fit log f = m d + c per error rate.
  std::map<double, std::vector<std::pair<double, double>>> by_p;  // p -> (d, log f)
  for (const FailurePoint& pt : points) {
    if (pt.f > 0.0) by_p[pt.p].emplace_back(pt.d, std::log(pt.f));
  }
  ScalingFit fit;
  std::vector<double> log_ps, ms;
  for (const auto& [p, rows] : by_p) {
    if (rows.size() < 2) continue;
    std::vector<double> ds, lfs;
    for (auto [d, lf] : rows) {
      ds.push_back(d);
      lfs.push_back(lf);
    }
    const double m = ols(ds, lfs).slope;
    fit.gradients.emplace_back(p, m);
    log_ps.push_back(std::log(p));
    ms.push_back(m);
  }
  if (ms.size() >= 2) {
    fit.k = ols(log_ps, ms).slope;
  }

  // Threshold: median pairwise crossing of adjacent-d curves in log-log.
  std::map<int, std::vector<std::pair<double, double>>> by_d;  // d -> (log p, log f)
  for (const FailurePoint& pt : points) {
    if (pt.f > 0.0) by_d[pt.d].emplace_back(std::log(pt.p), std::log(pt.f));
  }
  for (auto& [d, rows] : by_d) std::sort(rows.begin(), rows.end());
  std::vector<double> crossings;
  for (auto it = by_d.begin(); it != by_d.end(); ++it) {
    auto jt = std::next(it);
    if (jt == by_d.end()) break;
    const auto& lo = it->second;
    const auto& hi = jt->second;
    // Difference of the two curves on the shared p grid.
    std::vector<std::pair<double, double>> diff;
    for (const auto& [lp, lf] : lo) {
      for (const auto& [lp2, lf2] : hi) {
        if (std::abs(lp - lp2) < 1e-12) diff.emplace_back(lp, lf2 - lf);
      }
    }
    for (std::size_t i = 0; i + 1 < diff.size(); ++i) {
      const auto [x0, y0] = diff[i];
      const auto [x1, y1] = diff[i + 1];
      if (y0 == 0.0) {
        crossings.push_back(std::exp(x0));
      } else if ((y0 < 0.0) != (y1 < 0.0)) {
        crossings.push_back(std::exp(x0 + (x1 - x0) * (-y0) / (y1 - y0)));
      }
    }
  }
  if (!crossings.empty()) {
    std::sort(crossings.begin(), crossings.end());
    fit.p_th = crossings[crossings.size() / 2];
  }

  // C of f = C (p/p_th)^{kd}, averaged over all usable points.
  if (fit.p_th > 0.0 && fit.k != 0.0) {
    double acc = 0;
    std::size_t n = 0;
    for (const FailurePoint& pt : points) {
      if (pt.f <= 0.0) continue;
      acc += std::log(pt.f) - fit.k * pt.d * std::log(pt.p / fit.p_th);
      ++n;
    }
    if (n > 0) fit.scale_c = std::exp(acc / static_cast<double>(n));
  }
  return fit;
}

std::vector<RuntimeFitEntry> runtime_fit(const std::vector<RuntimePoint>& points) {
  // Mean runtime per (p, V), then per-p fits against volume.
  std::map<double, std::map<double, std::pair<double, int>>> acc;  // p -> V -> (sum rt, n)
  for (const RuntimePoint& pt : points) {
    auto& cell = acc[pt.p][pt.volume];
    cell.first += pt.rt_ns;
    cell.second += 1;
  }
  std::vector<RuntimeFitEntry> out;
  for (const auto& [p, by_v] : acc) {
    RuntimeFitEntry e;
    e.p = p;
    e.n_volumes = static_cast<int>(by_v.size());
    e.underpopulated = by_v.size() < 3;
    double sxy = 0, sxx = 0;
    std::vector<double> log_v, log_rt;
    for (const auto& [v, cell] : by_v) {
      const double mean_rt = cell.first / cell.second;
      sxy += mean_rt * v * v;
      sxx += v * v * v * v;
      if (mean_rt > 0.0) {
        log_v.push_back(std::log(v));
        log_rt.push_back(std::log(mean_rt));
      }
    }
    e.a_coeff = sxx > 0 ? sxy / sxx : 0.0;
    e.exponent = log_v.size() >= 2 ? ols(log_v, log_rt).slope : 0.0;
    out.push_back(e);
  }
  return out;
}

double fit_alpha(const std::vector<std::pair<int, double>>& d_and_f, double p, const Scheme& scheme) {
  if (scheme.is_mwpm_only()) throw std::invalid_argument("alpha applies to pre-decoded schemes");
  const int period = 2 * (scheme.r_tilde() + 2);
  double sby = 0, sbb = 0;
  for (auto [d, f] : d_and_f) {
    if (f <= 0.0) continue;
    const int a = (d + 2) / period;
    const int b = (d + 2) - period * a;
    if (b == 0) continue;
    const double log2_a_emp = (std::log(f) - lw(d, scheme) * std::log(p)) / std::log(2.0);
    sby += b * (log2_a_emp - (period * a - 2));
    sbb += static_cast<double>(b) * b;
  }
  if (sbb == 0.0) throw std::invalid_argument("no usable points with b != 0");
  return sby / sbb;
}

}  // namespace tsdec
