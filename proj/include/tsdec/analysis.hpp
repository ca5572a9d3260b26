#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tsdec {

// Decoding scheme selector for the closed-form models: pure global matching
// or the two-stage scheme with isolation radius r.
struct Scheme {
  std::optional<int> r;

  static Scheme mwpm_only() { return Scheme{std::nullopt}; }
  static Scheme pre(int radius) { return Scheme{radius}; }
  bool is_mwpm_only() const { return !r.has_value(); }
  int r_tilde() const { return std::max(*r, 1); }
  std::string name() const { return is_mwpm_only() ? "mwpm" : "pre" + std::to_string(*r); }
};

// Weight of the least-weight failing error. Global matching alone fails at
// d/2; the two-stage scheme at ceil((r~+1)/(r~+2) * (d/2 + 1)), never above
// d/2 (a plain half-cycle string still defeats it).
int lw(int d, const Scheme& scheme);

enum class MultiplicityModel { Rough, Refined };

struct AnsatzModel {
  MultiplicityModel kind = MultiplicityModel::Rough;
  double alpha = 2.5;  // refined-model fit parameter

  static AnsatzModel rough() { return {}; }
  static AnsatzModel refined(double alpha) { return {MultiplicityModel::Refined, alpha}; }
};

// log2 of the least-weight-error multiplicity A(d).
double log2_multiplicity(int d, const Scheme& scheme, const AnsatzModel& model);

// f = A(d) p^lw(d); the log form avoids underflow at large d.
double log_ansatz_failure(int d, double p, const Scheme& scheme, const AnsatzModel& model);
double ansatz_failure(int d, double p, const Scheme& scheme, const AnsatzModel& model);

// Smallest even d with predicted failure probability <= f_target.
int required_distance(double p, double f_target, const Scheme& scheme, const AnsatzModel& model,
                      int d_max = 400);

// Real-valued distance at which matching alone matches the two-stage
// scheme's predicted failure probability.
double effective_mwpm_distance(int d, double p, const Scheme& scheme, const AnsatzModel& model);

struct DensityModelResult {
  double rho = 0.0;          // defects per fault location
  bool extrapolated = false;  // p outside the model's validity domain
};

// Defect density models: 2p without pre-decoding, p^2 V0 at r = 0,
// 2 p^2 V_r at r >= 1; valid for p < 1/V_r.
DensityModelResult density_model(double p, const Scheme& scheme);

// Model ratio RT_two_stage / RT_matching_only = (rho_pre / rho_mwpm)^2.
double runtime_ratio_model(double p, const Scheme& scheme);

// P(Poisson(lambda) > m), summed at extended precision.
double poisson_tail(double lambda, std::uint64_t m);

// Smallest even M with P(Poisson(rho*volume/2) > M/2) <= f. For per-round
// figures pass volume/rounds.
std::uint64_t poisson_mmax(double rho, double volume, double f);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<double> residuals;
};

// Ordinary least squares y = slope * x + intercept.
LinearFit ols(const std::vector<double>& x, const std::vector<double>& y);

struct FailurePoint {
  int d = 0;
  double p = 0.0;
  double f = 0.0;  // points with f <= 0 are skipped by the fits
};

struct ScalingFit {
  std::vector<std::pair<double, double>> gradients;  // (p, m) from log f = m d + c
  double k = 0.0;       // slope of m against log p
  double p_th = 0.0;    // median pairwise crossing of adjacent-d curves
  double scale_c = 0.0;  // constant C of f = C (p/p_th)^{kd}
};

ScalingFit scaling_fit(const std::vector<FailurePoint>& points);

struct RuntimePoint {
  double p = 0.0;
  double volume = 0.0;
  double defects = 0.0;
  double rt_ns = 0.0;
};

struct RuntimeFitEntry {
  double p = 0.0;
  double a_coeff = 0.0;   // RT = A(p) V^2, least squares
  double exponent = 0.0;  // slope of log RT vs log V
  int n_volumes = 0;
  bool underpopulated = false;  // fewer than 3 volumes
};

std::vector<RuntimeFitEntry> runtime_fit(const std::vector<RuntimePoint>& points);

// Refined-model alpha from empirical (d, f) pairs at a fixed error rate.
double fit_alpha(const std::vector<std::pair<int, double>>& d_and_f, double p, const Scheme& scheme);

}  // namespace tsdec
