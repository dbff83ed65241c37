#pragma once

#include "ravel/types.hpp"

namespace ravel {

// Log-normal shadowing: rss(d) = P0 - 10 n log10(d) + N(0, sigma^2).
struct RadioModel {
  double p0 = -60.0;   // dBm at 1 m
  double n = 2.5;      // path loss exponent
  double sigma = 4.0;  // dB
};

struct PriorConfig {
  double p0_mode = -60.0;
  double p0_halfwidth = 15.0;
  double n_mode = 2.5;
  double n_halfwidth = 1.5;
  double grid_step_p0 = 1.0;
  double grid_step_n = 0.1;
};

// Deterministic part of the shadowing model. Distances below 0.1 m are
// clamped to avoid the log singularity.
double expected_rss(const RadioModel& model, double distance_m);

// log of (1/(2s)) (1 + cos(pi (x - mode)/s)) on |x-mode| <= s; the floor
// log(1e-300) outside the support.
double raised_cosine_log_prior(double value, double mode, double halfwidth);

double log_prior(const RadioModel& model, const PriorConfig& prior);

// L^r: normalized Gaussian log-likelihood of the radio measurements given
// the estimated trajectory, plus the model log-prior.
double radio_score(const std::vector<std::optional<Point2>>& trajectory,
                   const std::vector<RadioMeasurement>& radio,
                   const std::vector<Basestation>& basestations,
                   const RadioModel& model, const PriorConfig& prior,
                   int nonempty_count);

// Cartesian (P0, n) grid over the prior supports; sigma is held fixed.
std::vector<RadioModel> model_grid(const PriorConfig& prior,
                                   double sigma = 4.0);

// Least-squares fit of rssi against -10 log10(distance); the survey-based
// reference ("fitted") model. Sigma is the residual std, floored at 0.1 dB.
RadioModel fit_reference_model(
    const std::vector<std::pair<double, double>>& distance_rssi);

}  // namespace ravel
