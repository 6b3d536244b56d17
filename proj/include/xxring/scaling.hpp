#pragma once

#include <span>
#include <vector>

#include "xxring/chain.hpp"

namespace xxring {

struct ScalingRow {
  int n_sites = 0;
  double eta = 0.0;
  double tau_star = 0.0;
  double c_star = 0.0;
};

struct ScalingTable {
  std::vector<ScalingRow> rows;  // sorted by n_sites
  double grid_step = 0.0;
  double grid_span_factor = 0.0;
};

struct PowerLawFit {
  double alpha = 0.0;          // eta ~ N^(-alpha)
  double log_intercept = 0.0;
  double residual_rms = 0.0;   // in log-log space
};

struct SweepOptions {
  double coupling = 1.0;
  double onsite = 0.0;
  double work_budget = 2e9;  // refuse sweeps above sum_i N_i * (span*N_i/step)
  int threads = 1;
};

// Per-size run over the grid tau in [0, span_factor * N]: C_T series, eta,
// and the correlation peak. Work above options.work_budget is refused.
ScalingTable sweep_eta(std::span<const int> sizes, double grid_step = 0.05,
                       double span_factor = 1.0, const SweepOptions& options = {});

// Unweighted least squares of ln(eta) against ln(N).
PowerLawFit fit_power_law(const ScalingTable& table);

// C_T(tau)/N for every size, sampled at shared scaled-time abscissae
// tau/N in [0, 1.2], plus the per-size reference level c_max/N.
struct ScaledTrajectories {
  std::vector<double> scaled_time;
  std::vector<int> sizes;
  std::vector<std::vector<double>> ct_over_n;  // [size][point]
  std::vector<double> cmax_over_n;
};

ScaledTrajectories scaled_trajectories(std::span<const int> sizes, int points,
                                       const SweepOptions& options = {});

}  // namespace xxring
