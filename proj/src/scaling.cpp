#include "xxring/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "xxring/observables.hpp"
#include "xxring/recurrence.hpp"
#include "xxring/util.hpp"

namespace xxring {
namespace {

void check_budget(std::span<const int> sizes, double points_per_size_factor, double step,
                  double budget) {
  double work = 0.0;
  for (int n : sizes)
    work += static_cast<double>(n) * (points_per_size_factor * static_cast<double>(n) / step);
  if (work > budget)
    throw budget_error("scaling sweep: requested work " + std::to_string(work) +
                       " exceeds the budget " + std::to_string(budget));
}

}  // namespace

ScalingTable sweep_eta(std::span<const int> sizes, double grid_step, double span_factor,
                       const SweepOptions& options) {
  if (sizes.empty()) throw std::invalid_argument("sweep_eta: no sizes given");
  for (int n : sizes)
    if (n < 2) throw std::invalid_argument("sweep_eta: every size must be >= 2");
  if (!(grid_step > 0.0) || grid_step > 0.1)
    throw std::invalid_argument("sweep_eta: grid_step must lie in (0, 0.1]");
  if (!(span_factor >= 1.0)) throw std::invalid_argument("sweep_eta: span_factor must be >= 1");
  check_budget(sizes, span_factor, grid_step, options.work_budget);

  ScalingTable table;
  table.grid_step = grid_step;
  table.grid_span_factor = span_factor;
  for (int n : sizes) {
    const ChainSpec spec{n, options.coupling, options.onsite};
    const auto taus = make_grid(span_factor * static_cast<double>(n), grid_step);
    const auto ct = total_correlation_series(spec, taus, options.threads);
    const CorrelationPeak peak = correlation_peak(taus, ct, spec);
    table.rows.push_back(ScalingRow{n, eta(n, ct), peak.tau_star, peak.c_star});
  }
  std::sort(table.rows.begin(), table.rows.end(),
            [](const ScalingRow& a, const ScalingRow& b) { return a.n_sites < b.n_sites; });
  return table;
}

PowerLawFit fit_power_law(const ScalingTable& table) {
  if (table.rows.size() < 3)
    throw std::invalid_argument("fit_power_law: need at least 3 rows");
  std::vector<double> x, y;
  for (const ScalingRow& row : table.rows) {
    if (!(row.eta > 0.0)) throw std::domain_error("fit_power_law: eta must be positive");
    x.push_back(std::log(static_cast<double>(row.n_sites)));
    y.push_back(std::log(row.eta));
  }
  const auto n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  if (det == 0.0) throw std::invalid_argument("fit_power_law: sizes must be distinct");
  PowerLawFit fit;
  const double slope = (n * sxy - sx * sy) / det;
  fit.alpha = -slope;
  fit.log_intercept = (sy - slope * sx) / n;
  double rss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.log_intercept + slope * x[i]);
    rss += r * r;
  }
  fit.residual_rms = std::sqrt(rss / n);
  return fit;
}

ScaledTrajectories scaled_trajectories(std::span<const int> sizes, int points,
                                       const SweepOptions& options) {
  if (sizes.empty()) throw std::invalid_argument("scaled_trajectories: no sizes given");
  for (int n : sizes)
    if (n < 2) throw std::invalid_argument("scaled_trajectories: every size must be >= 2");
  if (points < 100) throw std::invalid_argument("scaled_trajectories: need points >= 100");
  double work = 0.0;
  for (int n : sizes) work += static_cast<double>(n) * points;
  if (work > options.work_budget)
    throw budget_error("scaled_trajectories: requested work exceeds the budget");

  constexpr double kSpan = 1.2;
  ScaledTrajectories result;
  result.scaled_time.resize(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    result.scaled_time[static_cast<std::size_t>(i)] =
        kSpan * static_cast<double>(i) / static_cast<double>(points - 1);

  for (int n : sizes) {
    const ChainSpec spec{n, options.coupling, options.onsite};
    std::vector<double> taus(result.scaled_time.size());
    for (std::size_t i = 0; i < taus.size(); ++i)
      taus[i] = result.scaled_time[i] * static_cast<double>(n);
    const auto ct = total_correlation_series(spec, taus, options.threads);
    std::vector<double> curve(ct.size());
    for (std::size_t i = 0; i < ct.size(); ++i) curve[i] = ct[i] / static_cast<double>(n);
    result.sizes.push_back(n);
    result.ct_over_n.push_back(std::move(curve));
    result.cmax_over_n.push_back(correlation_max(n) / static_cast<double>(n));
  }
  return result;
}

}  // namespace xxring
