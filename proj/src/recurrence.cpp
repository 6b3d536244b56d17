#include "xxring/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace xxring {
namespace {

constexpr double kEnvelopeWindow = 0.5;  // scaled-time units of the moving maximum

double uniform_step(std::span<const double> taus, const char* who) {
  if (taus.size() < 2) throw std::invalid_argument(std::string(who) + ": grid too short");
  const double step = taus[1] - taus[0];
  if (!(step > 0.0)) throw std::invalid_argument(std::string(who) + ": grid must increase");
  return step;
}

// index of the first grid point >= value (grid uniform from 0)
std::size_t grid_floor_index(double value, double step, std::size_t size) {
  const double raw = std::ceil(value / step - 1e-9);
  const auto idx = raw <= 0.0 ? std::size_t{0} : static_cast<std::size_t>(raw);
  return idx >= size ? size - 1 : idx;
}

// index of the last grid point <= value
std::size_t grid_ceil_index(double value, double step, std::size_t size) {
  const double raw = std::floor(value / step + 1e-9);
  const auto idx = raw <= 0.0 ? std::size_t{0} : static_cast<std::size_t>(raw);
  return idx >= size ? size - 1 : idx;
}

std::vector<double> moving_maximum(const std::vector<double>& series, std::size_t half_width) {
  const std::size_t size = series.size();
  std::vector<double> env(size);
  for (std::size_t i = 0; i < size; ++i) {
    const std::size_t lo = i >= half_width ? i - half_width : 0;
    const std::size_t hi = std::min(size - 1, i + half_width);
    double best = series[lo];
    for (std::size_t j = lo + 1; j <= hi; ++j) best = std::max(best, series[j]);
    env[i] = best;
  }
  return env;
}

double median_of(std::vector<double> values) {
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid),
                   values.end());
  double m = values[mid];
  if (values.size() % 2 == 0) {
    const double lower =
        *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
    m = 0.5 * (m + lower);
  }
  return m;
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
};

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  if (det == 0.0) throw std::runtime_error("least_squares: degenerate abscissae");
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / det;
  fit.intercept = (sy - fit.slope * sx) / n;
  double rss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    rss += r * r;
  }
  fit.residual_rms = std::sqrt(rss / n);
  return fit;
}

}  // namespace

RecurrenceReport detect_recurrences(std::span<const double> taus,
                                    std::span<const std::complex<double>> phi0,
                                    const ChainSpec& spec, double threshold, double window) {
  validate(spec);
  if (taus.size() != phi0.size())
    throw std::invalid_argument("detect_recurrences: grid and series sizes differ");
  if (!(threshold > 0.0) || !(window > 0.0) || window >= 0.5)
    throw std::invalid_argument("detect_recurrences: need threshold > 0 and window in (0, 0.5)");
  const double step = uniform_step(taus, "detect_recurrences");
  if (step > 0.5 + 1e-12) throw std::invalid_argument("detect_recurrences: grid step above 0.5");
  const double n = spec.n_sites;
  if (taus.front() > 1e-12 || taus.back() + 1e-9 < 2.0 * n)
    throw std::invalid_argument("detect_recurrences: grid must cover [0, 2N]");

  std::vector<double> magnitude(phi0.size());
  for (std::size_t i = 0; i < phi0.size(); ++i) magnitude[i] = std::abs(phi0[i]);
  const auto half_width = static_cast<std::size_t>(std::lround(0.5 * kEnvelopeWindow / step));
  const std::vector<double> envelope = moving_maximum(magnitude, half_width);

  RecurrenceReport report;
  report.t_rec_scaled = n;
  report.detection_window = window;
  report.threshold = threshold;

  for (int q = 1; static_cast<double>(q) * n <= taus.back() + 1e-9; ++q) {
    const double center = static_cast<double>(q) * n;
    const std::size_t base_lo = grid_floor_index(center * (1.0 - 2.0 * window), step, taus.size());
    const std::size_t base_hi = grid_ceil_index(center * (1.0 - window), step, taus.size());
    const std::size_t peak_lo = grid_floor_index(center * (1.0 - window), step, taus.size());
    const std::size_t peak_hi = grid_ceil_index(center * (1.0 + window), step, taus.size());
    if (base_hi < base_lo || peak_hi < peak_lo) continue;

    const double baseline = median_of(std::vector<double>(
        envelope.begin() + static_cast<std::ptrdiff_t>(base_lo),
        envelope.begin() + static_cast<std::ptrdiff_t>(base_hi) + 1));
    std::size_t best = peak_lo;
    for (std::size_t i = peak_lo + 1; i <= peak_hi; ++i)
      if (envelope[i] > envelope[best]) best = i;
    const double peak = envelope[best];
    const double strength = peak / std::max(baseline, std::numeric_limits<double>::min());
    if (strength > threshold)
      report.events.push_back(RecurrenceEvent{q, taus[best], strength});
  }
  return report;
}

LightConeFit lightcone_front(const PopulationField& field, const ChainSpec& spec,
                             double threshold) {
  validate(spec);
  if (!(threshold > 0.0) || !(threshold < 0.5))
    throw std::invalid_argument("lightcone_front: threshold must lie in (0, 0.5)");
  if (field.taus.empty() || field.taus.front() > 1e-12)
    throw std::invalid_argument("lightcone_front: grid must start at tau = 0");
  const auto n = static_cast<std::size_t>(spec.n_sites);
  if (field.pops.empty() || field.pops.front().size() != n)
    throw std::invalid_argument("lightcone_front: field does not match the chain spec");

  LightConeFit fit;
  fit.first_arrival.assign(n, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t site = 0; site < n; ++site) {
    for (std::size_t j = 0; j < field.taus.size(); ++j) {
      if (field.pops[j][site] >= threshold) {
        fit.first_arrival[site] = field.taus[j];
        break;
      }
    }
  }

  const long d_hi = static_cast<long>(n) / 2 - 2;
  std::vector<double> xs, ys;
  for (std::size_t site = 0; site < n; ++site) {
    const long d = static_cast<long>(std::min(site, n - site));
    if (d < 2 || d > d_hi || !std::isfinite(fit.first_arrival[site])) continue;
    xs.push_back(static_cast<double>(d));
    ys.push_back(fit.first_arrival[site]);
  }
  if (xs.size() < 4) throw std::runtime_error("lightcone_front: fewer than 4 usable sites");
  const LineFit line = least_squares(xs, ys);
  fit.speed = line.slope;
  fit.intercept = line.intercept;
  fit.residual = line.residual_rms;
  return fit;
}

CorrelationPeak correlation_peak(std::span<const double> taus, std::span<const double> ct,
                                 const ChainSpec& spec) {
  validate(spec);
  if (taus.size() != ct.size() || taus.empty())
    throw std::invalid_argument("correlation_peak: grid and series sizes differ");
  if (taus.back() + 1e-9 < static_cast<double>(spec.n_sites))
    throw std::invalid_argument("correlation_peak: grid must cover [0, N]");
  std::size_t best = 0;
  for (std::size_t j = 1; j < ct.size(); ++j)
    if (ct[j] > ct[best]) best = j;
  return CorrelationPeak{taus[best], ct[best]};
}

CorrelationPeak correlation_peak(const EntropyTrace& trace, const ChainSpec& spec) {
  return correlation_peak(trace.taus, trace.total_correlation, spec);
}

}  // namespace xxring
