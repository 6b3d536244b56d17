#include "xxring/observables.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "xxring/util.hpp"

namespace xxring {
namespace {

// Kahan sum; C_T aggregates up to 1e4 terms against a 1e-12 identity budget.
class CompensatedSum {
 public:
  void add(double value) {
    const double y = value - comp_;
    const double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace

std::vector<double> populations(const CoherenceVector& cv) {
  std::vector<double> pops(cv.amps.size());
  for (std::size_t n = 0; n < cv.amps.size(); ++n) pops[n] = std::norm(cv.amps[n]);
  return pops;
}

double site_entropy(double p) {
  if (!std::isfinite(p) || p < -1e-12 || p > 1.0 + 1e-12)
    throw std::domain_error("site_entropy: population outside [0,1]");
  p = std::clamp(p, 0.0, 1.0);
  double h = 0.0;
  if (p > 0.0) h -= p * std::log(p);
  if (p < 1.0) h -= (1.0 - p) * std::log1p(-p);
  return h;
}

double total_correlation(std::span<const double> pops_row) {
  CompensatedSum sum;
  for (double p : pops_row) sum.add(site_entropy(p));
  return sum.value();  // minus the global entropy, which is identically zero
}

double correlation_max(int n_sites) {
  if (n_sites < 2) throw std::domain_error("correlation_max: n_sites must be >= 2");
  const auto n = static_cast<double>(n_sites);
  return n * std::log1p(1.0 / (n - 1.0)) + std::log(n - 1.0);
}

std::vector<double> pseudo_equilibrium(int n_sites) {
  if (n_sites < 2) throw std::domain_error("pseudo_equilibrium: n_sites must be >= 2");
  return std::vector<double>(static_cast<std::size_t>(n_sites),
                             1.0 / static_cast<double>(n_sites));
}

double relative_entropy_check(const CoherenceVector& cv) {
  // D[rho || prod rho_n] = -sum_n <ln rho_n> = sum_n S[rho_n] for a pure
  // global state; evaluated straight from the amplitudes.
  CompensatedSum sum;
  for (const Complex& amp : cv.amps) sum.add(site_entropy(std::norm(amp)));
  return sum.value();
}

double eta(int n_sites, std::span<const double> ct_series) {
  if (ct_series.empty()) throw std::invalid_argument("eta: empty series");
  const double c_max = correlation_max(n_sites);
  const double peak = *std::max_element(ct_series.begin(), ct_series.end());
  return std::clamp(1.0 - peak / c_max, 0.0, 1.0);
}

PopulationField population_field(const ChainSpec& spec, std::span<const double> taus,
                                 int threads) {
  validate(spec);
  PopulationField field;
  field.taus.assign(taus.begin(), taus.end());
  field.pops.resize(taus.size());
  parallel_chunks(taus.size(), threads, [&](std::size_t begin, std::size_t end) {
    CoherenceEvaluator evaluator(spec);
    for (std::size_t j = begin; j < end; ++j) field.pops[j] = populations(evaluator.at(taus[j]));
  });
  return field;
}

EntropyTrace entropy_trace(const ChainSpec& spec, std::span<const double> taus, int threads) {
  validate(spec);
  EntropyTrace trace;
  trace.taus.assign(taus.begin(), taus.end());
  trace.site_entropy.resize(taus.size());
  trace.total_correlation.assign(taus.size(), 0.0);
  parallel_chunks(taus.size(), threads, [&](std::size_t begin, std::size_t end) {
    CoherenceEvaluator evaluator(spec);
    for (std::size_t j = begin; j < end; ++j) {
      const auto pops = populations(evaluator.at(taus[j]));
      auto& row = trace.site_entropy[j];
      row.resize(pops.size());
      CompensatedSum sum;
      for (std::size_t n = 0; n < pops.size(); ++n) {
        row[n] = site_entropy(pops[n]);
        sum.add(row[n]);
      }
      trace.total_correlation[j] = sum.value();
    }
  });
  trace.c_max = correlation_max(spec.n_sites);
  trace.eta = eta(spec.n_sites, trace.total_correlation);
  return trace;
}

std::vector<double> total_correlation_series(const ChainSpec& spec,
                                             std::span<const double> taus, int threads) {
  validate(spec);
  std::vector<double> series(taus.size());
  parallel_chunks(taus.size(), threads, [&](std::size_t begin, std::size_t end) {
    CoherenceEvaluator evaluator(spec);
    for (std::size_t j = begin; j < end; ++j)
      series[j] = total_correlation(populations(evaluator.at(taus[j])));
  });
  return series;
}

}  // namespace xxring
