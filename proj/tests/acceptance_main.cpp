// Acceptance suite: every release criterion with its tolerance pinned in
// code, one pass/fail line per criterion. Exit code = number of failures.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "xxring/bessel.hpp"
#include "xxring/coherence.hpp"
#include "xxring/observables.hpp"
#include "xxring/oracle.hpp"
#include "xxring/recurrence.hpp"
#include "xxring/scaling.hpp"
#include "xxring/util.hpp"

using namespace xxring;
using clock_type = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

std::string fmt(const char* format, ...) {
  va_list args;
  va_start(args, format);
  char buffer[512];
  vsnprintf(buffer, sizeof buffer, format, args);
  va_end(args);
  return buffer;
}

// Shared random sweep for criteria 3, 4, 7 and 10:
// N in {2, 3, 8, 40, 100, 1000}, 200 draws of tau in [0, 3N].
struct SweepStats {
  double worst_norm_dev = 0.0;       // | sum |Phi|^2 - 1 |
  double worst_pop_dev = 0.0;        // | sum p - 1 |
  double worst_direct_dev = 0.0;     // direct vs batch, element-wise
  double worst_series_dev = 0.0;     // series vs batch, element-wise
  double worst_bound_excess = 0.0;   // C_T - C_max
  double worst_identity_dev = 0.0;   // |D - C_T|
};

const SweepStats& shared_sweep() {
  static const SweepStats stats = [] {
    SweepStats s;
    std::mt19937_64 rng(0x5eed5eedULL);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int n : {2, 3, 8, 40, 100, 1000}) {
      const ChainSpec spec{n, 1.0, 0.0};
      CoherenceEvaluator evaluator(spec);
      const double c_max = correlation_max(n);
      for (int draw = 0; draw < 200; ++draw) {
        const double tau = uni(rng) * 3.0 * n;
        const auto cv = evaluator.at(tau);
        const auto pops = populations(cv);
        double norm = 0.0, total = 0.0;
        for (int site = 0; site < n; ++site) {
          norm += std::norm(cv.amps[site]);
          total += pops[site];
        }
        s.worst_norm_dev = std::max(s.worst_norm_dev, std::abs(norm - 1.0));
        s.worst_pop_dev = std::max(s.worst_pop_dev, std::abs(total - 1.0));

        const auto series = phi_bessel_series_all(spec, tau, default_q_max(spec, tau));
        for (int site = 0; site < n; ++site) {
          s.worst_direct_dev = std::max(
              s.worst_direct_dev, std::abs(cv.amps[site] - phi_direct(spec, site, tau)));
          s.worst_series_dev =
              std::max(s.worst_series_dev, std::abs(cv.amps[site] - series[site]));
        }

        const double ct = total_correlation(pops);
        s.worst_bound_excess = std::max(s.worst_bound_excess, ct - c_max);
        s.worst_identity_dev =
            std::max(s.worst_identity_dev, std::abs(relative_entropy_check(cv) - ct));
      }
    }
    return s;
  }();
  return stats;
}

Outcome criterion_1() {
  const auto start = clock_type::now();
  const ChainSpec spec{100, 1.0, 0.0};
  CoherenceEvaluator evaluator(spec);
  double worst = 0.0;
  for (double tau : make_grid(60.0, 0.01))
    worst = std::max(worst,
                     std::abs(evaluator.at(tau).amps[0] - Complex{bessel_j(0, tau), 0.0}));
  const double elapsed = seconds_since(start);
  return {worst <= 1e-6 && elapsed < 1.0,
          fmt("max |Phi0 - J0| = %.3e (limit 1e-6) on tau in [0,60]; %.2f s (limit 1 s)",
              worst, elapsed)};
}

Outcome criterion_2() {
  const auto start = clock_type::now();
  const ChainSpec spec{100, 1.0, 0.0};
  const auto taus = make_grid(450.0, 0.1);
  // Contrast threshold 2.5: the q = 2 and q = 3 bumps reach peak/baseline
  // 2.98 and 2.91, below the configuration default of 3.0, while the
  // decaying reference stays below 1. The criterion pins 2.5 here.
  const double threshold = 2.5, window = 0.15;
  CoherenceEvaluator evaluator(spec);
  std::vector<std::complex<double>> phi0(taus.size()), reference(taus.size());
  for (std::size_t j = 0; j < taus.size(); ++j) {
    phi0[j] = evaluator.at(taus[j]).amps[0];
    reference[j] = phi_infinite(0, taus[j]);
  }
  const auto report = detect_recurrences(taus, phi0, spec, threshold, window);
  const auto control = detect_recurrences(taus, reference, spec, threshold, window);
  bool events_ok = report.events.size() == 4;
  std::string positions;
  for (const auto& event : report.events) {
    if (event.q < 1 || event.q > 4) events_ok = false;
    if (std::abs(event.tau_detected - 100.0 * event.q) > 0.05 * 100.0 * event.q)
      events_ok = false;
    positions += fmt(" q%d@%.1f", event.q, event.tau_detected);
  }
  const double elapsed = seconds_since(start);
  return {events_ok && control.events.empty() && elapsed < 5.0,
          fmt("events%s within 5%% of qN (threshold %.1f); control events: %zu (need 0); "
              "%.2f s (limit 5 s)",
              positions.c_str(), threshold, control.events.size(), elapsed)};
}

Outcome criterion_3() {
  const auto& stats = shared_sweep();
  const bool pass = stats.worst_norm_dev <= 1e-12 && stats.worst_pop_dev <= 1e-12;
  return {pass, fmt("worst |sum|Phi|^2 - 1| = %.3e, worst |sum p - 1| = %.3e (limit 1e-12)",
                    stats.worst_norm_dev, stats.worst_pop_dev)};
}

Outcome criterion_4() {
  const auto& stats = shared_sweep();
  const bool pass = stats.worst_direct_dev <= 1e-10 && stats.worst_series_dev <= 1e-10;
  return {pass,
          fmt("direct vs batch %.3e, series vs batch %.3e (limit 1e-10; series truncated "
              "at default_q_max >= ceil(tau/N)+2)",
              stats.worst_direct_dev, stats.worst_series_dev)};
}

Outcome criterion_5() {
  const auto start = clock_type::now();
  const ChainSpec dense_spec{64, 1.0, 0.0};
  const auto dense_taus = make_grid(160.0, 0.25);
  const auto dense = evolve_sector_dense(dense_spec, dense_taus);
  CoherenceEvaluator dense_eval(dense_spec);
  double dense_dev = 0.0;
  for (std::size_t j = 0; j < dense_taus.size(); ++j) {
    const auto cv = dense_eval.at(dense_taus[j]);
    for (int site = 0; site < 64; ++site)
      dense_dev = std::max(dense_dev, std::abs(dense.amps[j][site] - cv.amps[site]));
  }

  const ChainSpec spin_spec{6, 1.0, 0.0};
  const auto spin_taus = make_grid(12.0, 0.1);
  const auto spin = evolve_full_spin(spin_spec, spin_taus);
  CoherenceEvaluator spin_eval(spin_spec);
  double spin_dev = 0.0;
  for (std::size_t j = 0; j < spin_taus.size(); ++j) {
    const auto pops = populations(spin_eval.at(spin_taus[j]));
    for (int site = 0; site < 6; ++site)
      spin_dev = std::max(spin_dev, std::abs(spin.pops[j][site] - pops[site]));
  }
  const double elapsed = seconds_since(start);
  return {dense_dev <= 1e-10 && spin_dev <= 1e-10 && elapsed < 30.0,
          fmt("dense N=64 dev %.3e, full-spin N=6 dev %.3e (limit 1e-10); %.2f s (limit 30 s)",
              dense_dev, spin_dev, elapsed)};
}

Outcome criterion_6() {
  const ChainSpec spec{2, 1.0, 0.0};
  CoherenceEvaluator evaluator(spec);
  double worst = 0.0;
  for (double tau : make_grid(20.0, 0.01)) {
    const auto cv = evaluator.at(tau);
    worst = std::max(worst, std::abs(cv.amps[0] - Complex{std::cos(tau), 0.0}));
    worst = std::max(worst, std::abs(cv.amps[1] - Complex{0.0, -std::sin(tau)}));
  }
  return {worst <= 1e-12,
          fmt("max |Phi - closed form| = %.3e on tau in [0,20] (limit 1e-12)", worst)};
}

Outcome criterion_7() {
  const auto& stats = shared_sweep();
  double worst_uniform = 0.0;
  for (int n = 2; n <= 10000; ++n)
    worst_uniform = std::max(
        worst_uniform, std::abs(correlation_max(n) - total_correlation(pseudo_equilibrium(n))));
  const double level = correlation_max(40) / 40.0;
  const bool level_ok = std::abs(level - 0.116906849137531) < 1e-12;
  const bool pass = stats.worst_bound_excess <= 0.0 && worst_uniform <= 1e-12 && level_ok;
  return {pass,
          fmt("max C_T - C_max = %.3e (limit 0), closed form vs uniform dev %.3e over "
              "N = 2..10^4 (limit 1e-12), C_max(40)/40 = %.9f",
              stats.worst_bound_excess, worst_uniform, level)};
}

Outcome criterion_8() {
  std::string detail;
  bool pass = true;
  for (int n : {100, 1000}) {
    const ChainSpec spec{n, 1.0, 0.0};
    const auto taus = make_grid(static_cast<double>(n), 0.05);
    const auto ct = total_correlation_series(spec, taus, 2);
    const auto peak = correlation_peak(taus, ct, spec);
    const double fraction = peak.tau_star / n;
    if (fraction < 0.35 || fraction > 0.65) pass = false;
    detail += fmt(" N=%d: tau*/N = %.3f;", n, fraction);
  }
  return {pass, fmt("argmax of C_T in [0.35N, 0.65N]:%s", detail.c_str())};
}

Outcome criterion_9() {
  const auto start = clock_type::now();
  const std::vector<int> sizes{20, 50, 100, 200, 500, 1000};
  SweepOptions options;
  options.threads = 2;
  const auto table = sweep_eta(sizes, 0.05, 1.0, options);
  const auto fit = fit_power_law(table);
  std::string etas;
  for (const auto& row : table.rows) etas += fmt(" eta(%d)=%.5f", row.n_sites, row.eta);
  // context: the same pipeline restricted to the asymptotic sizes
  ScalingTable tail;
  tail.grid_step = table.grid_step;
  tail.grid_span_factor = table.grid_span_factor;
  for (const auto& row : table.rows)
    if (row.n_sites >= 200) tail.rows.push_back(row);
  const auto tail_fit = fit_power_law(tail);
  const double elapsed = seconds_since(start);
  const bool pass = std::abs(fit.alpha - 0.062) <= 0.02 && elapsed < 600.0;
  return {pass,
          fmt("alpha = %.4f (required 0.062 +/- 0.02);%s; alpha over N >= 200: %.4f; "
              "%.1f s (limit 600 s)",
              fit.alpha, etas.c_str(), tail_fit.alpha, elapsed)};
}

Outcome criterion_10() {
  const auto& stats = shared_sweep();
  return {stats.worst_identity_dev <= 1e-12,
          fmt("max |D - C_T| = %.3e (limit 1e-12)", stats.worst_identity_dev)};
}

Outcome criterion_11() {
  const ChainSpec spec{100, 1.0, 0.0};
  const auto field = population_field(spec, make_grid(60.0, 0.05), 2);
  const auto fit = lightcone_front(field, spec, 0.02);
  bool mirror_exact = true;
  for (int site = 1; site < 100; ++site) {
    const double a = fit.first_arrival[site];
    const double b = fit.first_arrival[100 - site];
    if (std::isfinite(a) != std::isfinite(b) || (std::isfinite(a) && a != b))
      mirror_exact = false;
  }
  const bool pass = fit.speed >= 0.85 && fit.speed <= 1.15 && mirror_exact;
  return {pass, fmt("front speed = %.4f (required 1.0 +/- 0.15); mirror arrivals exact: %s",
                    fit.speed, mirror_exact ? "yes" : "no")};
}

Outcome criterion_12() {
  const ChainSpec spec{100, 1.0, 0.0};
  const auto taus = make_grid(100.0, 0.05);
  CoherenceEvaluator evaluator(spec);
  bool site_zero_decreases = false;
  double previous = -1.0;
  std::vector<double> ct(taus.size());
  for (std::size_t j = 0; j < taus.size(); ++j) {
    const auto pops = populations(evaluator.at(taus[j]));
    const double h0 = site_entropy(pops[0]);
    if (j > 0 && h0 < previous) site_zero_decreases = true;
    previous = h0;
    ct[j] = total_correlation(pops);
  }
  const double c_max = correlation_max(100);
  int decreasing = 0, steps = 0;
  for (std::size_t j = 1; j < taus.size() && taus[j] <= 50.0 + 1e-9; ++j) {
    ++steps;
    if (ct[j - 1] - ct[j] > 1e-3 * c_max) ++decreasing;
  }
  const double fraction = static_cast<double>(decreasing) / steps;
  return {site_zero_decreases && fraction < 0.20,
          fmt("site-0 entropy strictly decreases: %s; C_T decreasing steps on [0, N/2]: "
              "%.1f%% (limit 20%%)",
              site_zero_decreases ? "yes" : "no", 100.0 * fraction)};
}

Outcome criterion_13() {
  const ChainSpec spec{1 << 16, 1.0, 0.0};
  const std::vector<int> spots{0, 1, 2, 9362, 18724, 28086, 37448, 65535};
  const auto bench = coherence_bench(spec, 50.0, spots);
  const double ratio = bench.direct_seconds / bench.fft_seconds;
  const bool pass = ratio >= 50.0 && bench.max_spot_dev <= 1e-10;
  return {pass,
          fmt("batch %.4f s vs %d direct calls %.1f s: %.0fx (limit 50x); spot dev %.3e "
              "(limit 1e-10)",
              bench.fft_seconds, spec.n_sites, bench.direct_seconds, ratio,
              bench.max_spot_dev)};
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "pre-recurrence Bessel agreement", criterion_1},
      {2, "hierarchy recurrences", criterion_2},
      {3, "unitarity and conservation", criterion_3},
      {4, "route equivalence", criterion_4},
      {5, "oracle equivalence", criterion_5},
      {6, "closed-form N=2", criterion_6},
      {7, "correlation bound and maximum", criterion_7},
      {8, "correlation peak timing", criterion_8},
      {9, "scaling exponent", criterion_9},
      {10, "relative-entropy identity", criterion_10},
      {11, "light cone", criterion_11},
      {12, "per-site non-monotonicity vs aggregate trend", criterion_12},
      {13, "performance of the batch route", criterion_13},
  };

  int only = 0;  // optional: run a single criterion, e.g. "acceptance 9"
  if (argc > 1) only = std::atoi(argv[1]);

  int failures = 0, executed = 0;
  for (const auto& criterion : criteria) {
    if (only != 0 && criterion.id != only) continue;
    ++executed;
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failures;
    std::printf("criterion %2d [%s]: %s — %s\n", criterion.id,
                outcome.pass ? "PASS" : "FAIL", criterion.title, outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("acceptance: %d/%d criteria passed\n", executed - failures, executed);
  return failures;
}
