#include "xxring/coherence.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "xxring/bessel.hpp"
#include "xxring/util.hpp"

namespace xxring {
namespace {

void check_tau(double tau) {
  if (!std::isfinite(tau) || tau < 0.0)
    throw std::domain_error("coherence: tau must be finite and >= 0");
}

void check_site(const ChainSpec& spec, int site) {
  if (site < 0 || site >= spec.n_sites)
    throw std::out_of_range("coherence: site index outside 0 .. N-1");
}

}  // namespace

Complex minus_i_power(long long m) {
  switch (((m % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

Complex phi_direct(const ChainSpec& spec, int site, double tau) {
  validate(spec);
  check_site(spec, site);
  check_tau(tau);
  const int n = spec.n_sites;
  const auto cosines = ring_cosine_table(n);
  const double inv_n = 1.0 / static_cast<double>(n);
  Complex acc{0.0, 0.0};
  for (int k = 0; k < n; ++k) {
    // k*site reduced mod N in integers keeps the lattice phase exact.
    const auto m = static_cast<double>((static_cast<long long>(k) * site) % n);
    acc += std::polar(1.0, -tau * cosines[k] + kTwoPi * m * inv_n);
  }
  return acc * inv_n;
}

namespace {
ChainSpec checked(ChainSpec spec) {
  validate(spec);
  return spec;
}
}  // namespace

CoherenceEvaluator::CoherenceEvaluator(const ChainSpec& spec)
    : spec_(checked(spec)),
      cosines_(ring_cosine_table(spec_.n_sites)),
      plan_(static_cast<std::size_t>(spec_.n_sites)),
      phase_(static_cast<std::size_t>(spec_.n_sites)) {}

CoherenceVector CoherenceEvaluator::at(double tau) {
  check_tau(tau);
  const auto n = static_cast<std::size_t>(spec_.n_sites);
  for (std::size_t k = 0; k < n; ++k) phase_[k] = std::polar(1.0, -tau * cosines_[k]);
  // Transform the mean analytically: invDFT of a constant is exactly
  // (mean, 0, ..., 0), which makes tau = 0 exact and helps small tau.
  Complex mean{0.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) mean += phase_[k];
  mean /= static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) phase_[k] -= mean;

  CoherenceVector cv;
  cv.tau = tau;
  cv.amps.resize(n);
  plan_.inverse_scaled(phase_, cv.amps);
  cv.amps[0] += mean;
  // The phase vector is mirror symmetric in k, so Phi_n == Phi_{N-n};
  // copy the lower half up to make the identity exact.
  for (std::size_t s = 1; s <= (n - 1) / 2; ++s) cv.amps[n - s] = cv.amps[s];
  return cv;
}

CoherenceVector phi_batch_fft(const ChainSpec& spec, double tau) {
  CoherenceEvaluator evaluator(spec);
  return evaluator.at(tau);
}

int default_q_max(const ChainSpec& spec, double tau) {
  validate(spec);
  check_tau(tau);
  const int wraps = static_cast<int>(std::ceil(tau / static_cast<double>(spec.n_sites))) + 2;
  // Two guard wraps only cover the tail once 2N exceeds the J_m(tau) decay
  // width ~ 9.6 tau^(1/3); small rings need enough wraps to reach past it.
  const double needed_order = tau + 9.6 * std::cbrt(tau + 1.0) + 12.0;
  const int by_width =
      static_cast<int>(std::ceil((needed_order - 1.0) / static_cast<double>(spec.n_sites)));
  return wraps > by_width ? wraps : by_width;
}

std::vector<Complex> phi_bessel_series_all(const ChainSpec& spec, double tau, int q_max) {
  validate(spec);
  check_tau(tau);
  if (q_max < 0) throw std::domain_error("phi_bessel_series: q_max must be >= 0");
  const int n = spec.n_sites;
  const int top_order = (n - 1) + q_max * n;
  const BesselRow row = bessel_row(top_order, tau);
  std::vector<Complex> amps(static_cast<std::size_t>(n));
  for (int site = 0; site < n; ++site) {
    Complex acc{0.0, 0.0};
    for (int q = -q_max; q <= q_max; ++q) {
      const long long order = static_cast<long long>(site) + static_cast<long long>(q) * n;
      double j = row.values[static_cast<std::size_t>(std::llabs(order))];
      if (order < 0 && (order & 1LL)) j = -j;
      acc += minus_i_power(order) * j;
    }
    amps[static_cast<std::size_t>(site)] = acc;
  }
  return amps;
}

Complex phi_bessel_series(const ChainSpec& spec, int site, double tau, int q_max) {
  validate(spec);
  check_site(spec, site);
  check_tau(tau);
  if (q_max < 0) throw std::domain_error("phi_bessel_series: q_max must be >= 0");
  const int n = spec.n_sites;
  const BesselRow row = bessel_row(site + q_max * n, tau);
  Complex acc{0.0, 0.0};
  for (int q = -q_max; q <= q_max; ++q) {
    const long long order = static_cast<long long>(site) + static_cast<long long>(q) * n;
    double j = row.values[static_cast<std::size_t>(std::llabs(order))];
    if (order < 0 && (order & 1LL)) j = -j;
    acc += minus_i_power(order) * j;
  }
  return acc;
}

Complex phi_bessel_series(const ChainSpec& spec, int site, double tau) {
  return phi_bessel_series(spec, site, tau, default_q_max(spec, tau));
}

Complex phi_infinite(int site, double tau) {
  check_tau(tau);
  return minus_i_power(site) * bessel_j(site, tau);
}

Complex correlation_element(const ChainSpec& spec, int m, int n, double tau) {
  validate(spec);
  check_site(spec, m);
  check_site(spec, n);
  check_tau(tau);
  return std::conj(phi_direct(spec, m, tau)) * phi_direct(spec, n, tau);
}

std::vector<CoherenceVector> coherence_series(const ChainSpec& spec,
                                              std::span<const double> taus, int threads) {
  validate(spec);
  std::vector<CoherenceVector> out(taus.size());
  parallel_chunks(taus.size(), threads, [&](std::size_t begin, std::size_t end) {
    CoherenceEvaluator evaluator(spec);
    for (std::size_t j = begin; j < end; ++j) out[j] = evaluator.at(taus[j]);
  });
  return out;
}

BenchResult coherence_bench(const ChainSpec& spec, double tau, std::span<const int> spot_sites) {
  validate(spec);
  check_tau(tau);
  using clock = std::chrono::steady_clock;
  BenchResult result;

  const auto t0 = clock::now();
  const CoherenceVector batch = phi_batch_fft(spec, tau);
  const auto t1 = clock::now();
  result.fft_seconds = std::chrono::duration<double>(t1 - t0).count();

  volatile double sink = 0.0;  // keep the direct calls observable
  const auto t2 = clock::now();
  for (int site = 0; site < spec.n_sites; ++site) sink = sink + std::abs(phi_direct(spec, site, tau));
  const auto t3 = clock::now();
  result.direct_seconds = std::chrono::duration<double>(t3 - t2).count();

  for (int site : spot_sites) {
    const Complex d = phi_direct(spec, site, tau);
    const double dev = std::abs(d - batch.amps[static_cast<std::size_t>(site)]);
    if (dev > result.max_spot_dev) result.max_spot_dev = dev;
  }
  return result;
}

}  // namespace xxring
