#pragma once

#include <complex>
#include <span>
#include <vector>

#include "xxring/chain.hpp"
#include "xxring/fft.hpp"

namespace xxring {

using Complex = std::complex<double>;

// Single-excitation transition amplitudes Phi_n(tau), n = 0 .. N-1, at one
// scaled time. Unit norm, mirror symmetric (amps[n] == amps[N-n]), and
// equal to (1, 0, ..., 0) at tau = 0.
struct CoherenceVector {
  double tau = 0.0;
  std::vector<Complex> amps;
};

// (-i)^m for any integer m.
Complex minus_i_power(long long m);

// Literal O(N) spectral sum (1/N) sum_k exp(-i tau cos(2 pi k/N) + 2 pi i k n/N).
Complex phi_direct(const ChainSpec& spec, int site, double tau);

// Full coherence vector at once: inverse DFT of the phase vector
// exp(-i tau cos(2 pi k/N)), O(N log N). The mean of the phase vector is
// transformed analytically so tau = 0 is exact, and the ring mirror symmetry
// is enforced exactly so threshold scans agree on mirror sites.
CoherenceVector phi_batch_fft(const ChainSpec& spec, double tau);

// Truncated wrap expansion sum_{q=-q_max}^{q_max} (-i)^{n+qN} J_{n+qN}(tau).
Complex phi_bessel_series(const ChainSpec& spec, int site, double tau, int q_max);
Complex phi_bessel_series(const ChainSpec& spec, int site, double tau);

// All sites at once from a single Bessel row.
std::vector<Complex> phi_bessel_series_all(const ChainSpec& spec, double tau, int q_max);

// q_max large enough for 1e-10 agreement with the exact finite-N sum.
int default_q_max(const ChainSpec& spec, double tau);

// Infinite-chain limit (-i)^n J_n(tau).
Complex phi_infinite(int site, double tau);

// Two-point correlator conj(Phi_m) * Phi_n at scaled time tau.
Complex correlation_element(const ChainSpec& spec, int m, int n, double tau);

// Reusable batch evaluator: one DFT plan and phase table per instance.
// Instances are not thread safe; give each worker its own.
class CoherenceEvaluator {
 public:
  explicit CoherenceEvaluator(const ChainSpec& spec);
  const ChainSpec& spec() const { return spec_; }
  CoherenceVector at(double tau);

 private:
  ChainSpec spec_;
  std::vector<double> cosines_;
  fft::DftPlan plan_;
  std::vector<Complex> phase_;
};

std::vector<CoherenceVector> coherence_series(const ChainSpec& spec,
                                              std::span<const double> taus, int threads = 1);

struct BenchResult {
  double fft_seconds = 0.0;     // one batch call
  double direct_seconds = 0.0;  // N single-site direct sums
  double max_spot_dev = 0.0;    // worst |direct - batch| over the spot sites
};

// Times the O(N log N) batch route against N calls of the O(N) direct sum
// at one tau and cross-checks the routes on the given sites.
BenchResult coherence_bench(const ChainSpec& spec, double tau, std::span<const int> spot_sites);

}  // namespace xxring
