#pragma once

#include <span>
#include <vector>

#include "xxring/coherence.hpp"

namespace xxring {

// Excited-state populations p_n = |Phi_n|^2 over a time grid;
// every row sums to one (excitation conservation).
struct PopulationField {
  std::vector<double> taus;
  std::vector<std::vector<double>> pops;  // [time][site]
};

// Per-site entropies, total correlation C_T = sum_n S[rho_n] - S[rho], its
// upper bound c_max, and the relative shortfall eta of the achieved peak.
// All entropies are in nats. The global entropy S[rho] is identically zero:
// the chain starts in a pure product state and evolves unitarily.
struct EntropyTrace {
  std::vector<double> taus;
  std::vector<std::vector<double>> site_entropy;  // [time][site]
  std::vector<double> total_correlation;
  double c_max = 0.0;
  double eta = 0.0;
};

std::vector<double> populations(const CoherenceVector& cv);

// Binary entropy -p ln p - (1-p) ln(1-p) with 0 ln 0 := 0. Inputs within
// 1e-12 of [0,1] are clamped; anything further out is a domain error.
double site_entropy(double p);

double total_correlation(std::span<const double> pops_row);

// Closed-form maximum N ln(N/(N-1)) + ln(N-1), attained at uniform
// populations 1/N.
double correlation_max(int n_sites);

// The uniform population vector (1/N, ..., 1/N).
std::vector<double> pseudo_equilibrium(int n_sites);

// Relative entropy D[rho || prod_n rho_n] evaluated in the one-excitation
// sector; for the pure global state it equals the total correlation exactly.
double relative_entropy_check(const CoherenceVector& cv);

// 1 - max(ct_series)/correlation_max(n_sites), clamped to [0,1].
double eta(int n_sites, std::span<const double> ct_series);

PopulationField population_field(const ChainSpec& spec, std::span<const double> taus,
                                 int threads = 1);

EntropyTrace entropy_trace(const ChainSpec& spec, std::span<const double> taus,
                           int threads = 1);

// C_T over the grid without materializing the per-site matrices; this is the
// memory-safe path for large-N sweeps.
std::vector<double> total_correlation_series(const ChainSpec& spec,
                                             std::span<const double> taus, int threads = 1);

}  // namespace xxring
