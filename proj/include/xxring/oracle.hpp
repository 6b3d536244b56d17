#pragma once

#include <complex>
#include <span>
#include <vector>

#include "xxring/chain.hpp"
#include "xxring/observables.hpp"

namespace xxring {

// One-excitation amplitudes over a time grid, one row per grid point.
struct SectorState {
  std::vector<double> taus;
  std::vector<std::vector<std::complex<double>>> amps;  // [time][site]
};

struct OracleReport {
  double max_abs_dev = 0.0;
  int worst_site = 0;
  double worst_tau = 0.0;
};

// Brute-force reference evolution in the one-excitation sector: builds the
// N x N ring hopping matrix, diagonalizes it with a dense symmetric
// eigensolver (no Fourier shortcut, no Bessel functions, on purpose), and
// propagates e_0. Budget: N <= 4096.
SectorState evolve_sector_dense(const ChainSpec& spec, std::span<const double> taus);

// Brute-force reference evolution of |e, g, ..., g> in the full 2^N spin
// space: sparse application of the spin Hamiltonian with sub-stepped Taylor
// propagation to machine precision. Budget: N <= 12. Norm drift beyond 1e-9
// is an integrator error.
PopulationField evolve_full_spin(const ChainSpec& spec, std::span<const double> taus);

// Runs every oracle whose budget admits N plus the spectral route and
// returns the worst absolute deviation over all sites and grid points.
OracleReport compare(const ChainSpec& spec, std::span<const double> taus);

}  // namespace xxring
