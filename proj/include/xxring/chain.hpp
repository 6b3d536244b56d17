#pragma once

#include <vector>

namespace xxring {

// Periodic chain of two-level systems: N sites, nearest-neighbour exchange g,
// on-site energy omega. All dynamics is expressed in the scaled time
// tau = 2 g t, so g only fixes the physical time unit, and omega cancels out
// of every observable in the one-excitation sector (it shifts all eigenmode
// energies by the same constant). It is kept for reporting.
struct ChainSpec {
  int n_sites = 2;
  double coupling = 1.0;  // g > 0
  double onsite = 0.0;    // omega
};

void validate(const ChainSpec& spec);

// Eigenmode energies eps_k = omega + 2 g cos(2 pi k / N), k = 0 .. N-1.
struct EigenmodeSpectrum {
  std::vector<double> energies;
};

EigenmodeSpectrum eigenmode_energies(const ChainSpec& spec);

// cos(2 pi k / N) for k = 0 .. N-1, with the k <-> N-k symmetry exact by
// construction (both entries are assigned from the same evaluation).
std::vector<double> ring_cosine_table(int n_sites);

}  // namespace xxring
