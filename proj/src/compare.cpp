#include <cmath>

#include "xxring/coherence.hpp"
#include "xxring/observables.hpp"
#include "xxring/oracle.hpp"

namespace xxring {
namespace {

void track(OracleReport& report, double dev, int site, double tau) {
  if (dev > report.max_abs_dev) {
    report.max_abs_dev = dev;
    report.worst_site = site;
    report.worst_tau = tau;
  }
}

}  // namespace

OracleReport compare(const ChainSpec& spec, std::span<const double> taus) {
  validate(spec);
  OracleReport report;

  CoherenceEvaluator evaluator(spec);
  std::vector<CoherenceVector> spectral(taus.size());
  for (std::size_t j = 0; j < taus.size(); ++j) spectral[j] = evaluator.at(taus[j]);

  const SectorState dense = evolve_sector_dense(spec, taus);
  for (std::size_t j = 0; j < taus.size(); ++j)
    for (int site = 0; site < spec.n_sites; ++site) {
      const auto s = static_cast<std::size_t>(site);
      track(report, std::abs(dense.amps[j][s] - spectral[j].amps[s]), site, taus[j]);
    }

  if (spec.n_sites <= 12) {
    const PopulationField spin = evolve_full_spin(spec, taus);
    for (std::size_t j = 0; j < taus.size(); ++j) {
      const auto pops = populations(spectral[j]);
      for (int site = 0; site < spec.n_sites; ++site) {
        const auto s = static_cast<std::size_t>(site);
        track(report, std::abs(spin.pops[j][s] - pops[s]), site, taus[j]);
      }
    }
  }
  return report;
}

}  // namespace xxring
