#include "xxring/chain.hpp"

#include <cmath>
#include <stdexcept>

#include "xxring/util.hpp"

namespace xxring {

void validate(const ChainSpec& spec) {
  if (spec.n_sites < 2) throw std::domain_error("ChainSpec: n_sites must be >= 2");
  if (!std::isfinite(spec.coupling) || spec.coupling <= 0.0)
    throw std::domain_error("ChainSpec: coupling must be finite and > 0");
  if (!std::isfinite(spec.onsite)) throw std::domain_error("ChainSpec: onsite must be finite");
}

std::vector<double> ring_cosine_table(int n_sites) {
  const auto n = static_cast<std::size_t>(n_sites);
  std::vector<double> table(n);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    const double c = std::cos(kTwoPi * static_cast<double>(k) / static_cast<double>(n));
    table[k] = c;
    if (k != 0) table[n - k] = c;
  }
  return table;
}

EigenmodeSpectrum eigenmode_energies(const ChainSpec& spec) {
  validate(spec);
  EigenmodeSpectrum spectrum;
  spectrum.energies = ring_cosine_table(spec.n_sites);
  for (double& e : spectrum.energies) e = spec.onsite + 2.0 * spec.coupling * e;
  return spectrum;
}

}  // namespace xxring
