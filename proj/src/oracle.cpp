// Reference evolutions only. This file must stay independent of the spectral
// machinery: no coherence, FFT, or Bessel calls.

#include "xxring/oracle.hpp"

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "xxring/util.hpp"

namespace xxring {
namespace {

void check_taus(std::span<const double> taus) {
  if (taus.empty()) throw std::invalid_argument("oracle: empty time grid");
  for (double tau : taus)
    if (!std::isfinite(tau) || tau < 0.0)
      throw std::domain_error("oracle: tau must be finite and >= 0");
}

using SpinVector = std::vector<std::complex<double>>;

// y += H x for the spin ring H = sum_n w/2 sz_n + g (s+_n s-_{n+1} + h.c.)
// on bitmask basis states (bit n set = site n excited).
void apply_spin_hamiltonian(const ChainSpec& spec, const SpinVector& x, SpinVector& y) {
  const int n = spec.n_sites;
  const auto dim = static_cast<std::size_t>(1) << n;
  const double g = spec.coupling;
  const double w = spec.onsite;
  for (std::size_t s = 0; s < dim; ++s) {
    if (x[s] == std::complex<double>{}) continue;
    const int excited = std::popcount(s);
    y[s] += 0.5 * w * static_cast<double>(2 * excited - n) * x[s];
    for (int site = 0; site < n; ++site) {
      const int next = site + 1 == n ? 0 : site + 1;
      const std::size_t b1 = (s >> site) & 1u;
      const std::size_t b2 = (s >> next) & 1u;
      if (b1 == b2) continue;
      const std::size_t flipped =
          s ^ ((std::size_t{1} << site) | (std::size_t{1} << next));
      y[flipped] += g * x[s];
    }
  }
}

double norm_squared(const SpinVector& v) {
  double acc = 0.0;
  for (const auto& c : v) acc += std::norm(c);
  return acc;
}

// One Taylor step exp(-i H dt) psi, truncated at machine precision.
// Callers keep |H| dt <= 0.5 so ~20 terms suffice.
void taylor_step(const ChainSpec& spec, SpinVector& psi, double dt) {
  const std::size_t dim = psi.size();
  SpinVector term = psi;
  SpinVector h_term(dim);
  for (int order = 1; order <= 40; ++order) {
    std::fill(h_term.begin(), h_term.end(), std::complex<double>{});
    apply_spin_hamiltonian(spec, term, h_term);
    const std::complex<double> factor =
        std::complex<double>{0.0, -dt} / static_cast<double>(order);
    double largest = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      term[i] = factor * h_term[i];
      psi[i] += term[i];
      largest = std::max(largest, std::abs(term[i]));
    }
    if (largest < 1e-18) return;
  }
  throw std::runtime_error("evolve_full_spin: Taylor step did not converge");
}

}  // namespace

SectorState evolve_sector_dense(const ChainSpec& spec, std::span<const double> taus) {
  validate(spec);
  check_taus(taus);
  if (spec.n_sites > 4096)
    throw budget_error("evolve_sector_dense: N above the dense budget of 4096");
  const int n = spec.n_sites;

  Eigen::MatrixXd hopping = Eigen::MatrixXd::Zero(n, n);
  for (int site = 0; site < n; ++site) {
    const int next = site + 1 == n ? 0 : site + 1;
    hopping(site, next) += spec.coupling;
    hopping(next, site) += spec.coupling;
  }
  // The onsite term adds omega * identity in this sector: a global phase.
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hopping);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("evolve_sector_dense: eigensolver failed");
  const Eigen::MatrixXd& modes = solver.eigenvectors();
  const Eigen::VectorXd& energies = solver.eigenvalues();

  SectorState state;
  state.taus.assign(taus.begin(), taus.end());
  state.amps.resize(taus.size());
  const double inv_2g = 1.0 / (2.0 * spec.coupling);
  for (std::size_t j = 0; j < taus.size(); ++j) {
    auto& row = state.amps[j];
    row.assign(static_cast<std::size_t>(n), std::complex<double>{});
    for (int a = 0; a < n; ++a) {
      const std::complex<double> weight =
          std::polar(modes(0, a), -energies(a) * taus[j] * inv_2g);
      for (int site = 0; site < n; ++site)
        row[static_cast<std::size_t>(site)] += modes(site, a) * weight;
    }
  }
  return state;
}

PopulationField evolve_full_spin(const ChainSpec& spec, std::span<const double> taus) {
  validate(spec);
  check_taus(taus);
  if (spec.n_sites > 12)
    throw budget_error("evolve_full_spin: N above the full-spin budget of 12");
  const int n = spec.n_sites;
  const auto dim = static_cast<std::size_t>(1) << n;

  SpinVector psi(dim, std::complex<double>{});
  psi[1] = 1.0;  // |e, g, ..., g>: bit 0 set

  // Sub-step so that |H| dt stays below 0.5 for the Taylor propagator.
  const double h_bound =
      static_cast<double>(n) * (spec.coupling + 0.5 * std::abs(spec.onsite)) + 1.0;
  const double inv_2g = 1.0 / (2.0 * spec.coupling);

  PopulationField field;
  field.taus.assign(taus.begin(), taus.end());
  field.pops.resize(taus.size());
  double previous_tau = 0.0;
  for (std::size_t j = 0; j < taus.size(); ++j) {
    const double dt = (taus[j] - previous_tau) * inv_2g;
    if (dt < 0.0) throw std::invalid_argument("evolve_full_spin: grid must be non-decreasing");
    if (dt > 0.0) {
      const auto steps = static_cast<long>(std::ceil(h_bound * dt / 0.5));
      const double sub = dt / static_cast<double>(steps);
      for (long s = 0; s < steps; ++s) taylor_step(spec, psi, sub);
    }
    previous_tau = taus[j];
    if (std::abs(norm_squared(psi) - 1.0) > 1e-9)
      throw std::runtime_error("evolve_full_spin: norm drift above 1e-9");
    auto& row = field.pops[j];
    row.assign(static_cast<std::size_t>(n), 0.0);
    for (std::size_t s = 0; s < dim; ++s) {
      const double weight = std::norm(psi[s]);
      if (weight == 0.0) continue;
      for (int site = 0; site < n; ++site)
        if ((s >> site) & 1u) row[static_cast<std::size_t>(site)] += weight;
    }
  }
  return field;
}

}  // namespace xxring
