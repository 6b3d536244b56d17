#pragma once

#include <complex>
#include <span>
#include <vector>

#include "xxring/chain.hpp"
#include "xxring/observables.hpp"

namespace xxring {

struct RecurrenceEvent {
  int q = 0;              // bump index: the bump sits near tau = q * N
  double tau_detected = 0.0;
  double strength = 0.0;  // envelope peak / pre-window baseline
};

struct RecurrenceReport {
  std::vector<RecurrenceEvent> events;  // sorted by q
  double t_rec_scaled = 0.0;            // tau_rec = 2 g t_rec = N
  double detection_window = 0.0;
  double threshold = 0.0;
};

// Scans |Phi_0| for bumps near tau = q N. The envelope is a moving maximum
// of |Phi_0| over 0.5 scaled-time units; the q-th baseline is the envelope
// median over [qN(1-2w), qN(1-w)]; an event is reported when the envelope
// inside [qN(1-w), qN(1+w)] exceeds threshold * baseline. The grid must be
// uniform, cover [0, 2N], and have a step of at most 0.5.
RecurrenceReport detect_recurrences(std::span<const double> taus,
                                    std::span<const std::complex<double>> phi0,
                                    const ChainSpec& spec, double threshold = 3.0,
                                    double window = 0.15);

struct LightConeFit {
  std::vector<double> first_arrival;  // per site; NaN where never crossed
  double speed = 0.0;                 // d tau per unit ring distance
  double intercept = 0.0;
  double residual = 0.0;              // rms of the fit residuals
};

// First threshold crossing of every site plus a least-squares front fit of
// arrival time against ring distance d(n) = min(n, N-n) over d in
// [2, N/2 - 2]. Sites that never cross are excluded; fewer than 4 usable
// sites is an error.
LightConeFit lightcone_front(const PopulationField& field, const ChainSpec& spec,
                             double threshold = 0.02);

struct CorrelationPeak {
  double tau_star = 0.0;
  double c_star = 0.0;
};

// Argmax of C_T over a grid that covers [0, N].
CorrelationPeak correlation_peak(std::span<const double> taus, std::span<const double> ct,
                                 const ChainSpec& spec);
CorrelationPeak correlation_peak(const EntropyTrace& trace, const ChainSpec& spec);

}  // namespace xxring
