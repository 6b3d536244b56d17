#pragma once

#include <vector>

namespace xxring {

// Row of Bessel values J_0(x) ... J_{max_order}(x) at a fixed argument.
struct BesselRow {
  double argument = 0.0;
  int max_order = 0;
  std::vector<double> values;
};

// Integer-order Bessel function of the first kind, J_n(x) for x >= 0.
// Negative orders map through J_{-n}(x) = (-1)^n J_n(x).
//
// Ascending power series for x <= 12; Miller downward recurrence with
// completeness-sum normalization (J_0 + 2 J_2 + 2 J_4 + ... = 1) above.
// The recurrence starts max(n, ceil(x)) + 40 orders up, which keeps the
// absolute error near 1e-13 over x <= 1e4, |n| <= 1e4.
double bessel_j(int order, double x);

// All of J_0(x) ... J_{max_order}(x) in one downward-recurrence pass,
// cost O(max_order + x).
BesselRow bessel_row(int max_order, double x);

}  // namespace xxring
