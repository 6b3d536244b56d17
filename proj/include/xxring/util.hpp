#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace xxring {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

// Thrown when a requested computation exceeds the configured work budget.
class budget_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Uniform grid 0, step, 2*step, ... whose last point covers tau_max.
std::vector<double> make_grid(double tau_max, double step);

// Runs fn(begin, end) over a static partition of [0, count) on `threads`
// workers. Every index is independent and writes its own slot, so the result
// does not depend on the worker count.
void parallel_chunks(std::size_t count, int threads,
                     const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace xxring
