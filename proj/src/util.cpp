#include "xxring/util.hpp"

#include <cmath>
#include <thread>

namespace xxring {

std::vector<double> make_grid(double tau_max, double step) {
  if (!std::isfinite(tau_max) || !std::isfinite(step) || tau_max < 0.0 || step <= 0.0)
    throw std::invalid_argument("make_grid: need tau_max >= 0 and step > 0");
  const auto count =
      static_cast<std::size_t>(std::floor(tau_max / step * (1.0 + 1e-12) + 1e-9)) + 1;
  std::vector<double> taus(count);
  for (std::size_t j = 0; j < count; ++j) taus[j] = static_cast<double>(j) * step;
  return taus;
}

void parallel_chunks(std::size_t count, int threads,
                     const std::function<void(std::size_t, std::size_t)>& fn) {
  if (count == 0) return;
  std::size_t workers = threads < 1 ? 1 : static_cast<std::size_t>(threads);
  if (workers > count) workers = count;
  if (workers == 1) {
    fn(0, count);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = begin + chunk < count ? begin + chunk : count;
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace xxring
