#include "xxring/fft.hpp"

#include <cstdint>
#include <stdexcept>

#include "xxring/util.hpp"

namespace xxring::fft {

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

namespace {

std::size_t next_power_of_two(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

// exp(-i pi k^2 / n) with the quadratic phase reduced mod 2n in exact
// integer arithmetic; k^2 itself would lose the phase for large k.
Complex chirp_phase(std::size_t k, std::size_t n) {
  const auto r = static_cast<double>((static_cast<std::uint64_t>(k) * k) % (2 * n));
  return std::polar(1.0, -kPi * r / static_cast<double>(n));
}

}  // namespace

DftPlan::DftPlan(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("DftPlan: size must be >= 1");
  m_ = is_power_of_two(n) ? n : next_power_of_two(2 * n - 1);

  bit_reverse_.assign(m_, 0);
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < m_) ++bits;
  for (std::size_t i = 0; i < m_; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < bits; ++b)
      if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
    bit_reverse_[i] = r;
  }
  twiddle_.resize(m_ / 2);
  for (std::size_t j = 0; j < m_ / 2; ++j)
    twiddle_[j] = std::polar(1.0, -kTwoPi * static_cast<double>(j) / static_cast<double>(m_));

  work_.assign(m_, Complex{});
  if (m_ != n_) {
    chirp_.resize(n_);
    for (std::size_t k = 0; k < n_; ++k) chirp_[k] = chirp_phase(k, n_);
    // Wrapped kernel c_m = conj(chirp_|m|) on the circle of length m_.
    std::vector<Complex> kernel(m_, Complex{});
    for (std::size_t k = 0; k < n_; ++k) {
      const Complex c = std::conj(chirp_[k]);
      kernel[k] = c;
      if (k != 0) kernel[m_ - k] = c;
    }
    pow2_forward(kernel);
    kernel_fft_ = std::move(kernel);
    flipped_.assign(m_, Complex{});
  }
}

void DftPlan::pow2_forward(std::vector<Complex>& data) {
  const std::size_t m = data.size();
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = bit_reverse_[i];
    if (i < j) std::swap(data[i], data[j]);
  }
  for (std::size_t len = 2; len <= m; len <<= 1) {
    const std::size_t stride = m_ / len;
    for (std::size_t block = 0; block < m; block += len) {
      for (std::size_t j = 0; j < len / 2; ++j) {
        const Complex w = twiddle_[j * stride];
        const Complex odd = data[block + j + len / 2] * w;
        const Complex even = data[block + j];
        data[block + j] = even + odd;
        data[block + j + len / 2] = even - odd;
      }
    }
  }
}

void DftPlan::forward(std::span<const Complex> in, std::span<Complex> out) {
  if (in.size() != n_ || out.size() != n_)
    throw std::invalid_argument("DftPlan: span size does not match plan size");
  if (m_ == n_) {
    work_.assign(in.begin(), in.end());
    pow2_forward(work_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = work_[i];
    return;
  }
  // Bluestein: X_k = chirp_k * IFFT(FFT(x * chirp) .* kernel_fft)_k
  for (std::size_t k = 0; k < n_; ++k) work_[k] = in[k] * chirp_[k];
  for (std::size_t k = n_; k < m_; ++k) work_[k] = Complex{};
  pow2_forward(work_);
  for (std::size_t k = 0; k < m_; ++k) work_[k] *= kernel_fft_[k];
  // Inverse of the padded transform via index reversal: same forward engine.
  pow2_forward(work_);
  const double inv_m = 1.0 / static_cast<double>(m_);
  flipped_[0] = work_[0];
  for (std::size_t k = 1; k < m_; ++k) flipped_[k] = work_[m_ - k];
  for (std::size_t k = 0; k < n_; ++k) out[k] = flipped_[k] * inv_m * chirp_[k];
}

void DftPlan::inverse_scaled(std::span<const Complex> in, std::span<Complex> out) {
  if (in.size() != n_ || out.size() != n_)
    throw std::invalid_argument("DftPlan: span size does not match plan size");
  std::vector<Complex> tmp(n_);
  for (std::size_t i = 0; i < n_; ++i) tmp[i] = std::conj(in[i]);
  forward(tmp, tmp);
  const double inv_n = 1.0 / static_cast<double>(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = std::conj(tmp[i]) * inv_n;
}

}  // namespace xxring::fft
