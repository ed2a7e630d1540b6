#ifndef HURST_SPECTRAL_HPP
#define HURST_SPECTRAL_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "hurst/error.hpp"
#include "hurst/series.hpp"

namespace hurst {

using complex = std::complex<double>;

namespace detail {

inline bool is_pow2(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_pow2(std::size_t n) noexcept
{
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// In-place iterative radix-2; sign = -1 forward, +1 backward (unnormalized).
inline void fft_pow2(std::vector<complex>& a, int sign)
{
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        // Twiddles computed directly per index rather than by repeated
        // multiplication, which drifts at large n.
        std::vector<complex> w(half);
        for (std::size_t k = 0; k < half; ++k) {
            const double ang = sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(len);
            w[k] = complex(std::cos(ang), std::sin(ang));
        }
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const complex u = a[i + k];
                const complex v = a[i + k + half] * w[k];
                a[i + k] = u + v;
                a[i + k + half] = u - v;
            }
        }
    }
}

// Bluestein chirp-z for arbitrary lengths.
inline void fft_any(std::vector<complex>& a, int sign)
{
    const std::size_t n = a.size();
    if (n <= 1) return;
    if (is_pow2(n)) {
        fft_pow2(a, sign);
        return;
    }
    const std::size_t m = next_pow2(2 * n - 1);
    std::vector<complex> chirp(n);
    const std::uint64_t two_n = 2 * static_cast<std::uint64_t>(n);
    for (std::size_t k = 0; k < n; ++k) {
        // k^2 mod 2n keeps the angle argument small and exact.
        const std::uint64_t kk = (static_cast<std::uint64_t>(k) * k) % two_n;
        const double ang = sign * std::numbers::pi * static_cast<double>(kk) / static_cast<double>(n);
        chirp[k] = complex(std::cos(ang), std::sin(ang));
    }
    std::vector<complex> x(m), y(m);
    for (std::size_t k = 0; k < n; ++k) x[k] = a[k] * chirp[k];
    y[0] = std::conj(chirp[0]);
    for (std::size_t k = 1; k < n; ++k) y[k] = y[m - k] = std::conj(chirp[k]);
    fft_pow2(x, -1);
    fft_pow2(y, -1);
    for (std::size_t k = 0; k < m; ++k) x[k] *= y[k];
    fft_pow2(x, +1);
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * scale * chirp[k];
}

} // namespace detail

/// Forward DFT, X_k = sum_t x_t exp(-2 pi i k t / N). Any N; O(N log N).
inline std::vector<complex> dft(std::span<const complex> values)
{
    std::vector<complex> a(values.begin(), values.end());
    detail::fft_any(a, -1);
    return a;
}

inline std::vector<complex> dft(std::span<const double> values)
{
    std::vector<complex> a(values.begin(), values.end());
    detail::fft_any(a, -1);
    return a;
}

/// Inverse DFT including the 1/N normalization, so idft(dft(x)) == x.
inline std::vector<complex> idft(std::span<const complex> values)
{
    std::vector<complex> a(values.begin(), values.end());
    detail::fft_any(a, +1);
    const double scale = 1.0 / static_cast<double>(a.size());
    for (auto& v : a) v *= scale;
    return a;
}

/// Raw periodogram on the Fourier frequencies 2 pi j / N, j = 1..floor((N-1)/2).
struct Periodogram {
    std::vector<double> frequency;
    std::vector<double> power;

    std::size_t size() const noexcept { return power.size(); }
};

/**
 * I(lambda_j) = |sum_t (x_t - mean) e^{i t lambda_j}|^2 / (2 pi N).
 * The sample mean is removed first; zero frequency and Nyquist are excluded.
 */
inline Periodogram periodogram(const TimeSeries& series)
{
    const std::size_t n = series.size();
    if (n < 8) throw Error(ErrorCode::SeriesTooShort, "periodogram requires N >= 8");
    const double mu = series.stats().mean;
    std::vector<complex> a(n);
    for (std::size_t t = 0; t < n; ++t) a[t] = series[t] - mu;
    detail::fft_any(a, -1);

    const std::size_t bins = (n - 1) / 2;
    Periodogram p;
    p.frequency.resize(bins);
    p.power.resize(bins);
    const double norm = 1.0 / (2.0 * std::numbers::pi * static_cast<double>(n));
    for (std::size_t j = 1; j <= bins; ++j) {
        p.frequency[j - 1] = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
        p.power[j - 1] = std::norm(a[j]) * norm;
    }
    return p;
}

} // namespace hurst

#endif // HURST_SPECTRAL_HPP
