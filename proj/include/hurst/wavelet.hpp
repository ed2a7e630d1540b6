#ifndef HURST_WAVELET_HPP
#define HURST_WAVELET_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hurst/error.hpp"
#include "hurst/series.hpp"

namespace hurst {

/// Daubechies scaling filter with `vanishing_moments` vanishing moments (1..4), 2p taps.
inline std::vector<double> daubechies_lowpass(int vanishing_moments)
{
    switch (vanishing_moments) {
    case 1: {
        const double s = 1.0 / std::sqrt(2.0);
        return {s, s};
    }
    case 2: {
        const double r3 = std::sqrt(3.0);
        const double k = 4.0 * std::sqrt(2.0);
        return {(1.0 + r3) / k, (3.0 + r3) / k, (3.0 - r3) / k, (1.0 - r3) / k};
    }
    case 3:
        return {0.33267055295008263, 0.80689150931109255, 0.45987750211849154,
                -0.13501102001025458, -0.08544127388202666, 0.03522629188570953};
    case 4:
        return {0.23037781330889650, 0.71484657055291540, 0.63088076792985890, -0.02798376941685985,
                -0.18703481171909308, 0.03084138183556076, 0.03288301166688520, -0.01059740178506903};
    default:
        throw Error(ErrorCode::InvalidArgument,
                    "Daubechies order must be 1..4; got " + std::to_string(vanishing_moments));
    }
}

struct DwtLevel {
    std::vector<double> detail;
    // Leading coefficients computed without periodic wrap-around.
    std::size_t interior = 0;
};

struct DwtResult {
    std::vector<DwtLevel> levels; // levels[0] is j = 1 (finest)
    std::vector<double> approximation;
};

/**
 * Periodic pyramid DWT down to `max_level`. When an approximation has odd
 * length its last sample is dropped before the next split, so energy is
 * conserved exactly only when N is divisible by 2^max_level.
 */
inline DwtResult dwt(std::span<const double> x, int vanishing_moments, int max_level)
{
    if (max_level < 1) throw Error(ErrorCode::InvalidArgument, "max_level must be >= 1");
    if (max_level > 60 || x.size() < (std::size_t{1} << (max_level + 2)))
        throw Error(ErrorCode::SeriesTooShort, "DWT to level " + std::to_string(max_level) + " needs N >= 2^(level+2)");
    const std::vector<double> h = daubechies_lowpass(vanishing_moments);
    const std::size_t taps = h.size();
    std::vector<double> g(taps);
    for (std::size_t k = 0; k < taps; ++k) g[k] = ((k % 2) ? -1.0 : 1.0) * h[taps - 1 - k];

    DwtResult out;
    std::vector<double> a(x.begin(), x.end());
    std::size_t valid = a.size();
    for (int level = 1; level <= max_level; ++level) {
        if (a.size() % 2) a.pop_back();
        valid = std::min(valid, a.size());
        const std::size_t n = a.size();
        const std::size_t half = n / 2;
        std::vector<double> next(half), det(half);
        for (std::size_t k = 0; k < half; ++k) {
            double s = 0.0, d = 0.0;
            for (std::size_t l = 0; l < taps; ++l) {
                const double v = a[(2 * k + l) % n];
                s += h[l] * v;
                d += g[l] * v;
            }
            next[k] = s;
            det[k] = d;
        }
        valid = valid >= taps ? (valid - taps) / 2 + 1 : 0;
        out.levels.push_back(DwtLevel{std::move(det), valid});
        a = std::move(next);
    }
    out.approximation = std::move(a);
    return out;
}

inline DwtResult dwt(const TimeSeries& series, int vanishing_moments, int max_level)
{
    return dwt(series.values(), vanishing_moments, max_level);
}

} // namespace hurst

#endif // HURST_WAVELET_HPP
