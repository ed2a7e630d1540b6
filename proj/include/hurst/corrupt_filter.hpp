#ifndef HURST_CORRUPT_FILTER_HPP
#define HURST_CORRUPT_FILTER_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "hurst/error.hpp"
#include "hurst/generators.hpp"
#include "hurst/series.hpp"

namespace hurst {

// ---------------------------------------------------------------------------
// Corruptions: an additive signal rescaled to the input's realized std.

struct Corruption {
    enum class Kind { Ar1, Sine, LinearTrend };

    Kind kind = Kind::Ar1;
    double phi = 0.9;  // Ar1 only
    int cycles = 10;   // Sine only

    static Corruption ar1(double phi = 0.9) { return {Kind::Ar1, phi, 10}; }
    static Corruption sine(int cycles = 10) { return {Kind::Sine, 0.9, cycles}; }
    static Corruption trend() { return {Kind::LinearTrend, 0.9, 10}; }

    std::string_view name() const noexcept
    {
        switch (kind) {
        case Kind::Ar1: return "ar1";
        case Kind::Sine: return "sine";
        case Kind::LinearTrend: return "trend";
        }
        return "?";
    }
};

/// The unscaled corrupting signal of length n. Sine and trend ignore the seed.
inline std::vector<double> corruption_signal(const Corruption& kind, std::size_t n, std::uint64_t seed)
{
    std::vector<double> c(n);
    switch (kind.kind) {
    case Corruption::Kind::Ar1: {
        if (!(std::abs(kind.phi) < 1.0))
            throw Error(ErrorCode::ExplosiveAR, "AR(1) corruption requires |phi| < 1");
        const TimeSeries path = gen_ar1(Ar1Spec{kind.phi, n, seed, 1.0});
        c.assign(path.begin(), path.end());
        break;
    }
    case Corruption::Kind::Sine: {
        if (kind.cycles < 1) throw Error(ErrorCode::InvalidArgument, "sine corruption needs cycles >= 1");
        const double w = 2.0 * std::numbers::pi * kind.cycles / static_cast<double>(n);
        for (std::size_t t = 0; t < n; ++t) c[t] = std::sin(w * static_cast<double>(t));
        break;
    }
    case Corruption::Kind::LinearTrend: {
        const double mid = (static_cast<double>(n) - 1.0) / 2.0;
        for (std::size_t t = 0; t < n; ++t) c[t] = static_cast<double>(t) - mid;
        break;
    }
    }
    return c;
}

inline TimeSeries corrupt(const TimeSeries& series, const Corruption& kind, std::uint64_t seed)
{
    const double target = series.stats().stddev;
    if (!(target > 0.0)) throw Error(ErrorCode::DegenerateSeries, "cannot std-match against a constant series");
    std::vector<double> c = corruption_signal(kind, series.size(), seed);
    const SummaryStats cs = detail::compute_stats(c);
    if (!(cs.stddev > 0.0))
        throw Error(ErrorCode::DegenerateSeries, "corrupting signal is constant at this length");
    const double scale = target / cs.stddev;
    std::vector<double> out(series.size());
    for (std::size_t t = 0; t < out.size(); ++t) out[t] = series[t] + scale * c[t];
    return TimeSeries(std::move(out));
}

// ---------------------------------------------------------------------------
// Filters

inline TimeSeries filter_log(const TimeSeries& series)
{
    std::vector<double> out(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (!(series[i] > 0.0)) {
            std::string why = series[i] == 0.0 ? "log unavailable: zeros" : "log unavailable: negative values";
            throw Error(ErrorCode::NonPositiveData, why + " (first at index " + std::to_string(i) + ")");
        }
        out[i] = std::log(series[i]);
    }
    return TimeSeries(std::move(out));
}

/// Subtracts the least-squares line a t + b over t = 0..N-1.
inline TimeSeries filter_linear_detrend(const TimeSeries& series)
{
    const std::size_t n = series.size();
    if (n < 2) throw Error(ErrorCode::SeriesTooShort, "linear detrend requires N >= 2");
    const double tbar = (static_cast<double>(n) - 1.0) / 2.0;
    const double ybar = series.stats().mean;
    double sty = 0.0, stt = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double dt = static_cast<double>(t) - tbar;
        sty += dt * (series[t] - ybar);
        stt += dt * dt;
    }
    const double slope = sty / stt;
    std::vector<double> out(n);
    for (std::size_t t = 0; t < n; ++t) out[t] = (series[t] - ybar) - slope * (static_cast<double>(t) - tbar);
    return TimeSeries(std::move(out));
}

namespace detail {

/**
 * Orthonormal basis (columns, length n each) for polynomials of degree <=
 * `degree` sampled on u = 2t/(N-1) - 1. Legendre columns are orthonormalized
 * by modified Gram-Schmidt, applied twice.
 */
inline std::vector<std::vector<double>> poly_basis(std::size_t n, int degree)
{
    std::vector<double> u(n);
    for (std::size_t t = 0; t < n; ++t)
        u[t] = n == 1 ? 0.0 : 2.0 * static_cast<double>(t) / (static_cast<double>(n) - 1.0) - 1.0;

    std::vector<std::vector<double>> q;
    std::vector<double> pm1(n, 1.0), pm2(n, 0.0);
    for (int k = 0; k <= degree; ++k) {
        std::vector<double> p(n);
        if (k == 0) {
            p = pm1;
        } else {
            // Bonnet recursion: k P_k = (2k-1) u P_{k-1} - (k-1) P_{k-2}
            for (std::size_t t = 0; t < n; ++t)
                p[t] = ((2.0 * k - 1.0) * u[t] * pm1[t] - (k - 1.0) * pm2[t]) / k;
            pm2 = pm1;
            pm1 = p;
        }
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& e : q) {
                double dot = 0.0;
                for (std::size_t t = 0; t < n; ++t) dot += e[t] * p[t];
                for (std::size_t t = 0; t < n; ++t) p[t] -= dot * e[t];
            }
        }
        double norm = 0.0;
        for (double v : p) norm += v * v;
        norm = std::sqrt(norm);
        for (auto& v : p) v /= norm;
        q.push_back(std::move(p));
    }
    return q;
}

} // namespace detail

/// Removes the least-squares polynomial of the given degree (constant term included).
inline TimeSeries filter_poly_detrend(const TimeSeries& series, int degree = 10)
{
    if (degree < 1) throw Error(ErrorCode::InvalidArgument, "polynomial degree must be >= 1");
    const std::size_t n = series.size();
    if (n < static_cast<std::size_t>(degree) + 2)
        throw Error(ErrorCode::SeriesTooShort, "polynomial detrend requires N >= degree + 2");
    const auto basis = detail::poly_basis(n, degree);
    std::vector<double> r(series.begin(), series.end());
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto& e : basis) {
            double dot = 0.0;
            for (std::size_t t = 0; t < n; ++t) dot += e[t] * r[t];
            for (std::size_t t = 0; t < n; ++t) r[t] -= dot * e[t];
        }
    }
    return TimeSeries(std::move(r));
}

} // namespace hurst

#endif // HURST_CORRUPT_FILTER_HPP
