#ifndef HURST_GENERATORS_HPP
#define HURST_GENERATORS_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "hurst/error.hpp"
#include "hurst/random.hpp"
#include "hurst/series.hpp"
#include "hurst/spectral.hpp"

namespace hurst {

struct FgnSpec {
    double hurst = 0.7;
    std::size_t length = 100000;
    std::uint64_t seed = 1;
};

struct FarimaSpec {
    double d = 0.2;
    std::vector<double> ar;  // phi_1..phi_p, X_t = sum phi_j X_{t-j} + ...
    std::vector<double> ma;  // theta_1..theta_q, ... + e_t - sum theta_j e_{t-j}
    std::size_t length = 100000;
    std::uint64_t seed = 1;
    double innovation_sd = 1.0;
    // Stationarity is only checked for p <= 2; higher orders need this flag.
    bool allow_unchecked_ar = false;

    double hurst() const noexcept { return d + 0.5; }
};

struct Ar1Spec {
    double phi = 0.9;
    std::size_t length = 100000;
    std::uint64_t seed = 1;
    double innovation_sd = 1.0;
};

inline TimeSeries gen_iid_gaussian(std::size_t n, std::uint64_t seed)
{
    if (n < 1) throw Error(ErrorCode::SeriesTooShort, "length must be >= 1");
    Rng rng(seed);
    std::vector<double> v(n);
    for (auto& x : v) x = rng.normal();
    return TimeSeries(std::move(v));
}

// ---------------------------------------------------------------------------
// Fractional Gaussian noise, spectral synthesis after Paxson (1997).

namespace detail {

// Three-term alias sum with integral tail estimate and Paxson's empirical
// correction; relative error well below 1e-3 over (0, pi].
inline double fgn_alias_sum(double lambda, double h)
{
    const double d = -2.0 * h - 1.0;
    const double dp = -2.0 * h;
    const double two_pi = 2.0 * std::numbers::pi;
    auto a = [&](int k) { return two_pi * k + lambda; };
    auto b = [&](int k) { return two_pi * k - lambda; };
    double s = 0.0;
    for (int k = 1; k <= 3; ++k) s += std::pow(a(k), d) + std::pow(b(k), d);
    s += (std::pow(a(3), dp) + std::pow(b(3), dp) + std::pow(a(4), dp) + std::pow(b(4), dp))
         / (8.0 * h * std::numbers::pi);
    return (1.0002 - 0.000134 * lambda) * (s - std::pow(2.0, -7.65 * h - 7.4));
}

} // namespace detail

/// Approximate FGN spectral density (unit-variance process) at frequency lambda in (0, pi].
inline double fgn_spectral_density(double lambda, double h)
{
    const double amp = 2.0 * std::sin(std::numbers::pi * h) * std::tgamma(2.0 * h + 1.0) * (1.0 - std::cos(lambda));
    return amp * (std::pow(lambda, -2.0 * h - 1.0) + detail::fgn_alias_sum(lambda, h));
}

/**
 * Approximate FGN path: spectral density sampled at 2 pi j / M, multiplied by
 * iid Exp(1) variates, given uniform random phases, Hermitian-completed and
 * inverse transformed. M is N rounded up to even; an odd N drops the last
 * sample. The result is shifted and scaled to exact zero mean and unit
 * population variance.
 */
inline TimeSeries gen_fgn(const FgnSpec& spec)
{
    if (!(spec.hurst >= 0.5 && spec.hurst < 1.0))
        throw Error(ErrorCode::BadHurst, "FGN requires H in [0.5, 1); got " + std::to_string(spec.hurst));
    if (spec.length < 16) throw Error(ErrorCode::SeriesTooShort, "FGN requires N >= 16");

    const std::size_t m = spec.length + (spec.length % 2);
    const std::size_t half = m / 2;
    Rng rng(spec.seed);
    std::vector<complex> z(m, complex(0.0, 0.0));
    for (std::size_t j = 1; j <= half; ++j) {
        const double lambda = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m);
        const double power = fgn_spectral_density(lambda, spec.hurst) * rng.exponential();
        const double phase = 2.0 * std::numbers::pi * rng.uniform();
        z[j] = std::polar(std::sqrt(power), phase);
    }
    for (std::size_t j = 1; j < half; ++j) z[m - j] = std::conj(z[j]);
    detail::fft_any(z, +1);

    std::vector<double> x(spec.length);
    for (std::size_t t = 0; t < spec.length; ++t) x[t] = z[t].real();
    const SummaryStats st = detail::compute_stats(x);
    if (st.stddev <= 0.0) throw Error(ErrorCode::DegenerateSeries, "FGN synthesis produced a constant path");
    for (auto& v : x) v = (v - st.mean) / st.stddev;
    return TimeSeries(std::move(x));
}

// ---------------------------------------------------------------------------
// FARIMA(p, d, q)

/// MA(infinity) weights of (1 - B)^{-d}: psi_0 = 1, psi_k = psi_{k-1} (k - 1 + d) / k.
inline std::vector<double> farima_psi(double d, std::size_t count)
{
    std::vector<double> psi(count);
    if (count == 0) return psi;
    psi[0] = 1.0;
    for (std::size_t k = 1; k < count; ++k)
        psi[k] = psi[k - 1] * (static_cast<double>(k) - 1.0 + d) / static_cast<double>(k);
    return psi;
}

inline void validate(const FarimaSpec& spec)
{
    if (!(spec.d > 0.0 && spec.d < 0.5))
        throw Error(ErrorCode::InvalidArgument, "FARIMA requires d in (0, 0.5); got " + std::to_string(spec.d));
    if (!(spec.innovation_sd > 0.0))
        throw Error(ErrorCode::InvalidArgument, "innovation standard deviation must be positive");
    if (spec.length < 16) throw Error(ErrorCode::SeriesTooShort, "FARIMA requires N >= 16");
    const auto& phi = spec.ar;
    bool ok = true;
    switch (phi.size()) {
    case 0: break;
    case 1: ok = std::abs(phi[0]) < 1.0; break;
    case 2: ok = phi[0] + phi[1] < 1.0 && phi[1] - phi[0] < 1.0 && std::abs(phi[1]) < 1.0; break;
    default:
        if (!spec.allow_unchecked_ar)
            throw Error(ErrorCode::NonStationaryAR,
                        "AR order > 2 cannot be checked for stationarity; set allow_unchecked_ar to override");
    }
    if (!ok) throw Error(ErrorCode::NonStationaryAR, "AR coefficients violate the stationarity region");
}

/**
 * Fractionally integrated noise filtered by the ARMA part. 2N innovations are
 * drawn (the same stream as gen_iid_gaussian(2N, seed) scaled by
 * innovation_sd); the MA(infinity) expansion is truncated at K = N lags and
 * the first N outputs are discarded as warm-up.
 */
inline TimeSeries gen_farima(const FarimaSpec& spec)
{
    validate(spec);
    const std::size_t n = spec.length;
    const std::size_t total = 2 * n;

    Rng rng(spec.seed);
    std::vector<double> eps(total);
    for (auto& e : eps) e = spec.innovation_sd * rng.normal();

    // Linear convolution of eps with psi_0..psi_N through a zero-padded transform.
    const std::vector<double> psi = farima_psi(spec.d, n + 1);
    const std::size_t fft_len = detail::next_pow2(total + psi.size() - 1);
    std::vector<complex> a(fft_len), b(fft_len);
    for (std::size_t i = 0; i < total; ++i) a[i] = eps[i];
    for (std::size_t i = 0; i < psi.size(); ++i) b[i] = psi[i];
    detail::fft_pow2(a, -1);
    detail::fft_pow2(b, -1);
    for (std::size_t i = 0; i < fft_len; ++i) a[i] *= b[i];
    detail::fft_pow2(a, +1);
    const double scale = 1.0 / static_cast<double>(fft_len);
    std::vector<double> frac(total);
    for (std::size_t t = 0; t < total; ++t) frac[t] = a[t].real() * scale;

    std::vector<double> ma_out(total);
    for (std::size_t t = 0; t < total; ++t) {
        double v = frac[t];
        for (std::size_t j = 1; j <= spec.ma.size() && j <= t; ++j) v -= spec.ma[j - 1] * frac[t - j];
        ma_out[t] = v;
    }
    std::vector<double> x(total);
    for (std::size_t t = 0; t < total; ++t) {
        double v = ma_out[t];
        for (std::size_t j = 1; j <= spec.ar.size() && j <= t; ++j) v += spec.ar[j - 1] * x[t - j];
        x[t] = v;
    }
    return TimeSeries(std::vector<double>(x.begin() + static_cast<std::ptrdiff_t>(n), x.end()));
}

// ---------------------------------------------------------------------------
// AR(1), started from its stationary distribution.

inline TimeSeries gen_ar1(const Ar1Spec& spec)
{
    if (!(std::abs(spec.phi) < 1.0))
        throw Error(ErrorCode::ExplosiveAR, "AR(1) requires |phi| < 1; got " + std::to_string(spec.phi));
    if (spec.length < 1) throw Error(ErrorCode::SeriesTooShort, "length must be >= 1");
    Rng rng(spec.seed);
    std::vector<double> x(spec.length);
    x[0] = rng.normal() * spec.innovation_sd / std::sqrt(1.0 - spec.phi * spec.phi);
    for (std::size_t t = 1; t < spec.length; ++t) x[t] = spec.phi * x[t - 1] + spec.innovation_sd * rng.normal();
    return TimeSeries(std::move(x));
}

} // namespace hurst

#endif // HURST_GENERATORS_HPP
