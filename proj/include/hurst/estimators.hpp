#ifndef HURST_ESTIMATORS_HPP
#define HURST_ESTIMATORS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hurst/error.hpp"
#include "hurst/regression.hpp"
#include "hurst/series.hpp"
#include "hurst/spectral.hpp"
#include "hurst/wavelet.hpp"

namespace hurst {

enum class Method { RescaledRange, AggregatedVariance, Periodogram, LocalWhittle, Wavelet };

inline constexpr Method all_methods[] = {Method::RescaledRange, Method::AggregatedVariance, Method::Periodogram,
                                         Method::Wavelet, Method::LocalWhittle};

/// CLI / CSV token for a method.
inline constexpr std::string_view method_name(Method m) noexcept
{
    switch (m) {
    case Method::RescaledRange: return "rs";
    case Method::AggregatedVariance: return "aggvar";
    case Method::Periodogram: return "pgram";
    case Method::LocalWhittle: return "lwhittle";
    case Method::Wavelet: return "wavelet";
    }
    return "?";
}

inline std::optional<Method> parse_method(std::string_view s) noexcept
{
    for (Method m : all_methods)
        if (method_name(m) == s) return m;
    if (s == "periodogram") return Method::Periodogram;
    if (s == "local_whittle") return Method::LocalWhittle;
    return std::nullopt;
}

/**
 * Fit ranges and tuning knobs. Defaults are conventions chosen to be
 * comparable with published tables, not optimal choices. A `_div` field d
 * means N / d.
 */
struct EstimatorConfig {
    std::size_t grid_points = 30;

    double rs_min_block = 10;
    double rs_max_block_div = 10;
    double rs_fit_lo = 50;
    double rs_fit_hi_div = 20;

    double aggvar_min_block = 2;
    double aggvar_max_block_div = 30;
    double aggvar_fit_lo = 10;
    double aggvar_fit_hi_div = 100;

    double pgram_fraction = 0.1;

    // Bandwidth m: explicit count, else floor(N^exponent), else every Fourier
    // frequency below Nyquist.
    std::optional<std::size_t> lw_bandwidth;
    std::optional<double> lw_bandwidth_exponent;
    double lw_lo = 0.01;
    double lw_hi = 1.49;
    double lw_tol = 1e-6;

    int wavelet_order = 2; // vanishing moments
    int wavelet_j1 = 4;
    std::size_t wavelet_min_coeffs = 8;
    // Coarser octaves respond to slow periodic components (a 10-cycle sine at
    // N = 1e5 lands on octaves 11..13), so the default fit stops at 8.
    std::optional<int> wavelet_j2 = 8;
};

struct EstimatorReport {
    Method method = Method::RescaledRange;
    double hurst = 0.0;
    std::optional<LogLogFit> fit;
    std::optional<std::pair<double, double>> ci95;
    std::vector<std::pair<std::string, std::string>> diagnostics;

    std::string_view diagnostic(std::string_view key) const noexcept
    {
        for (const auto& [k, v] : diagnostics)
            if (k == key) return v;
        return {};
    }
};

namespace detail {

inline std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

/// Integers log-spaced between lo and hi (inclusive, rounded, de-duplicated).
inline std::vector<std::size_t> log_grid(double lo, double hi, std::size_t points)
{
    std::vector<std::size_t> out;
    if (hi < lo || points == 0) return out;
    const double a = std::log(lo), b = std::log(hi);
    for (std::size_t i = 0; i < points; ++i) {
        const double f = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
        const auto v = static_cast<std::size_t>(std::llround(std::exp(a + f * (b - a))));
        if (v >= 1 && (out.empty() || v != out.back())) out.push_back(v);
    }
    return out;
}

/// Inclusive index range of `scale` falling inside [lo, hi]; the whole range if that leaves < 3 points.
inline std::pair<std::size_t, std::size_t> fit_window(const std::vector<double>& scale, double lo, double hi)
{
    std::size_t first = scale.size(), last = 0, count = 0;
    for (std::size_t i = 0; i < scale.size(); ++i) {
        if (scale[i] >= lo && scale[i] <= hi) {
            first = std::min(first, i);
            last = i;
            ++count;
        }
    }
    if (count < 3) return {0, scale.empty() ? 0 : scale.size() - 1};
    return {first, last};
}

inline void finish(EstimatorReport& r)
{
    if (!(r.hurst > 0.5 && r.hurst < 1.0)) r.diagnostics.emplace_back("outside_lrd_range", "true");
}

} // namespace detail

// ---------------------------------------------------------------------------
// Rescaled range

/// Mean R/S over non-overlapping blocks of size n; blocks with S = 0 are skipped. NaN if none qualify.
inline double mean_rescaled_range(std::span<const double> x, std::size_t n)
{
    const std::size_t blocks = x.size() / n;
    double total = 0.0;
    std::size_t used = 0;
    for (std::size_t b = 0; b < blocks; ++b) {
        const auto block = x.subspan(b * n, n);
        double mean = 0.0;
        for (double v : block) mean += v;
        mean /= static_cast<double>(n);
        double w = 0.0, wmax = 0.0, wmin = 0.0, ss = 0.0;
        for (double v : block) {
            const double d = v - mean;
            w += d;
            wmax = std::max(wmax, w);
            wmin = std::min(wmin, w);
            ss += d * d;
        }
        const double s = std::sqrt(ss / static_cast<double>(n));
        if (!(s > 0.0)) continue;
        total += (wmax - wmin) / s;
        ++used;
    }
    return used ? total / static_cast<double>(used) : std::nan("");
}

inline EstimatorReport est_rs(const TimeSeries& series, const EstimatorConfig& cfg = {})
{
    const std::size_t n = series.size();
    if (n < 64) throw Error(ErrorCode::SeriesTooShort, "R/S requires N >= 64");
    if (!(series.stats().variance > 0.0)) throw Error(ErrorCode::DegenerateSeries, "R/S undefined for a constant series");

    const double nd = static_cast<double>(n);
    auto grid = detail::log_grid(cfg.rs_min_block, nd / cfg.rs_max_block_div, cfg.grid_points);
    double fit_lo = cfg.rs_fit_lo, fit_hi = nd / cfg.rs_fit_hi_div;
    if (grid.size() < 3) {
        grid = detail::log_grid(4, nd / 4, cfg.grid_points);
        fit_lo = 0;
        fit_hi = nd;
    }
    std::vector<double> xs, ys;
    for (std::size_t b : grid) {
        const double rs = mean_rescaled_range(series.values(), b);
        if (std::isfinite(rs) && rs > 0.0) {
            xs.push_back(static_cast<double>(b));
            ys.push_back(rs);
        }
    }
    if (xs.size() < 3) throw Error(ErrorCode::SeriesTooShort, "too few usable block sizes for R/S");
    const auto [lo, hi] = detail::fit_window(xs, fit_lo, fit_hi);

    EstimatorReport r;
    r.method = Method::RescaledRange;
    r.fit = loglog_fit(xs, ys, {}, lo, hi);
    r.hurst = r.fit->slope;
    r.diagnostics.emplace_back("C_H", detail::num(std::exp(r.fit->intercept)));
    r.diagnostics.emplace_back("n_range", detail::num(xs[lo]) + ".." + detail::num(xs[hi]));
    detail::finish(r);
    return r;
}

// ---------------------------------------------------------------------------
// Aggregated variance

inline EstimatorReport est_aggvar(const TimeSeries& series, const EstimatorConfig& cfg = {})
{
    const std::size_t n = series.size();
    if (n < 1000) throw Error(ErrorCode::SeriesTooShort, "aggregated variance requires N >= 1000");
    if (!(series.stats().variance > 0.0))
        throw Error(ErrorCode::DegenerateSeries, "aggregated variance undefined for a constant series");

    const double nd = static_cast<double>(n);
    const auto grid = detail::log_grid(cfg.aggvar_min_block, nd / cfg.aggvar_max_block_div, cfg.grid_points);
    std::vector<double> xs, ys;
    for (std::size_t m : grid) {
        const double v = aggregate(series, m).stats().variance;
        if (v > 0.0) {
            xs.push_back(static_cast<double>(m));
            ys.push_back(v);
        }
    }
    if (xs.size() < 3) throw Error(ErrorCode::SeriesTooShort, "too few usable block sizes for aggregated variance");
    const auto [lo, hi] = detail::fit_window(xs, cfg.aggvar_fit_lo, nd / cfg.aggvar_fit_hi_div);

    EstimatorReport r;
    r.method = Method::AggregatedVariance;
    r.fit = loglog_fit(xs, ys, {}, lo, hi);
    r.hurst = 1.0 + r.fit->slope / 2.0;
    r.diagnostics.emplace_back("m_range", detail::num(xs[lo]) + ".." + detail::num(xs[hi]));
    detail::finish(r);
    return r;
}

// ---------------------------------------------------------------------------
// Periodogram regression

inline EstimatorReport est_periodogram(const TimeSeries& series, const EstimatorConfig& cfg = {})
{
    if (series.size() < 1000) throw Error(ErrorCode::SeriesTooShort, "periodogram estimator requires N >= 1000");
    if (!(series.stats().variance > 0.0))
        throw Error(ErrorCode::DegenerateSeries, "periodogram estimator undefined for a constant series");
    const Periodogram p = periodogram(series);
    const auto bins = std::max<std::size_t>(3, static_cast<std::size_t>(cfg.pgram_fraction * static_cast<double>(p.size())));

    std::vector<double> xs, ys;
    for (std::size_t j = 0; j < bins && j < p.size(); ++j) {
        if (p.power[j] > 0.0) {
            xs.push_back(p.frequency[j]);
            ys.push_back(p.power[j]);
        }
    }
    if (xs.size() < 3) throw Error(ErrorCode::InsufficientPoints, "too few non-zero periodogram ordinates");

    EstimatorReport r;
    r.method = Method::Periodogram;
    r.fit = loglog_fit(xs, ys, {}, 0, xs.size() - 1);
    r.hurst = (1.0 - r.fit->slope) / 2.0;
    r.diagnostics.emplace_back("beta", detail::num(-r.fit->slope));
    r.diagnostics.emplace_back("C_f", detail::num(std::exp(r.fit->intercept)));
    r.diagnostics.emplace_back("frequencies", std::to_string(xs.size()));
    detail::finish(r);
    return r;
}

// ---------------------------------------------------------------------------
// Local Whittle

/// R(H) = ln[(1/m) sum lambda_j^{2H-1} I_j] - (2H - 1) (1/m) sum ln lambda_j over the first m ordinates.
inline double local_whittle_objective(std::span<const double> freq, std::span<const double> power, std::size_t m,
                                      double h)
{
    const double e = 2.0 * h - 1.0;
    double g = 0.0, mean_log = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double ll = std::log(freq[j]);
        g += std::exp(e * ll) * power[j];
        mean_log += ll;
    }
    const auto md = static_cast<double>(m);
    return std::log(g / md) - e * mean_log / md;
}

/// Golden-section minimization of R(H) on [lo, hi].
inline double minimize_local_whittle(std::span<const double> freq, std::span<const double> power, std::size_t m,
                                     double lo = 0.01, double hi = 1.49, double tol = 1e-6)
{
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double fc = local_whittle_objective(freq, power, m, c);
    double fd = local_whittle_objective(freq, power, m, d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = local_whittle_objective(freq, power, m, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = local_whittle_objective(freq, power, m, d);
        }
    }
    return (a + b) / 2.0;
}

inline EstimatorReport est_local_whittle(const TimeSeries& series, const EstimatorConfig& cfg = {})
{
    const std::size_t n = series.size();
    if (n < 1000) throw Error(ErrorCode::SeriesTooShort, "local Whittle requires N >= 1000");
    const std::size_t max_m = (n - 1) / 2;
    std::size_t m = max_m;
    if (cfg.lw_bandwidth)
        m = *cfg.lw_bandwidth;
    else if (cfg.lw_bandwidth_exponent)
        m = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(n), *cfg.lw_bandwidth_exponent)));
    if (m < 8 || m > max_m)
        throw Error(ErrorCode::BandwidthOutOfRange,
                    "bandwidth must be in [8, " + std::to_string(max_m) + "]; got " + std::to_string(m));
    if (!(series.stats().variance > 0.0))
        throw Error(ErrorCode::DegenerateSeries, "local Whittle undefined for a constant series");

    const Periodogram p = periodogram(series);
    EstimatorReport r;
    r.method = Method::LocalWhittle;
    r.hurst = minimize_local_whittle(p.frequency, p.power, m, cfg.lw_lo, cfg.lw_hi, cfg.lw_tol);
    const double half = 1.96 / (2.0 * std::sqrt(static_cast<double>(m)));
    r.diagnostics.emplace_back("bandwidth", std::to_string(m));
    r.diagnostics.emplace_back("asymptotic_ci95_nonauthoritative",
                               detail::num(r.hurst - half) + ".." + detail::num(r.hurst + half));
    if (r.hurst - cfg.lw_lo < 10 * cfg.lw_tol || cfg.lw_hi - r.hurst < 10 * cfg.lw_tol)
        r.diagnostics.emplace_back("at_search_bound", "true");
    detail::finish(r);
    return r;
}

// ---------------------------------------------------------------------------
// Wavelet (logscale diagram)

/**
 * mu_j = mean of squared interior detail coefficients at octave j; weighted
 * regression of log2 mu_j on j with weights n_j (ln 2)^2 / 2, the inverse of
 * the approximate variance of log2 mu_j. H = (slope + 1) / 2. The reported
 * ci95 is an interval on the fitted line's slope mapped to H; it is not a
 * confidence interval for H itself.
 */
inline EstimatorReport est_wavelet(const TimeSeries& series, const EstimatorConfig& cfg = {})
{
    const std::size_t n = series.size();
    if (n < 1024) throw Error(ErrorCode::SeriesTooShort, "wavelet estimator requires N >= 1024");
    if (!(series.stats().variance > 0.0))
        throw Error(ErrorCode::DegenerateSeries, "wavelet estimator undefined for a constant series");

    int max_level = 1;
    while ((std::size_t{1} << (max_level + 3)) <= n) ++max_level;
    const DwtResult w = dwt(series, cfg.wavelet_order, max_level);

    const double ln2 = std::numbers::ln2;
    std::vector<double> xs, ys, ws;
    for (std::size_t i = 0; i < w.levels.size(); ++i) {
        const int j = static_cast<int>(i) + 1;
        const auto& lvl = w.levels[i];
        if (j < cfg.wavelet_j1 || lvl.interior < cfg.wavelet_min_coeffs) continue;
        if (cfg.wavelet_j2 && j > *cfg.wavelet_j2) continue;
        double e = 0.0;
        for (std::size_t k = 0; k < lvl.interior; ++k) e += lvl.detail[k] * lvl.detail[k];
        const double mu = e / static_cast<double>(lvl.interior);
        if (!(mu > 0.0)) continue;
        xs.push_back(j);
        ys.push_back(std::log2(mu));
        ws.push_back(static_cast<double>(lvl.interior) * ln2 * ln2 / 2.0);
    }
    if (xs.size() < 3) throw Error(ErrorCode::SeriesTooShort, "fewer than 3 usable wavelet octaves");

    EstimatorReport r;
    r.method = Method::Wavelet;
    r.fit = line_fit(xs, ys, ws, 0, xs.size() - 1);
    r.hurst = (r.fit->slope + 1.0) / 2.0;
    const double half = 1.96 * r.fit->slope_se / 2.0;
    r.ci95 = std::pair{r.hurst - half, r.hurst + half};
    r.diagnostics.emplace_back("octaves", detail::num(xs.front()) + ".." + detail::num(xs.back()));
    r.diagnostics.emplace_back("ci_scope", "fitted_line_only");
    detail::finish(r);
    return r;
}

inline EstimatorReport estimate(Method m, const TimeSeries& series, const EstimatorConfig& cfg = {})
{
    switch (m) {
    case Method::RescaledRange: return est_rs(series, cfg);
    case Method::AggregatedVariance: return est_aggvar(series, cfg);
    case Method::Periodogram: return est_periodogram(series, cfg);
    case Method::LocalWhittle: return est_local_whittle(series, cfg);
    case Method::Wavelet: return est_wavelet(series, cfg);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown method");
}

} // namespace hurst

#endif // HURST_ESTIMATORS_HPP
