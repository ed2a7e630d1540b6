#ifndef HURST_REGRESSION_HPP
#define HURST_REGRESSION_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hurst/error.hpp"

namespace hurst {

/**
 * Straight-line fit in transformed (usually log-log) coordinates. xs/ys hold
 * every candidate point; only [fit_lo, fit_hi] took part in the regression.
 */
struct LogLogFit {
    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<double> weights;
    std::size_t fit_lo = 0;
    std::size_t fit_hi = 0; // inclusive
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0;

    std::size_t fit_count() const noexcept { return fit_hi - fit_lo + 1; }
};

/**
 * Weighted least squares y = intercept + slope x over the inclusive index
 * range [lo, hi]. slope_se = sqrt(s^2 / Sxx) with s^2 = sum w r^2 / (n - 2).
 */
inline LogLogFit line_fit(std::vector<double> xs, std::vector<double> ys, std::vector<double> weights,
                          std::size_t lo, std::size_t hi)
{
    if (xs.size() != ys.size() || xs.size() != weights.size())
        throw Error(ErrorCode::InvalidArgument, "fit coordinates and weights differ in length");
    if (hi >= xs.size() || lo > hi || hi - lo + 1 < 3)
        throw Error(ErrorCode::InsufficientPoints, "line fit needs at least 3 points in range");

    double sw = 0.0, swx = 0.0, swy = 0.0;
    for (std::size_t i = lo; i <= hi; ++i) {
        if (!(weights[i] > 0.0)) throw Error(ErrorCode::InvalidArgument, "fit weights must be positive");
        sw += weights[i];
        swx += weights[i] * xs[i];
        swy += weights[i] * ys[i];
    }
    const double xbar = swx / sw;
    const double ybar = swy / sw;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = lo; i <= hi; ++i) {
        const double dx = xs[i] - xbar;
        sxx += weights[i] * dx * dx;
        sxy += weights[i] * dx * (ys[i] - ybar);
    }
    if (!(sxx > 0.0)) throw Error(ErrorCode::InsufficientPoints, "fit abscissae are all equal");

    LogLogFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = ybar - fit.slope * xbar;
    double rss = 0.0;
    for (std::size_t i = lo; i <= hi; ++i) {
        const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
        rss += weights[i] * r * r;
    }
    const auto dof = static_cast<double>(hi - lo + 1) - 2.0;
    fit.slope_se = std::sqrt(rss / dof / sxx);
    fit.xs = std::move(xs);
    fit.ys = std::move(ys);
    fit.weights = std::move(weights);
    fit.fit_lo = lo;
    fit.fit_hi = hi;
    return fit;
}

/// Regression of ln y on ln x; all coordinates must be strictly positive.
inline LogLogFit loglog_fit(std::span<const double> x, std::span<const double> y,
                            std::span<const double> weights, std::size_t lo, std::size_t hi)
{
    if (x.size() != y.size()) throw Error(ErrorCode::InvalidArgument, "x and y differ in length");
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw Error(ErrorCode::NonPositivePoint, "log-log fit point " + std::to_string(i) + " is not positive");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    std::vector<double> w = weights.empty() ? std::vector<double>(x.size(), 1.0)
                                            : std::vector<double>(weights.begin(), weights.end());
    return line_fit(std::move(lx), std::move(ly), std::move(w), lo, hi);
}

/// Unweighted fit over every point.
inline LogLogFit loglog_fit(std::span<const double> x, std::span<const double> y)
{
    if (x.size() < 3) throw Error(ErrorCode::InsufficientPoints, "log-log fit needs at least 3 points");
    return loglog_fit(x, y, {}, 0, x.size() - 1);
}

} // namespace hurst

#endif // HURST_REGRESSION_HPP
