#ifndef HURST_SERIES_HPP
#define HURST_SERIES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hurst/error.hpp"

namespace hurst {

struct SummaryStats {
    double mean = 0.0;
    double variance = 0.0; // population convention (denominator N)
    double stddev = 0.0;
};

namespace detail {

inline SummaryStats compute_stats(std::span<const double> x)
{
    SummaryStats s;
    const auto n = static_cast<double>(x.size());
    double sum = 0.0;
    for (double v : x) sum += v;
    s.mean = sum / n;
    // Two-pass with the residual-sum correction keeps constant series at exactly zero.
    double ss = 0.0, corr = 0.0;
    for (double v : x) {
        const double d = v - s.mean;
        ss += d * d;
        corr += d;
    }
    s.variance = std::max(0.0, (ss - corr * corr / n) / n);
    s.stddev = std::sqrt(s.variance);
    return s;
}

} // namespace detail

/**
 * Equally spaced, finite, non-empty sequence of observations. Index t is the
 * time coordinate. Immutable once built; summary statistics are computed
 * once at construction.
 */
class TimeSeries {
public:
    explicit TimeSeries(std::vector<double> values) : values_(std::move(values))
    {
        if (values_.empty())
            throw Error(ErrorCode::SeriesTooShort, "time series must contain at least one value");
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!std::isfinite(values_[i]))
                throw Error(ErrorCode::InvalidArgument,
                            "non-finite value at index " + std::to_string(i));
        }
        stats_ = detail::compute_stats(values_);
    }

    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    const SummaryStats& stats() const noexcept { return stats_; }

    auto begin() const noexcept { return values_.begin(); }
    auto end() const noexcept { return values_.end(); }

    /// Contiguous sub-range [offset, offset + count), clipped to the series end.
    TimeSeries slice(std::size_t offset, std::size_t count) const
    {
        if (offset >= values_.size())
            throw Error(ErrorCode::InvalidArgument, "slice offset beyond series end");
        const std::size_t last = std::min(values_.size(), offset + count);
        return TimeSeries(std::vector<double>(values_.begin() + static_cast<std::ptrdiff_t>(offset),
                                              values_.begin() + static_cast<std::ptrdiff_t>(last)));
    }

    friend bool operator==(const TimeSeries& a, const TimeSeries& b) { return a.values_ == b.values_; }

private:
    std::vector<double> values_;
    SummaryStats stats_;
};

inline SummaryStats summary_stats(const TimeSeries& series) { return series.stats(); }

struct AcfCurve {
    std::vector<double> rho; // rho[k] for lag k = 0..max_lag

    std::size_t max_lag() const noexcept { return rho.size() - 1; }
};

/// Biased sample autocorrelation: denominator N at every lag, so |rho| <= 1.
inline AcfCurve acf(const TimeSeries& series, std::size_t max_lag)
{
    const std::size_t n = series.size();
    if (max_lag < 1 || max_lag >= n)
        throw Error(ErrorCode::LagOutOfRange,
                    "max_lag must be in [1, N-1]; got " + std::to_string(max_lag));
    const auto& st = series.stats();
    if (st.variance <= 0.0)
        throw Error(ErrorCode::DegenerateSeries, "ACF undefined for a constant series");

    std::vector<double> centered(n);
    for (std::size_t t = 0; t < n; ++t) centered[t] = series[t] - st.mean;
    double c0 = 0.0;
    for (double v : centered) c0 += v * v;

    AcfCurve out;
    out.rho.resize(max_lag + 1);
    out.rho[0] = 1.0;
    for (std::size_t k = 1; k <= max_lag; ++k) {
        double s = 0.0;
        for (std::size_t t = 0; t + k < n; ++t) s += centered[t] * centered[t + k];
        out.rho[k] = s / c0;
    }
    return out;
}

/// Means over consecutive blocks of size m; a trailing partial block is dropped.
inline TimeSeries aggregate(const TimeSeries& series, std::size_t m)
{
    const std::size_t n = series.size();
    if (m < 1 || m > n)
        throw Error(ErrorCode::BadBlock, "block size must be in [1, N]; got " + std::to_string(m));
    if (m == 1) return series;
    const std::size_t blocks = n / m;
    std::vector<double> out(blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
        double s = 0.0;
        for (std::size_t i = b * m; i < (b + 1) * m; ++i) s += series[i];
        out[b] = s / static_cast<double>(m);
    }
    return TimeSeries(std::move(out));
}

// Text format: one value per line, '#' comment lines and blank lines skipped.

inline TimeSeries read_series(std::istream& in)
{
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(line.substr(first), &used);
        } catch (const std::exception&) {
            throw Error(ErrorCode::MalformedLine, "line " + std::to_string(lineno) + ": not a number");
        }
        const auto rest = line.find_first_not_of(" \t", first + used);
        if (rest != std::string::npos)
            throw Error(ErrorCode::MalformedLine,
                        "line " + std::to_string(lineno) + ": trailing characters");
        values.push_back(v);
    }
    if (values.empty()) throw Error(ErrorCode::SeriesTooShort, "series file contains no values");
    return TimeSeries(std::move(values));
}

inline void write_series(std::ostream& out, const TimeSeries& series, const std::string& comment = {})
{
    if (!comment.empty()) out << "# " << comment << '\n';
    char buf[64];
    for (double v : series) {
        std::snprintf(buf, sizeof buf, "%.17g\n", v);
        out << buf;
    }
}

} // namespace hurst

#endif // HURST_SERIES_HPP
