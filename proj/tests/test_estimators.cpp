#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "hurst/corrupt_filter.hpp"
#include "hurst/estimators.hpp"
#include "hurst/generators.hpp"
#include "hurst/wavelet.hpp"

using namespace hurst;

namespace {

const TimeSeries& fgn07()
{
    static const TimeSeries s = gen_fgn(FgnSpec{0.7, 100000, 1});
    return s;
}

const TimeSeries& iid()
{
    static const TimeSeries s = gen_iid_gaussian(100000, 1);
    return s;
}

TimeSeries affine(const TimeSeries& s, double a, double b)
{
    std::vector<double> v(s.begin(), s.end());
    for (auto& x : v) x = a * x + b;
    return TimeSeries(std::move(v));
}

} // namespace

// -- regression

TEST(LogLogFit, PowerLaw)
{
    const std::vector<double> x{1, 2, 3, 5, 8, 13};
    std::vector<double> y;
    for (double v : x) y.push_back(4.0 * v * v);
    const auto f = loglog_fit(x, y);
    EXPECT_NEAR(f.slope, 2.0, 1e-12);
    EXPECT_NEAR(f.intercept, std::log(4.0), 1e-12);
    EXPECT_NEAR(f.slope_se, 0.0, 1e-10);
}

TEST(LogLogFit, Constant)
{
    const std::vector<double> x{1, 2, 4, 8}, y{3, 3, 3, 3};
    EXPECT_NEAR(loglog_fit(x, y).slope, 0.0, 1e-15);
}

TEST(LineFit, NormalEquations)
{
    const std::vector<double> x{0.5, 1.0, 2.0, 3.5, 4.0}, y{1.2, 1.9, 4.1, 6.8, 8.3};
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < 5; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double slope = (5 * sxy - sx * sy) / (5 * sxx - sx * sx);
    const double icpt = (sy - slope * sx) / 5;
    const auto f = line_fit(x, y, std::vector<double>(5, 1.0), 0, 4);
    EXPECT_NEAR(f.slope, slope, 1e-9);
    EXPECT_NEAR(f.intercept, icpt, 1e-9);
}

TEST(LogLogFit, Errors)
{
    const std::vector<double> x{1, 2, 3}, y{1, 0, 2};
    EXPECT_THROW(loglog_fit(x, y), Error);
    const std::vector<double> x2{1, 2}, y2{1, 2};
    EXPECT_THROW(loglog_fit(x2, y2), Error);
}

// -- R/S

TEST(RescaledRange, Iid) { EXPECT_NEAR(est_rs(iid()).hurst, 0.5, 0.06); }

TEST(RescaledRange, FgnMildUnderestimate)
{
    const double h = est_rs(fgn07()).hurst;
    EXPECT_GE(h, 0.64);
    EXPECT_LE(h, 0.67);
}

TEST(RescaledRange, FgnStrongUnderestimateAtHighH)
{
    const double h = est_rs(gen_fgn(FgnSpec{0.9, 100000, 1})).hurst;
    EXPECT_GE(h, 0.78);
    EXPECT_LE(h, 0.86);
}

TEST(RescaledRange, ShortSeriesRejected) { EXPECT_THROW(est_rs(gen_iid_gaussian(32, 1)), Error); }

// -- aggregated variance

TEST(AggregatedVariance, Iid)
{
    const auto r = est_aggvar(iid());
    EXPECT_NEAR(r.fit->slope, -1.0, 0.1);
    EXPECT_NEAR(r.hurst, 0.5, 0.05);
}

TEST(AggregatedVariance, Fgn)
{
    const double h = est_aggvar(fgn07()).hurst;
    EXPECT_GE(h, 0.66);
    EXPECT_LE(h, 0.70);
}

TEST(AggregatedVariance, SineBreaksIt)
{
    EXPECT_NEAR(est_aggvar(corrupt(fgn07(), Corruption::sine(), 0)).hurst, 0.97, 0.03);
}

// -- periodogram

TEST(PeriodogramEstimator, Iid)
{
    const auto r = est_periodogram(iid());
    EXPECT_NEAR(r.fit->slope, 0.0, 0.1);
    EXPECT_NEAR(r.hurst, 0.5, 0.05);
}

TEST(PeriodogramEstimator, Fgn)
{
    const double h = est_periodogram(fgn07()).hurst;
    EXPECT_GE(h, 0.68);
    EXPECT_LE(h, 0.71);
}

TEST(PeriodogramEstimator, TrendInflates)
{
    const double h = est_periodogram(corrupt(fgn07(), Corruption::trend(), 0)).hurst;
    EXPECT_GE(h, 0.76);
    EXPECT_LE(h, 0.79);
}

// -- local Whittle

TEST(LocalWhittle, ExactPowerLawMinimizer)
{
    const std::size_t m = 2000;
    for (double h0 : {0.6, 0.75, 0.9}) {
        std::vector<double> f(m), p(m);
        for (std::size_t j = 0; j < m; ++j) {
            f[j] = 2.0 * std::numbers::pi * double(j + 1) / 100000.0;
            p[j] = 0.3 * std::pow(f[j], 1.0 - 2.0 * h0);
        }
        EXPECT_NEAR(minimize_local_whittle(f, p, m), h0, 1e-4) << "H0=" << h0;
    }
}

TEST(LocalWhittle, Iid) { EXPECT_NEAR(est_local_whittle(iid()).hurst, 0.5, 0.04); }

TEST(LocalWhittle, Fgn) { EXPECT_NEAR(est_local_whittle(fgn07()).hurst, 0.72, 0.01); }

TEST(LocalWhittle, NotClampedAboveOne)
{
    const auto base = gen_fgn(FgnSpec{0.9, 100000, 1});
    const auto r = est_local_whittle(corrupt(base, Corruption::ar1(), 1));
    EXPECT_NEAR(r.hurst, 1.06, 0.03);
    EXPECT_EQ(r.diagnostic("outside_lrd_range"), "true");
}

TEST(LocalWhittle, BandwidthChecked)
{
    EstimatorConfig cfg;
    cfg.lw_bandwidth = 4;
    EXPECT_THROW(est_local_whittle(iid(), cfg), Error);
    cfg.lw_bandwidth = 50000;
    EXPECT_THROW(est_local_whittle(iid(), cfg), Error);
    cfg.lw_bandwidth.reset();
    cfg.lw_bandwidth_exponent = 0.65;
    EXPECT_EQ(est_local_whittle(iid(), cfg).diagnostic("bandwidth"),
              std::to_string(std::size_t(std::floor(std::pow(100000.0, 0.65)))));
}

// -- wavelet

TEST(Dwt, ConstantHasNoDetail)
{
    const std::vector<double> x(1024, 3.5);
    const auto w = dwt(x, 2, 5);
    for (const auto& lvl : w.levels)
        for (double d : lvl.detail) EXPECT_NEAR(d, 0.0, 1e-10);
}

TEST(Dwt, RampAnnihilated)
{
    std::vector<double> x(4096);
    for (std::size_t t = 0; t < x.size(); ++t) x[t] = 0.25 * double(t) - 100.0;
    double scale = 0.0;
    for (double v : x) scale = std::max(scale, std::abs(v));
    for (int p = 2; p <= 4; ++p) {
        const auto w = dwt(x, p, 6);
        for (const auto& lvl : w.levels) {
            ASSERT_GT(lvl.interior, 0u);
            for (std::size_t k = 0; k < lvl.interior; ++k) EXPECT_NEAR(lvl.detail[k] / scale, 0.0, 1e-8);
        }
    }
}

TEST(Dwt, EnergyConserved)
{
    const auto s = gen_iid_gaussian(8192, 3);
    for (int p = 1; p <= 4; ++p) {
        const auto w = dwt(s, p, 8);
        double in = 0.0, out = 0.0;
        for (double v : s) in += v * v;
        for (const auto& lvl : w.levels)
            for (double d : lvl.detail) out += d * d;
        for (double a : w.approximation) out += a * a;
        EXPECT_NEAR(out, in, 1e-9 * in) << "p=" << p;
    }
}

TEST(Dwt, Errors)
{
    const std::vector<double> x(64, 1.0);
    EXPECT_THROW(dwt(x, 5, 2), Error);
    EXPECT_THROW(dwt(x, 2, 5), Error);
}

TEST(WaveletEstimator, Fgn)
{
    const auto r = est_wavelet(fgn07());
    EXPECT_GE(r.hurst, 0.69);
    EXPECT_LE(r.hurst, 0.71);
    ASSERT_TRUE(r.ci95);
    const double half = (r.ci95->second - r.ci95->first) / 2.0;
    EXPECT_GT(half, 0.005);
    EXPECT_LT(half, 0.02);
}

TEST(WaveletEstimator, TrendInvariant)
{
    const auto a = est_wavelet(fgn07());
    const auto b = est_wavelet(corrupt(fgn07(), Corruption::trend(), 0));
    EXPECT_LT(std::abs(a.hurst - b.hurst), 1e-6);
}

TEST(WaveletEstimator, Iid) { EXPECT_NEAR(est_wavelet(iid()).hurst, 0.5, 0.03); }

// -- shared properties

TEST(Estimators, AffineInvariant)
{
    const auto s = gen_fgn(FgnSpec{0.75, 20000, 2});
    const auto t = affine(s, 3.7, -12.5);
    for (Method m : all_methods)
        EXPECT_LT(std::abs(estimate(m, s).hurst - estimate(m, t).hurst), 1e-9) << method_name(m);
}

TEST(Estimators, ConstantSeriesRejected)
{
    const TimeSeries c(std::vector<double>(4096, 1.0));
    for (Method m : all_methods) EXPECT_THROW(estimate(m, c), Error) << method_name(m);
}

TEST(Estimators, MethodNamesRoundTrip)
{
    for (Method m : all_methods) EXPECT_EQ(parse_method(method_name(m)), m);
    EXPECT_FALSE(parse_method("bogus"));
}
