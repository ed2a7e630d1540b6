#include <cmath>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "hurst/generators.hpp"
#include "hurst/regression.hpp"
#include "hurst/series.hpp"

using namespace hurst;

TEST(SummaryStats, ConstantSeries)
{
    const auto s = summary_stats(TimeSeries({1, 1, 1, 1}));
    EXPECT_DOUBLE_EQ(s.mean, 1.0);
    EXPECT_DOUBLE_EQ(s.variance, 0.0);
}

TEST(SummaryStats, TwoPoints)
{
    const auto s = summary_stats(TimeSeries({0, 2}));
    EXPECT_DOUBLE_EQ(s.mean, 1.0);
    EXPECT_DOUBLE_EQ(s.variance, 1.0);
}

TEST(SummaryStats, FourPoints)
{
    const auto s = summary_stats(TimeSeries({1, 2, 3, 4}));
    EXPECT_DOUBLE_EQ(s.mean, 2.5);
    EXPECT_DOUBLE_EQ(s.variance, 1.25);
}

TEST(TimeSeries, RejectsEmptyAndNonFinite)
{
    EXPECT_THROW(TimeSeries(std::vector<double>{}), Error);
    EXPECT_THROW(TimeSeries({1.0, NAN}), Error);
    EXPECT_THROW(TimeSeries({INFINITY}), Error);
}

TEST(TimeSeries, SliceClampsToEnd)
{
    const TimeSeries s({1, 2, 3, 4, 5});
    EXPECT_EQ(s.slice(1, 2), TimeSeries({2, 3}));
    EXPECT_EQ(s.slice(3, 100), TimeSeries({4, 5}));
}

TEST(Acf, LagZeroIsOne)
{
    const auto c = acf(gen_iid_gaussian(500, 3), 5);
    ASSERT_EQ(c.rho.size(), 6u);
    EXPECT_DOUBLE_EQ(c.rho[0], 1.0);
}

TEST(Acf, AlternatingSeries)
{
    const auto c = acf(TimeSeries({1, -1, 1, -1, 1, -1, 1, -1}), 1);
    EXPECT_NEAR(c.rho[1], -0.875, 1e-12);
}

TEST(Acf, Errors)
{
    try {
        acf(TimeSeries({1, 2, 3}), 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::LagOutOfRange);
    }
    try {
        acf(TimeSeries({2, 2, 2}), 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateSeries);
    }
}

TEST(Acf, FgnLogLogSlope)
{
    const auto c = acf(gen_fgn(FgnSpec{0.7, 100000, 1}), 1000);
    std::vector<double> k, r;
    for (std::size_t lag = 10; lag <= 1000; ++lag) {
        if (c.rho[lag] <= 0.0) continue;
        k.push_back(static_cast<double>(lag));
        r.push_back(c.rho[lag]);
    }
    const auto fit = loglog_fit(k, r);
    EXPECT_NEAR(fit.slope, -0.6, 0.15);
}

TEST(Aggregate, EvenBlocks) { EXPECT_EQ(aggregate(TimeSeries({1, 2, 3, 4}), 2), TimeSeries({1.5, 3.5})); }

TEST(Aggregate, PartialBlockDropped) { EXPECT_EQ(aggregate(TimeSeries({1, 2, 3, 4, 5}), 2), TimeSeries({1.5, 3.5})); }

TEST(Aggregate, BadBlock)
{
    EXPECT_THROW(aggregate(TimeSeries({1, 2, 3}), 0), Error);
    EXPECT_THROW(aggregate(TimeSeries({1, 2, 3}), 4), Error);
}

TEST(Aggregate, IidVarianceShrinks)
{
    const auto agg = aggregate(gen_iid_gaussian(100000, 7), 100);
    EXPECT_NEAR(agg.stats().variance, 0.01, 0.002);
}

TEST(SeriesText, RoundTrip)
{
    const TimeSeries s({0.1, -2.5e-300, 12345.678901234567, 1.0 / 3.0});
    std::stringstream ss;
    write_series(ss, s, "test series");
    EXPECT_EQ(read_series(ss), s);
}

TEST(SeriesText, CommentsAndCrlf)
{
    std::istringstream in("# header\r\n1.5\r\n\r\n# mid\n2\n");
    EXPECT_EQ(read_series(in), TimeSeries({1.5, 2.0}));
}

TEST(SeriesText, MalformedLine)
{
    std::istringstream in("1\nx2\n");
    try {
        read_series(in);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MalformedLine);
    }
}
