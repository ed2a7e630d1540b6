#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "hurst/generators.hpp"
#include "hurst/random.hpp"
#include "hurst/regression.hpp"
#include "hurst/spectral.hpp"

using namespace hurst;

namespace {

std::vector<complex> brute_dft(const std::vector<complex>& x)
{
    const std::size_t n = x.size();
    std::vector<complex> out(n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t t = 0; t < n; ++t)
            out[k] += x[t] * std::polar(1.0, -2.0 * std::numbers::pi * double(k * t % n) / double(n));
    return out;
}

std::vector<complex> random_complex(std::size_t n, std::uint64_t seed)
{
    Rng rng(seed);
    std::vector<complex> x(n);
    for (auto& v : x) v = {rng.normal(), rng.normal()};
    return x;
}

double max_rel_err(const std::vector<complex>& a, const std::vector<complex>& b)
{
    double scale = 0.0, err = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        scale = std::max(scale, std::abs(b[i]));
        err = std::max(err, std::abs(a[i] - b[i]));
    }
    return err / scale;
}

} // namespace

TEST(Dft, Impulse)
{
    const std::vector<double> x{1, 0, 0, 0};
    for (const auto& v : dft(x)) EXPECT_NEAR(std::abs(v - complex(1, 0)), 0.0, 1e-15);
}

TEST(Dft, Constant)
{
    const std::vector<double> x{1, 1, 1, 1};
    const auto y = dft(x);
    EXPECT_NEAR(std::abs(y[0] - complex(4, 0)), 0.0, 1e-15);
    for (std::size_t k = 1; k < 4; ++k) EXPECT_NEAR(std::abs(y[k]), 0.0, 1e-15);
}

TEST(Dft, MatchesBruteForce16)
{
    const auto x = random_complex(16, 11);
    EXPECT_LT(max_rel_err(dft(x), brute_dft(x)), 1e-9);
}

TEST(Dft, MatchesBruteForceArbitraryLengths)
{
    for (std::size_t n : {1u, 2u, 3u, 5u, 12u, 17u, 100u, 243u, 1000u}) {
        const auto x = random_complex(n, n);
        EXPECT_LT(max_rel_err(dft(x), brute_dft(x)), 1e-9) << "n=" << n;
    }
}

TEST(Dft, InverseRoundTrip)
{
    for (std::size_t n : {16u, 37u, 1024u, 1500u}) {
        const auto x = random_complex(n, 100 + n);
        EXPECT_LT(max_rel_err(idft(dft(x)), x), 1e-12) << "n=" << n;
    }
}

TEST(Dft, Parseval)
{
    const auto x = random_complex(777, 5);
    const auto y = dft(x);
    double ex = 0.0, ey = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        ex += std::norm(x[i]);
        ey += std::norm(y[i]);
    }
    EXPECT_NEAR(ey / double(x.size()), ex, 1e-9 * ex);
}

TEST(Periodogram, MatchesBruteForceSum16)
{
    Rng rng(2);
    std::vector<double> v(16);
    for (auto& x : v) x = rng.normal();
    const TimeSeries s(v);
    const auto p = periodogram(s);
    ASSERT_EQ(p.size(), 7u);
    const double mu = s.stats().mean;
    for (std::size_t j = 1; j <= 7; ++j) {
        const double lambda = 2.0 * std::numbers::pi * double(j) / 16.0;
        complex acc = 0.0;
        for (std::size_t t = 0; t < 16; ++t) acc += (v[t] - mu) * std::polar(1.0, -lambda * double(t));
        const double ref = std::norm(acc) / (2.0 * std::numbers::pi * 16.0);
        EXPECT_NEAR(p.frequency[j - 1], lambda, 1e-15);
        EXPECT_NEAR(p.power[j - 1], ref, 1e-9 * ref);
    }
}

// Sum of squared deviations = 2 pi times the periodogram summed over all
// nonzero Fourier frequencies (both halves).
TEST(Periodogram, ParsevalIdentityOddLength)
{
    const TimeSeries s = gen_iid_gaussian(1001, 4);
    const auto p = periodogram(s);
    double total = 0.0;
    for (double v : p.power) total += 2.0 * v;
    const double ss = s.stats().variance * double(s.size());
    EXPECT_NEAR(2.0 * std::numbers::pi * total, ss, 1e-9 * ss);
}

TEST(Periodogram, WhiteNoiseLevel)
{
    const auto p = periodogram(gen_iid_gaussian(100000, 1));
    double mean = 0.0;
    for (double v : p.power) mean += v;
    mean /= double(p.size());
    EXPECT_NEAR(mean, 1.0 / (2.0 * std::numbers::pi), 0.05 / (2.0 * std::numbers::pi));
}

TEST(Periodogram, FgnLowFrequencySlope)
{
    const auto p = periodogram(gen_fgn(FgnSpec{0.7, 100000, 1}));
    const std::size_t m = p.size() / 10;
    const std::vector<double> f(p.frequency.begin(), p.frequency.begin() + m);
    const std::vector<double> w(p.power.begin(), p.power.begin() + m);
    EXPECT_NEAR(loglog_fit(f, w).slope, -0.4, 0.1);
}

TEST(Periodogram, TooShort) { EXPECT_THROW(periodogram(TimeSeries({1, 2, 3, 4, 5, 6, 7})), Error); }
