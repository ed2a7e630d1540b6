#ifndef HURST_RANDOM_HPP
#define HURST_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace hurst {

/**
 * Seeded variate source. std::mt19937_64's output sequence is fixed by the
 * standard, but the std distributions are not, so the transforms to uniform,
 * normal and exponential variates are done here to keep generated series
 * identical across standard libraries.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1].
    double uniform_open_low() { return 1.0 - uniform(); }

    double exponential() { return -std::log(uniform_open_low()); }

    /// Standard normal via Box-Muller; the second variate of each pair is cached.
    double normal()
    {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform_open_low()));
        const double theta = 2.0 * std::numbers::pi * uniform();
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace hurst

#endif // HURST_RANDOM_HPP
