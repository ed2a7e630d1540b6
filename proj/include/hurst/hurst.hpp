#ifndef HURST_HURST_HPP
#define HURST_HURST_HPP

#include "hurst/corrupt_filter.hpp"
#include "hurst/error.hpp"
#include "hurst/estimators.hpp"
#include "hurst/generators.hpp"
#include "hurst/harness.hpp"
#include "hurst/ingestion.hpp"
#include "hurst/random.hpp"
#include "hurst/regression.hpp"
#include "hurst/series.hpp"
#include "hurst/spectral.hpp"
#include "hurst/wavelet.hpp"

namespace hurst {

inline constexpr const char* version = "0.1.0";

} // namespace hurst

#endif // HURST_HURST_HPP
