#ifndef HURST_ERROR_HPP
#define HURST_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace hurst {

enum class ErrorCode {
    DegenerateSeries,
    LagOutOfRange,
    BadBlock,
    SeriesTooShort,
    BadHurst,
    NonStationaryAR,
    ExplosiveAR,
    NonPositiveData,
    InsufficientPoints,
    NonPositivePoint,
    BandwidthOutOfRange,
    MalformedLine,
    NonMonotoneTimestamp,
    EmptyTrace,
    TooFewRecords,
    BadBinWidth,
    InvalidArgument,
    InvalidSpec,
    Io,
};

/// Stable snake_case token used in CSV error markers and CLI diagnostics.
inline constexpr std::string_view error_code_name(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::DegenerateSeries: return "degenerate_series";
    case ErrorCode::LagOutOfRange: return "lag_out_of_range";
    case ErrorCode::BadBlock: return "bad_block";
    case ErrorCode::SeriesTooShort: return "series_too_short";
    case ErrorCode::BadHurst: return "bad_hurst";
    case ErrorCode::NonStationaryAR: return "non_stationary_ar";
    case ErrorCode::ExplosiveAR: return "explosive_ar";
    case ErrorCode::NonPositiveData: return "non_positive_data";
    case ErrorCode::InsufficientPoints: return "insufficient_points";
    case ErrorCode::NonPositivePoint: return "non_positive_point";
    case ErrorCode::BandwidthOutOfRange: return "bandwidth_out_of_range";
    case ErrorCode::MalformedLine: return "malformed_line";
    case ErrorCode::NonMonotoneTimestamp: return "non_monotone_timestamp";
    case ErrorCode::EmptyTrace: return "empty_trace";
    case ErrorCode::TooFewRecords: return "too_few_records";
    case ErrorCode::BadBinWidth: return "bad_bin_width";
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::InvalidSpec: return "invalid_spec";
    case ErrorCode::Io: return "io";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace hurst

#endif // HURST_ERROR_HPP
