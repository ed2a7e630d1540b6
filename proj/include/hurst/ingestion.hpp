#ifndef HURST_INGESTION_HPP
#define HURST_INGESTION_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "hurst/error.hpp"
#include "hurst/series.hpp"

namespace hurst {

struct PacketRecord {
    double timestamp = 0.0; // seconds
    std::uint64_t size = 0; // bytes

    friend bool operator==(const PacketRecord&, const PacketRecord&) = default;
};

struct PacketTrace {
    std::vector<PacketRecord> records;
    std::string source;

    std::size_t size() const noexcept { return records.size(); }
    bool empty() const noexcept { return records.empty(); }
};

namespace detail {

inline bool is_blank(char c) noexcept { return c == ' ' || c == '\t'; }

[[noreturn]] inline void malformed(std::size_t line, std::size_t col, const std::string& why)
{
    throw Error(ErrorCode::MalformedLine,
                "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + why);
}

} // namespace detail

/**
 * Two whitespace-separated columns per line, `<timestamp> <size>`, with '#'
 * comments and blank lines. Timestamps must be non-decreasing.
 */
inline PacketTrace parse_packet_trace(std::istream& in, std::string source = {})
{
    PacketTrace trace;
    trace.source = std::move(source);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t pos = 0;
        while (pos < line.size() && detail::is_blank(line[pos])) ++pos;
        if (pos == line.size() || line[pos] == '#') continue;

        std::vector<std::pair<std::size_t, std::string>> fields;
        while (pos < line.size()) {
            const std::size_t start = pos;
            while (pos < line.size() && !detail::is_blank(line[pos])) ++pos;
            fields.emplace_back(start + 1, line.substr(start, pos - start));
            while (pos < line.size() && detail::is_blank(line[pos])) ++pos;
        }
        if (fields.size() != 2)
            detail::malformed(lineno, fields.size() < 2 ? line.size() + 1 : fields[2].first,
                              "expected exactly two columns");

        PacketRecord rec;
        {
            const auto& [col, text] = fields[0];
            std::size_t used = 0;
            try {
                rec.timestamp = std::stod(text, &used);
            } catch (const std::exception&) {
                detail::malformed(lineno, col, "timestamp is not a number");
            }
            if (used != text.size() || !std::isfinite(rec.timestamp))
                detail::malformed(lineno, col, "timestamp is not a finite number");
        }
        {
            const auto& [col, text] = fields[1];
            if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
                detail::malformed(lineno, col, "size is not a non-negative integer");
            try {
                rec.size = std::stoull(text);
            } catch (const std::exception&) {
                detail::malformed(lineno, col, "size out of range");
            }
        }
        if (!trace.records.empty() && rec.timestamp < trace.records.back().timestamp) {
            const std::size_t idx = trace.records.size() + 1;
            throw Error(ErrorCode::NonMonotoneTimestamp,
                        "record " + std::to_string(idx) + " (line " + std::to_string(lineno) +
                            ") precedes record " + std::to_string(idx - 1));
        }
        trace.records.push_back(rec);
    }
    return trace;
}

inline void write_packet_trace(std::ostream& out, const PacketTrace& trace)
{
    char buf[64];
    for (const auto& r : trace.records) {
        std::snprintf(buf, sizeof buf, "%.17g %llu\n", r.timestamp, static_cast<unsigned long long>(r.size));
        out << buf;
    }
}

/**
 * Bytes per bin. Bin i covers [t0 + i w, t0 + (i + 1) w) with t0 the first
 * timestamp; bins run until the first one reaching the last timestamp, and
 * that final bin also takes a packet sitting exactly on its right edge.
 * Empty bins are zeros. A single-instant trace yields no bins.
 */
inline std::vector<double> bin_bytes_values(const PacketTrace& trace, double bin_width)
{
    if (trace.empty()) throw Error(ErrorCode::EmptyTrace, "trace has no records");
    if (!(bin_width > 0.0) || !std::isfinite(bin_width))
        throw Error(ErrorCode::BadBinWidth, "bin width must be positive");
    const double t0 = trace.records.front().timestamp;
    const double span = trace.records.back().timestamp - t0;
    const double ratio = span / bin_width;
    auto bins = static_cast<std::size_t>(std::floor(ratio));
    if (static_cast<double>(bins) < ratio) ++bins;

    std::vector<double> out(bins, 0.0);
    if (bins == 0) return out;
    for (const auto& r : trace.records) {
        auto i = static_cast<std::size_t>(std::floor((r.timestamp - t0) / bin_width));
        if (i >= bins) i = bins - 1;
        out[i] += static_cast<double>(r.size);
    }
    return out;
}

inline TimeSeries bin_bytes(const PacketTrace& trace, double bin_width)
{
    auto v = bin_bytes_values(trace, bin_width);
    if (v.empty()) throw Error(ErrorCode::SeriesTooShort, "trace span shorter than one bin");
    return TimeSeries(std::move(v));
}

inline TimeSeries interarrival_series(const PacketTrace& trace)
{
    if (trace.empty()) throw Error(ErrorCode::EmptyTrace, "trace has no records");
    if (trace.size() < 2) throw Error(ErrorCode::TooFewRecords, "interarrival series needs >= 2 records");
    std::vector<double> v(trace.size() - 1);
    for (std::size_t i = 0; i + 1 < trace.size(); ++i)
        v[i] = trace.records[i + 1].timestamp - trace.records[i].timestamp;
    return TimeSeries(std::move(v));
}

} // namespace hurst

#endif // HURST_INGESTION_HPP
