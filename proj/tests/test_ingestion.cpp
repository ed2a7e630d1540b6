#include <cmath>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "hurst/ingestion.hpp"
#include "hurst/random.hpp"

using namespace hurst;

namespace {

PacketTrace parse(const std::string& text)
{
    std::istringstream in(text);
    return parse_packet_trace(in);
}

ErrorCode code_of(const std::string& text)
{
    try {
        parse(text);
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InvalidArgument;
}

} // namespace

TEST(TraceParse, TwoRecords)
{
    const auto t = parse("0.0 64\n0.5 128\n");
    ASSERT_EQ(t.size(), 2u);
    EXPECT_EQ(t.records[1].timestamp, 0.5);
    EXPECT_EQ(t.records[1].size, 128u);
}

TEST(TraceParse, CommentsBlankLinesCrlf)
{
    const auto t = parse("# trace\r\n\r\n  1.0\t64\r\n2.0   10\r\n");
    EXPECT_EQ(t.size(), 2u);
}

TEST(TraceParse, MalformedTimestamp)
{
    try {
        parse("abc 64\n");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MalformedLine);
        EXPECT_NE(std::string(e.what()).find("line 1"), std::string::npos);
    }
}

TEST(TraceParse, MalformedShapes)
{
    EXPECT_EQ(code_of("1.0\n"), ErrorCode::MalformedLine);
    EXPECT_EQ(code_of("1.0 64 3\n"), ErrorCode::MalformedLine);
    EXPECT_EQ(code_of("1.0 -4\n"), ErrorCode::MalformedLine);
    EXPECT_EQ(code_of("1.0 6.5\n"), ErrorCode::MalformedLine);
    EXPECT_EQ(code_of("1.0x 6\n"), ErrorCode::MalformedLine);
}

TEST(TraceParse, NonMonotone)
{
    try {
        parse("1.0 64\n0.5 64\n");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonMonotoneTimestamp);
        EXPECT_NE(std::string(e.what()).find("record 2"), std::string::npos);
    }
}

TEST(TraceParse, WriteRoundTrip)
{
    const auto t = parse("0.125 64\n0.3333333333333333 1500\n7 0\n");
    std::stringstream ss;
    write_packet_trace(ss, t);
    EXPECT_EQ(parse_packet_trace(ss).records, t.records);
}

TEST(BinBytes, HandExample)
{
    const auto t = parse("0.1 10\n0.2 20\n1.5 30\n");
    EXPECT_EQ(bin_bytes_values(t, 1.0), (std::vector<double>{30, 30}));
}

TEST(BinBytes, SinglePacketIsEmpty)
{
    const auto t = parse("3.0 100\n");
    EXPECT_TRUE(bin_bytes_values(t, 10.0).empty());
    EXPECT_THROW(bin_bytes(t, 10.0), Error);
}

TEST(BinBytes, Errors)
{
    EXPECT_THROW(bin_bytes_values(PacketTrace{}, 1.0), Error);
    const auto t = parse("0 1\n1 1\n");
    EXPECT_THROW(bin_bytes_values(t, 0.0), Error);
    EXPECT_THROW(bin_bytes_values(t, -1.0), Error);
}

TEST(BinBytes, FineBinsSumToCoarse)
{
    // Packets sit mid-way between 0.1 s edges so both widths agree on placement.
    Rng rng(3);
    PacketTrace t;
    t.records.push_back({0.0, 100});
    for (std::size_t k = 0; k < 500; ++k) {
        if (rng.uniform() < 0.3) continue;
        t.records.push_back({(double(k) + 0.5) / 10.0, 40 + std::uint64_t(rng.uniform() * 1460)});
    }
    const auto coarse = bin_bytes_values(t, 1.0);
    const auto fine = bin_bytes_values(t, 0.1);
    ASSERT_GE(fine.size(), 10 * (coarse.size() - 1));
    for (std::size_t s = 0; s + 1 < coarse.size(); ++s) {
        double sum = 0.0;
        for (std::size_t k = 0; k < 10; ++k) sum += fine[10 * s + k];
        EXPECT_EQ(sum, coarse[s]) << "second " << s;
    }
}

TEST(Interarrival, Differences)
{
    const auto s = interarrival_series(parse("0 1\n1 1\n3 1\n6 1\n"));
    EXPECT_EQ(s, TimeSeries({1, 2, 3}));
}

TEST(Interarrival, DuplicatesGiveZeros)
{
    const auto s = interarrival_series(parse("0 1\n0 1\n2 1\n2 1\n"));
    EXPECT_EQ(s, TimeSeries({0, 2, 0}));
}

TEST(Interarrival, SumsToSpan)
{
    const auto s = interarrival_series(parse("0.5 1\n0.75 1\n1.25 1\n4.0 1\n"));
    double sum = 0.0;
    for (double v : s) sum += v;
    EXPECT_EQ(sum, 3.5);
}

TEST(Interarrival, Errors)
{
    EXPECT_THROW(interarrival_series(PacketTrace{}), Error);
    EXPECT_THROW(interarrival_series(parse("1 1\n")), Error);
}
