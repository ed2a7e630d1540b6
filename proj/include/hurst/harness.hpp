#ifndef HURST_HARNESS_HPP
#define HURST_HARNESS_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "hurst/corrupt_filter.hpp"
#include "hurst/error.hpp"
#include "hurst/estimators.hpp"
#include "hurst/generators.hpp"
#include "hurst/ingestion.hpp"
#include "hurst/series.hpp"

namespace hurst {

// ---------------------------------------------------------------------------
// Experiment description

struct Filter {
    enum class Kind { Log, LinearDetrend, PolyDetrend };

    Kind kind = Kind::Log;
    int degree = 10;

    std::string_view name() const noexcept
    {
        switch (kind) {
        case Kind::Log: return "log";
        case Kind::LinearDetrend: return "linear";
        case Kind::PolyDetrend: return "poly";
        }
        return "?";
    }
};

inline TimeSeries apply_filter(const TimeSeries& series, const Filter& f)
{
    switch (f.kind) {
    case Filter::Kind::Log: return filter_log(series);
    case Filter::Kind::LinearDetrend: return filter_linear_detrend(series);
    case Filter::Kind::PolyDetrend: return filter_poly_detrend(series, f.degree);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown filter");
}

struct SourceSpec {
    enum class Kind { Fgn, Farima, Ar1, Iid, Trace, SeriesFile };
    enum class TraceMode { Bins, Interarrival };

    Kind kind = Kind::Fgn;
    double hurst = 0.7;
    double d = 0.2;
    std::vector<double> phi;
    std::vector<double> theta;
    std::size_t length = 100000;

    std::string path; // trace or series file
    TraceMode mode = TraceMode::Bins;
    double bin_width = 1.0;
    std::size_t skip = 0;
    std::optional<std::size_t> take;
};

enum class OutputFormat { Csv, Text };

/**
 * One experiment matrix. Each run k uses seed base_seed + k for its source
 * series; AR(1) corruptions in that run use corruption_seed(base_seed + k).
 * Every row (corruption or filter) is applied independently to the run's
 * single base series.
 */
struct ExperimentSpec {
    SourceSpec source;
    std::vector<std::optional<Corruption>> corruptions; // nullopt = "none"
    std::vector<std::optional<Filter>> filters;          // nullopt = "none"
    std::vector<Method> estimators;
    std::size_t runs = 1;
    std::uint64_t base_seed = 1;
    OutputFormat format = OutputFormat::Csv;
    std::string output;
    std::size_t workers = 1;
    EstimatorConfig estimator_config;
};

inline std::uint64_t corruption_seed(std::uint64_t run_seed) noexcept { return run_seed ^ 0x9E3779B97F4A7C15ULL; }

inline void validate(const ExperimentSpec& spec)
{
    if (spec.estimators.empty()) throw Error(ErrorCode::InvalidSpec, "at least one estimator is required");
    if (spec.runs < 1) throw Error(ErrorCode::InvalidSpec, "runs must be >= 1");
    const auto& s = spec.source;
    if ((s.kind == SourceSpec::Kind::Trace || s.kind == SourceSpec::Kind::SeriesFile) && s.path.empty())
        throw Error(ErrorCode::InvalidSpec, "file-based source needs a path");
    if (s.kind == SourceSpec::Kind::Ar1 && s.phi.size() > 1)
        throw Error(ErrorCode::InvalidSpec, "ar1 source takes a single phi");
}

// ---------------------------------------------------------------------------
// key=value configuration

namespace detail {

inline std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline double to_double(const std::string& key, const std::string& v)
{
    std::size_t used = 0;
    double out = 0.0;
    try {
        out = std::stod(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != v.size() || v.empty()) throw Error(ErrorCode::InvalidSpec, key + ": not a number: '" + v + "'");
    return out;
}

inline std::uint64_t to_uint(const std::string& key, const std::string& v)
{
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
        throw Error(ErrorCode::InvalidSpec, key + ": not a non-negative integer: '" + v + "'");
    try {
        return std::stoull(v);
    } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidSpec, key + ": out of range: '" + v + "'");
    }
}

} // namespace detail

inline std::optional<Corruption> parse_corruption(const std::string& v)
{
    if (v == "none") return std::nullopt;
    if (v == "ar1") return Corruption::ar1();
    if (v == "sine" || v == "sin") return Corruption::sine();
    if (v == "trend") return Corruption::trend();
    throw Error(ErrorCode::InvalidSpec, "unknown corruption '" + v + "'");
}

inline std::optional<Filter> parse_filter(const std::string& v, int degree = 10)
{
    if (v == "none") return std::nullopt;
    if (v == "log") return Filter{Filter::Kind::Log, degree};
    if (v == "linear" || v == "trend") return Filter{Filter::Kind::LinearDetrend, degree};
    if (v == "poly") return Filter{Filter::Kind::PolyDetrend, degree};
    throw Error(ErrorCode::InvalidSpec, "unknown filter '" + v + "'");
}

/// Applies one key=value setting. List-valued keys append.
inline void apply_setting(ExperimentSpec& spec, const std::string& key, const std::string& v)
{
    auto& s = spec.source;
    auto& ec = spec.estimator_config;
    if (key == "source") {
        static const std::map<std::string, SourceSpec::Kind> kinds = {
            {"fgn", SourceSpec::Kind::Fgn},     {"farima", SourceSpec::Kind::Farima},
            {"ar1", SourceSpec::Kind::Ar1},     {"iid", SourceSpec::Kind::Iid},
            {"trace", SourceSpec::Kind::Trace}, {"series", SourceSpec::Kind::SeriesFile}};
        const auto it = kinds.find(v);
        if (it == kinds.end()) throw Error(ErrorCode::InvalidSpec, "unknown source '" + v + "'");
        s.kind = it->second;
    } else if (key == "h" || key == "hurst") {
        s.hurst = detail::to_double(key, v);
    } else if (key == "d") {
        s.d = detail::to_double(key, v);
    } else if (key == "phi") {
        s.phi.push_back(detail::to_double(key, v));
    } else if (key == "theta") {
        s.theta.push_back(detail::to_double(key, v));
    } else if (key == "n") {
        s.length = detail::to_uint(key, v);
    } else if (key == "trace") {
        s.kind = SourceSpec::Kind::Trace;
        s.path = v;
    } else if (key == "series") {
        s.kind = SourceSpec::Kind::SeriesFile;
        s.path = v;
    } else if (key == "mode") {
        if (v == "bins") s.mode = SourceSpec::TraceMode::Bins;
        else if (v == "interarrival") s.mode = SourceSpec::TraceMode::Interarrival;
        else throw Error(ErrorCode::InvalidSpec, "unknown trace mode '" + v + "'");
    } else if (key == "bin_width") {
        s.bin_width = detail::to_double(key, v);
    } else if (key == "skip") {
        s.skip = detail::to_uint(key, v);
    } else if (key == "take") {
        s.take = detail::to_uint(key, v);
    } else if (key == "seed") {
        spec.base_seed = detail::to_uint(key, v);
    } else if (key == "runs") {
        spec.runs = detail::to_uint(key, v);
    } else if (key == "corruption") {
        spec.corruptions.push_back(parse_corruption(v));
    } else if (key == "filter") {
        spec.filters.push_back(parse_filter(v));
    } else if (key == "degree") {
        const auto deg = static_cast<int>(detail::to_uint(key, v));
        for (auto& f : spec.filters)
            if (f) f->degree = deg;
    } else if (key == "estimator") {
        if (v == "all") {
            for (Method m : all_methods)
                if (std::find(spec.estimators.begin(), spec.estimators.end(), m) == spec.estimators.end())
                    spec.estimators.push_back(m);
        } else if (const auto m = parse_method(v)) {
            spec.estimators.push_back(*m);
        } else {
            throw Error(ErrorCode::InvalidSpec, "unknown estimator '" + v + "'");
        }
    } else if (key == "format") {
        if (v == "csv") spec.format = OutputFormat::Csv;
        else if (v == "text") spec.format = OutputFormat::Text;
        else throw Error(ErrorCode::InvalidSpec, "unknown format '" + v + "'");
    } else if (key == "output") {
        spec.output = v;
    } else if (key == "workers") {
        spec.workers = std::max<std::size_t>(1, detail::to_uint(key, v));
    } else if (key == "lw_bandwidth") {
        ec.lw_bandwidth = detail::to_uint(key, v);
    } else if (key == "lw_exponent") {
        ec.lw_bandwidth_exponent = detail::to_double(key, v);
    } else if (key == "wavelet_order") {
        ec.wavelet_order = static_cast<int>(detail::to_uint(key, v));
    } else if (key == "wavelet_j1") {
        ec.wavelet_j1 = static_cast<int>(detail::to_uint(key, v));
    } else if (key == "wavelet_j2") {
        if (v == "max") ec.wavelet_j2.reset();
        else ec.wavelet_j2 = static_cast<int>(detail::to_uint(key, v));
    } else if (key == "pgram_fraction") {
        ec.pgram_fraction = detail::to_double(key, v);
    } else if (key == "rs_fit_lo") {
        ec.rs_fit_lo = detail::to_double(key, v);
    } else if (key == "aggvar_fit_lo") {
        ec.aggvar_fit_lo = detail::to_double(key, v);
    } else {
        throw Error(ErrorCode::InvalidSpec, "unknown key '" + key + "'");
    }
}

/// Line-oriented key=value text; '#' starts a comment; repeated keys build lists.
inline ExperimentSpec parse_experiment(std::istream& in)
{
    ExperimentSpec spec;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string t = detail::trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::InvalidSpec, "line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = detail::trim(std::string_view(t).substr(0, eq));
        const std::string value = detail::trim(std::string_view(t).substr(eq + 1));
        try {
            apply_setting(spec, key, value);
        } catch (const Error& e) {
            throw Error(e.code(), "line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return spec;
}

// ---------------------------------------------------------------------------
// Running

inline TimeSeries load_source(const SourceSpec& s, std::uint64_t seed)
{
    TimeSeries base = [&] {
        switch (s.kind) {
        case SourceSpec::Kind::Fgn: return gen_fgn(FgnSpec{s.hurst, s.length, seed});
        case SourceSpec::Kind::Farima: {
            FarimaSpec f;
            f.d = s.d;
            f.ar = s.phi;
            f.ma = s.theta;
            f.length = s.length;
            f.seed = seed;
            return gen_farima(f);
        }
        case SourceSpec::Kind::Ar1:
            return gen_ar1(Ar1Spec{s.phi.empty() ? 0.9 : s.phi.front(), s.length, seed, 1.0});
        case SourceSpec::Kind::Iid: return gen_iid_gaussian(s.length, seed);
        case SourceSpec::Kind::Trace: {
            std::ifstream in(s.path);
            if (!in) throw Error(ErrorCode::Io, "cannot open trace '" + s.path + "'");
            const PacketTrace trace = parse_packet_trace(in, s.path);
            return s.mode == SourceSpec::TraceMode::Bins ? bin_bytes(trace, s.bin_width) : interarrival_series(trace);
        }
        case SourceSpec::Kind::SeriesFile: {
            std::ifstream in(s.path);
            if (!in) throw Error(ErrorCode::Io, "cannot open series '" + s.path + "'");
            return read_series(in);
        }
        }
        throw Error(ErrorCode::InvalidSpec, "unknown source");
    }();
    if (s.skip == 0 && !s.take) return base;
    return base.slice(s.skip, s.take.value_or(base.size()));
}

struct MatrixRowInput {
    std::string label;
    std::variant<TimeSeries, Error> series;
};

/**
 * The per-run row inputs in output order: corruptions first, then filters,
 * each derived from `base`. A filter that cannot be applied yields an Error
 * instead of aborting. With no corruptions and no filters there is a single
 * "none" row.
 */
inline std::vector<MatrixRowInput> build_rows(const TimeSeries& base, const ExperimentSpec& spec,
                                              std::uint64_t run_seed)
{
    std::vector<MatrixRowInput> rows;
    bool have_none = false;
    auto add_none = [&] {
        if (!have_none) rows.push_back({"none", base});
        have_none = true;
    };
    auto guarded = [&](std::string label, auto&& fn) {
        try {
            TimeSeries derived = fn();
            rows.push_back({std::move(label), std::move(derived)});
        } catch (const Error& e) {
            rows.push_back({std::move(label), e});
        }
    };
    for (const auto& c : spec.corruptions) {
        if (!c) {
            add_none();
            continue;
        }
        guarded(std::string(c->name()), [&] { return corrupt(base, *c, corruption_seed(run_seed)); });
    }
    for (const auto& f : spec.filters) {
        if (!f) {
            add_none();
            continue;
        }
        guarded(std::string(f->name()), [&] { return apply_filter(base, *f); });
    }
    if (rows.empty()) add_none();
    return rows;
}

struct MatrixCell {
    std::optional<double> hurst;
    std::optional<double> ci_half_width;
    std::string error_code; // set when hurst is empty
    std::string error_message;
};

struct MatrixRow {
    std::size_t run = 0;
    std::string label;
    std::vector<MatrixCell> cells; // one per ResultMatrix::methods entry
};

struct ResultMatrix {
    std::string title;
    std::vector<Method> methods;
    std::vector<MatrixRow> rows;
};

inline MatrixCell error_cell(const Error& e)
{
    MatrixCell c;
    c.error_code = std::string(error_code_name(e.code()));
    c.error_message = e.what();
    return c;
}

inline std::string describe_source(const SourceSpec& s)
{
    std::ostringstream os;
    switch (s.kind) {
    case SourceSpec::Kind::Fgn: os << "FGN H=" << s.hurst << " N=" << s.length; break;
    case SourceSpec::Kind::Farima:
        os << "FARIMA(" << s.phi.size() << ",d," << s.theta.size() << ") d=" << s.d << " N=" << s.length;
        break;
    case SourceSpec::Kind::Ar1: os << "AR(1) phi=" << (s.phi.empty() ? 0.9 : s.phi.front()) << " N=" << s.length; break;
    case SourceSpec::Kind::Iid: os << "iid Gaussian N=" << s.length; break;
    case SourceSpec::Kind::Trace:
        os << "trace " << s.path << " ("
           << (s.mode == SourceSpec::TraceMode::Bins ? "bytes/" + detail::num(s.bin_width) + "s" : "interarrival")
           << ")";
        break;
    case SourceSpec::Kind::SeriesFile: os << "series " << s.path; break;
    }
    if (s.skip || s.take) os << " skip=" << s.skip << " take=" << (s.take ? std::to_string(*s.take) : "all");
    return os.str();
}

/**
 * Runs every (run, row, estimator) cell. Source failures propagate; cell
 * failures are recorded as error markers. Cells run on up to spec.workers
 * threads; row order is independent of completion order.
 */
inline ResultMatrix run_matrix(const ExperimentSpec& spec)
{
    validate(spec);
    ResultMatrix out;
    out.title = describe_source(spec.source);
    out.methods = spec.estimators;

    struct Job {
        const TimeSeries* series;
        std::size_t row;
        std::size_t col;
    };
    for (std::size_t run = 0; run < spec.runs; ++run) {
        const std::uint64_t seed = spec.base_seed + run;
        const TimeSeries base = load_source(spec.source, seed);
        const auto inputs = build_rows(base, spec, seed);

        const std::size_t first_row = out.rows.size();
        std::vector<Job> jobs;
        for (std::size_t r = 0; r < inputs.size(); ++r) {
            MatrixRow row;
            row.run = run + 1;
            row.label = inputs[r].label;
            row.cells.resize(spec.estimators.size());
            if (const auto* err = std::get_if<Error>(&inputs[r].series)) {
                for (auto& c : row.cells) c = error_cell(*err);
            } else {
                for (std::size_t c = 0; c < spec.estimators.size(); ++c)
                    jobs.push_back({&std::get<TimeSeries>(inputs[r].series), first_row + r, c});
            }
            out.rows.push_back(std::move(row));
        }

        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next++; i < jobs.size(); i = next++) {
                const Job& j = jobs[i];
                MatrixCell cell;
                try {
                    const EstimatorReport rep = estimate(spec.estimators[j.col], *j.series, spec.estimator_config);
                    cell.hurst = rep.hurst;
                    if (rep.ci95) cell.ci_half_width = (rep.ci95->second - rep.ci95->first) / 2.0;
                } catch (const Error& e) {
                    cell = error_cell(e);
                }
                out.rows[j.row].cells[j.col] = std::move(cell);
            }
        };
        const std::size_t nthreads = std::min(spec.workers, std::max<std::size_t>(1, jobs.size()));
        std::vector<std::thread> pool;
        for (std::size_t t = 1; t < nthreads; ++t) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Output

namespace detail {

inline std::string fixed3(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s = buf;
    if (s == "-0.000") s = "0.000";
    return s;
}

inline std::string pad(const std::string& s, std::size_t width)
{
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

inline std::string method_heading(Method m)
{
    switch (m) {
    case Method::RescaledRange: return "R/S";
    case Method::AggregatedVariance: return "AggVar";
    case Method::Periodogram: return "Periodogram";
    case Method::LocalWhittle: return "LocalWhittle";
    case Method::Wavelet: return "Wavelet";
    }
    return "?";
}

} // namespace detail

/**
 * csv: header `run,row,<m>,<m>_ci,...`, H and ci printed with three decimals;
 * failed cells hold `ERR:<code>` with an empty ci. text: one block per run
 * with `H +- ci` cells, aligned in columns.
 */
inline void format_matrix(std::ostream& os, const ResultMatrix& m, OutputFormat format)
{
    if (format == OutputFormat::Csv) {
        os << "run,row";
        for (Method meth : m.methods) os << ',' << method_name(meth) << ',' << method_name(meth) << "_ci";
        os << '\n';
        for (const auto& row : m.rows) {
            os << row.run << ',' << row.label;
            for (const auto& c : row.cells) {
                if (c.hurst) os << ',' << detail::fixed3(*c.hurst) << ',' << (c.ci_half_width ? detail::fixed3(*c.ci_half_width) : "");
                else os << ",ERR:" << c.error_code << ',';
            }
            os << '\n';
        }
        return;
    }

    constexpr std::size_t label_w = 8, cell_w = 16;
    std::size_t last_run = 0;
    for (const auto& row : m.rows) {
        if (row.run != last_run) {
            if (last_run != 0) os << '\n';
            os << m.title << " -- run " << row.run << '\n';
            std::string head = detail::pad("Row", label_w);
            for (Method meth : m.methods) head += detail::pad(detail::method_heading(meth), cell_w);
            while (head.back() == ' ') head.pop_back();
            os << head << '\n';
            last_run = row.run;
        }
        std::string line = detail::pad(row.label, label_w);
        for (const auto& c : row.cells) {
            std::string cell;
            if (c.hurst) {
                cell = detail::fixed3(*c.hurst);
                if (c.ci_half_width) cell += " +- " + detail::fixed3(*c.ci_half_width);
            } else {
                cell = "ERR:" + c.error_code;
            }
            line += detail::pad(cell, cell_w);
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        os << line << '\n';
    }
}

inline std::string format_matrix(const ResultMatrix& m, OutputFormat format)
{
    std::ostringstream os;
    format_matrix(os, m, format);
    return os.str();
}

/// Writes "lag rho |rho|" lines for lags 0..max_lag after a '#' header.
inline void export_acf(std::ostream& os, const TimeSeries& series, std::size_t max_lag)
{
    const AcfCurve curve = acf(series, max_lag);
    os << "# lag rho abs_rho\n";
    char buf[96];
    for (std::size_t k = 0; k < curve.rho.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%zu %.10g %.10g\n", k, curve.rho[k], std::abs(curve.rho[k]));
        os << buf;
    }
}

} // namespace hurst

#endif // HURST_HARNESS_HPP
