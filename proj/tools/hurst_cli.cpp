#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "hurst/hurst.hpp"

namespace {

using namespace hurst;

TimeSeries load_series(const std::string& path)
{
    if (path == "-") return read_series(std::cin);
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
    return read_series(in);
}

// Runs fn with an output stream bound to `path` ("-" or empty is stdout).
template <class Fn>
void with_output(const std::string& path, Fn&& fn)
{
    if (path.empty() || path == "-") {
        fn(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
    fn(out);
    if (!out) throw Error(ErrorCode::Io, "write failed for '" + path + "'");
}

std::string g17(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string g6(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string csv_quote(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

struct GenerateArgs {
    std::string model = "fgn";
    double h = 0.7;
    double d = 0.2;
    std::vector<double> phi;
    std::vector<double> theta;
    std::size_t n = 100000;
    std::uint64_t seed = 1;
    bool allow_unchecked_ar = false;
    std::string out;
};

void run_generate(const GenerateArgs& a)
{
    TimeSeries s = [&] {
        if (a.model == "fgn") return gen_fgn(FgnSpec{a.h, a.n, a.seed});
        if (a.model == "farima") {
            FarimaSpec f;
            f.d = a.d;
            f.ar = a.phi;
            f.ma = a.theta;
            f.length = a.n;
            f.seed = a.seed;
            f.allow_unchecked_ar = a.allow_unchecked_ar;
            return gen_farima(f);
        }
        if (a.model == "ar1") return gen_ar1(Ar1Spec{a.phi.empty() ? 0.9 : a.phi.front(), a.n, a.seed, 1.0});
        return gen_iid_gaussian(a.n, a.seed);
    }();
    std::ostringstream comment;
    comment << a.model << " n=" << a.n << " seed=" << a.seed;
    with_output(a.out, [&](std::ostream& os) { write_series(os, s, comment.str()); });
}

struct EstimateArgs {
    std::string method = "all";
    std::string in;
    std::string out;
    std::string dump_fit;
};

void run_estimate(const EstimateArgs& a, const EstimatorConfig& cfg)
{
    std::vector<Method> methods;
    if (a.method == "all") {
        methods.assign(std::begin(all_methods), std::end(all_methods));
    } else if (const auto m = parse_method(a.method)) {
        methods.push_back(*m);
    } else {
        throw Error(ErrorCode::InvalidArgument, "unknown method '" + a.method + "'");
    }
    const TimeSeries s = load_series(a.in);

    std::vector<EstimatorReport> reports;
    reports.reserve(methods.size());
    for (Method m : methods) reports.push_back(estimate(m, s, cfg));

    with_output(a.out, [&](std::ostream& os) {
        os << "method,hurst,ci_lo,ci_hi,slope,slope_se,fit_points,diagnostics\n";
        for (const auto& r : reports) {
            os << method_name(r.method) << ',' << g6(r.hurst) << ',';
            if (r.ci95) os << g6(r.ci95->first) << ',' << g6(r.ci95->second);
            else os << ',';
            if (r.fit) os << ',' << g6(r.fit->slope) << ',' << g6(r.fit->slope_se) << ',' << r.fit->fit_count();
            else os << ",,,";
            std::string diag;
            for (const auto& [k, v] : r.diagnostics) diag += (diag.empty() ? "" : ";") + k + '=' + v;
            os << ',' << csv_quote(diag) << '\n';
        }
    });

    if (!a.dump_fit.empty()) {
        with_output(a.dump_fit, [&](std::ostream& os) {
            os << "# method x y in_fit\n";
            for (const auto& r : reports) {
                if (!r.fit) continue;
                const auto& f = *r.fit;
                for (std::size_t i = 0; i < f.xs.size(); ++i)
                    os << method_name(r.method) << ' ' << g17(f.xs[i]) << ' ' << g17(f.ys[i]) << ' '
                       << (i >= f.fit_lo && i <= f.fit_hi ? 1 : 0) << '\n';
            }
        });
    }
}

struct IngestArgs {
    std::string trace;
    std::string mode = "bins";
    double bin_width = 1.0;
    std::size_t skip = 0;
    std::optional<std::size_t> take;
    std::string out;
};

void run_ingest(const IngestArgs& a)
{
    SourceSpec src;
    src.kind = SourceSpec::Kind::Trace;
    src.path = a.trace;
    if (a.mode == "bins") src.mode = SourceSpec::TraceMode::Bins;
    else if (a.mode == "interarrival") src.mode = SourceSpec::TraceMode::Interarrival;
    else throw Error(ErrorCode::InvalidArgument, "unknown mode '" + a.mode + "'");
    src.bin_width = a.bin_width;
    src.skip = a.skip;
    src.take = a.take;
    const TimeSeries s = load_source(src, 0);
    with_output(a.out, [&](std::ostream& os) { write_series(os, s, describe_source(src)); });
}

// Config keys in the order flag values are applied after the config file.
const std::vector<std::pair<std::string, std::string>> matrix_keys = {
    {"source", "--source"},
    {"h", "--h"},
    {"d", "--d"},
    {"phi", "--phi"},
    {"theta", "--theta"},
    {"n", "--n"},
    {"trace", "--trace"},
    {"series", "--series"},
    {"mode", "--mode"},
    {"bin_width", "--bin-width"},
    {"skip", "--skip"},
    {"take", "--take"},
    {"seed", "--seed"},
    {"runs", "--runs"},
    {"corruption", "--corruption"},
    {"filter", "--filter"},
    {"degree", "--degree"},
    {"estimator", "--estimator"},
    {"format", "--format"},
    {"output", "--output"},
    {"workers", "--workers"},
    {"lw_bandwidth", "--lw-bandwidth"},
    {"lw_exponent", "--lw-exponent"},
    {"wavelet_order", "--wavelet-order"},
    {"wavelet_j1", "--wavelet-j1"},
    {"wavelet_j2", "--wavelet-j2"},
    {"pgram_fraction", "--pgram-fraction"},
    {"rs_fit_lo", "--rs-fit-lo"},
    {"aggvar_fit_lo", "--aggvar-fit-lo"},
};

void add_estimator_options(CLI::App* cmd, std::optional<std::size_t>& bw, std::optional<double>& bw_exp,
                           std::optional<int>& j2)
{
    cmd->add_option("--lw-bandwidth", bw, "local Whittle bandwidth m (default: all Fourier frequencies)");
    cmd->add_option("--lw-exponent", bw_exp, "local Whittle bandwidth as m = N^exponent");
    cmd->add_option("--wavelet-j2", j2, "coarsest wavelet octave in the fit");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Long-range dependence toolkit: generate, corrupt, filter and estimate the Hurst parameter"};
    app.set_version_flag("--version", std::string("hurst ") + hurst::version);
    app.set_help_flag("--help", "print help and exit");
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "synthesize a series");
    generate->add_option("--model", gen.model, "fgn|farima|ar1|iid")
        ->check(CLI::IsMember({"fgn", "farima", "ar1", "iid"}));
    generate->add_option("--h", gen.h, "Hurst parameter (fgn)");
    generate->add_option("--d", gen.d, "fractional difference (farima)");
    generate->add_option("--phi", gen.phi, "AR coefficients (farima, ar1)");
    generate->add_option("--theta", gen.theta, "MA coefficients (farima)");
    generate->add_option("--n", gen.n, "length");
    generate->add_option("--seed", gen.seed, "RNG seed");
    generate->add_flag("--allow-unchecked-ar", gen.allow_unchecked_ar, "skip the stationarity check for AR order > 2");
    generate->add_option("--out", gen.out, "output file (default stdout)");

    std::string corrupt_in, corrupt_out, corrupt_kind = "ar1";
    std::uint64_t corrupt_seed = 1;
    auto* corrupt_cmd = app.add_subcommand("corrupt", "add std-matched AR(1), sine or trend noise");
    corrupt_cmd->add_option("--in", corrupt_in, "input series")->required();
    corrupt_cmd->add_option("--kind", corrupt_kind, "ar1|sine|trend")->check(CLI::IsMember({"ar1", "sine", "trend"}));
    corrupt_cmd->add_option("--seed", corrupt_seed, "seed for the AR(1) noise");
    corrupt_cmd->add_option("--out", corrupt_out, "output file (default stdout)");

    std::string filter_in, filter_out, filter_kind = "linear";
    int filter_degree = 10;
    auto* filter_cmd = app.add_subcommand("filter", "log transform or detrend a series");
    filter_cmd->add_option("--in", filter_in, "input series")->required();
    filter_cmd->add_option("--kind", filter_kind, "log|linear|poly")->check(CLI::IsMember({"log", "linear", "poly"}));
    filter_cmd->add_option("--degree", filter_degree, "polynomial degree for poly");
    filter_cmd->add_option("--out", filter_out, "output file (default stdout)");

    EstimateArgs est;
    std::optional<std::size_t> est_bw;
    std::optional<double> est_bw_exp;
    std::optional<int> est_j2;
    auto* estimate_cmd = app.add_subcommand("estimate", "estimate H with one or all methods");
    estimate_cmd->add_option("--method", est.method, "rs|aggvar|pgram|lwhittle|wavelet|all");
    estimate_cmd->add_option("--in", est.in, "input series")->required();
    estimate_cmd->add_option("--out", est.out, "CSV output (default stdout)");
    estimate_cmd->add_option("--dump-fit", est.dump_fit, "write the regression points here");
    add_estimator_options(estimate_cmd, est_bw, est_bw_exp, est_j2);

    IngestArgs ing;
    auto* ingest = app.add_subcommand("ingest", "turn a packet trace into a series");
    ingest->add_option("--trace", ing.trace, "packet trace")->required();
    ingest->add_option("--mode", ing.mode, "bins|interarrival")->check(CLI::IsMember({"bins", "interarrival"}));
    ingest->add_option("--bin-width", ing.bin_width, "bin width in seconds");
    ingest->add_option("--skip", ing.skip, "drop this many leading points");
    ingest->add_option("--take", ing.take, "keep at most this many points");
    ingest->add_option("--out", ing.out, "output file (default stdout)");

    std::string acf_in, acf_out;
    std::size_t acf_lag = 1000;
    auto* acf_cmd = app.add_subcommand("acf", "export the sample autocorrelation");
    acf_cmd->add_option("--in", acf_in, "input series")->required();
    acf_cmd->add_option("--max-lag", acf_lag, "largest lag");
    acf_cmd->add_option("--out", acf_out, "output file (default stdout)");

    std::string pg_in, pg_out;
    auto* pgram_cmd = app.add_subcommand("periodogram", "dump (frequency, power) pairs");
    pgram_cmd->add_option("--in", pg_in, "input series")->required();
    pgram_cmd->add_option("--out", pg_out, "output file (default stdout)");

    std::string config_path;
    std::vector<std::vector<std::string>> flag_values(matrix_keys.size());
    auto* matrix = app.add_subcommand("matrix", "run an experiment matrix");
    matrix->add_option("--config", config_path, "key=value experiment file");
    for (std::size_t i = 0; i < matrix_keys.size(); ++i)
        matrix->add_option(matrix_keys[i].second, flag_values[i], "same as config key '" + matrix_keys[i].first + "'")
            ->allow_extra_args(false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "error: " << e.what() << '\n';
        return e.get_exit_code();
    }

    try {
        if (generate->parsed()) {
            run_generate(gen);
        } else if (corrupt_cmd->parsed()) {
            const TimeSeries s = load_series(corrupt_in);
            auto c = hurst::parse_corruption(corrupt_kind);
            const TimeSeries out = hurst::corrupt(s, *c, corrupt_seed);
            with_output(corrupt_out, [&](std::ostream& os) { write_series(os, out, "corrupt " + corrupt_kind); });
        } else if (filter_cmd->parsed()) {
            const TimeSeries s = load_series(filter_in);
            const auto f = hurst::parse_filter(filter_kind, filter_degree);
            const TimeSeries out = apply_filter(s, *f);
            with_output(filter_out, [&](std::ostream& os) { write_series(os, out, "filter " + filter_kind); });
        } else if (estimate_cmd->parsed()) {
            EstimatorConfig cfg;
            cfg.lw_bandwidth = est_bw;
            cfg.lw_bandwidth_exponent = est_bw_exp;
            if (est_j2) cfg.wavelet_j2 = est_j2;
            run_estimate(est, cfg);
        } else if (ingest->parsed()) {
            run_ingest(ing);
        } else if (acf_cmd->parsed()) {
            const TimeSeries s = load_series(acf_in);
            with_output(acf_out, [&](std::ostream& os) { export_acf(os, s, acf_lag); });
        } else if (pgram_cmd->parsed()) {
            const Periodogram p = periodogram(load_series(pg_in));
            with_output(pg_out, [&](std::ostream& os) {
                os << "# frequency power\n";
                for (std::size_t j = 0; j < p.size(); ++j) os << g17(p.frequency[j]) << ' ' << g17(p.power[j]) << '\n';
            });
        } else if (matrix->parsed()) {
            ExperimentSpec spec;
            if (!config_path.empty()) {
                std::ifstream in(config_path);
                if (!in) throw Error(ErrorCode::Io, "cannot open config '" + config_path + "'");
                spec = parse_experiment(in);
            }
            for (std::size_t i = 0; i < matrix_keys.size(); ++i)
                for (const auto& v : flag_values[i]) apply_setting(spec, matrix_keys[i].first, v);
            const ResultMatrix result = run_matrix(spec);
            with_output(spec.output, [&](std::ostream& os) { format_matrix(os, result, spec.format); });
        }
    } catch (const hurst::Error& e) {
        std::cerr << "error: " << error_code_name(e.code()) << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
