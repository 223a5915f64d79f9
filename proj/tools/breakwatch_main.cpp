#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "breakwatch/baseline.hpp"
#include "breakwatch/bench.hpp"
#include "breakwatch/config.hpp"
#include "breakwatch/errors.hpp"
#include "breakwatch/evalkit.hpp"
#include "breakwatch/io.hpp"
#include "breakwatch/robust_stat.hpp"
#include "breakwatch/sigtest.hpp"

namespace bw = breakwatch;
namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitIo = 4;
constexpr int kExitPrecondition = 5;

// Flag-level mistakes CLI11 cannot catch on its own.
struct FlagError : bw::Error {
    using bw::Error::Error;
};

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const bw::ParseError*>(&e) != nullptr ||
        dynamic_cast<const bw::MalformedLabelsError*>(&e) != nullptr ||
        dynamic_cast<const bw::EmptySeriesError*>(&e) != nullptr ||
        dynamic_cast<const bw::NonFiniteValueError*>(&e) != nullptr ||
        dynamic_cast<const bw::TimestampsNotIncreasingError*>(&e) != nullptr ||
        dynamic_cast<const bw::LabelOutOfRangeError*>(&e) != nullptr) {
        return kExitParse;
    }
    if (dynamic_cast<const bw::IoError*>(&e) != nullptr) return kExitIo;
    if (dynamic_cast<const bw::SeriesTooShortError*>(&e) != nullptr ||
        dynamic_cast<const bw::SampleTooSmallError*>(&e) != nullptr ||
        dynamic_cast<const bw::SegmentTooShortError*>(&e) != nullptr) {
        return kExitPrecondition;
    }
    if (dynamic_cast<const FlagError*>(&e) != nullptr ||
        dynamic_cast<const bw::InvalidAlphaError*>(&e) != nullptr ||
        dynamic_cast<const bw::InvalidConfigError*>(&e) != nullptr ||
        dynamic_cast<const bw::InvalidSynthSpecError*>(&e) != nullptr ||
        dynamic_cast<const bw::WindowTooLargeError*>(&e) != nullptr) {
        return kExitUsage;
    }
    return 1;
}

struct DetectionFlags {
    std::string method = "edm";
    double alpha = 2.0;
    std::size_t delta = 24;
    std::size_t tree_depth = 10;
    std::string between = "tail";
    std::size_t permutations = 199;
    double level = 0.05;
    std::uint64_t seed = 0;
    std::string smooth = "none";
    std::size_t window = 5;
    std::string format = "json";
    std::string out = ".";
};

void add_detection_flags(CLI::App* cmd, DetectionFlags& f, bool with_method) {
    if (with_method) {
        cmd->add_option("--method", f.method, "Detector: edm, edmx, or edivisive")
            ->check(CLI::IsMember({"edm", "edmx", "edivisive"}))
            ->capture_default_str();
    }
    cmd->add_option("--alpha", f.alpha, "Distance exponent in (0, 2]")->capture_default_str();
    cmd->add_option("--delta", f.delta, "Minimum segment size (>= 2)")->capture_default_str();
    cmd->add_option("--tree-depth", f.tree_depth, "Counting-tree depth for edm medians")
        ->capture_default_str();
    cmd->add_option("--between", f.between, "Cross-segment window: head or tail")
        ->check(CLI::IsMember({"head", "tail"}))
        ->capture_default_str();
    cmd->add_option("--permutations", f.permutations, "Significance-test replica count")
        ->capture_default_str();
    cmd->add_option("--level", f.level, "Significance level in (0, 1)")->capture_default_str();
    cmd->add_option("--seed", f.seed, "RNG seed")->capture_default_str();
    cmd->add_option("--smooth", f.smooth, "Pre-detection smoother: none, mean, or median")
        ->check(CLI::IsMember({"none", "mean", "median"}))
        ->capture_default_str();
    cmd->add_option("--window", f.window, "Smoothing window (odd, >= 3)")->capture_default_str();
    cmd->add_option("--format", f.format, "Stdout format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--out", f.out, "Output directory")->capture_default_str();
}

bw::DetectionConfig to_config(const DetectionFlags& f) {
    bw::DetectionConfig config;
    config.alpha = f.alpha;
    config.delta = f.delta;
    config.tree_depth = f.tree_depth;
    const auto between = bw::between_from_string(f.between);
    if (!between) throw FlagError("unknown between-window: " + f.between);
    config.between = *between;
    config.permutations = f.permutations;
    config.level = f.level;
    config.seed = f.seed;
    config.validate();
    return config;
}

bw::Method to_method(const std::string& name) {
    const auto method = bw::method_from_string(name);
    if (!method) throw FlagError("unknown method: " + name);
    return *method;
}

bw::TimeSeries apply_smoothing(bw::TimeSeries series, const DetectionFlags& f) {
    const auto kind = bw::smoother_from_string(f.smooth);
    if (!kind) throw FlagError("unknown smoother: " + f.smooth);
    if (*kind == bw::Smoother::none) return series;
    return bw::smooth_series(series, *kind, f.window);
}

void ensure_out_dir(const std::string& out) {
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw bw::IoError("cannot create output directory " + out);
}

std::string joined(const std::string& out, const std::string& name) {
    return (fs::path(out) / name).string();
}

ordered_json config_json(const DetectionFlags& f) {
    return ordered_json{
        {"method", f.method},
        {"alpha", f.alpha},
        {"delta", f.delta},
        {"tree_depth", f.tree_depth},
        {"between", f.between},
        {"permutations", f.permutations},
        {"level", f.level},
        {"seed", f.seed},
        {"smooth", f.smooth},
        {"window", f.window},
    };
}

void write_manifest(const DetectionFlags& f, const std::string& command,
                    ordered_json extras) {
    ordered_json manifest{
        {"command", command},
        {"format", f.format},
        {"out", f.out},
        {"config", config_json(f)},
    };
    for (auto& [key, value] : extras.items()) manifest[key] = value;
    bw::io::write_text_file(joined(f.out, "manifest.json"), manifest.dump(2) + "\n");
}

ordered_json report_json(const bw::BreakoutReport& report, const DetectionFlags& f,
                         const std::string& annotated_name) {
    ordered_json doc;
    doc["method"] = bw::to_string(report.method);
    if (report.tau_hat) doc["tau_hat"] = *report.tau_hat; else doc["tau_hat"] = nullptr;
    if (report.kappa_hat) doc["kappa_hat"] = *report.kappa_hat; else doc["kappa_hat"] = nullptr;
    doc["statistic"] = report.statistic;
    doc["p_value"] = report.p_value;
    doc["significant"] = report.significant;
    doc["config"] = config_json(f);
    doc["annotated_series"] = annotated_name;
    return doc;
}

std::string report_csv(const bw::BreakoutReport& report) {
    std::ostringstream out;
    out << "method,tau_hat,kappa_hat,statistic,p_value,significant\n";
    out << bw::to_string(report.method) << ',';
    if (report.tau_hat) out << *report.tau_hat;
    out << ',';
    if (report.kappa_hat) out << *report.kappa_hat;
    out << ',' << bw::io::format_double(report.statistic) << ','
        << bw::io::format_double(report.p_value) << ','
        << (report.significant ? "true" : "false") << '\n';
    return out.str();
}

int cmd_detect(const DetectionFlags& f, const std::string& input) {
    const bw::DetectionConfig config = to_config(f);
    const bw::Method method = to_method(f.method);
    const bw::TimeSeries original = bw::io::read_series_csv(input);
    const bw::TimeSeries analyzed = apply_smoothing(original, f);

    const bw::BreakoutReport report =
        bw::detect_with_significance(analyzed.values, method, config);

    ensure_out_dir(f.out);
    std::ostringstream annotated;
    annotated << "index,value,is_breakout_estimate\n";
    for (std::size_t i = 0; i < original.values.size(); ++i) {
        const bool is_estimate = report.tau_hat && *report.tau_hat == i + 1;
        annotated << (i + 1) << ',' << bw::io::format_double(original.values[i]) << ','
                  << (is_estimate ? 1 : 0) << '\n';
    }
    bw::io::write_text_file(joined(f.out, "annotated.csv"), annotated.str());

    const ordered_json doc = report_json(report, f, "annotated.csv");
    bw::io::write_text_file(joined(f.out, "report.json"), doc.dump(2) + "\n");
    write_manifest(f, "detect", ordered_json{{"input", input}});

    if (f.format == "csv") {
        std::cout << report_csv(report);
    } else {
        std::cout << doc.dump(2) << '\n';
    }
    return kExitOk;
}

int cmd_synth(const DetectionFlags& f, const bw::SynthSpec& spec, const std::string& name) {
    const bw::TimeSeries series = bw::synthesize(spec);
    ensure_out_dir(f.out);
    const std::string csv_name = name + ".csv";
    const std::string labels_name = name + ".labels.json";
    bw::io::write_series_csv(joined(f.out, csv_name), series);
    bw::io::write_labels_json(joined(f.out, labels_name), series);
    write_manifest(f, "synth",
                   ordered_json{{"lengths", spec.segment_lengths},
                                {"means", spec.segment_means},
                                {"sd", spec.noise_sd},
                                {"anomalies", spec.anomaly_count},
                                {"magnitude", spec.anomaly_magnitude},
                                {"name", name}});
    ordered_json doc{
        {"series", csv_name},
        {"labels", labels_name},
        {"n", series.values.size()},
        {"true_breakouts", series.true_breakouts},
        {"anomaly_labels", series.anomaly_labels},
    };
    std::cout << doc.dump(2) << '\n';
    return kExitOk;
}

std::optional<double> nearest_truth_distance(const bw::BreakoutReport& report,
                                             const std::vector<std::size_t>& truths) {
    if (!report.significant || !report.tau_hat || truths.empty()) return std::nullopt;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t truth : truths) {
        const double d = std::abs(static_cast<double>(*report.tau_hat) - static_cast<double>(truth));
        best = std::min(best, d);
    }
    return best;
}

int cmd_eval(const DetectionFlags& f, const std::string& data_dir,
             const std::vector<std::string>& method_names, std::size_t match_window) {
    std::vector<bw::Method> methods;
    for (const auto& name : method_names) methods.push_back(to_method(name));
    if (methods.empty()) throw FlagError("at least one method is required");
    const bw::DetectionConfig config = to_config(f);

    std::vector<fs::path> series_paths;
    {
        std::error_code ec;
        fs::directory_iterator it(data_dir, ec);
        if (ec) throw bw::IoError("cannot read dataset directory " + data_dir);
        for (const auto& entry : it) {
            if (entry.path().extension() == ".csv") series_paths.push_back(entry.path());
        }
    }
    std::sort(series_paths.begin(), series_paths.end());
    if (series_paths.empty()) {
        throw bw::MalformedLabelsError(data_dir + " (no series CSVs found)");
    }

    struct MethodTotals {
        bw::MatchCounts counts;
        std::vector<double> ttds;
    };
    std::vector<MethodTotals> totals(methods.size());

    std::ostringstream board;
    board << "series,method,tau_hat,p_value,ttd,tp,fp,fn\n";
    for (const auto& path : series_paths) {
        bw::TimeSeries series = bw::io::read_series_csv(path.string());
        fs::path sidecar = path;
        sidecar.replace_extension(".labels.json");
        if (!fs::exists(sidecar)) {
            throw bw::MalformedLabelsError(sidecar.string() + " (missing)");
        }
        bw::io::read_labels_json(sidecar.string(), series);
        const bw::TimeSeries analyzed = apply_smoothing(series, f);

        for (std::size_t m = 0; m < methods.size(); ++m) {
            const bw::BreakoutReport report =
                bw::detect_with_significance(analyzed.values, methods[m], config);
            std::vector<std::size_t> detections;
            if (report.significant && report.tau_hat) detections.push_back(*report.tau_hat);
            const bw::MatchCounts counts =
                bw::match_detections(detections, series.true_breakouts, match_window);
            totals[m].counts.tp += counts.tp;
            totals[m].counts.fp += counts.fp;
            totals[m].counts.fn += counts.fn;
            const auto distance = nearest_truth_distance(report, series.true_breakouts);
            if (distance) totals[m].ttds.push_back(*distance);

            board << path.filename().string() << ',' << method_names[m] << ',';
            if (report.tau_hat) board << *report.tau_hat;
            board << ',' << bw::io::format_double(report.p_value) << ',';
            if (distance) board << bw::io::format_double(*distance);
            board << ',' << counts.tp << ',' << counts.fp << ',' << counts.fn << '\n';
        }
    }

    ensure_out_dir(f.out);
    bw::io::write_text_file(joined(f.out, "scoreboard.csv"), board.str());

    ordered_json summary;
    summary["match_window"] = match_window;
    summary["series_count"] = series_paths.size();
    ordered_json per_method;
    for (std::size_t m = 0; m < methods.size(); ++m) {
        const bw::Scores scores = bw::scores_from(totals[m].counts);
        ordered_json entry{
            {"tp", totals[m].counts.tp},
            {"fp", totals[m].counts.fp},
            {"fn", totals[m].counts.fn},
            {"precision", scores.precision},
            {"recall", scores.recall},
            {"f_measure", scores.f_measure},
        };
        if (totals[m].ttds.empty()) {
            entry["median_ttd"] = nullptr;
        } else {
            entry["median_ttd"] = bw::median_of(totals[m].ttds);
        }
        per_method[method_names[m]] = entry;
    }
    summary["methods"] = per_method;
    bw::io::write_text_file(joined(f.out, "summary.json"), summary.dump(2) + "\n");
    write_manifest(f, "eval",
                   ordered_json{{"data", data_dir},
                                {"methods", method_names},
                                {"match_window", match_window}});

    if (f.format == "csv") {
        std::cout << board.str();
    } else {
        std::cout << summary.dump(2) << '\n';
    }
    return kExitOk;
}

int cmd_bench(const DetectionFlags& f, const std::vector<std::size_t>& sizes,
              std::size_t repeats) {
    bw::BenchConfig config;
    config.sizes = sizes;
    config.repeats = repeats;
    config.detection = to_config(f);
    config.seed = f.seed;
    const bw::BenchResult result = bw::run_bench(config);

    std::ostringstream csv;
    csv << "method,n,wall_ms,tau_hat,kappa_hat,statistic,p_value,speedup_vs_edivisive\n";
    for (const auto& row : result.rows) {
        csv << bw::to_string(row.method) << ',' << row.n << ','
            << bw::io::format_double(row.wall_ms) << ',' << row.tau << ',' << row.kappa << ','
            << bw::io::format_double(row.statistic) << ',' << bw::io::format_double(row.p_value)
            << ',' << bw::io::format_double(result.speedup(row.method, row.n)) << '\n';
    }

    ensure_out_dir(f.out);
    bw::io::write_text_file(joined(f.out, "bench.csv"), csv.str());
    write_manifest(f, "bench", ordered_json{{"sizes", sizes}, {"repeats", repeats}});
    std::cout << csv.str();
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Robust breakout detection over noisy, anomaly-laden time series"};
    app.require_subcommand(1);

    DetectionFlags detect_flags;
    std::string detect_input;
    CLI::App* detect = app.add_subcommand("detect", "Locate a breakout in a series CSV");
    detect->add_option("--input", detect_input, "Series CSV (value[,timestamp] per row)")
        ->required();
    add_detection_flags(detect, detect_flags, true);

    DetectionFlags synth_flags;
    bw::SynthSpec spec;
    std::string synth_name = "series";
    CLI::App* synth = app.add_subcommand("synth", "Generate a labeled synthetic series");
    synth->add_option("--lengths", spec.segment_lengths, "Segment lengths, comma separated")
        ->required()
        ->delimiter(',');
    synth->add_option("--means", spec.segment_means, "Segment means, comma separated")
        ->required()
        ->delimiter(',');
    synth->add_option("--sd", spec.noise_sd, "Gaussian noise standard deviation")
        ->capture_default_str();
    synth->add_option("--anomalies", spec.anomaly_count, "Number of injected point anomalies")
        ->capture_default_str();
    synth->add_option("--magnitude", spec.anomaly_magnitude,
                      "Anomaly displacement in multiples of the largest mean shift")
        ->capture_default_str();
    synth->add_option("--name", synth_name, "Basename for the series/labels files")
        ->capture_default_str();
    add_detection_flags(synth, synth_flags, false);

    DetectionFlags eval_flags;
    std::string eval_data;
    std::vector<std::string> eval_methods{"edm", "edmx", "edivisive"};
    std::size_t match_window = 10;
    CLI::App* eval = app.add_subcommand("eval", "Score detectors over a labeled dataset directory");
    eval->add_option("--data", eval_data, "Directory of series CSVs with .labels.json sidecars")
        ->required();
    eval->add_option("--methods", eval_methods, "Detectors to score, comma separated")
        ->delimiter(',');
    eval->add_option("--match-window", match_window, "Matching window for precision/recall")
        ->capture_default_str();
    add_detection_flags(eval, eval_flags, false);

    DetectionFlags bench_flags;
    std::vector<std::size_t> bench_sizes{500, 1000, 2000};
    std::size_t bench_repeats = 1;
    CLI::App* bench = app.add_subcommand("bench", "Time all detectors with full permutation tests");
    bench->add_option("--sizes", bench_sizes, "Series lengths to time, comma separated")
        ->delimiter(',');
    bench->add_option("--repeats", bench_repeats, "Timed repeats per cell (median reported)")
        ->capture_default_str();
    add_detection_flags(bench, bench_flags, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (detect->parsed()) return cmd_detect(detect_flags, detect_input);
        if (synth->parsed()) {
            spec.seed = synth_flags.seed;
            return cmd_synth(synth_flags, spec, synth_name);
        }
        if (eval->parsed()) return cmd_eval(eval_flags, eval_data, eval_methods, match_window);
        if (bench->parsed()) return cmd_bench(bench_flags, bench_sizes, bench_repeats);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
    return kExitUsage;
}
