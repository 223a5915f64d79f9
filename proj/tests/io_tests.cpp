#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "breakwatch/errors.hpp"
#include "breakwatch/io.hpp"
#include "breakwatch/series.hpp"

namespace fs = std::filesystem;
namespace io = breakwatch::io;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("breakwatch-io-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("series CSV round-trips values") {
    TempDir dir;
    breakwatch::TimeSeries series;
    series.values = {1.5, -2.25, 0.1, 1e-9, 12345.678};
    const auto path = dir.file("plain.csv");
    io::write_series_csv(path, series);
    const auto back = io::read_series_csv(path);
    CHECK(back.values == series.values);
    CHECK(!back.timestamps.has_value());
}

TEST_CASE("series CSV round-trips timestamps") {
    TempDir dir;
    breakwatch::TimeSeries series;
    series.values = {0.5, 0.75, 1.0};
    series.timestamps = std::vector<std::int64_t>{100, 250, 400};
    const auto path = dir.file("stamped.csv");
    io::write_series_csv(path, series);
    const auto back = io::read_series_csv(path);
    CHECK(back.values == series.values);
    CHECK(back.timestamps == series.timestamps);
}

TEST_CASE("headerless and headered files parse the same values") {
    TempDir dir;
    const auto bare = dir.file("bare.csv");
    io::write_text_file(bare, "1\n2\n3\n");
    const auto headed = dir.file("headed.csv");
    io::write_text_file(headed, "value\n1\n2\n3\n");
    CHECK(io::read_series_csv(bare).values == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(io::read_series_csv(headed).values == std::vector<double>{1.0, 2.0, 3.0});
}

TEST_CASE("blank lines are skipped") {
    TempDir dir;
    const auto path = dir.file("gaps.csv");
    io::write_text_file(path, "1.0\n\n2.0\n\n\n3.0\n");
    CHECK(io::read_series_csv(path).values == std::vector<double>{1.0, 2.0, 3.0});
}

TEST_CASE("parse failures name the offending row") {
    TempDir dir;
    const auto path = dir.file("bad.csv");
    io::write_text_file(path, "1.0\n2.0\npotato\n4.0\n");
    try {
        io::read_series_csv(path);
        FAIL("expected a parse error");
    } catch (const breakwatch::ParseError& e) {
        CHECK(std::string(e.what()).find("3") != std::string::npos);
    }
}

TEST_CASE("inconsistent column counts are rejected") {
    TempDir dir;
    const auto path = dir.file("ragged.csv");
    io::write_text_file(path, "1.0,10\n2.0\n");
    CHECK_THROWS_AS(io::read_series_csv(path), breakwatch::ParseError);
}

TEST_CASE("non-increasing timestamps are rejected on read") {
    TempDir dir;
    const auto path = dir.file("stale.csv");
    io::write_text_file(path, "1.0,10\n2.0,10\n");
    CHECK_THROWS_AS(io::read_series_csv(path), breakwatch::TimestampsNotIncreasingError);
}

TEST_CASE("an empty file has no series in it") {
    TempDir dir;
    const auto path = dir.file("empty.csv");
    io::write_text_file(path, "");
    CHECK_THROWS_AS(io::read_series_csv(path), breakwatch::EmptySeriesError);
    const auto headers_only = dir.file("headers.csv");
    io::write_text_file(headers_only, "value\n");
    CHECK_THROWS_AS(io::read_series_csv(headers_only), breakwatch::EmptySeriesError);
}

TEST_CASE("missing files raise an io error") {
    TempDir dir;
    CHECK_THROWS_AS(io::read_series_csv(dir.file("nope.csv")), breakwatch::IoError);
    breakwatch::TimeSeries series;
    series.values = {1.0};
    CHECK_THROWS_AS(io::write_series_csv(dir.file("no/such/dir/out.csv"), series),
                    breakwatch::IoError);
}

TEST_CASE("labels JSON round-trips") {
    TempDir dir;
    breakwatch::TimeSeries series;
    series.values.assign(300, 0.0);
    series.true_breakouts = {100, 200};
    series.anomaly_labels = {5, 42, 250};
    const auto path = dir.file("labels.json");
    io::write_labels_json(path, series);

    breakwatch::TimeSeries loaded;
    loaded.values.assign(300, 0.0);
    io::read_labels_json(path, loaded);
    CHECK(loaded.true_breakouts == series.true_breakouts);
    CHECK(loaded.anomaly_labels == series.anomaly_labels);
}

TEST_CASE("labels with missing keys default to empty") {
    TempDir dir;
    const auto path = dir.file("sparse.json");
    io::write_text_file(path, "{\"true_breakouts\": [7]}\n");
    breakwatch::TimeSeries series;
    series.values.assign(10, 0.0);
    io::read_labels_json(path, series);
    CHECK(series.true_breakouts == std::vector<std::size_t>{7});
    CHECK(series.anomaly_labels.empty());
}

TEST_CASE("malformed label documents are rejected") {
    TempDir dir;
    breakwatch::TimeSeries series;
    series.values.assign(10, 0.0);

    const auto not_object = dir.file("arr.json");
    io::write_text_file(not_object, "[1,2,3]\n");
    CHECK_THROWS_AS(io::read_labels_json(not_object, series), breakwatch::MalformedLabelsError);

    const auto not_array = dir.file("scalar.json");
    io::write_text_file(not_array, "{\"true_breakouts\": 5}\n");
    CHECK_THROWS_AS(io::read_labels_json(not_array, series), breakwatch::MalformedLabelsError);

    const auto negative = dir.file("neg.json");
    io::write_text_file(negative, "{\"anomaly_labels\": [-2]}\n");
    CHECK_THROWS_AS(io::read_labels_json(negative, series), breakwatch::MalformedLabelsError);

    const auto not_json = dir.file("noise.json");
    io::write_text_file(not_json, "{nope\n");
    CHECK_THROWS_AS(io::read_labels_json(not_json, series), breakwatch::MalformedLabelsError);
}

TEST_CASE("labels beyond the series length are rejected") {
    TempDir dir;
    const auto path = dir.file("far.json");
    io::write_text_file(path, "{\"true_breakouts\": [11]}\n");
    breakwatch::TimeSeries series;
    series.values.assign(10, 0.0);
    CHECK_THROWS_AS(io::read_labels_json(path, series), breakwatch::LabelOutOfRangeError);
}

TEST_CASE("doubles render at shortest round-trip precision") {
    CHECK(io::format_double(1.0) == "1");
    CHECK(io::format_double(0.5) == "0.5");
    CHECK(io::format_double(-3.25) == "-3.25");
    const double awkward = 0.1 + 0.2;
    CHECK(std::stod(io::format_double(awkward)) == awkward);
}
