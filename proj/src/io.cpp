#include "breakwatch/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "breakwatch/errors.hpp"

namespace breakwatch::io {
namespace {

std::string strip(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::optional<double> parse_double(const std::string& field) {
    const char* first = field.data();
    const char* last = first + field.size();
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) return std::nullopt;
    return value;
}

std::optional<std::int64_t> parse_int(const std::string& field) {
    const char* first = field.data();
    const char* last = first + field.size();
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) return std::nullopt;
    return value;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(strip(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    fields.push_back(strip(current));
    return fields;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path);
    out << content;
    if (!out) throw IoError("failed writing " + path);
}

TimeSeries read_series_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    TimeSeries series;
    std::vector<std::int64_t> timestamps;
    bool saw_timestamps = false;
    bool saw_data = false;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        const std::string trimmed = strip(line);
        if (trimmed.empty()) continue;
        const auto fields = split_fields(trimmed);
        if (fields.size() > 2) throw ParseError("expected at most two columns", row);
        const auto value = parse_double(fields[0]);
        if (!value) {
            // A non-numeric first row is a header; anywhere else it's an error.
            if (!saw_data && row == 1) continue;
            throw ParseError("cannot parse value '" + fields[0] + "'", row);
        }
        if (fields.size() == 2) {
            const auto ts = parse_int(fields[1]);
            if (!ts) throw ParseError("cannot parse timestamp '" + fields[1] + "'", row);
            if (saw_data && !saw_timestamps) {
                throw ParseError("timestamp column appears mid-file", row);
            }
            saw_timestamps = true;
            timestamps.push_back(*ts);
        } else if (saw_timestamps) {
            throw ParseError("missing timestamp column", row);
        }
        series.values.push_back(*value);
        saw_data = true;
    }
    if (series.values.empty()) throw EmptySeriesError();
    if (saw_timestamps) series.timestamps = std::move(timestamps);
    return validate_series(std::move(series));
}

void write_series_csv(const std::string& path, const TimeSeries& series) {
    std::ostringstream out;
    if (series.timestamps) {
        out << "value,timestamp\n";
        for (std::size_t i = 0; i < series.values.size(); ++i) {
            out << format_double(series.values[i]) << ',' << (*series.timestamps)[i] << '\n';
        }
    } else {
        out << "value\n";
        for (double v : series.values) out << format_double(v) << '\n';
    }
    write_text_file(path, out.str());
}

void read_labels_json(const std::string& path, TimeSeries& series) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception&) {
        throw MalformedLabelsError(path);
    }
    if (!doc.is_object()) throw MalformedLabelsError(path);
    auto read_indices = [&](const char* key) {
        std::vector<std::size_t> out;
        if (!doc.contains(key)) return out;
        const auto& arr = doc.at(key);
        if (!arr.is_array()) throw MalformedLabelsError(path);
        for (const auto& v : arr) {
            if (!v.is_number_unsigned()) throw MalformedLabelsError(path);
            out.push_back(v.get<std::size_t>());
        }
        return out;
    };
    series.true_breakouts = read_indices("true_breakouts");
    series.anomaly_labels = read_indices("anomaly_labels");
    series = validate_series(std::move(series));
}

void write_labels_json(const std::string& path, const TimeSeries& series) {
    nlohmann::ordered_json doc;
    doc["true_breakouts"] = series.true_breakouts;
    doc["anomaly_labels"] = series.anomaly_labels;
    write_text_file(path, doc.dump(2) + "\n");
}

}  // namespace breakwatch::io
