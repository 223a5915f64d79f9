#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "breakwatch/config.hpp"
#include "breakwatch/series.hpp"

namespace breakwatch::io {

// Series CSV: one value per row, optional header row, optional second column
// of integer timestamps. Parse failures report the 1-based file row. Labels
// are not part of the CSV; they travel in a JSON sidecar.
TimeSeries read_series_csv(const std::string& path);
void write_series_csv(const std::string& path, const TimeSeries& series);

// Sidecar format: {"true_breakouts": [...], "anomaly_labels": [...]},
// 1-based indices. Missing keys default to empty.
void read_labels_json(const std::string& path, TimeSeries& series);
void write_labels_json(const std::string& path, const TimeSeries& series);

// Shortest-roundtrip decimal rendering; the one double formatter used in
// every CSV this library writes, so outputs are byte-stable.
std::string format_double(double v);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace breakwatch::io
