#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace breakwatch {

// Base for everything this library throws on contract violations.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct EmptySeriesError : Error {
    EmptySeriesError() : Error("series is empty") {}
};

struct NonFiniteValueError : Error {
    std::size_t index;  // 1-based position of the first offending value
    explicit NonFiniteValueError(std::size_t idx)
        : Error("non-finite value at index " + std::to_string(idx)), index(idx) {}
};

struct TimestampsNotIncreasingError : Error {
    std::size_t index;  // 1-based position where monotonicity first fails
    explicit TimestampsNotIncreasingError(std::size_t idx)
        : Error("timestamps not strictly increasing at index " + std::to_string(idx)), index(idx) {}
};

struct LabelOutOfRangeError : Error {
    std::size_t index;  // the offending label value
    LabelOutOfRangeError(const std::string& kind, std::size_t idx, std::size_t n)
        : Error(kind + " label " + std::to_string(idx) + " outside [1, " + std::to_string(n) + "]"),
          index(idx) {}
};

struct InvalidAlphaError : Error {
    double alpha;
    explicit InvalidAlphaError(double a)
        : Error("alpha must lie in (0, 2], got " + std::to_string(a)), alpha(a) {}
};

struct InvalidConfigError : Error {
    explicit InvalidConfigError(const std::string& what) : Error(what) {}
};

struct SampleTooSmallError : Error {
    SampleTooSmallError(std::size_t n, std::size_t m)
        : Error("both samples need at least 2 points, got " + std::to_string(n) + " and " +
                std::to_string(m)) {}
};

struct SegmentTooShortError : Error {
    SegmentTooShortError(std::size_t len, std::size_t required)
        : Error("segment has " + std::to_string(len) + " points, needs at least " +
                std::to_string(required)) {}
};

struct SeriesTooShortError : Error {
    std::size_t n;
    std::size_t required;
    SeriesTooShortError(std::size_t n_, std::size_t required_)
        : Error("series has " + std::to_string(n_) + " points, detection needs at least " +
                std::to_string(required_)),
          n(n_), required(required_) {}
};

// Interval tree: value outside the unit interval.
struct OutOfRangeError : Error {
    double value;
    explicit OutOfRangeError(double v)
        : Error("value " + std::to_string(v) + " outside [0, 1]"), value(v) {}
};

// Interval tree: removing a value that is not present.
struct UnderflowError : Error {
    double value;
    explicit UnderflowError(double v)
        : Error("removing value " + std::to_string(v) + " from an empty leaf"), value(v) {}
};

// Median queried on an empty container (tree or heap pair).
struct EmptyMedianError : Error {
    EmptyMedianError() : Error("median of an empty collection") {}
};

struct WindowTooLargeError : Error {
    WindowTooLargeError(std::size_t window, std::size_t n)
        : Error("smoothing window " + std::to_string(window) + " does not fit a series of length " +
                std::to_string(n)) {}
};

struct InvalidSynthSpecError : Error {
    explicit InvalidSynthSpecError(const std::string& what) : Error(what) {}
};

struct IoError : Error {
    explicit IoError(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
    std::size_t row;  // 1-based file row
    ParseError(const std::string& what, std::size_t row_)
        : Error(what + " (row " + std::to_string(row_) + ")"), row(row_) {}
};

struct MalformedLabelsError : Error {
    explicit MalformedLabelsError(const std::string& file)
        : Error("malformed labels file: " + file) {}
};

}  // namespace breakwatch
