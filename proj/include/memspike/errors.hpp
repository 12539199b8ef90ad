#pragma once

#include <stdexcept>
#include <string>

namespace memspike {

// Invalid parameters, corrupted state, or non-finite input.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A measured value fell into a gap between threshold bands.
struct UnclassifiableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two decode classes produced overlapping response clusters during calibration.
struct NotSeparableError : std::runtime_error {
    NotSeparableError(std::string lower, std::string upper, double margin_amps);

    std::string lower_class;
    std::string upper_class;
    double margin_amps; // negative or zero: overlap depth
};

// Input-step spikes cannot be consistently assigned to input bits.
struct OrderAmbiguousError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed configuration, schedule, or preset file.
struct ParseError : std::runtime_error {
    ParseError(const std::string& path, int line, const std::string& what);

    std::string path;
    int line; // 1-based, 0 if not line-specific
};

} // namespace memspike
