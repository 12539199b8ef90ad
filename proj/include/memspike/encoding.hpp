#pragma once

#include <string>
#include <vector>

#include "memspike/device.hpp"
#include "memspike/errors.hpp"

namespace memspike {

// How logical 0/1 map onto drive voltages. high_v and low_v are the large
// and small magnitudes; sign handling depends on the kind:
//   Magnitude  1 -> high_v,    0 -> low_v
//   Polarity   1 -> +|high_v|, 0 -> -|high_v|
//   Mixed1     1 -> +|high_v|, 0 -> -|low_v|
//   Mixed2     1 -> -|high_v|, 0 -> +|low_v|
enum class EncodingKind { Magnitude, Polarity, Mixed1, Mixed2 };

std::string to_string(EncodingKind kind);
EncodingKind encoding_kind_from_string(const std::string& name);

struct EncodingScheme {
    EncodingKind kind = EncodingKind::Magnitude;
    double high_v = 0.0;
    double low_v = 0.0;

    void validate() const; // requires |high_v| > |low_v| > 0
};

double encode_bit(const EncodingScheme& scheme, int bit);

// What single number summarizes a current trace. Step indices are absolute
// positions in the schedule; windows are inclusive on both ends.
enum class StatisticKind { ValueAtStep, AbsValueAtStep, MaxInWindow, MinInWindow };

std::string to_string(StatisticKind kind);
StatisticKind statistic_kind_from_string(const std::string& name);

struct StatisticSpec {
    StatisticKind kind = StatisticKind::ValueAtStep;
    int step = 0;         // the at-step kinds
    int window_first = 0; // the window kinds
    int window_last = 0;

    void validate(size_t trace_length) const;
};

double extract_statistic(const StatisticSpec& spec, const CurrentTrace& trace);

// Half-open decode interval [lower_amps, upper_amps). Infinite ends allowed.
struct Band {
    double lower_amps = 0.0;
    double upper_amps = 0.0;
    std::string label;
};

// Ascending, non-overlapping bands plus the statistic they apply to.
// Calibrated bands are gapless with infinite outer ends; hand-written band
// sets may leave gaps, in which case decode can fail.
struct ThresholdBands {
    StatisticSpec statistic;
    std::vector<Band> bands;

    void validate() const;
};

// Returns the label of the band containing the value. Throws
// UnclassifiableError when the value falls in a gap or outside all bands.
std::string decode(double statistic_amps, const ThresholdBands& bands);

// All statistic values one decode class produced during calibration.
struct ResponseCluster {
    std::string label;
    std::vector<double> samples_amps;

    double min_amps() const;
    double max_amps() const;
};

// Calibration output for one decode channel: the fitted bands, the raw
// clusters behind them, and the inter-cluster gaps (ascending order).
struct ChannelCalibration {
    ThresholdBands bands;
    std::vector<ResponseCluster> clusters; // sorted ascending by min
    std::vector<double> margins_amps;      // gap between adjacent clusters

    double min_margin_amps() const;
};

// Midpoint fit: sorts clusters ascending, places one boundary in the middle
// of each inter-cluster gap, and extends the outermost bands to infinity.
// Throws NotSeparableError when adjacent clusters touch or overlap.
ChannelCalibration fit_bands(std::vector<ResponseCluster> clusters,
                             const StatisticSpec& statistic);

} // namespace memspike
