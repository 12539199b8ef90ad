#include "memspike/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace memspike {

namespace {

std::string format_amps(double a) {
    std::ostringstream os;
    os.precision(6);
    os << a;
    return os.str();
}

} // namespace

std::string to_string(EncodingKind kind) {
    switch (kind) {
    case EncodingKind::Magnitude: return "magnitude";
    case EncodingKind::Polarity: return "polarity";
    case EncodingKind::Mixed1: return "mixed1";
    case EncodingKind::Mixed2: return "mixed2";
    }
    throw ValidationError("unknown encoding kind");
}

EncodingKind encoding_kind_from_string(const std::string& name) {
    if (name == "magnitude") return EncodingKind::Magnitude;
    if (name == "polarity") return EncodingKind::Polarity;
    if (name == "mixed1") return EncodingKind::Mixed1;
    if (name == "mixed2") return EncodingKind::Mixed2;
    throw ValidationError("unknown encoding kind '" + name + "'");
}

void EncodingScheme::validate() const {
    if (!std::isfinite(high_v) || !std::isfinite(low_v)) {
        throw ValidationError("encoding voltages must be finite");
    }
    if (!(std::abs(high_v) > std::abs(low_v)) || !(std::abs(low_v) > 0.0)) {
        throw ValidationError("encoding requires |high_v| > |low_v| > 0");
    }
}

double encode_bit(const EncodingScheme& scheme, int bit) {
    scheme.validate();
    if (bit != 0 && bit != 1) {
        throw ValidationError("logical bit must be 0 or 1");
    }
    switch (scheme.kind) {
    case EncodingKind::Magnitude: return bit ? scheme.high_v : scheme.low_v;
    case EncodingKind::Polarity: return bit ? std::abs(scheme.high_v) : -std::abs(scheme.high_v);
    case EncodingKind::Mixed1: return bit ? std::abs(scheme.high_v) : -std::abs(scheme.low_v);
    case EncodingKind::Mixed2: return bit ? -std::abs(scheme.high_v) : std::abs(scheme.low_v);
    }
    throw ValidationError("unknown encoding kind");
}

std::string to_string(StatisticKind kind) {
    switch (kind) {
    case StatisticKind::ValueAtStep: return "value_at_step";
    case StatisticKind::AbsValueAtStep: return "abs_value_at_step";
    case StatisticKind::MaxInWindow: return "max_in_window";
    case StatisticKind::MinInWindow: return "min_in_window";
    }
    throw ValidationError("unknown statistic kind");
}

StatisticKind statistic_kind_from_string(const std::string& name) {
    if (name == "value_at_step") return StatisticKind::ValueAtStep;
    if (name == "abs_value_at_step") return StatisticKind::AbsValueAtStep;
    if (name == "max_in_window") return StatisticKind::MaxInWindow;
    if (name == "min_in_window") return StatisticKind::MinInWindow;
    throw ValidationError("unknown statistic kind '" + name + "'");
}

void StatisticSpec::validate(size_t trace_length) const {
    const long n = static_cast<long>(trace_length);
    switch (kind) {
    case StatisticKind::ValueAtStep:
    case StatisticKind::AbsValueAtStep:
        if (step < 0 || step >= n) {
            throw ValidationError("statistic step " + std::to_string(step) +
                                  " outside trace of length " + std::to_string(n));
        }
        return;
    case StatisticKind::MaxInWindow:
    case StatisticKind::MinInWindow:
        if (window_first < 0 || window_last < window_first || window_last >= n) {
            throw ValidationError("statistic window [" + std::to_string(window_first) + ", " +
                                  std::to_string(window_last) + "] outside trace of length " +
                                  std::to_string(n));
        }
        return;
    }
    throw ValidationError("unknown statistic kind");
}

double extract_statistic(const StatisticSpec& spec, const CurrentTrace& trace) {
    spec.validate(trace.size());
    switch (spec.kind) {
    case StatisticKind::ValueAtStep:
        return trace[static_cast<size_t>(spec.step)].i_measured;
    case StatisticKind::AbsValueAtStep:
        return std::abs(trace[static_cast<size_t>(spec.step)].i_measured);
    case StatisticKind::MaxInWindow:
    case StatisticKind::MinInWindow: {
        double best = trace[static_cast<size_t>(spec.window_first)].i_measured;
        for (int k = spec.window_first + 1; k <= spec.window_last; ++k) {
            const double i = trace[static_cast<size_t>(k)].i_measured;
            if (spec.kind == StatisticKind::MaxInWindow ? i > best : i < best) best = i;
        }
        return best;
    }
    }
    throw ValidationError("unknown statistic kind");
}

void ThresholdBands::validate() const {
    if (bands.empty()) {
        throw ValidationError("band list is empty");
    }
    std::set<std::string> labels;
    for (size_t k = 0; k < bands.size(); ++k) {
        const Band& b = bands[k];
        if (std::isnan(b.lower_amps) || std::isnan(b.upper_amps)) {
            throw ValidationError("band '" + b.label + "' has NaN bounds");
        }
        if (!(b.lower_amps < b.upper_amps)) {
            throw ValidationError("band '" + b.label + "' is empty or inverted");
        }
        if (b.label.empty()) {
            throw ValidationError("band labels must be non-empty");
        }
        if (!labels.insert(b.label).second) {
            throw ValidationError("duplicate band label '" + b.label + "'");
        }
        if (k > 0 && bands[k - 1].upper_amps > b.lower_amps) {
            throw ValidationError("bands '" + bands[k - 1].label + "' and '" + b.label +
                                  "' overlap or are out of order");
        }
    }
}

std::string decode(double statistic_amps, const ThresholdBands& bands) {
    bands.validate();
    if (std::isnan(statistic_amps)) {
        throw ValidationError("statistic value is NaN");
    }
    for (const Band& b : bands.bands) {
        if (statistic_amps >= b.lower_amps && statistic_amps < b.upper_amps) {
            return b.label;
        }
    }
    throw UnclassifiableError("value " + format_amps(statistic_amps) +
                              " A falls outside every decode band");
}

double ResponseCluster::min_amps() const {
    if (samples_amps.empty()) throw ValidationError("cluster '" + label + "' is empty");
    return *std::min_element(samples_amps.begin(), samples_amps.end());
}

double ResponseCluster::max_amps() const {
    if (samples_amps.empty()) throw ValidationError("cluster '" + label + "' is empty");
    return *std::max_element(samples_amps.begin(), samples_amps.end());
}

double ChannelCalibration::min_margin_amps() const {
    if (margins_amps.empty()) {
        return std::numeric_limits<double>::infinity();
    }
    return *std::min_element(margins_amps.begin(), margins_amps.end());
}

ChannelCalibration fit_bands(std::vector<ResponseCluster> clusters,
                             const StatisticSpec& statistic) {
    if (clusters.empty()) {
        throw ValidationError("no clusters to fit bands to");
    }
    for (const ResponseCluster& c : clusters) {
        if (c.samples_amps.empty()) {
            throw ValidationError("cluster '" + c.label + "' is empty");
        }
        for (double s : c.samples_amps) {
            if (!std::isfinite(s)) {
                throw ValidationError("cluster '" + c.label + "' has a non-finite sample");
            }
        }
    }
    std::sort(clusters.begin(), clusters.end(),
              [](const ResponseCluster& a, const ResponseCluster& b) {
                  return a.min_amps() < b.min_amps();
              });

    ChannelCalibration cal;
    cal.bands.statistic = statistic;
    const double inf = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < clusters.size(); ++k) {
        Band band;
        band.label = clusters[k].label;
        band.lower_amps = -inf;
        band.upper_amps = inf;
        if (k > 0) {
            const double below = clusters[k - 1].max_amps();
            const double margin = clusters[k].min_amps() - below;
            if (!(margin > 0.0)) {
                throw NotSeparableError(clusters[k - 1].label, clusters[k].label, margin);
            }
            cal.margins_amps.push_back(margin);
            band.lower_amps = below + margin / 2.0;
            cal.bands.bands.back().upper_amps = band.lower_amps;
        }
        cal.bands.bands.push_back(band);
    }
    cal.clusters = std::move(clusters);
    cal.bands.validate();
    return cal;
}

} // namespace memspike
