#include "memspike/calibrate.hpp"

#include <map>

namespace memspike {

GateBands calibrate_all(const GateSpec& gate, const DeviceParams& params,
                        std::uint64_t base_seed) {
    gate.validate();
    params.validate();

    // label -> samples, per channel
    std::map<std::string, std::map<std::string, std::vector<double>>> grouped;
    const auto tuples = all_input_tuples(gate.arity);
    for (size_t row = 0; row < tuples.size(); ++row) {
        const std::vector<int>& inputs = tuples[row];
        const CurrentTrace trace =
            run_schedule(params, build_schedule(gate, inputs), base_seed + row);
        for (const ChannelSpec& ch : gate.channels) {
            auto& by_label = grouped[ch.name];
            if (ch.source == ChannelSource::RunStatistic) {
                by_label[ch.truth.at(inputs)].push_back(extract_statistic(ch.statistic, trace));
            } else {
                for (int k = 0; k < gate.arity; ++k) {
                    const auto step = static_cast<size_t>(gate.input_step(k));
                    by_label[order_truth_label(inputs, k)].push_back(trace[step].i_measured);
                }
            }
        }
    }

    GateBands bands;
    for (const ChannelSpec& ch : gate.channels) {
        std::vector<ResponseCluster> clusters;
        for (auto& [label, samples] : grouped[ch.name]) {
            clusters.push_back({label, std::move(samples)});
        }
        StatisticSpec stat = ch.statistic;
        if (ch.source == ChannelSource::InputStepSamples) {
            // nominal: samples are values at the individual input steps
            stat = StatisticSpec{};
            stat.kind = StatisticKind::ValueAtStep;
            stat.step = gate.input_step(0);
        }
        bands.emplace(ch.name, fit_bands(std::move(clusters), stat));
    }
    return bands;
}

ChannelCalibration calibrate(const GateSpec& gate, const DeviceParams& params,
                             std::uint64_t base_seed) {
    GateBands bands = calibrate_all(gate, params, base_seed);
    return std::move(bands.at(gate.channels.front().name));
}

} // namespace memspike
