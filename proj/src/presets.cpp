#include "memspike/presets.hpp"

#include <limits>
#include <sstream>

namespace memspike {

BandsDocument hardware_full_adder_bands() {
    const GateSpec gate = full_adder_spec();

    BandsDocument doc;
    doc.gate_name = gate.name;
    doc.description = "full-adder decode thresholds measured on a physical device (nanoamp scale)";
    doc.encoding = gate.encoding;

    ChannelCalibration sum;
    sum.bands.statistic = gate.channels.front().statistic;
    sum.bands.bands = {
        {0.0, 5e-9, "0"},
        {5e-9, 9e-9, "1"},
        {9e-9, 1.23e-8, "2"},
        {1.25e-8, std::numeric_limits<double>::infinity(), "3"},
    };
    sum.bands.validate();
    doc.channels["sum"] = sum;

    // most negative current anywhere in the run: drive pulses and the
    // carry-revealing release sit in disjoint ranges
    ChannelCalibration activity;
    activity.bands.statistic.kind = StatisticKind::MinInWindow;
    activity.bands.statistic.window_first = 0;
    activity.bands.statistic.window_last = gate.schedule_length() - 1;
    activity.bands.bands = {
        {-2e-8, -1.75e-8, "pulse-input"},
        {-1.75e-8, -5e-9, "carry"},
        {-5e-9, 0.0, "no-pulse"},
    };
    activity.bands.validate();
    doc.channels["input-activity"] = activity;

    return doc;
}

std::map<std::string, std::string> preset_files() {
    std::map<std::string, std::string> files;

    {
        std::ostringstream os;
        write_device_params(os, DeviceParams{});
        files["device/default.cfg"] = os.str();
    }

    // companion to schedules/square-wave.csv: same device, demo time base
    {
        DeviceParams params;
        params.dt = SummationProtocol{}.dt;
        std::ostringstream os;
        write_device_params(os, params);
        files["device/square-wave.cfg"] = os.str();
    }

    for (const char* name : {"not", "and", "or", "xor", "full-adder"}) {
        files[std::string("gates/") + name + ".json"] =
            gate_spec_to_json(gate_spec_by_name(name));
    }

    files["experiments/habituation.json"] = habituation_protocol_to_json(HabituationProtocol{});
    files["experiments/summation.json"] = summation_protocol_to_json(SummationProtocol{});
    files["experiments/order-sweep.json"] = sweep_spec_to_json(default_sweep_spec());

    {
        std::ostringstream os;
        write_schedule_csv(os, summation_wave(SummationProtocol{}));
        files["schedules/square-wave.csv"] = os.str();
    }

    files["reference/hardware-full-adder-bands.json"] =
        bands_document_to_json(hardware_full_adder_bands());

    return files;
}

} // namespace memspike
