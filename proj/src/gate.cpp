#include "memspike/gate.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "memspike/calibrate.hpp"

namespace memspike {

namespace {

void check_inputs(const GateSpec& gate, const std::vector<int>& inputs) {
    if (static_cast<int>(inputs.size()) != gate.arity) {
        throw ValidationError("gate '" + gate.name + "' takes " + std::to_string(gate.arity) +
                              " inputs, got " + std::to_string(inputs.size()));
    }
    for (int b : inputs) {
        if (b != 0 && b != 1) {
            throw ValidationError("logical inputs must be 0 or 1");
        }
    }
}

int label_to_sum(const std::string& label) {
    if (label.size() == 1 && label[0] >= '0' && label[0] <= '3') {
        return label[0] - '0';
    }
    throw ValidationError("adder output class '" + label + "' is not an arithmetic sum");
}

} // namespace

std::string order_truth_label(const std::vector<int>& inputs, int k) {
    if (k < 0 || k >= static_cast<int>(inputs.size())) {
        throw ValidationError("input index out of range");
    }
    if (inputs[static_cast<size_t>(k)] == 0) {
        return kOrderZero;
    }
    const auto first_one = std::find(inputs.begin(), inputs.end(), 1);
    return (first_one - inputs.begin()) == k ? kOrderFresh : kOrderAttenuated;
}

void GateSpec::validate() const {
    if (name.empty()) throw ValidationError("gate name is empty");
    encoding.validate();
    if (arity < 1) throw ValidationError("gate arity must be at least 1");
    if (inter_bit_gap < 1) throw ValidationError("inter_bit_gap must be at least 1");
    if (response_window < 1) throw ValidationError("response_window must be at least 1");

    std::set<int> offsets;
    for (const ReadPulse& p : read_pulses) {
        if (p.offset_steps < 1 || p.offset_steps > response_window) {
            throw ValidationError("read pulse offset " + std::to_string(p.offset_steps) +
                                  " outside the response window");
        }
        if (!std::isfinite(p.voltage)) {
            throw ValidationError("read pulse voltage must be finite");
        }
        if (!offsets.insert(p.offset_steps).second) {
            throw ValidationError("two read pulses at the same offset");
        }
    }

    if (channels.empty()) throw ValidationError("gate has no decode channels");
    if (channels.front().source != ChannelSource::RunStatistic) {
        throw ValidationError("the output channel must be a run statistic");
    }
    std::set<std::string> names;
    const auto tuples = all_input_tuples(arity);
    for (const ChannelSpec& ch : channels) {
        if (ch.name.empty()) throw ValidationError("channel name is empty");
        if (!names.insert(ch.name).second) {
            throw ValidationError("duplicate channel name '" + ch.name + "'");
        }
        if (ch.source == ChannelSource::RunStatistic) {
            ch.statistic.validate(static_cast<size_t>(schedule_length()));
            if (ch.truth.size() != tuples.size()) {
                throw ValidationError("channel '" + ch.name + "' truth table must cover all " +
                                      std::to_string(tuples.size()) + " input tuples");
            }
            for (const auto& t : tuples) {
                const auto it = ch.truth.find(t);
                if (it == ch.truth.end() || it->second.empty()) {
                    throw ValidationError("channel '" + ch.name +
                                          "' truth table is missing a tuple");
                }
            }
        } else if (!ch.truth.empty()) {
            throw ValidationError("channel '" + ch.name +
                                  "' derives ground truth from input steps; truth must be empty");
        }
    }
}

std::vector<std::vector<int>> all_input_tuples(int arity) {
    if (arity < 1 || arity > 20) throw ValidationError("unsupported arity");
    std::vector<std::vector<int>> tuples;
    const size_t n = size_t{1} << arity;
    tuples.reserve(n);
    for (size_t idx = 0; idx < n; ++idx) {
        std::vector<int> t(static_cast<size_t>(arity));
        for (int k = 0; k < arity; ++k) {
            t[static_cast<size_t>(k)] = static_cast<int>((idx >> (arity - 1 - k)) & 1u);
        }
        tuples.push_back(std::move(t));
    }
    return tuples;
}

VoltageSchedule build_schedule(const GateSpec& gate, const std::vector<int>& inputs) {
    gate.validate();
    check_inputs(gate, inputs);
    VoltageSchedule sched(static_cast<size_t>(gate.schedule_length()), 0.0);
    for (int k = 0; k < gate.arity; ++k) {
        sched[static_cast<size_t>(gate.input_step(k))] =
            encode_bit(gate.encoding, inputs[static_cast<size_t>(k)]);
    }
    for (const ReadPulse& p : gate.read_pulses) {
        sched[static_cast<size_t>(gate.last_input_step() + p.offset_steps)] = p.voltage;
    }
    return sched;
}

const ChannelCalibration& channel_bands(const GateBands& bands, const std::string& name) {
    const auto it = bands.find(name);
    if (it == bands.end()) {
        throw ValidationError("no calibrated bands for channel '" + name + "'");
    }
    return it->second;
}

GateResult run_gate(const GateSpec& gate, const std::vector<int>& inputs,
                    const DeviceParams& params, const GateBands& bands,
                    std::uint64_t noise_seed) {
    GateResult result;
    result.inputs = inputs;
    result.trace = run_schedule(params, build_schedule(gate, inputs), noise_seed);
    const ChannelSpec& out = gate.channels.front();
    result.statistic_amps = extract_statistic(out.statistic, result.trace);
    result.decoded = decode(result.statistic_amps, channel_bands(bands, out.name).bands);
    return result;
}

GateResult not_gate(int input, const DeviceParams& params, const GateBands& bands) {
    return run_gate(not_gate_spec(), {input}, params, bands);
}

std::vector<OrderedBit> recover_order(const CurrentTrace& trace, const GateSpec& gate,
                                      const GateBands& bands) {
    gate.validate();
    const ThresholdBands& order = channel_bands(bands, "order").bands;
    std::vector<OrderedBit> out;
    bool seen_one = false;
    for (int k = 0; k < gate.arity; ++k) {
        const int step = gate.input_step(k);
        if (step >= static_cast<int>(trace.size())) {
            throw ValidationError("trace shorter than the gate schedule");
        }
        const std::string label = decode(trace[static_cast<size_t>(step)].i_measured, order);
        if (label == kOrderZero) {
            out.push_back({step, 0});
        } else if (label == kOrderFresh) {
            if (seen_one) {
                throw OrderAmbiguousError("fresh one-spike at step " + std::to_string(step) +
                                          " after an earlier one");
            }
            seen_one = true;
            out.push_back({step, 1});
        } else if (label == kOrderAttenuated) {
            if (!seen_one) {
                throw OrderAmbiguousError("attenuated one-spike at step " + std::to_string(step) +
                                          " with no fresh one before it");
            }
            out.push_back({step, 1});
        } else {
            throw ValidationError("order bands use unknown class '" + label + "'");
        }
    }
    return out;
}

GateResult full_adder(int a, int b, int c, const DeviceParams& params, const GateBands& bands,
                      std::uint64_t noise_seed) {
    const GateSpec spec = full_adder_spec();
    GateResult result = run_gate(spec, {a, b, c}, params, bands, noise_seed);

    FullAdderAux aux;
    aux.arithmetic_sum = label_to_sum(result.decoded);
    aux.sum_bit = aux.arithmetic_sum % 2;
    aux.carry_bit = aux.arithmetic_sum >= 2 ? 1 : 0;
    aux.recovered_order = recover_order(result.trace, spec, bands);

    int ones = 0;
    for (const OrderedBit& ob : aux.recovered_order) ones += ob.bit;
    if (ones != aux.arithmetic_sum) {
        throw OrderAmbiguousError("recovered order has " + std::to_string(ones) +
                                  " ones but the arithmetic sum reads " +
                                  std::to_string(aux.arithmetic_sum));
    }
    result.aux = aux;
    return result;
}

TruthTableReport truth_table(const GateSpec& gate, const DeviceParams& params,
                             std::uint64_t noise_seed) {
    const GateBands bands = calibrate_all(gate, params, noise_seed);

    TruthTableReport report;
    report.gate_name = gate.name;
    report.all_pass = true;
    const ChannelSpec& out = gate.channels.front();
    for (const std::vector<int>& inputs : all_input_tuples(gate.arity)) {
        const GateResult r = run_gate(gate, inputs, params, bands, noise_seed);
        TruthTableRow row;
        row.inputs = inputs;
        row.statistic_amps = r.statistic_amps;
        row.decoded = r.decoded;
        row.expected = out.truth.at(inputs);
        row.pass = row.decoded == row.expected;
        report.all_pass = report.all_pass && row.pass;
        report.rows.push_back(std::move(row));
    }
    for (const auto& [name, cal] : bands) {
        report.channel_margins_amps[name] = cal.min_margin_amps();
    }
    return report;
}

namespace {

std::map<std::vector<int>, std::string> binary_truth(int arity, int (*fn)(const std::vector<int>&)) {
    std::map<std::vector<int>, std::string> truth;
    for (const auto& t : all_input_tuples(arity)) {
        truth[t] = std::to_string(fn(t));
    }
    return truth;
}

} // namespace

GateSpec not_gate_spec() {
    GateSpec g;
    g.name = "not";
    g.encoding = {EncodingKind::Polarity, 0.1, 0.01};
    g.arity = 1;
    g.response_window = 2;

    ChannelSpec out;
    out.name = "not";
    out.statistic.kind = StatisticKind::ValueAtStep;
    out.statistic.step = 1;
    out.truth = binary_truth(1, [](const std::vector<int>& t) { return 1 - t[0]; });
    g.channels = {out};
    return g;
}

GateSpec and_gate_spec() {
    GateSpec g;
    g.name = "and";
    g.encoding = {EncodingKind::Mixed2, 0.5, 0.001};
    g.arity = 2;
    g.response_window = 3;

    ChannelSpec out;
    out.name = "and";
    out.statistic.kind = StatisticKind::MaxInWindow;
    out.statistic.window_first = 2;
    out.statistic.window_last = 4;
    out.truth = binary_truth(2, [](const std::vector<int>& t) { return t[0] & t[1]; });

    // the most negative response doubles as an inclusive-OR readout
    ChannelSpec any;
    any.name = "inclusive-or";
    any.statistic.kind = StatisticKind::MinInWindow;
    any.statistic.window_first = 0;
    any.statistic.window_last = 4;
    any.truth = binary_truth(2, [](const std::vector<int>& t) { return t[0] | t[1]; });

    g.channels = {out, any};
    return g;
}

GateSpec or_gate_spec() {
    GateSpec g;
    g.name = "or";
    g.encoding = {EncodingKind::Magnitude, 0.2, 0.01};
    g.arity = 2;
    g.response_window = 2;

    ChannelSpec out;
    out.name = "or";
    out.statistic.kind = StatisticKind::MaxInWindow;
    out.statistic.window_first = 0;
    out.statistic.window_last = 3;
    out.truth = binary_truth(2, [](const std::vector<int>& t) { return t[0] | t[1]; });
    g.channels = {out};
    return g;
}

GateSpec xor_gate_spec() {
    GateSpec g;
    g.name = "xor";
    g.encoding = {EncodingKind::Polarity, 0.1, 0.01};
    g.arity = 2;
    g.response_window = 2;

    ChannelSpec out;
    out.name = "xor";
    out.statistic.kind = StatisticKind::AbsValueAtStep;
    out.statistic.step = 1;
    out.truth = binary_truth(2, [](const std::vector<int>& t) { return t[0] ^ t[1]; });
    g.channels = {out};
    return g;
}

GateSpec full_adder_spec() {
    GateSpec g;
    g.name = "full-adder";
    g.encoding = {EncodingKind::Mixed2, 0.5, 0.001};
    g.arity = 3;
    g.read_pulses = {{2, -0.15}};
    g.response_window = 4;

    ChannelSpec sum;
    sum.name = "sum";
    sum.statistic.kind = StatisticKind::MaxInWindow;
    sum.statistic.window_first = 3;
    sum.statistic.window_last = 6;
    sum.truth = binary_truth(3, [](const std::vector<int>& t) { return t[0] + t[1] + t[2]; });

    ChannelSpec order;
    order.name = "order";
    order.source = ChannelSource::InputStepSamples;

    g.channels = {sum, order};
    return g;
}

GateSpec gate_spec_by_name(const std::string& name) {
    if (name == "not") return not_gate_spec();
    if (name == "and") return and_gate_spec();
    if (name == "or") return or_gate_spec();
    if (name == "xor") return xor_gate_spec();
    if (name == "full-adder") return full_adder_spec();
    throw ValidationError("unknown gate '" + name +
                          "' (expected not, and, or, xor, or full-adder)");
}

} // namespace memspike
