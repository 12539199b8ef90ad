#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "memspike/device.hpp"
#include "memspike/encoding.hpp"

namespace memspike {

// Decode-class labels of the adder's input-order channel.
inline constexpr const char* kOrderZero = "zero";
inline constexpr const char* kOrderFresh = "one-fresh";
inline constexpr const char* kOrderAttenuated = "one-attenuated";

// Where a decode channel takes its samples from.
//   RunStatistic:     one sample per run, via the channel's StatisticSpec.
//   InputStepSamples: one sample per input step per run; the ground truth
//                     at a step follows from its bit: 0 -> "zero", the
//                     first 1 of the run -> "one-fresh", later 1s ->
//                     "one-attenuated".
enum class ChannelSource { RunStatistic, InputStepSamples };

// Ground-truth label of input step k under the InputStepSamples rule.
std::string order_truth_label(const std::vector<int>& inputs, int k);

struct ChannelSpec {
    std::string name;
    ChannelSource source = ChannelSource::RunStatistic;
    // RunStatistic only; InputStepSamples channels leave both empty.
    StatisticSpec statistic;
    std::map<std::vector<int>, std::string> truth; // input tuple -> class
};

struct ReadPulse {
    int offset_steps = 1; // steps after the last input step
    double voltage = 0.0;
};

/**
 * A clocked gate: how logical inputs become a drive schedule and which
 * trace samples decode the result. channels[0] is the gate's output
 * channel; further channels carry side information (the adder's input
 * order, the AND preset's negative-response channel).
 */
struct GateSpec {
    std::string name;
    EncodingScheme encoding;
    int arity = 2;
    int inter_bit_gap = 1; // steps between consecutive input spikes
    std::vector<ReadPulse> read_pulses;
    int response_window = 1; // 0 V steps after the last input
    std::vector<ChannelSpec> channels;

    int input_step(int k) const { return k * inter_bit_gap; }
    int last_input_step() const { return input_step(arity - 1); }
    int schedule_length() const { return last_input_step() + 1 + response_window; }

    void validate() const;
};

// All 2^arity input tuples in ascending binary order (first bit most
// significant): (0,0), (0,1), (1,0), (1,1).
std::vector<std::vector<int>> all_input_tuples(int arity);

// Input voltages at their clocked offsets, 0 V elsewhere, read pulses at
// last_input + offset. Length is fixed per gate regardless of inputs.
VoltageSchedule build_schedule(const GateSpec& gate, const std::vector<int>& inputs);

// Calibrated bands per channel name.
using GateBands = std::map<std::string, ChannelCalibration>;

const ChannelCalibration& channel_bands(const GateBands& bands, const std::string& name);

struct OrderedBit {
    int step = 0; // absolute schedule step of the input
    int bit = 0;
};

struct FullAdderAux {
    int arithmetic_sum = 0; // 0..3
    int sum_bit = 0;        // arithmetic_sum mod 2
    int carry_bit = 0;      // arithmetic_sum >= 2
    std::vector<OrderedBit> recovered_order;
};

struct GateResult {
    std::vector<int> inputs;
    CurrentTrace trace;
    double statistic_amps = 0.0; // channels[0] statistic
    std::string decoded;         // channels[0] class
    std::optional<FullAdderAux> aux;
};

// Run one gate evaluation on a fresh device and decode the output channel.
GateResult run_gate(const GateSpec& gate, const std::vector<int>& inputs,
                    const DeviceParams& params, const GateBands& bands,
                    std::uint64_t noise_seed = kDefaultNoiseSeed);

// Single-input polarity gate; decoded = NOT input.
GateResult not_gate(int input, const DeviceParams& params, const GateBands& bands);

// Three-input adder. aux carries the arithmetic sum (0-3) from the output
// channel, the derived sum/carry bits, and the recovered input order.
// Throws OrderAmbiguousError when the per-step decode contradicts itself
// or the arithmetic sum.
GateResult full_adder(int a, int b, int c, const DeviceParams& params, const GateBands& bands,
                      std::uint64_t noise_seed = kDefaultNoiseSeed);

// Classify each input step of an adder trace against the order channel:
// bit 1 where the sample falls in a one-indicating band, else 0. The ones
// must form a valid pattern (first one fresh, later ones attenuated).
std::vector<OrderedBit> recover_order(const CurrentTrace& trace, const GateSpec& gate,
                                      const GateBands& bands);

struct TruthTableRow {
    std::vector<int> inputs;
    double statistic_amps = 0.0;
    std::string decoded;
    std::string expected;
    bool pass = false;
};

struct TruthTableReport {
    std::string gate_name;
    std::vector<TruthTableRow> rows;
    std::map<std::string, double> channel_margins_amps; // min margin per channel
    bool all_pass = false;
};

// Calibrate, then evaluate every input tuple with a zeroed device per row.
TruthTableReport truth_table(const GateSpec& gate, const DeviceParams& params,
                             std::uint64_t noise_seed = kDefaultNoiseSeed);

// Default gate presets.
GateSpec not_gate_spec();  // polarity +-0.1 V, bounce-back sample
GateSpec and_gate_spec();  // mixed2 -0.5/+0.001 V, window maximum
GateSpec or_gate_spec();   // magnitude 0.2/0.01 V, window maximum
GateSpec xor_gate_spec();  // polarity +-0.1 V, |value| at the second bit
GateSpec full_adder_spec(); // mixed2 with a -0.15 V read pulse

// The named preset, or ValidationError. Names: not, and, or, xor, full-adder.
GateSpec gate_spec_by_name(const std::string& name);

} // namespace memspike
