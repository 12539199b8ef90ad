#pragma once

#include <vector>

#include "memspike/device.hpp"

namespace memspike {

/**
 * Repeated-stimulus protocol: a baseline phase of fully-rested pulses
 * (memory erased between pulses), then a pulse train whose pulses are
 * close enough for the short-term memory to couple them. protocol.dt
 * overrides params.dt for the whole run.
 */
struct HabituationProtocol {
    int baseline_pulses = 40;
    double pulse_voltage = 0.1;
    int pulse_width_steps = 1;
    int train_pulses = 6;
    int train_gap_steps = 2; // 0 V steps between train pulses
    double dt = 0.084;

    void validate() const;
};

struct HabituationReport {
    std::vector<double> baseline_amps;         // onset spike per rested pulse
    std::vector<double> train_amps;            // onset spike per train pulse
    std::vector<double> train_bounceback_amps; // first 0 V step after each pulse
    CurrentTrace train_trace;
};

// Baseline responses are all equal and match the first train response;
// train responses fall pulse over pulse with shrinking decrements.
HabituationReport run_habituation(const HabituationProtocol& protocol, DeviceParams params);

// Square-wave demo: three long +1 V pulses (3 s on, 3 s off at dt = 0.02 s)
// followed by a single-step pulse. The short pulse leaves less stored
// memory, so its release spike is smaller than the long-pulse ones.
struct SummationProtocol {
    double dt = 0.02;
    double pulse_voltage = 1.0;
    int long_pulse_steps = 150;
    int gap_steps = 150;
    int long_pulses = 3;
    int short_pulse_steps = 1;
};

struct SummationReport {
    CurrentTrace trace;
    std::vector<double> long_bounceback_amps; // release spike per long pulse
    double short_bounceback_amps = 0.0;
    bool short_spike_smaller = false;
};

// The demo's drive waveform, exposed so it can ship as a schedule file.
VoltageSchedule summation_wave(const SummationProtocol& protocol);

SummationReport run_summation_demo(DeviceParams params);

// Two-pulse order sweep: for each v_a, run A then B and B then A from a
// rested device and record the four spikes.
struct SweepSpec {
    double v_b = 0.12;
    std::vector<double> v_a_values; // strictly ascending, 0 < v_a <= v_b

    void validate() const;
};

SweepSpec default_sweep_spec(); // v_a = 0.01, 0.02, ..., 0.12 against v_b = 0.12

struct SweepPoint {
    double v_a = 0.0;
    double s1_amps = 0.0; // rest -> A transition
    double t1_amps = 0.0; // A -> B transition
    double t2_amps = 0.0; // rest -> B transition
    double s2_amps = 0.0; // B -> A transition
    double sum_ab_amps = 0.0;
    double sum_ba_amps = 0.0;
};

std::vector<SweepPoint> run_order_sweep(const SweepSpec& spec, const DeviceParams& params);

} // namespace memspike
