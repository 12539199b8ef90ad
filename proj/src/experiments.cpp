#include "memspike/experiments.hpp"

#include <cmath>

namespace memspike {

void HabituationProtocol::validate() const {
    if (baseline_pulses < 1 || train_pulses < 1 || pulse_width_steps < 1) {
        throw ValidationError("habituation pulse counts must be positive");
    }
    if (train_gap_steps < 1) {
        throw ValidationError("train gap must be at least one step");
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ValidationError("habituation dt must be positive");
    }
    if (!std::isfinite(pulse_voltage) || pulse_voltage == 0.0) {
        throw ValidationError("pulse voltage must be finite and nonzero");
    }
}

HabituationReport run_habituation(const HabituationProtocol& protocol, DeviceParams params) {
    protocol.validate();
    params.dt = protocol.dt;
    params.validate();

    HabituationReport report;

    // fully rested: erase the memory after every pulse
    Device rested(params);
    for (int p = 0; p < protocol.baseline_pulses; ++p) {
        report.baseline_amps.push_back(rested.apply(protocol.pulse_voltage).i_measured);
        for (int w = 1; w < protocol.pulse_width_steps; ++w) {
            rested.apply(protocol.pulse_voltage);
        }
        rested.erase_memory();
    }

    // the train runs uninterrupted on a fresh device
    const int period = protocol.pulse_width_steps + protocol.train_gap_steps;
    VoltageSchedule train(static_cast<size_t>(protocol.train_pulses * period), 0.0);
    for (int p = 0; p < protocol.train_pulses; ++p) {
        for (int w = 0; w < protocol.pulse_width_steps; ++w) {
            train[static_cast<size_t>(p * period + w)] = protocol.pulse_voltage;
        }
    }
    report.train_trace = run_schedule(params, train);
    for (int p = 0; p < protocol.train_pulses; ++p) {
        report.train_amps.push_back(
            report.train_trace[static_cast<size_t>(p * period)].i_measured);
        report.train_bounceback_amps.push_back(
            report.train_trace[static_cast<size_t>(p * period + protocol.pulse_width_steps)]
                .i_measured);
    }
    return report;
}

VoltageSchedule summation_wave(const SummationProtocol& protocol) {
    VoltageSchedule wave;
    for (int p = 0; p < protocol.long_pulses; ++p) {
        wave.insert(wave.end(), static_cast<size_t>(protocol.long_pulse_steps),
                    protocol.pulse_voltage);
        wave.insert(wave.end(), static_cast<size_t>(protocol.gap_steps), 0.0);
    }
    wave.insert(wave.end(), static_cast<size_t>(protocol.short_pulse_steps),
                protocol.pulse_voltage);
    wave.insert(wave.end(), static_cast<size_t>(protocol.gap_steps), 0.0);
    return wave;
}

SummationReport run_summation_demo(DeviceParams params) {
    const SummationProtocol protocol;
    params.dt = protocol.dt;
    params.validate();

    const VoltageSchedule wave = summation_wave(protocol);
    const auto short_bounce_at = static_cast<size_t>(
        protocol.long_pulses * (protocol.long_pulse_steps + protocol.gap_steps) +
        protocol.short_pulse_steps);

    SummationReport report;
    report.trace = run_schedule(params, wave);
    for (int p = 0; p < protocol.long_pulses; ++p) {
        const auto release = static_cast<size_t>(
            p * (protocol.long_pulse_steps + protocol.gap_steps) + protocol.long_pulse_steps);
        report.long_bounceback_amps.push_back(report.trace[release].i_measured);
    }
    report.short_bounceback_amps = report.trace[short_bounce_at].i_measured;

    report.short_spike_smaller = true;
    for (double b : report.long_bounceback_amps) {
        report.short_spike_smaller =
            report.short_spike_smaller &&
            std::abs(report.short_bounceback_amps) < std::abs(b);
    }
    return report;
}

void SweepSpec::validate() const {
    if (!std::isfinite(v_b) || v_b <= 0.0) {
        throw ValidationError("sweep v_b must be positive");
    }
    if (v_a_values.empty()) {
        throw ValidationError("sweep has no v_a values");
    }
    double prev = 0.0;
    for (double va : v_a_values) {
        if (!std::isfinite(va) || va <= prev) {
            throw ValidationError("sweep v_a values must be positive and strictly ascending");
        }
        if (va > v_b) {
            throw ValidationError("sweep requires v_a <= v_b");
        }
        prev = va;
    }
}

SweepSpec default_sweep_spec() {
    SweepSpec spec;
    spec.v_b = 0.12;
    spec.v_a_values = {0.01, 0.02, 0.03, 0.04, 0.05, 0.06,
                       0.07, 0.08, 0.09, 0.10, 0.11, 0.12};
    return spec;
}

std::vector<SweepPoint> run_order_sweep(const SweepSpec& spec, const DeviceParams& params) {
    spec.validate();
    params.validate();

    std::vector<SweepPoint> table;
    table.reserve(spec.v_a_values.size());
    for (double va : spec.v_a_values) {
        const CurrentTrace ab = run_schedule(params, {va, spec.v_b});
        const CurrentTrace ba = run_schedule(params, {spec.v_b, va});
        SweepPoint p;
        p.v_a = va;
        p.s1_amps = ab[0].i_measured;
        p.t1_amps = ab[1].i_measured;
        p.t2_amps = ba[0].i_measured;
        p.s2_amps = ba[1].i_measured;
        p.sum_ab_amps = p.s1_amps + p.t1_amps;
        p.sum_ba_amps = p.t2_amps + p.s2_amps;
        table.push_back(p);
    }
    return table;
}

} // namespace memspike
