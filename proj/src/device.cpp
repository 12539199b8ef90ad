#include "memspike/device.hpp"

#include <cmath>
#include <sstream>

namespace memspike {

namespace {

// The step law with a precomputed retention factor.
StepResult step_core(const DeviceState& state, const DeviceParams& params, double rho, double v) {
    if (!std::isfinite(v)) {
        throw ValidationError("applied voltage is not finite");
    }
    if (!std::isfinite(state.v_mem) || state.step_index < 0) {
        throw ValidationError("device state is corrupted");
    }

    const double dv = v - state.v_mem;
    const double gain = dv < 0.0 ? params.asymmetry : 1.0;

    StepResult r;
    r.sample.step_index = state.step_index;
    r.sample.time_s = static_cast<double>(state.step_index) * params.dt;
    r.sample.v_applied = v;
    r.sample.i_measured = params.g_eq * v + params.g_spike * gain * dv;
    r.state.v_mem = v + (state.v_mem - v) * rho;
    r.state.step_index = state.step_index + 1;
    return r;
}

} // namespace

double DeviceParams::retention() const {
    return std::exp(-dt / tau);
}

void DeviceParams::validate() const {
    auto fail = [](const std::string& what) { throw ValidationError("device params: " + what); };
    if (!(g_eq > 0.0) || !std::isfinite(g_eq)) fail("g_eq must be positive and finite");
    if (!(g_spike > 0.0) || !std::isfinite(g_spike)) fail("g_spike must be positive and finite");
    if (!(g_spike > g_eq)) fail("g_spike must exceed g_eq");
    if (!(tau > 0.0) || !std::isfinite(tau)) fail("tau must be positive and finite");
    if (!(dt > 0.0) || !std::isfinite(dt)) fail("dt must be positive and finite");
    if (!(asymmetry > 0.0) || !std::isfinite(asymmetry)) fail("asymmetry must be positive and finite");
    if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) fail("noise_sigma must be >= 0");
    if (zero_steps < 1) fail("zero_steps must be >= 1");
    if (!(epsilon_mem > 0.0) || !std::isfinite(epsilon_mem)) fail("epsilon_mem must be positive");
    const double rho = retention();
    if (!(rho > 0.0 && rho < 1.0)) fail("retention exp(-dt/tau) must lie strictly in (0, 1)");
}

StepResult step(const DeviceState& state, const DeviceParams& params, double v) {
    params.validate();
    return step_core(state, params, params.retention(), v);
}

DeviceState zero(DeviceState state, const DeviceParams& params) {
    params.validate();
    const double rho = params.retention();
    for (int k = 0; k < params.zero_steps; ++k) {
        state = step_core(state, params, rho, 0.0).state;
    }
    // zero_steps is sized to erase any preset drive; keep stepping if a
    // larger excursion left residual memory above the erasure tolerance.
    while (std::abs(state.v_mem) > params.epsilon_mem) {
        state = step_core(state, params, rho, 0.0).state;
    }
    state.v_mem = 0.0;
    return state;
}

CurrentTrace run_schedule(const DeviceParams& params, const VoltageSchedule& schedule,
                          std::uint64_t noise_seed) {
    if (schedule.empty()) {
        throw ValidationError("schedule is empty");
    }
    Device device(params, noise_seed);
    return device.apply_all(schedule);
}

Device::Device(const DeviceParams& params, std::uint64_t noise_seed)
    : params_(params), rng_(noise_seed) {
    params_.validate();
    rho_ = params_.retention();
}

CurrentSample Device::apply(double v) {
    StepResult r = step_core(state_, params_, rho_, v);
    if (params_.noise_sigma > 0.0) {
        std::normal_distribution<double> noise(0.0, params_.noise_sigma);
        r.sample.i_measured += noise(rng_);
    }
    state_ = r.state;
    return r.sample;
}

CurrentTrace Device::apply_all(const VoltageSchedule& schedule) {
    CurrentTrace trace;
    trace.reserve(schedule.size());
    for (double v : schedule) {
        trace.push_back(apply(v));
    }
    return trace;
}

void Device::erase_memory() {
    state_ = zero(state_, params_);
}

} // namespace memspike
