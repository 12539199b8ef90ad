#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "memspike/errors.hpp"

namespace memspike {

inline constexpr std::uint64_t kDefaultNoiseSeed = 0x6d656d73ull;

/**
 * Phenomenological memristor with short-term memory.
 *
 * Each measurement step applies a voltage v for one time-step dt:
 *   i      = g_eq * v + g_spike * gain * (v - v_mem)
 *   v_mem' = v + (v_mem - v) * rho,   rho = exp(-dt / tau)
 * where gain = asymmetry when (v - v_mem) < 0, else 1. The current is
 * measured at the instant of the voltage change (against the pre-step
 * v_mem); relaxation happens after the measurement.
 */
struct DeviceParams {
    double g_eq = 1e-7;        // equilibrium conductance [S]
    double g_spike = 1e-6;     // spike conductance [S], must exceed g_eq
    double tau = 1.5;          // relaxation time constant [s]
    double dt = 0.16;          // measurement time-step [s]
    double asymmetry = 1.0;    // gain on negative-going spike responses
    double noise_sigma = 0.0;  // gaussian measurement-noise stddev [A]
    int zero_steps = 40;       // 0 V steps that erase the short-term memory
    double epsilon_mem = 1e-2; // |v_mem| at or below this counts as erased [V]

    // Per-step retention factor, a strict contraction in (0, 1).
    double retention() const;

    void validate() const; // throws ValidationError
};

// Internal state: the equilibrated-voltage memory and a step counter.
// v_mem always lies between the minimum and maximum voltage ever applied
// (the initial 0 included).
struct DeviceState {
    double v_mem = 0.0;
    long step_index = 0;
};

struct CurrentSample {
    long step_index = 0;
    double time_s = 0.0; // step_index * dt
    double v_applied = 0.0;
    double i_measured = 0.0;
};

using VoltageSchedule = std::vector<double>;
using CurrentTrace = std::vector<CurrentSample>;

struct StepResult {
    DeviceState state;
    CurrentSample sample;
};

// One noise-free measurement step. Pure: identical inputs give identical
// results. Throws ValidationError on invalid params, non-finite v, or a
// corrupted state.
StepResult step(const DeviceState& state, const DeviceParams& params, double v);

// Apply 0 V until the memory is erased (at least params.zero_steps steps,
// more if needed), then pin v_mem to exactly 0 so that subsequent inputs
// reproduce fresh-device responses bit for bit.
DeviceState zero(DeviceState state, const DeviceParams& params);

// Run a schedule on a fresh device. Throws ValidationError on an empty
// schedule. The seed only matters when params.noise_sigma > 0.
CurrentTrace run_schedule(const DeviceParams& params, const VoltageSchedule& schedule,
                          std::uint64_t noise_seed = kDefaultNoiseSeed);

/**
 * A single simulated device: owns its state and, when measurement noise is
 * enabled, a seeded noise stream. Instances are independent; one instance
 * must not be mutated concurrently.
 */
class Device {
  public:
    explicit Device(const DeviceParams& params, std::uint64_t noise_seed = kDefaultNoiseSeed);

    // One measurement step (adds measurement noise when noise_sigma > 0).
    CurrentSample apply(double v);

    CurrentTrace apply_all(const VoltageSchedule& schedule);

    // Erase the short-term memory; see zero().
    void erase_memory();

    const DeviceState& state() const { return state_; }
    const DeviceParams& params() const { return params_; }

  private:
    DeviceParams params_;
    DeviceState state_;
    double rho_;
    std::mt19937_64 rng_;
};

} // namespace memspike
