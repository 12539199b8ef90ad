#pragma once

#include <cstdint>

#include "memspike/gate.hpp"

namespace memspike {

// Run every input tuple on a fresh device (row r uses noise seed
// base_seed + r; irrelevant while noise_sigma is 0), collect each
// channel's samples grouped by ground-truth class, and fit midpoint
// threshold bands. Throws NotSeparableError when a channel's classes
// produce overlapping response clusters.
GateBands calibrate_all(const GateSpec& gate, const DeviceParams& params,
                        std::uint64_t base_seed = kDefaultNoiseSeed);

// Bands for the gate's output channel only.
ChannelCalibration calibrate(const GateSpec& gate, const DeviceParams& params,
                             std::uint64_t base_seed = kDefaultNoiseSeed);

} // namespace memspike
