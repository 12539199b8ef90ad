#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "memspike/gate.hpp"

namespace memspike {

// Distinguishable output classes over possible input tuples, kept as the
// exact unreduced rational class_count / input_count.
struct EfficiencyReport {
    std::size_t input_count = 0;
    std::size_t class_count = 0;

    double efficiency() const; // class_count / input_count
};

EfficiencyReport logical_efficiency(const std::map<std::vector<int>, std::string>& table);

// Wires-for-timesteps accounting of a clocked gate against a parallel
// reference gate (arity wires, one timestep).
struct SpaceTimeReport {
    int input_wires = 1;
    int input_timesteps = 0; // one per logical input
    int output_channels = 0;
    // (reference wires - wires) / (timesteps - reference timesteps);
    // empty for arity 1, where both differences vanish
    std::optional<double> conversion_ratio;
};

SpaceTimeReport spacetime_report(const GateSpec& gate);

} // namespace memspike
