#include "memspike/analysis.hpp"

#include <set>

namespace memspike {

double EfficiencyReport::efficiency() const {
    if (input_count == 0) {
        throw ValidationError("efficiency of an empty table");
    }
    return static_cast<double>(class_count) / static_cast<double>(input_count);
}

EfficiencyReport logical_efficiency(const std::map<std::vector<int>, std::string>& table) {
    if (table.empty()) {
        throw ValidationError("logical efficiency needs a non-empty truth table");
    }
    std::set<std::string> classes;
    for (const auto& [inputs, cls] : table) {
        if (inputs.empty()) {
            throw ValidationError("truth table has an empty input tuple");
        }
        classes.insert(cls);
    }
    EfficiencyReport report;
    report.input_count = table.size();
    report.class_count = classes.size();
    return report;
}

SpaceTimeReport spacetime_report(const GateSpec& gate) {
    gate.validate();
    SpaceTimeReport report;
    report.input_wires = 1;
    report.input_timesteps = gate.arity;
    report.output_channels = static_cast<int>(gate.channels.size());
    if (gate.arity > 1) {
        // reference parallel gate: arity wires, one timestep
        report.conversion_ratio = static_cast<double>(gate.arity - report.input_wires) /
                                  static_cast<double>(gate.arity - 1);
    }
    return report;
}

} // namespace memspike
