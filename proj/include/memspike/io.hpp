#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "memspike/device.hpp"
#include "memspike/encoding.hpp"
#include "memspike/experiments.hpp"
#include "memspike/gate.hpp"

namespace memspike {

// All writers are deterministic: same values in, same bytes out. Doubles
// are written with enough digits to round-trip exactly.

// ---- current traces ----

// Header step,time_s,voltage_V,current_A, one row per sample.
void write_trace_csv(std::ostream& os, const CurrentTrace& trace);
void write_trace_csv_file(const std::string& path, const CurrentTrace& trace);

// ---- device parameters ----

// key = value lines, # comments. Keys match the DeviceParams fields;
// omitted keys keep their defaults. Unknown keys, duplicate keys, and
// malformed values raise ParseError with the offending line number.
DeviceParams parse_device_params(std::istream& in, const std::string& source);
DeviceParams load_device_params(const std::string& path);
void write_device_params(std::ostream& os, const DeviceParams& params);

// ---- voltage schedules ----

// Two layouts, picked per file: bare lines with one voltage each, or CSV
// rows step,voltage_V under that exact header with steps counting up from
// 0. # comments and blank lines are fine in both. Malformed input raises
// ParseError with the line number.
VoltageSchedule parse_schedule(std::istream& in, const std::string& source);
VoltageSchedule load_schedule(const std::string& path);
void write_schedule_csv(std::ostream& os, const VoltageSchedule& schedule);

// ---- gate presets (JSON) ----

std::string gate_spec_to_json(const GateSpec& gate);
GateSpec gate_spec_from_json(const std::string& text, const std::string& source);
GateSpec load_gate_spec(const std::string& path);

// ---- calibrated bands (JSON) ----

// One document carries the drive encoding plus every decode channel's
// statistic, fitted bands, margins, and calibration clusters. Infinite
// band ends serialize as null.
struct BandsDocument {
    std::string gate_name;
    std::string description; // optional free-text note, kept on round trip
    EncodingScheme encoding;
    GateBands channels;
};

std::string bands_document_to_json(const BandsDocument& doc);
BandsDocument bands_document_from_json(const std::string& text, const std::string& source);
BandsDocument load_bands_document(const std::string& path);

// ---- experiment protocols (JSON) ----

std::string habituation_protocol_to_json(const HabituationProtocol& protocol);
HabituationProtocol habituation_protocol_from_json(const std::string& text,
                                                   const std::string& source);

std::string summation_protocol_to_json(const SummationProtocol& protocol);
SummationProtocol summation_protocol_from_json(const std::string& text,
                                               const std::string& source);

std::string sweep_spec_to_json(const SweepSpec& spec);
SweepSpec sweep_spec_from_json(const std::string& text, const std::string& source);

// ---- reports (JSON out only) ----

std::string gate_result_to_json(const std::string& gate_name, const GateResult& result);
std::string truth_table_to_json(const TruthTableReport& report);

// The report serializers restate each experiment's claims as named
// booleans so a run's summary is self-checking.
std::string habituation_to_json(const HabituationProtocol& protocol,
                                const HabituationReport& report);
std::string summation_to_json(const SummationProtocol& protocol,
                              const SummationReport& report);
std::string sweep_to_json(const SweepSpec& spec, const std::vector<SweepPoint>& points);

void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& points);

// ---- helpers ----

// Shortest decimal form that parses back to the identical double.
std::string format_double(double v);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace memspike
