#include "memspike/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <string_view>

#include "json.hpp"

#include "memspike/analysis.hpp"

namespace memspike {

namespace {

using ojson = nlohmann::ordered_json;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Shortest decimal form that parses back to the identical double.
std::string fmt_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string trim(const std::string& s) {
    size_t first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    size_t last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string strip_comment(const std::string& s) {
    size_t hash = s.find('#');
    return hash == std::string::npos ? s : s.substr(0, hash);
}

double parse_double_token(const std::string& text, const std::string& source, int line) {
    std::string_view sv = text;
    if (!sv.empty() && sv.front() == '+') sv.remove_prefix(1);
    double v = 0.0;
    const char* end = sv.data() + sv.size();
    const auto res = std::from_chars(sv.data(), end, v);
    if (sv.empty() || res.ec != std::errc() || res.ptr != end) {
        throw ParseError(source, line, "expected a number, got '" + text + "'");
    }
    return v;
}

long parse_long_token(const std::string& text, const std::string& source, int line) {
    std::string_view sv = text;
    if (!sv.empty() && sv.front() == '+') sv.remove_prefix(1);
    long v = 0;
    const char* end = sv.data() + sv.size();
    const auto res = std::from_chars(sv.data(), end, v);
    if (sv.empty() || res.ec != std::errc() || res.ptr != end) {
        throw ParseError(source, line, "expected an integer, got '" + text + "'");
    }
    return v;
}

ojson parse_json_text(const std::string& text, const std::string& source) {
    try {
        return ojson::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(source, 0, e.what());
    }
}

const ojson& require(const ojson& obj, const char* key, const std::string& source) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw ParseError(source, 0, std::string("missing key '") + key + "'");
    }
    return obj.at(key);
}

ojson statistic_to_json(const StatisticSpec& spec) {
    ojson j;
    j["kind"] = to_string(spec.kind);
    if (spec.kind == StatisticKind::ValueAtStep || spec.kind == StatisticKind::AbsValueAtStep) {
        j["step"] = spec.step;
    } else {
        j["window_first"] = spec.window_first;
        j["window_last"] = spec.window_last;
    }
    return j;
}

StatisticSpec statistic_from_json(const ojson& j, const std::string& source) {
    StatisticSpec spec;
    spec.kind = statistic_kind_from_string(require(j, "kind", source).get<std::string>());
    if (spec.kind == StatisticKind::ValueAtStep || spec.kind == StatisticKind::AbsValueAtStep) {
        spec.step = require(j, "step", source).get<int>();
    } else {
        spec.window_first = require(j, "window_first", source).get<int>();
        spec.window_last = require(j, "window_last", source).get<int>();
    }
    return spec;
}

ojson encoding_to_json(const EncodingScheme& scheme) {
    ojson j;
    j["kind"] = to_string(scheme.kind);
    j["high_voltage_V"] = scheme.high_v;
    j["low_voltage_V"] = scheme.low_v;
    return j;
}

EncodingScheme encoding_from_json(const ojson& j, const std::string& source) {
    EncodingScheme scheme;
    scheme.kind = encoding_kind_from_string(require(j, "kind", source).get<std::string>());
    scheme.high_v = require(j, "high_voltage_V", source).get<double>();
    scheme.low_v = require(j, "low_voltage_V", source).get<double>();
    return scheme;
}

std::string bits_key(const std::vector<int>& inputs) {
    std::string key;
    for (int b : inputs) key.push_back(b ? '1' : '0');
    return key;
}

std::vector<int> bits_from_key(const std::string& key, const std::string& source) {
    std::vector<int> tuple;
    for (char c : key) {
        if (c != '0' && c != '1') {
            throw ParseError(source, 0, "truth key '" + key + "' must be a bit string");
        }
        tuple.push_back(c - '0');
    }
    return tuple;
}

bool close_rel(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

} // namespace

void write_trace_csv(std::ostream& os, const CurrentTrace& trace) {
    os << "step,time_s,voltage_V,current_A\n";
    for (const CurrentSample& s : trace) {
        os << s.step_index << ',' << fmt_double(s.time_s) << ',' << fmt_double(s.v_applied)
           << ',' << fmt_double(s.i_measured) << '\n';
    }
}

void write_trace_csv_file(const std::string& path, const CurrentTrace& trace) {
    std::ostringstream os;
    write_trace_csv(os, trace);
    write_text_file(path, os.str());
}

DeviceParams parse_device_params(std::istream& in, const std::string& source) {
    DeviceParams params;
    std::set<std::string> seen;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError(source, line_no, "expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ParseError(source, line_no, "expected key = value");
        }
        if (!seen.insert(key).second) {
            throw ParseError(source, line_no, "duplicate key '" + key + "'");
        }
        if (key == "g_eq") {
            params.g_eq = parse_double_token(value, source, line_no);
        } else if (key == "g_spike") {
            params.g_spike = parse_double_token(value, source, line_no);
        } else if (key == "tau") {
            params.tau = parse_double_token(value, source, line_no);
        } else if (key == "dt") {
            params.dt = parse_double_token(value, source, line_no);
        } else if (key == "asymmetry") {
            params.asymmetry = parse_double_token(value, source, line_no);
        } else if (key == "noise_sigma") {
            params.noise_sigma = parse_double_token(value, source, line_no);
        } else if (key == "zero_steps") {
            params.zero_steps = static_cast<int>(parse_long_token(value, source, line_no));
        } else if (key == "epsilon_mem") {
            params.epsilon_mem = parse_double_token(value, source, line_no);
        } else {
            throw ParseError(source, line_no, "unknown key '" + key + "'");
        }
    }
    try {
        params.validate();
    } catch (const ValidationError& e) {
        throw ParseError(source, 0, e.what());
    }
    return params;
}

DeviceParams load_device_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");
    return parse_device_params(in, path);
}

void write_device_params(std::ostream& os, const DeviceParams& params) {
    os << "# conductances in S, times in s, voltages in V, noise in A\n"
       << "g_eq = " << fmt_double(params.g_eq) << '\n'
       << "g_spike = " << fmt_double(params.g_spike) << '\n'
       << "tau = " << fmt_double(params.tau) << '\n'
       << "dt = " << fmt_double(params.dt) << '\n'
       << "asymmetry = " << fmt_double(params.asymmetry) << '\n'
       << "noise_sigma = " << fmt_double(params.noise_sigma) << '\n'
       << "zero_steps = " << params.zero_steps << '\n'
       << "epsilon_mem = " << fmt_double(params.epsilon_mem) << '\n';
}

VoltageSchedule parse_schedule(std::istream& in, const std::string& source) {
    VoltageSchedule schedule;
    std::string raw;
    int line_no = 0;
    bool csv = false;
    bool first_content = true;
    long expected_step = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (first_content) {
            first_content = false;
            if (line == "step,voltage_V") {
                csv = true;
                continue;
            }
        }
        if (csv) {
            const size_t comma = line.find(',');
            if (comma == std::string::npos) {
                throw ParseError(source, line_no, "expected step,voltage_V");
            }
            const long step = parse_long_token(trim(line.substr(0, comma)), source, line_no);
            if (step != expected_step) {
                throw ParseError(source, line_no,
                                 "steps must count up from 0; expected " +
                                     std::to_string(expected_step));
            }
            ++expected_step;
            schedule.push_back(parse_double_token(trim(line.substr(comma + 1)), source, line_no));
        } else {
            schedule.push_back(parse_double_token(line, source, line_no));
        }
    }
    if (schedule.empty()) throw ParseError(source, 0, "schedule has no samples");
    return schedule;
}

VoltageSchedule load_schedule(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");
    return parse_schedule(in, path);
}

void write_schedule_csv(std::ostream& os, const VoltageSchedule& schedule) {
    os << "step,voltage_V\n";
    for (size_t k = 0; k < schedule.size(); ++k) {
        os << k << ',' << fmt_double(schedule[k]) << '\n';
    }
}

std::string gate_spec_to_json(const GateSpec& gate) {
    ojson j;
    j["name"] = gate.name;
    j["encoding"] = encoding_to_json(gate.encoding);
    j["arity"] = gate.arity;
    j["inter_bit_gap_steps"] = gate.inter_bit_gap;
    j["read_pulses"] = ojson::array();
    for (const ReadPulse& p : gate.read_pulses) {
        ojson pj;
        pj["offset_steps"] = p.offset_steps;
        pj["voltage_V"] = p.voltage;
        j["read_pulses"].push_back(pj);
    }
    j["response_window_steps"] = gate.response_window;
    j["channels"] = ojson::array();
    for (const ChannelSpec& ch : gate.channels) {
        ojson cj;
        cj["name"] = ch.name;
        if (ch.source == ChannelSource::RunStatistic) {
            cj["source"] = "run_statistic";
            cj["statistic"] = statistic_to_json(ch.statistic);
            ojson tj = ojson::object();
            for (const auto& [inputs, label] : ch.truth) {
                tj[bits_key(inputs)] = label;
            }
            cj["truth"] = tj;
        } else {
            cj["source"] = "input_step_samples";
        }
        j["channels"].push_back(cj);
    }
    return j.dump(2) + "\n";
}

GateSpec gate_spec_from_json(const std::string& text, const std::string& source) {
    const ojson j = parse_json_text(text, source);
    try {
        GateSpec gate;
        gate.name = require(j, "name", source).get<std::string>();
        gate.encoding = encoding_from_json(require(j, "encoding", source), source);
        gate.arity = require(j, "arity", source).get<int>();
        gate.inter_bit_gap = require(j, "inter_bit_gap_steps", source).get<int>();
        for (const ojson& pj : require(j, "read_pulses", source)) {
            ReadPulse pulse;
            pulse.offset_steps = require(pj, "offset_steps", source).get<int>();
            pulse.voltage = require(pj, "voltage_V", source).get<double>();
            gate.read_pulses.push_back(pulse);
        }
        gate.response_window = require(j, "response_window_steps", source).get<int>();
        for (const ojson& cj : require(j, "channels", source)) {
            ChannelSpec ch;
            ch.name = require(cj, "name", source).get<std::string>();
            const std::string src = require(cj, "source", source).get<std::string>();
            if (src == "run_statistic") {
                ch.source = ChannelSource::RunStatistic;
                ch.statistic = statistic_from_json(require(cj, "statistic", source), source);
                const ojson& tj = require(cj, "truth", source);
                for (auto it = tj.begin(); it != tj.end(); ++it) {
                    std::vector<int> tuple = bits_from_key(it.key(), source);
                    if (static_cast<int>(tuple.size()) != gate.arity) {
                        throw ParseError(source, 0,
                                         "truth key '" + it.key() + "' does not match arity");
                    }
                    ch.truth[tuple] = it.value().get<std::string>();
                }
            } else if (src == "input_step_samples") {
                ch.source = ChannelSource::InputStepSamples;
                if (cj.contains("statistic") || cj.contains("truth")) {
                    throw ParseError(source, 0,
                                     "input_step_samples channels take no statistic or truth");
                }
            } else {
                throw ParseError(source, 0, "unknown channel source '" + src + "'");
            }
            gate.channels.push_back(ch);
        }
        gate.validate();
        return gate;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(source, 0, e.what());
    } catch (const ValidationError& e) {
        throw ParseError(source, 0, e.what());
    }
}

GateSpec load_gate_spec(const std::string& path) {
    return gate_spec_from_json(read_text_file(path), path);
}

std::string bands_document_to_json(const BandsDocument& doc) {
    ojson j;
    j["gate"] = doc.gate_name;
    if (!doc.description.empty()) j["description"] = doc.description;
    j["encoding"] = encoding_to_json(doc.encoding);
    j["channels"] = ojson::object();
    for (const auto& [name, cal] : doc.channels) {
        ojson cj;
        cj["statistic"] = statistic_to_json(cal.bands.statistic);
        cj["bands"] = ojson::array();
        for (const Band& b : cal.bands.bands) {
            ojson bj;
            if (std::isinf(b.lower_amps)) {
                bj["lower_A"] = nullptr;
            } else {
                bj["lower_A"] = b.lower_amps;
            }
            if (std::isinf(b.upper_amps)) {
                bj["upper_A"] = nullptr;
            } else {
                bj["upper_A"] = b.upper_amps;
            }
            bj["label"] = b.label;
            cj["bands"].push_back(bj);
        }
        cj["margins_A"] = cal.margins_amps;
        cj["clusters"] = ojson::array();
        for (const ResponseCluster& cluster : cal.clusters) {
            ojson kj;
            kj["label"] = cluster.label;
            kj["samples_A"] = cluster.samples_amps;
            cj["clusters"].push_back(kj);
        }
        j["channels"][name] = cj;
    }
    return j.dump(2) + "\n";
}

BandsDocument bands_document_from_json(const std::string& text, const std::string& source) {
    const ojson j = parse_json_text(text, source);
    try {
        BandsDocument doc;
        doc.gate_name = require(j, "gate", source).get<std::string>();
        if (j.contains("description")) doc.description = j.at("description").get<std::string>();
        doc.encoding = encoding_from_json(require(j, "encoding", source), source);
        doc.encoding.validate();
        const ojson& channels = require(j, "channels", source);
        for (auto it = channels.begin(); it != channels.end(); ++it) {
            const ojson& cj = it.value();
            ChannelCalibration cal;
            cal.bands.statistic = statistic_from_json(require(cj, "statistic", source), source);
            for (const ojson& bj : require(cj, "bands", source)) {
                Band b;
                const ojson& lo = require(bj, "lower_A", source);
                const ojson& hi = require(bj, "upper_A", source);
                b.lower_amps = lo.is_null() ? -kInf : lo.get<double>();
                b.upper_amps = hi.is_null() ? kInf : hi.get<double>();
                b.label = require(bj, "label", source).get<std::string>();
                cal.bands.bands.push_back(b);
            }
            cal.bands.validate();
            if (cj.contains("margins_A")) {
                cal.margins_amps = cj.at("margins_A").get<std::vector<double>>();
            }
            if (cj.contains("clusters")) {
                for (const ojson& kj : cj.at("clusters")) {
                    ResponseCluster cluster;
                    cluster.label = require(kj, "label", source).get<std::string>();
                    cluster.samples_amps = require(kj, "samples_A", source).get<std::vector<double>>();
                    cal.clusters.push_back(cluster);
                }
            }
            doc.channels[it.key()] = cal;
        }
        return doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(source, 0, e.what());
    } catch (const ValidationError& e) {
        throw ParseError(source, 0, e.what());
    }
}

BandsDocument load_bands_document(const std::string& path) {
    return bands_document_from_json(read_text_file(path), path);
}

std::string habituation_protocol_to_json(const HabituationProtocol& protocol) {
    ojson j;
    j["experiment"] = "habituation";
    j["baseline_pulses"] = protocol.baseline_pulses;
    j["pulse_voltage_V"] = protocol.pulse_voltage;
    j["pulse_width_steps"] = protocol.pulse_width_steps;
    j["train_pulses"] = protocol.train_pulses;
    j["train_gap_steps"] = protocol.train_gap_steps;
    j["dt_s"] = protocol.dt;
    return j.dump(2) + "\n";
}

HabituationProtocol habituation_protocol_from_json(const std::string& text,
                                                   const std::string& source) {
    const ojson j = parse_json_text(text, source);
    try {
        HabituationProtocol protocol;
        protocol.baseline_pulses = require(j, "baseline_pulses", source).get<int>();
        protocol.pulse_voltage = require(j, "pulse_voltage_V", source).get<double>();
        protocol.pulse_width_steps = require(j, "pulse_width_steps", source).get<int>();
        protocol.train_pulses = require(j, "train_pulses", source).get<int>();
        protocol.train_gap_steps = require(j, "train_gap_steps", source).get<int>();
        protocol.dt = require(j, "dt_s", source).get<double>();
        protocol.validate();
        return protocol;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(source, 0, e.what());
    } catch (const ValidationError& e) {
        throw ParseError(source, 0, e.what());
    }
}

std::string summation_protocol_to_json(const SummationProtocol& protocol) {
    ojson j;
    j["experiment"] = "summation";
    j["dt_s"] = protocol.dt;
    j["pulse_voltage_V"] = protocol.pulse_voltage;
    j["long_pulse_steps"] = protocol.long_pulse_steps;
    j["gap_steps"] = protocol.gap_steps;
    j["long_pulses"] = protocol.long_pulses;
    j["short_pulse_steps"] = protocol.short_pulse_steps;
    return j.dump(2) + "\n";
}

SummationProtocol summation_protocol_from_json(const std::string& text,
                                               const std::string& source) {
    const ojson j = parse_json_text(text, source);
    try {
        SummationProtocol protocol;
        protocol.dt = require(j, "dt_s", source).get<double>();
        protocol.pulse_voltage = require(j, "pulse_voltage_V", source).get<double>();
        protocol.long_pulse_steps = require(j, "long_pulse_steps", source).get<int>();
        protocol.gap_steps = require(j, "gap_steps", source).get<int>();
        protocol.long_pulses = require(j, "long_pulses", source).get<int>();
        protocol.short_pulse_steps = require(j, "short_pulse_steps", source).get<int>();
        if (!(protocol.dt > 0.0) || protocol.long_pulse_steps < 1 || protocol.gap_steps < 1 ||
            protocol.long_pulses < 1 || protocol.short_pulse_steps < 1) {
            throw ParseError(source, 0, "summation protocol values must be positive");
        }
        return protocol;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(source, 0, e.what());
    }
}

std::string sweep_spec_to_json(const SweepSpec& spec) {
    ojson j;
    j["experiment"] = "order-sweep";
    j["second_voltage_V"] = spec.v_b;
    j["first_voltages_V"] = spec.v_a_values;
    return j.dump(2) + "\n";
}

SweepSpec sweep_spec_from_json(const std::string& text, const std::string& source) {
    const ojson j = parse_json_text(text, source);
    try {
        SweepSpec spec;
        spec.v_b = require(j, "second_voltage_V", source).get<double>();
        spec.v_a_values = require(j, "first_voltages_V", source).get<std::vector<double>>();
        spec.validate();
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(source, 0, e.what());
    } catch (const ValidationError& e) {
        throw ParseError(source, 0, e.what());
    }
}

std::string gate_result_to_json(const std::string& gate_name, const GateResult& result) {
    ojson j;
    j["gate"] = gate_name;
    j["inputs"] = result.inputs;
    j["statistic_A"] = result.statistic_amps;
    j["decoded"] = result.decoded;
    if (result.aux) {
        ojson aj;
        aj["arithmetic_sum"] = result.aux->arithmetic_sum;
        aj["sum_bit"] = result.aux->sum_bit;
        aj["carry_bit"] = result.aux->carry_bit;
        aj["recovered_order"] = ojson::array();
        for (const OrderedBit& ob : result.aux->recovered_order) {
            ojson oj;
            oj["step"] = ob.step;
            oj["bit"] = ob.bit;
            aj["recovered_order"].push_back(oj);
        }
        j["aux"] = aj;
    }
    return j.dump(2) + "\n";
}

std::string truth_table_to_json(const TruthTableReport& report) {
    ojson j;
    j["gate"] = report.gate_name;
    j["rows"] = ojson::array();
    std::map<std::vector<int>, std::string> table;
    for (const TruthTableRow& row : report.rows) {
        ojson rj;
        rj["inputs"] = row.inputs;
        rj["statistic_A"] = row.statistic_amps;
        rj["decoded"] = row.decoded;
        rj["expected"] = row.expected;
        rj["pass"] = row.pass;
        j["rows"].push_back(rj);
        table[row.inputs] = row.expected;
    }
    j["margins"] = ojson::object();
    for (const auto& [name, margin] : report.channel_margins_amps) {
        j["margins"][name] = margin;
    }
    j["all_pass"] = report.all_pass;
    const EfficiencyReport eff = logical_efficiency(table);
    ojson ej;
    ej["input_count"] = eff.input_count;
    ej["class_count"] = eff.class_count;
    ej["ratio"] = eff.efficiency();
    j["efficiency"] = ej;
    return j.dump(2) + "\n";
}

std::string habituation_to_json(const HabituationProtocol& protocol,
                                const HabituationReport& report) {
    ojson j;
    j["experiment"] = "habituation";
    j["protocol"] = parse_json_text(habituation_protocol_to_json(protocol), "protocol");
    j["protocol"].erase("experiment");
    j["baseline_A"] = report.baseline_amps;
    j["train_A"] = report.train_amps;
    j["train_bounceback_A"] = report.train_bounceback_amps;

    bool baseline_uniform = true;
    for (double b : report.baseline_amps) {
        baseline_uniform = baseline_uniform && b == report.baseline_amps.front();
    }
    const bool first_matches = !report.baseline_amps.empty() && !report.train_amps.empty() &&
                               report.train_amps.front() == report.baseline_amps.front();
    bool decreasing = true;
    for (size_t k = 1; k < report.train_amps.size(); ++k) {
        decreasing = decreasing && report.train_amps[k] < report.train_amps[k - 1];
    }
    bool shrinking = true;
    for (size_t k = 2; k < report.train_amps.size(); ++k) {
        const double d1 = report.train_amps[k - 2] - report.train_amps[k - 1];
        const double d2 = report.train_amps[k - 1] - report.train_amps[k];
        shrinking = shrinking && d2 < d1;
    }

    ojson a;
    a["baseline_uniform"] = baseline_uniform;
    a["first_train_response_matches_baseline"] = first_matches;
    a["train_strictly_decreasing"] = decreasing;
    a["decrements_strictly_shrinking"] = shrinking;
    j["assertions"] = a;
    j["all_pass"] = baseline_uniform && first_matches && decreasing && shrinking;
    return j.dump(2) + "\n";
}

std::string summation_to_json(const SummationProtocol& protocol, const SummationReport& report) {
    ojson j;
    j["experiment"] = "summation";
    j["protocol"] = parse_json_text(summation_protocol_to_json(protocol), "protocol");
    j["protocol"].erase("experiment");
    j["long_release_A"] = report.long_bounceback_amps;
    j["short_release_A"] = report.short_bounceback_amps;
    ojson a;
    a["short_release_smaller_than_every_long_release"] = report.short_spike_smaller;
    j["assertions"] = a;
    j["all_pass"] = report.short_spike_smaller;
    return j.dump(2) + "\n";
}

std::string sweep_to_json(const SweepSpec& spec, const std::vector<SweepPoint>& points) {
    ojson j;
    j["experiment"] = "order-sweep";
    j["spec"] = parse_json_text(sweep_spec_to_json(spec), "spec");
    j["spec"].erase("experiment");
    j["points"] = ojson::array();
    for (const SweepPoint& p : points) {
        ojson pj;
        pj["v_a_V"] = p.v_a;
        pj["S1_A"] = p.s1_amps;
        pj["T1_A"] = p.t1_amps;
        pj["T2_A"] = p.t2_amps;
        pj["S2_A"] = p.s2_amps;
        pj["sum_AB_A"] = p.sum_ab_amps;
        pj["sum_BA_A"] = p.sum_ba_amps;
        j["points"].push_back(pj);
    }

    bool s1_increasing = true;
    bool t1_decreasing = true;
    bool t2_constant = true;
    bool ab_exceeds_ba = true;
    bool equal_at_equal = true;
    for (size_t k = 0; k < points.size(); ++k) {
        if (k > 0) {
            s1_increasing = s1_increasing && points[k].s1_amps > points[k - 1].s1_amps;
            t1_decreasing = t1_decreasing && points[k].t1_amps < points[k - 1].t1_amps;
            t2_constant = t2_constant && points[k].t2_amps == points.front().t2_amps;
        }
        if (points[k].v_a < spec.v_b) {
            ab_exceeds_ba = ab_exceeds_ba && points[k].sum_ab_amps > points[k].sum_ba_amps;
        } else {
            equal_at_equal = equal_at_equal &&
                             close_rel(points[k].sum_ab_amps, points[k].sum_ba_amps, 1e-12);
        }
    }

    ojson a;
    a["first_spike_strictly_increasing"] = s1_increasing;
    a["followup_spike_strictly_decreasing"] = t1_decreasing;
    a["fresh_second_spike_constant"] = t2_constant;
    a["sum_AB_exceeds_sum_BA_below_second_voltage"] = ab_exceeds_ba;
    a["sums_match_at_equal_voltages"] = equal_at_equal;
    j["assertions"] = a;
    j["all_pass"] =
        s1_increasing && t1_decreasing && t2_constant && ab_exceeds_ba && equal_at_equal;
    return j.dump(2) + "\n";
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& points) {
    os << "v_a,S1,T1,T2,S2,sum_AB,sum_BA\n";
    for (const SweepPoint& p : points) {
        os << fmt_double(p.v_a) << ',' << fmt_double(p.s1_amps) << ',' << fmt_double(p.t1_amps)
           << ',' << fmt_double(p.t2_amps) << ',' << fmt_double(p.s2_amps) << ','
           << fmt_double(p.sum_ab_amps) << ',' << fmt_double(p.sum_ba_amps) << '\n';
    }
}

std::string format_double(double v) { return fmt_double(v); }

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, 0, "cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError(path, 0, "cannot open file for writing");
    out << text;
    out.flush();
    if (!out) throw ParseError(path, 0, "write failed");
}

} // namespace memspike
