#include "memspike/cli.hpp"

#include <filesystem>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "memspike/calibrate.hpp"
#include "memspike/io.hpp"

namespace memspike {

namespace {

namespace fs = std::filesystem;

struct RunConfig {
    std::string params_path;
    std::string out_dir = ".";
    std::uint64_t seed = kDefaultNoiseSeed;
};

DeviceParams config_params(const RunConfig& cfg) {
    return cfg.params_path.empty() ? DeviceParams{} : load_device_params(cfg.params_path);
}

fs::path ensure_out_dir(const RunConfig& cfg) {
    fs::path dir(cfg.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ParseError(cfg.out_dir, 0, "cannot create output directory");
    return dir;
}

constexpr const char* kGateNames[] = {"not", "and", "or", "xor", "full-adder"};

GateSpec resolve_gate(const std::string& name_or_file) {
    for (const char* name : kGateNames) {
        if (name_or_file == name) return gate_spec_by_name(name);
    }
    if (fs::exists(name_or_file)) return load_gate_spec(name_or_file);
    throw ParseError(name_or_file, 0,
                     "not a gate preset (not, and, or, xor, full-adder) and not a file");
}

std::string bits_string(const std::vector<int>& bits) {
    std::string s;
    for (int b : bits) s.push_back(b ? '1' : '0');
    return s;
}

bool gate_has_order_channel(const GateSpec& gate) {
    for (const ChannelSpec& ch : gate.channels) {
        if (ch.source == ChannelSource::InputStepSamples) return true;
    }
    return false;
}

int cmd_simulate(const RunConfig& cfg, const std::string& schedule_path, std::ostream& out) {
    const DeviceParams params = config_params(cfg);
    const VoltageSchedule schedule = load_schedule(schedule_path);
    const CurrentTrace trace = run_schedule(params, schedule, cfg.seed);
    const std::string path = (ensure_out_dir(cfg) / "trace.csv").string();
    write_trace_csv_file(path, trace);
    out << "wrote " << path << " (" << trace.size() << " samples)\n";
    return 0;
}

int cmd_gate(const RunConfig& cfg, const std::string& name_or_file, const std::vector<int>& bits,
             bool table, bool calibrate, const std::string& bands_path, std::ostream& out,
             std::ostream& err) {
    if (!bands_path.empty() && (table || calibrate)) {
        err << "memspike: --bands applies only to a single gate run\n";
        return 2;
    }
    if (!bands_path.empty() && bits.empty()) {
        err << "memspike: --bands needs input bits to decode\n";
        return 2;
    }
    if (bits.empty() && !table && !calibrate) {
        err << "memspike: nothing to do; pass input bits, --table, or --calibrate\n";
        return 2;
    }

    const DeviceParams params = config_params(cfg);
    const GateSpec gate = resolve_gate(name_or_file);
    const fs::path dir = ensure_out_dir(cfg);
    int rc = 0;

    if (calibrate) {
        BandsDocument doc;
        doc.gate_name = gate.name;
        doc.encoding = gate.encoding;
        doc.channels = calibrate_all(gate, params, cfg.seed);
        const std::string path = (dir / ("gate-" + gate.name + "-bands.json")).string();
        write_text_file(path, bands_document_to_json(doc));
        for (const auto& [name, cal] : doc.channels) {
            out << name << ": " << cal.bands.bands.size() << " bands, min margin "
                << format_double(cal.min_margin_amps()) << " A\n";
        }
        out << "wrote " << path << "\n";
    }

    if (table) {
        const TruthTableReport report = truth_table(gate, params, cfg.seed);
        size_t passed = 0;
        for (const TruthTableRow& row : report.rows) {
            out << gate.name << " " << bits_string(row.inputs) << " -> " << row.decoded
                << " expected " << row.expected << (row.pass ? "  PASS" : "  FAIL") << "\n";
            if (row.pass) ++passed;
        }
        out << passed << "/" << report.rows.size() << " rows pass\n";
        const std::string path = (dir / ("gate-" + gate.name + "-table.json")).string();
        write_text_file(path, truth_table_to_json(report));
        for (const std::vector<int>& inputs : all_input_tuples(gate.arity)) {
            const CurrentTrace trace =
                run_schedule(params, build_schedule(gate, inputs), cfg.seed);
            write_trace_csv_file((dir / ("gate-" + gate.name + "-row-" + bits_string(inputs) +
                                         "-trace.csv"))
                                     .string(),
                                 trace);
        }
        out << "wrote " << path << " and " << report.rows.size() << " row traces\n";
        if (!report.all_pass) rc = 1;
    }

    if (!bits.empty()) {
        if (static_cast<int>(bits.size()) != gate.arity) {
            err << "memspike: gate '" << gate.name << "' takes " << gate.arity << " input bit"
                << (gate.arity == 1 ? "" : "s") << ", got " << bits.size() << "\n";
            return 2;
        }
        const GateBands bands = bands_path.empty()
                                    ? calibrate_all(gate, params, cfg.seed)
                                    : load_bands_document(bands_path).channels;
        const GateResult result =
            (gate.name == full_adder_spec().name && gate.arity == 3 &&
             gate_has_order_channel(gate))
                ? full_adder(bits[0], bits[1], bits[2], params, bands, cfg.seed)
                : run_gate(gate, bits, params, bands, cfg.seed);
        const std::string json = gate_result_to_json(gate.name, result);
        write_text_file((dir / ("gate-" + gate.name + "-result.json")).string(), json);
        write_trace_csv_file((dir / ("gate-" + gate.name + "-trace.csv")).string(),
                             result.trace);
        out << json;
    }

    return rc;
}

int summary_exit_code(const std::string& json) {
    return nlohmann::json::parse(json).at("all_pass").get<bool>() ? 0 : 1;
}

int cmd_experiment(const RunConfig& cfg, const std::string& name, std::ostream& out,
                   std::ostream& err) {
    if (name != "habituation" && name != "summation" && name != "order-sweep") {
        err << "memspike: unknown experiment '" << name
            << "'; valid names: habituation, summation, order-sweep\n";
        return 2;
    }

    const DeviceParams params = config_params(cfg);
    const fs::path dir = ensure_out_dir(cfg);
    std::string json;

    if (name == "habituation") {
        const HabituationProtocol protocol;
        const HabituationReport report = run_habituation(protocol, params);
        std::ostringstream csv;
        csv << "pulse,response_A,bounceback_A\n";
        for (size_t k = 0; k < report.train_amps.size(); ++k) {
            csv << (k + 1) << ',' << format_double(report.train_amps[k]) << ','
                << format_double(report.train_bounceback_amps[k]) << '\n';
        }
        write_text_file((dir / "habituation.csv").string(), csv.str());
        json = habituation_to_json(protocol, report);
        write_text_file((dir / "habituation.json").string(), json);
    } else if (name == "summation") {
        const SummationProtocol protocol;
        const SummationReport report = run_summation_demo(params);
        write_trace_csv_file((dir / "summation.csv").string(), report.trace);
        json = summation_to_json(protocol, report);
        write_text_file((dir / "summation.json").string(), json);
    } else {
        const SweepSpec spec = default_sweep_spec();
        const std::vector<SweepPoint> points = run_order_sweep(spec, params);
        std::ostringstream csv;
        write_sweep_csv(csv, points);
        write_text_file((dir / "order-sweep.csv").string(), csv.str());
        json = sweep_to_json(spec, points);
        write_text_file((dir / "order-sweep.json").string(), json);
    }

    out << json;
    return summary_exit_code(json);
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;

    CLI::App app{"deterministic memristor simulator with spiking logic gates"};
    app.name("memspike");
    app.add_option("--params", cfg.params_path, "device parameter file (key = value)");
    app.add_option("--out", cfg.out_dir, "output directory (default: current)");
    app.add_option("--seed", cfg.seed, "noise seed; only matters when noise_sigma > 0");
    app.require_subcommand(1);

    std::string schedule_path;
    CLI::App* simulate =
        app.add_subcommand("simulate", "run a voltage schedule and export the current trace");
    simulate->add_option("schedule", schedule_path,
                         "schedule file: one voltage per line, or step,voltage_V csv")
        ->required();
    simulate->fallthrough();

    std::string gate_name;
    std::vector<int> bits;
    bool table = false;
    bool calibrate = false;
    std::string bands_path;
    CLI::App* gatecmd =
        app.add_subcommand("gate", "run a logic gate, its truth table, or its calibration");
    gatecmd->add_option("name", gate_name, "preset name (not, and, or, xor, full-adder) or gate json file")
        ->required();
    gatecmd->add_option("bits", bits, "input bits, one per input")->check(CLI::Range(0, 1));
    gatecmd->add_flag("--table", table, "evaluate every input row and report pass/fail");
    gatecmd->add_flag("--calibrate", calibrate, "fit decode bands and write them as json");
    gatecmd->add_option("--bands", bands_path,
                        "decode against previously written bands instead of calibrating");
    gatecmd->fallthrough();

    std::string experiment_name;
    CLI::App* expcmd = app.add_subcommand(
        "experiment", "run a built-in experiment: habituation, summation, order-sweep");
    expcmd->add_option("name", experiment_name, "experiment name")->required();
    expcmd->fallthrough();

    std::vector<std::string> storage(args);
    std::vector<const char*> argv;
    argv.reserve(storage.size() + 1);
    argv.push_back("memspike");
    for (const std::string& a : storage) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "memspike: " << e.what() << "\n";
        return 2;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(cfg, schedule_path, out);
        if (gatecmd->parsed()) {
            return cmd_gate(cfg, gate_name, bits, table, calibrate, bands_path, out, err);
        }
        return cmd_experiment(cfg, experiment_name, out, err);
    } catch (const ParseError& e) {
        err << "memspike: " << e.what() << "\n";
        return 2;
    } catch (const NotSeparableError& e) {
        err << "memspike: " << e.what() << "\n";
        return 1;
    } catch (const UnclassifiableError& e) {
        err << "memspike: cannot decode: " << e.what() << "\n";
        return 1;
    } catch (const OrderAmbiguousError& e) {
        err << "memspike: " << e.what() << "\n";
        return 1;
    } catch (const ValidationError& e) {
        err << "memspike: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "memspike: " << e.what() << "\n";
        return 1;
    }
}

} // namespace memspike
