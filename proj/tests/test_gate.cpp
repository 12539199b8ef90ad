#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <set>

#include "memspike/calibrate.hpp"
#include "memspike/gate.hpp"

#include "checks.hpp"
#include "oracle.hpp"

using namespace memspike;
using memspike::testing::close_rel;
using memspike::testing::oracle_currents;

namespace {

std::vector<double> oracle_for(const GateSpec& g, const std::vector<int>& inputs) {
    return oracle_currents(memspike::testing::OracleConfig{}, build_schedule(g, inputs));
}

double window_max(const std::vector<double>& i, int first, int last) {
    double best = i[static_cast<size_t>(first)];
    for (int k = first + 1; k <= last; ++k) best = std::max(best, i[static_cast<size_t>(k)]);
    return best;
}

CurrentTrace synthetic_trace(const std::vector<double>& currents) {
    CurrentTrace t;
    for (size_t k = 0; k < currents.size(); ++k) {
        CurrentSample s;
        s.step_index = static_cast<long>(k);
        s.i_measured = currents[k];
        t.push_back(s);
    }
    return t;
}

} // namespace

TEST_SUITE("gate") {

TEST_CASE("schedules: frozen layouts") {
    CHECK(build_schedule(xor_gate_spec(), {1, 0}) == VoltageSchedule{0.1, -0.1, 0.0, 0.0});
    CHECK(build_schedule(xor_gate_spec(), {0, 1}) == VoltageSchedule{-0.1, 0.1, 0.0, 0.0});
    CHECK(build_schedule(or_gate_spec(), {0, 0}) == VoltageSchedule{0.01, 0.01, 0.0, 0.0});
    CHECK(build_schedule(not_gate_spec(), {1}) == VoltageSchedule{0.1, 0.0, 0.0});
    CHECK(build_schedule(and_gate_spec(), {1, 0}) ==
          VoltageSchedule{-0.5, 0.001, 0.0, 0.0, 0.0});
    CHECK(build_schedule(full_adder_spec(), {1, 1, 1}) ==
          VoltageSchedule{-0.5, -0.5, -0.5, 0.0, -0.15, 0.0, 0.0});
    CHECK(build_schedule(full_adder_spec(), {0, 1, 0}) ==
          VoltageSchedule{0.001, -0.5, 0.001, 0.0, -0.15, 0.0, 0.0});
}

TEST_CASE("schedules: fixed length, clocked spacing, validation") {
    const GateSpec fa = full_adder_spec();
    for (const auto& t : all_input_tuples(3)) {
        CHECK(build_schedule(fa, t).size() == static_cast<size_t>(fa.schedule_length()));
    }

    GateSpec spread = xor_gate_spec();
    spread.arity = 3;
    spread.inter_bit_gap = 2;
    spread.channels[0].statistic.step = 5;
    spread.channels[0].truth.clear();
    for (const auto& t : all_input_tuples(3)) {
        spread.channels[0].truth[t] = std::to_string(t[0] ^ t[1] ^ t[2]);
    }
    const VoltageSchedule s = build_schedule(spread, {1, 1, 1});
    CHECK(s.size() == 7); // inputs at 0, 2, 4 plus window of 2
    CHECK(s[0] == 0.1);
    CHECK(s[1] == 0.0);
    CHECK(s[2] == 0.1);
    CHECK(s[4] == 0.1);

    CHECK_THROWS_AS(build_schedule(xor_gate_spec(), {1}), ValidationError);
    CHECK_THROWS_AS(build_schedule(xor_gate_spec(), {1, 2}), ValidationError);
}

TEST_CASE("gate spec validation") {
    GateSpec g = full_adder_spec();
    g.read_pulses[0].offset_steps = 0; // would land on an input step
    CHECK_THROWS_AS(g.validate(), ValidationError);
    g = full_adder_spec();
    g.read_pulses[0].offset_steps = 5; // past the response window
    CHECK_THROWS_AS(g.validate(), ValidationError);
    g = full_adder_spec();
    g.read_pulses.push_back({2, -0.1});
    CHECK_THROWS_AS(g.validate(), ValidationError);

    g = xor_gate_spec();
    g.channels[0].truth.erase({1, 1});
    CHECK_THROWS_AS(g.validate(), ValidationError);

    g = full_adder_spec();
    g.channels[1].truth[{0, 0, 0}] = "x"; // order channel derives its own truth
    CHECK_THROWS_AS(g.validate(), ValidationError);

    g = full_adder_spec();
    std::swap(g.channels[0], g.channels[1]); // output channel must be a statistic
    CHECK_THROWS_AS(g.validate(), ValidationError);

    g = xor_gate_spec();
    g.channels.push_back(g.channels[0]); // duplicate channel name
    CHECK_THROWS_AS(g.validate(), ValidationError);

    g = xor_gate_spec();
    g.inter_bit_gap = 0;
    CHECK_THROWS_AS(g.validate(), ValidationError);

    CHECK_NOTHROW(not_gate_spec().validate());
    CHECK_NOTHROW(and_gate_spec().validate());
    CHECK_NOTHROW(or_gate_spec().validate());
    CHECK_NOTHROW(xor_gate_spec().validate());
    CHECK_NOTHROW(full_adder_spec().validate());
}

TEST_CASE("input tuples enumerate in ascending binary order") {
    const auto t2 = all_input_tuples(2);
    const std::vector<std::vector<int>> want = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    CHECK(t2 == want);
    CHECK(all_input_tuples(3).size() == 8);
    CHECK(all_input_tuples(1).size() == 2);
}

TEST_CASE("order ground-truth labels") {
    const std::vector<int> t = {1, 0, 1};
    CHECK(order_truth_label(t, 0) == kOrderFresh);
    CHECK(order_truth_label(t, 1) == kOrderZero);
    CHECK(order_truth_label(t, 2) == kOrderAttenuated);
    const std::vector<int> u = {0, 1, 1};
    CHECK(order_truth_label(u, 0) == kOrderZero);
    CHECK(order_truth_label(u, 1) == kOrderFresh);
    CHECK(order_truth_label(u, 2) == kOrderAttenuated);
    CHECK(order_truth_label({0, 0}, 1) == kOrderZero);
    CHECK_THROWS_AS(order_truth_label(t, 3), ValidationError);
}

TEST_CASE("gate_spec_by_name") {
    CHECK(gate_spec_by_name("xor").name == "xor");
    CHECK(gate_spec_by_name("full-adder").arity == 3);
    CHECK_THROWS_AS(gate_spec_by_name("nand"), ValidationError);
}

TEST_CASE("calibration matches the brute-force recursion") {
    const DeviceParams params;

    // XOR: |i| at the second bit, midpoint between the two clusters
    const GateSpec x = xor_gate_spec();
    std::map<std::string, std::vector<double>> stats;
    for (const auto& t : all_input_tuples(2)) {
        stats[std::to_string(t[0] ^ t[1])].push_back(std::abs(oracle_for(x, t)[1]));
    }
    const ChannelCalibration cal = calibrate(x, params);
    const double max0 = *std::max_element(stats["0"].begin(), stats["0"].end());
    const double min1 = *std::min_element(stats["1"].begin(), stats["1"].end());
    CHECK(max0 < min1);
    REQUIRE(cal.bands.bands.size() == 2);
    CHECK(cal.bands.bands[0].label == "0");
    CHECK(cal.bands.bands[1].label == "1");
    CHECK(close_rel(cal.bands.bands[0].upper_amps, (max0 + min1) / 2.0));
    CHECK(close_rel(cal.min_margin_amps(), min1 - max0));

    // OR: window maximum over the whole schedule
    const GateSpec o = or_gate_spec();
    double or_max0 = -1.0, or_min1 = 1.0;
    for (const auto& t : all_input_tuples(2)) {
        const double stat = window_max(oracle_for(o, t), 0, 3);
        if ((t[0] | t[1]) == 0) or_max0 = std::max(or_max0, stat);
        else or_min1 = std::min(or_min1, stat);
    }
    const ChannelCalibration or_cal = calibrate(o, params);
    CHECK(close_rel(or_cal.bands.bands[0].upper_amps, (or_max0 + or_min1) / 2.0));

    // positive margins for every default gate and channel
    for (const char* name : {"not", "and", "or", "xor", "full-adder"}) {
        const GateBands bands = calibrate_all(gate_spec_by_name(name), params);
        for (const auto& [channel, c] : bands) {
            INFO(name, "/", channel);
            CHECK(c.min_margin_amps() > 0.0);
        }
    }
}

TEST_CASE("run_gate reproduces the oracle statistic") {
    const DeviceParams params;
    const GateBands bands = calibrate_all(or_gate_spec(), params);
    const GateResult r = run_gate(or_gate_spec(), {0, 1}, params, bands);
    CHECK(close_rel(r.statistic_amps, window_max(oracle_for(or_gate_spec(), {0, 1}), 0, 3)));
    CHECK(r.decoded == "1");
    CHECK(r.trace.size() == 4);
}

TEST_CASE("truth tables: 22 of 22 rows decode correctly") {
    const DeviceParams params;
    int rows = 0;
    const std::map<std::string, std::vector<std::string>> expect = {
        {"not", {"1", "0"}},
        {"and", {"0", "0", "0", "1"}},
        {"or", {"0", "1", "1", "1"}},
        {"xor", {"0", "1", "1", "0"}},
        {"full-adder", {"0", "1", "1", "2", "1", "2", "2", "3"}},
    };
    for (const auto& [name, decoded] : expect) {
        const TruthTableReport rep = truth_table(gate_spec_by_name(name), params);
        CHECK(rep.all_pass);
        REQUIRE(rep.rows.size() == decoded.size());
        for (size_t k = 0; k < rep.rows.size(); ++k) {
            INFO(name, " row ", k);
            CHECK(rep.rows[k].decoded == decoded[k]);
            CHECK(rep.rows[k].pass);
            ++rows;
        }
        for (const auto& [channel, margin] : rep.channel_margins_amps) {
            CHECK(margin > 0.0);
        }
    }
    CHECK(rows == 22);
}

TEST_CASE("xor table is bit-identical across 7 repeated runs") {
    const DeviceParams params;
    const TruthTableReport first = truth_table(xor_gate_spec(), params);
    for (int rep = 1; rep < 7; ++rep) {
        const TruthTableReport again = truth_table(xor_gate_spec(), params);
        REQUIRE(again.rows.size() == first.rows.size());
        for (size_t k = 0; k < first.rows.size(); ++k) {
            CHECK(again.rows[k].statistic_amps == first.rows[k].statistic_amps);
            CHECK(again.rows[k].decoded == first.rows[k].decoded);
        }
    }
}

TEST_CASE("zeroing isolates successive gate runs on one device") {
    const DeviceParams params;
    Device d(params);
    d.apply_all(build_schedule(xor_gate_spec(), {1, 0}));
    d.erase_memory();
    const CurrentTrace reused = d.apply_all(build_schedule(xor_gate_spec(), {1, 1}));
    const CurrentTrace fresh = run_schedule(params, build_schedule(xor_gate_spec(), {1, 1}));
    REQUIRE(reused.size() == fresh.size());
    for (size_t k = 0; k < fresh.size(); ++k) {
        CHECK(reused[k].i_measured == fresh[k].i_measured);
    }
}

TEST_CASE("not gate: inversion and involution") {
    const DeviceParams params;
    const GateBands bands = calibrate_all(not_gate_spec(), params);
    const GateResult r1 = not_gate(1, params, bands);
    const GateResult r0 = not_gate(0, params, bands);
    CHECK(r1.decoded == "0");
    CHECK(r0.decoded == "1");
    CHECK(r1.statistic_amps < 0.0); // spike opposite to the +0.1 V input
    CHECK(r0.statistic_amps > 0.0);

    for (int x : {0, 1}) {
        const GateResult once = not_gate(x, params, bands);
        const GateResult twice = not_gate(once.decoded == "1" ? 1 : 0, params, bands);
        CHECK(twice.decoded == std::to_string(x));
    }
}

TEST_CASE("gate algebra spot checks") {
    const DeviceParams params;
    const GateBands xb = calibrate_all(xor_gate_spec(), params);
    const GateBands ab = calibrate_all(and_gate_spec(), params);
    const GateBands ob = calibrate_all(or_gate_spec(), params);
    for (int x : {0, 1}) {
        CHECK(run_gate(xor_gate_spec(), {x, x}, params, xb).decoded == "0");
        CHECK(run_gate(and_gate_spec(), {x, 0}, params, ab).decoded == "0");
        CHECK(run_gate(or_gate_spec(), {x, 1}, params, ob).decoded == "1");
    }
}

TEST_CASE("directionality: swapped input order changes the follow-up response") {
    const DeviceParams params;
    const double rho = std::exp(-params.dt / params.tau);
    const std::vector<EncodingScheme> schemes = {
        {EncodingKind::Magnitude, 0.2, 0.01},
        {EncodingKind::Polarity, 0.1, 0.01},
        {EncodingKind::Mixed1, 0.3, 0.02},
        {EncodingKind::Mixed2, 0.5, 0.001},
    };
    for (const EncodingScheme& s : schemes) {
        const double va = encode_bit(s, 1);
        const double vb = encode_bit(s, 0);
        const CurrentTrace ab = run_schedule(params, {va, vb, 0.0, 0.0});
        const CurrentTrace ba = run_schedule(params, {vb, va, 0.0, 0.0});
        const double diff = ab[2].i_measured - ba[2].i_measured;
        CHECK(std::abs(diff) > 1e-12);
        // closed form of the swap margin at the first follow-up step
        const double want = -params.g_spike * (1.0 - rho) * (1.0 - rho) * (vb - va);
        CHECK(close_rel(diff, want, 1e-9));
    }
}

TEST_CASE("full adder: all 8 rows with order recovery") {
    const DeviceParams params;
    const GateBands bands = calibrate_all(full_adder_spec(), params);

    std::set<std::pair<int, std::vector<int>>> classes;
    for (const auto& t : all_input_tuples(3)) {
        const GateResult r = full_adder(t[0], t[1], t[2], params, bands);
        REQUIRE(r.aux.has_value());
        const FullAdderAux& aux = *r.aux;
        const int want_sum = t[0] + t[1] + t[2];
        CHECK(aux.arithmetic_sum == want_sum);
        CHECK(aux.sum_bit == want_sum % 2);
        CHECK(aux.carry_bit == (want_sum >= 2 ? 1 : 0));
        REQUIRE(aux.recovered_order.size() == 3);
        std::vector<int> recovered;
        for (size_t k = 0; k < 3; ++k) {
            CHECK(aux.recovered_order[k].step == static_cast<int>(k));
            recovered.push_back(aux.recovered_order[k].bit);
        }
        CHECK(recovered == t);
        classes.insert({aux.arithmetic_sum, recovered});
    }
    // logically reversible: all 8 (sum, order) outputs distinct
    CHECK(classes.size() == 8);
}

TEST_CASE("full adder: positive window maxima ordered by arithmetic sum") {
    const DeviceParams params;
    const GateBands bands = calibrate_all(full_adder_spec(), params);
    std::map<int, std::vector<double>> by_sum;
    for (const auto& t : all_input_tuples(3)) {
        const GateResult r = run_gate(full_adder_spec(), t, params, bands);
        by_sum[t[0] + t[1] + t[2]].push_back(r.statistic_amps);
    }
    for (int s = 0; s < 3; ++s) {
        const double upper = *std::max_element(by_sum[s].begin(), by_sum[s].end());
        const double lower = *std::min_element(by_sum[s + 1].begin(), by_sum[s + 1].end());
        CHECK(upper < lower);
    }
}

TEST_CASE("full adder: carry iff an attenuated one-spike exists") {
    const DeviceParams params;
    const GateBands bands = calibrate_all(full_adder_spec(), params);
    const ThresholdBands& order = channel_bands(bands, "order").bands;
    for (const auto& t : all_input_tuples(3)) {
        const GateResult r = full_adder(t[0], t[1], t[2], params, bands);
        bool attenuated = false;
        for (int k = 0; k < 3; ++k) {
            attenuated = attenuated ||
                         decode(r.trace[static_cast<size_t>(k)].i_measured, order) ==
                             kOrderAttenuated;
        }
        CHECK(attenuated == (r.aux->carry_bit == 1));
    }
}

TEST_CASE("full adder: same decode, distinct traces for reordered inputs") {
    const DeviceParams params;
    const GateBands bands = calibrate_all(full_adder_spec(), params);
    const GateResult first = full_adder(1, 0, 0, params, bands);
    const GateResult last = full_adder(0, 0, 1, params, bands);
    CHECK(first.decoded == last.decoded);
    CHECK(first.aux->arithmetic_sum == 1);
    CHECK(last.aux->arithmetic_sum == 1);
    bool differs = false;
    for (size_t k = 0; k < first.trace.size(); ++k) {
        differs = differs || first.trace[k].i_measured != last.trace[k].i_measured;
    }
    CHECK(differs);
    CHECK(first.aux->recovered_order[0].bit == 1);
    CHECK(last.aux->recovered_order[2].bit == 1);
}

TEST_CASE("recover_order rejects inconsistent spike patterns") {
    const DeviceParams params;
    const GateSpec fa = full_adder_spec();
    const GateBands bands = calibrate_all(fa, params);
    const ChannelCalibration& order = channel_bands(bands, "order");
    // representative in-band values straight from the calibration clusters
    std::map<std::string, double> rep;
    for (const ResponseCluster& c : order.clusters) rep[c.label] = c.min_amps();

    CHECK_NOTHROW(recover_order(
        synthetic_trace({rep[kOrderFresh], rep[kOrderAttenuated], rep[kOrderZero]}), fa, bands));

    // attenuated with no fresh spike before it
    CHECK_THROWS_AS(recover_order(synthetic_trace({rep[kOrderAttenuated], rep[kOrderZero],
                                                   rep[kOrderZero]}),
                                  fa, bands),
                    OrderAmbiguousError);
    // two fresh spikes
    CHECK_THROWS_AS(recover_order(synthetic_trace({rep[kOrderFresh], rep[kOrderFresh],
                                                   rep[kOrderZero]}),
                                  fa, bands),
                    OrderAmbiguousError);
    // fresh again after the run has seen a one
    CHECK_THROWS_AS(recover_order(synthetic_trace({rep[kOrderFresh], rep[kOrderAttenuated],
                                                   rep[kOrderFresh]}),
                                  fa, bands),
                    OrderAmbiguousError);

    CHECK_THROWS_AS(recover_order(synthetic_trace({rep[kOrderZero]}), fa, bands),
                    ValidationError); // trace shorter than the inputs
}

TEST_CASE("unseparable statistic: OR by second-bit value collides") {
    GateSpec o = or_gate_spec();
    o.channels[0].statistic.kind = StatisticKind::ValueAtStep;
    o.channels[0].statistic.step = 1;
    try {
        calibrate(o, DeviceParams{});
        FAIL("expected NotSeparableError");
    } catch (const NotSeparableError& e) {
        CHECK(e.lower_class == "1"); // the (1,0) response dips below the (0,0) one
        CHECK(e.upper_class == "0");
        CHECK(e.margin_amps < 0.0);
    }
}

TEST_CASE("decode gaps propagate out of run_gate") {
    const DeviceParams params;
    GateBands gappy;
    ChannelCalibration c;
    c.bands.statistic = or_gate_spec().channels[0].statistic;
    c.bands.bands = {{-1.0, 0.0, "0"}, {1.0, 2.0, "1"}};
    gappy.emplace("or", std::move(c));
    CHECK_THROWS_AS(run_gate(or_gate_spec(), {1, 1}, params, gappy), UnclassifiableError);

    CHECK_THROWS_AS(run_gate(or_gate_spec(), {1, 1}, params, GateBands{}), ValidationError);
}

TEST_CASE("scaling both magnitudes preserves OR decodes after recalibration") {
    const DeviceParams params;
    for (double factor : {2.0, 0.5}) {
        GateSpec o = or_gate_spec();
        o.encoding.high_v *= factor;
        o.encoding.low_v *= factor;
        const TruthTableReport rep = truth_table(o, params);
        CHECK(rep.all_pass);
        CHECK(rep.rows[0].decoded == "0");
        for (size_t k = 1; k < 4; ++k) CHECK(rep.rows[k].decoded == "1");
    }
}

TEST_CASE("mild spike asymmetry leaves every gate working") {
    DeviceParams params;
    params.asymmetry = 1.1;
    for (const char* name : {"not", "and", "or", "xor", "full-adder"}) {
        INFO(name);
        CHECK(truth_table(gate_spec_by_name(name), params).all_pass);
    }
}

TEST_CASE("strong asymmetry breaks the polarity XOR but not the others") {
    DeviceParams params;
    params.asymmetry = 1.5;
    CHECK_THROWS_AS(calibrate(xor_gate_spec(), params), NotSeparableError);
    for (const char* name : {"not", "and", "or", "full-adder"}) {
        INFO(name);
        CHECK(truth_table(gate_spec_by_name(name), params).all_pass);
    }
}

TEST_CASE("measurement noise shrinks calibration margins") {
    const std::vector<double> sigmas = {0.0, 1e-9, 5e-9, 2e-8};
    std::vector<double> mean_margin;
    for (double sigma : sigmas) {
        DeviceParams params;
        params.noise_sigma = sigma;
        double total = 0.0;
        for (std::uint64_t seed = 1000; seed <= 8000; seed += 1000) {
            total += calibrate(or_gate_spec(), params, seed).min_margin_amps();
        }
        mean_margin.push_back(total / 8.0);
    }
    for (size_t k = 1; k < mean_margin.size(); ++k) {
        CHECK(mean_margin[k] < mean_margin[k - 1]);
    }
    CHECK(mean_margin.back() > 0.0); // still separable at the largest tested noise
}

TEST_CASE("parallel row evaluation equals sequential calibration") {
    const DeviceParams params;
    const GateSpec fa = full_adder_spec();
    const GateBands sequential = calibrate_all(fa, params);

    const auto tuples = all_input_tuples(fa.arity);
    std::vector<std::future<CurrentTrace>> futures;
    for (size_t row = 0; row < tuples.size(); ++row) {
        futures.push_back(std::async(std::launch::async, [&, row] {
            return run_schedule(params, build_schedule(fa, tuples[row]),
                                kDefaultNoiseSeed + row);
        }));
    }
    std::map<std::string, std::vector<double>> sum_by_label;
    for (size_t row = 0; row < tuples.size(); ++row) {
        const CurrentTrace trace = futures[row].get();
        sum_by_label[fa.channels[0].truth.at(tuples[row])].push_back(
            extract_statistic(fa.channels[0].statistic, trace));
    }
    std::vector<ResponseCluster> clusters;
    for (auto& [label, samples] : sum_by_label) clusters.push_back({label, samples});
    const ChannelCalibration parallel = fit_bands(clusters, fa.channels[0].statistic);

    const ChannelCalibration& seq = channel_bands(sequential, "sum");
    REQUIRE(parallel.bands.bands.size() == seq.bands.bands.size());
    for (size_t k = 0; k < seq.bands.bands.size(); ++k) {
        CHECK(parallel.bands.bands[k].lower_amps == seq.bands.bands[k].lower_amps);
        CHECK(parallel.bands.bands[k].upper_amps == seq.bands.bands[k].upper_amps);
        CHECK(parallel.bands.bands[k].label == seq.bands.bands[k].label);
    }
}

} // TEST_SUITE
