#include "fixtures.hpp"

#include "mvsched/analysis.hpp"
#include "mvsched/benchgen.hpp"
#include "mvsched/io.hpp"
#include "mvsched/ordering.hpp"
#include "mvsched/pipeline.hpp"
#include "mvsched/stage_b.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <set>
#include <sstream>
#include <string>

using namespace mvsched;

namespace {

const std::filesystem::path kData = MVSCHED_DATA_DIR;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int id, const char* name, const std::function<Outcome()>& body) {
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

GeneratorParams synth_params() { return load_params(kData / "params" / "synth.json"); }

// Four variants, equal class shares, smaller than the full synthetic set;
// growth per iteration keeps the synthetic ratio.
GeneratorParams four_variant_params(std::uint64_t seed) {
    auto p = synth_params();
    p.incremental.new_signal_count = 1000 * p.incremental.new_signal_count / p.signal_count;
    p.signal_count = 1000;
    p.variant_count = 4;
    p.ecu_count = 10;
    p.alpha = p.beta = p.gamma = 100.0 / 3.0;
    p.seed = seed;
    return p;
}

// Every signal in one variant: the schedule ignores variant exclusivity.
Instance common_variant(const Instance& inst) {
    Instance c = inst;
    c.variants = VariantMatrix({"common"}, inst.signals.size());
    for (std::size_t s = 0; s < inst.signals.size(); ++s) c.variants.set(s, 0);
    return c;
}

Outcome example1() {
    auto inst = fixtures::example1();
    auto r = run_pipeline(inst);
    auto v = validate(inst, r.schedule);
    auto owners = r.schedule.slot_owners;
    bool ecu3 = owners.count(4) && owners[4] == std::set<std::string>{"ECU3"} &&
                !(owners.count(3) && owners[3].count("ECU3"));
    bool ok = r.slots == 4 && v.ok && v.changed == std::vector<std::string>{"s5", "s8"} && ecu3 && r.time_ms < 1000;
    std::string changed;
    for (const auto& id : v.changed) changed += (changed.empty() ? "" : ",") + id;
    return {ok, "slots=" + std::to_string(r.slots) + " changed={" + changed + "} ecu3_slot4=" +
                    (ecu3 ? "yes" : "no") + fmt(" time_ms=%.1f", r.time_ms)};
}

Outcome mwis_oracle() {
    auto start = Clock::now();
    std::mt19937_64 rng(7);
    int mismatches = 0;
    for (int round = 0; round < 200; ++round) {
        int n = 1 + static_cast<int>(rng() % 20);
        double density = 0.05 + 0.6 * static_cast<double>(rng() % 100) / 100.0;
        auto g = fixtures::random_conflict_graph(rng, n, density);
        auto r = solve_mwis(g);
        if (!r.exact || !is_independent(g, r.selected) ||
            set_weight(g, r.selected) != fixtures::brute_force_mwis_weight(g))
            ++mismatches;
    }
    auto inst = fixtures::example2();
    auto ex = build_exclusions(inst);
    SignalTable table(inst.signals, ex);
    std::vector<int> ordered;
    for (auto i : sort_signals(inst.signals)) ordered.push_back(static_cast<int>(i));
    auto g = read_original(index_original(inst), ordered, table, 0, hyperperiod(inst), 16).conflicts;
    bool example = solve_mwis(g).selected == fixtures::keys_of(inst, {"s3", "s4", "s5", "s6", "s7"});
    double t = ms_since(start);
    return {mismatches == 0 && example && t < 30000,
            "mismatches=" + std::to_string(mismatches) + "/200 example_mis=" + (example ? "ok" : "wrong") +
                fmt(" time_ms=%.0f", t)};
}

Outcome coloring_oracle() {
    auto start = Clock::now();
    std::mt19937_64 rng(11);
    int mismatches = 0;
    for (int round = 0; round < 200; ++round) {
        auto g = fixtures::random_slot_graph(rng, 12, round % 2 == 1);
        auto greedy = greedy_color(g);
        auto c = exact_color(g, clique_lower_bound(g), greedy, 50'000'000);
        if (!c.exact || !fixtures::proper(g, c.colors) || c.slots != fixtures::brute_force_chromatic(g)) ++mismatches;
    }
    auto g4 = fixtures::example4_graph();
    auto c4 = exact_color(g4, clique_lower_bound(g4), greedy_color(g4), 1'000'000);
    double t = ms_since(start);
    return {mismatches == 0 && c4.slots == 3 && t < 60000,
            "mismatches=" + std::to_string(mismatches) + "/200 example_colors=" + std::to_string(c4.slots) +
                fmt(" time_ms=%.0f", t)};
}

Outcome bound_sandwich() {
    int volume_breaks = 0, variant_breaks = 0, slot_breaks = 0, invalid = 0, inexact = 0;
    double worst_ratio = 0;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        auto p = synth_params();
        p.seed = seed;
        auto inst = generate(p);
        auto r = run_pipeline(inst);
        auto lb = lower_bound(inst);
        auto mv = message_volume(inst);
        if (mv > Rational(lb.value)) ++volume_breaks;
        if (variant_message_volume(inst) > Rational(lb.value)) ++variant_breaks;
        worst_ratio = std::max(worst_ratio, mv.to_double() / lb.value);
        if (lb.value > r.slots) ++slot_breaks;
        if (!lb.exact) ++inexact;
        if (!validate(inst, r.schedule).ok) ++invalid;
    }
    std::ostringstream d;
    d << "volume>lb=" << volume_breaks << "/30 variant_volume>lb=" << variant_breaks << "/30 lb>slots=" << slot_breaks << "/30 invalid=" << invalid
      << "/30 inexact_lb=" << inexact << fmt(" max_volume_over_lb=%.2f", worst_ratio);
    return {volume_breaks == 0 && slot_breaks == 0 && invalid == 0, d.str()};
}

struct Chain {
    std::vector<int> slots;  // per iteration, extensibility on
    int second_without = 0;  // iteration 2, extensibility off throughout
};

Chain run_chain(std::uint64_t seed, int iterations) {
    auto p = four_variant_params(seed);
    Chain c;
    auto inst = generate(p);
    PipelineOptions on;
    on.seed = seed;
    PipelineOptions off = on;
    off.extensibility = false;

    auto plain = run_pipeline(inst, off);
    auto next_params = p;
    next_params.seed = seed * 1000 + 1;
    auto plain_next = generate_incremental(next_params, inst, plain.schedule).instance;
    c.second_without = run_pipeline(plain_next, off).slots;

    for (int it = 1; it <= iterations; ++it) {
        auto r = run_pipeline(inst, on);
        c.slots.push_back(r.slots);
        if (it == iterations) break;
        auto q = p;
        q.seed = seed * 1000 + static_cast<std::uint64_t>(it);
        inst = generate_incremental(q, inst, r.schedule).instance;
    }
    return c;
}

Outcome savings() {
    double ratio_sum = 0;
    int at_lb = 0;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        auto inst = generate(four_variant_params(seed));
        auto multi = run_pipeline(inst).slots;
        auto common = run_pipeline(common_variant(inst)).slots;
        ratio_sum += static_cast<double>(multi) / common;
        if (multi == lower_bound(inst).value) ++at_lb;
    }
    double avg = ratio_sum / 30;
    return {avg >= 0.6 && avg <= 0.9 && at_lb >= 15,
            fmt("avg_multi_over_common=%.3f", avg) + " at_lb=" + std::to_string(at_lb) + "/30"};
}

Outcome incremental_trend() {
    int monotone = 0, first_largest = 0, ext_not_worse = 0;
    double sum_on = 0, sum_off = 0;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        auto c = run_chain(seed, 10);
        bool mono = true;
        int best = -1;
        for (std::size_t i = 1; i < c.slots.size(); ++i) {
            int inc = c.slots[i] - c.slots[i - 1];
            if (inc < 0) mono = false;
            if (i > 1) best = std::max(best, inc);
        }
        if (mono) ++monotone;
        if (c.slots[1] - c.slots[0] >= best) ++first_largest;
        if (c.slots[1] <= c.second_without) ++ext_not_worse;
        sum_on += c.slots[1];
        sum_off += c.second_without;
    }
    bool ok = monotone == 30 && first_largest >= 21 && ext_not_worse >= 21 && sum_on <= sum_off;
    std::ostringstream d;
    d << "non_decreasing=" << monotone << "/30 largest_step_1_2=" << first_largest
      << "/30 ext_le_plain_it2=" << ext_not_worse << "/30" << fmt(" avg_it2_on=%.2f", sum_on / 30)
      << fmt(" avg_it2_off=%.2f", sum_off / 30);
    return {ok, d.str()};
}

Outcome performance() {
    auto p = synth_params();
    auto inst = generate(p);
    auto start = Clock::now();
    auto r = run_pipeline(inst);
    double first = ms_since(start);
    double worst = 0;
    for (int it = 2; it <= 10; ++it) {
        auto q = p;
        q.seed = p.seed * 1000 + static_cast<std::uint64_t>(it);
        inst = generate_incremental(q, inst, r.schedule).instance;
        start = Clock::now();
        r = run_pipeline(inst);
        worst = std::max(worst, ms_since(start));
    }
    return {first < 5000 && worst < 1000,
            fmt("first_ms=%.1f", first) + fmt(" worst_later_ms=%.1f", worst) + " signals=" +
                std::to_string(inst.signals.size())};
}

Outcome sixteen_one_bit() {
    std::vector<fixtures::SignalRow> rows;
    for (int i = 0; i < 16; ++i) rows.push_back({"a" + std::to_string(i), "E", 4, 1, {1}});
    auto first = fixtures::make_instance(16, {"E"}, {"V"}, rows);
    auto future = contingency_from_json(read_json_file(kData / "examples" / "future_p1_c1.json"));
    auto grow = [&](const Multischedule& prev) {
        auto inst = first;
        for (int i = 0; i < 12; ++i) {
            inst.signals.push_back({"b" + std::to_string(i), 1, 1, "E", 0, 0});
            inst.variants.add_signal();
            inst.variants.set(inst.signals.size() - 1, 0);
        }
        inst.original = prev;
        return inst;
    };
    PipelineOptions off;
    off.extensibility = false;
    PipelineOptions on;
    on.future_table = future;
    int without = run_pipeline(grow(run_pipeline(first, off).schedule), off).slots;
    auto grown = grow(run_pipeline(first, on).schedule);
    auto r = run_pipeline(grown, on);
    bool valid = validate(grown, r.schedule).ok;
    return {without == 2 && r.slots == 1 && valid,
            "without=" + std::to_string(without) + " with=" + std::to_string(r.slots) +
                " valid=" + (valid ? "yes" : "no")};
}

Outcome generator_stats() {
    double entered = 0, mutable_total = 0, dropped = 0, in_base = 0, added = 0, ecu_in_base = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto p = four_variant_params(seed);
        auto prev = generate(p);
        Multischedule empty;
        empty.hyperperiod = hyperperiod(prev);
        p.seed = seed + 1000;
        auto r = generate_incremental(p, prev, empty);
        entered += r.stats.entered_mutation;
        mutable_total += r.stats.mutable_signals;
        dropped += r.stats.dropped;
        in_base += r.stats.in_base;
        added += r.stats.added;
        ecu_in_base += r.stats.ecu_in_base;
    }
    double e = 100 * entered / mutable_total, d = 100 * dropped / in_base, a = 100 * added / ecu_in_base;
    auto p = synth_params();
    bool same = to_json(generate(p)).dump(2) == to_json(generate(p)).dump(2);
    bool ok = std::abs(e - 30) <= 3 && std::abs(d - 35) <= 3 && std::abs(a - 65) <= 3 && same;
    return {ok, fmt("entry=%.1f%%", e) + fmt(" drop=%.1f%%", d) + fmt(" add=%.1f%%", a) +
                    " regeneration=" + (same ? "identical" : "differs")};
}

Outcome thresholds() {
    int synth = slots_threshold(load_params(kData / "params" / "synth.json").network);
    int w32 = slots_threshold(load_params(kData / "params" / "sae_w32.json").network);
    int w64 = slots_threshold(load_params(kData / "params" / "sae_w64.json").network);
    return {synth == 176 && w32 == 641 && w64 == 546,
            "synth=" + std::to_string(synth) + " sae_w32=" + std::to_string(w32) + " sae_w64=" + std::to_string(w64)};
}

}  // namespace

int main() {
    report(1, "worked example", example1);
    report(2, "mwis oracle", mwis_oracle);
    report(3, "coloring oracle", coloring_oracle);
    report(4, "bound sandwich", bound_sandwich);
    report(5, "multi-variant savings", savings);
    report(6, "incremental trend", incremental_trend);
    report(7, "performance", performance);
    report(8, "sixteen one-bit signals", sixteen_one_bit);
    report(9, "generator statistics", generator_stats);
    report(10, "slots threshold", thresholds);
    return failures == 0 ? 0 : 1;
}
