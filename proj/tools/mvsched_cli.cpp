// mvsched: multi-variant static-segment schedule synthesis from the command line.

#include "mvsched/analysis.hpp"
#include "mvsched/benchgen.hpp"
#include "mvsched/explore.hpp"
#include "mvsched/io.hpp"
#include "mvsched/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

namespace {

using namespace mvsched;

void print_report(const ValidationReport& r) {
    std::printf("%-16s %s\n", "status", r.ok ? "ok" : "violated");
    std::printf("%-16s %d\n", "slots", r.slots);
    if (r.threshold) {
        std::printf("%-16s %d\n", "threshold", *r.threshold);
    } else {
        std::printf("%-16s -\n", "threshold");
    }
    std::printf("%-16s %d\n", "changed_signals", r.changed_signals);
    std::printf("%-16s %d\n", "changed_slots", r.changed_slots);
    for (const auto& v : r.violations) std::printf("  %-14s %s\n", to_string(v.kind).c_str(), v.detail.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-variant time-triggered schedule synthesis"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t seed = 1;
    bool no_ext = false;
    int threshold = 0;
    std::string future_file;
    unsigned threads = 1;
    app.add_option("--seed", seed, "Seed for dummy sampling and generation");
    app.add_flag("--no-extensibility", no_ext, "Skip the extensibility optimization");
    app.add_option("--threshold", threshold, "Slots threshold overriding the network model");
    app.add_option("--future-distribution", future_file, "Contingency table of future signals (JSON)");
    app.add_option("--threads", threads, "Worker threads for per-ECU scheduling");

    std::string instance_file, out_file, report_file, schedule_file;

    auto* schedule = app.add_subcommand("schedule", "Synthesize a multischedule");
    schedule->add_option("--instance", instance_file)->required()->check(CLI::ExistingFile);
    schedule->add_option("--out", out_file, "Multischedule output (JSON)");
    schedule->add_option("--report", report_file, "Validation and run report (JSON)");

    auto* validate_cmd = app.add_subcommand("validate", "Check a multischedule against an instance");
    validate_cmd->add_option("--instance", instance_file)->required()->check(CLI::ExistingFile);
    validate_cmd->add_option("--schedule", schedule_file)->required()->check(CLI::ExistingFile);
    validate_cmd->add_option("--report", report_file, "Report output (JSON)");

    auto* lb_cmd = app.add_subcommand("lower-bound", "Slot lower bound and message volume");
    lb_cmd->add_option("--instance", instance_file)->required()->check(CLI::ExistingFile);

    std::string dat_file;
    int w_step = 16;
    int w_max = 2048;
    auto* explore_cmd = app.add_subcommand("explore", "Scan frame length and cycle duration");
    explore_cmd->add_option("--instance", instance_file)->required()->check(CLI::ExistingFile);
    explore_cmd->add_option("--out", out_file, "CSV output")->required();
    explore_cmd->add_option("--dat", dat_file, "Gnuplot data output");
    explore_cmd->add_option("--w-step", w_step)->check(CLI::PositiveNumber);
    explore_cmd->add_option("--w-max", w_max)->check(CLI::PositiveNumber);

    std::string params_file, previous_file, stats_file;
    bool incremental = false;
    auto* gen_cmd = app.add_subcommand("generate", "Generate a benchmark instance");
    gen_cmd->add_option("--params", params_file, "Generator parameters (JSON)")->required()->check(CLI::ExistingFile);
    gen_cmd->add_option("--out", out_file, "Instance output (JSON)")->required();
    gen_cmd->add_flag("--incremental", incremental, "Derive the next iteration of --previous");
    gen_cmd->add_option("--previous", previous_file)->check(CLI::ExistingFile);
    gen_cmd->add_option("--schedule", schedule_file, "Schedule of --previous")->check(CLI::ExistingFile);
    gen_cmd->add_option("--stats", stats_file, "Mutation statistics output (JSON)");

    CLI11_PARSE(app, argc, argv);

    try {
        PipelineOptions opts;
        opts.extensibility = !no_ext;
        opts.seed = seed;
        opts.threads = threads;
        if (!future_file.empty()) opts.future_table = contingency_from_json(read_json_file(future_file));

        auto load = [&] {
            Instance inst = load_instance(instance_file);
            if (threshold > 0) inst.network.slots_threshold_override = threshold;
            return inst;
        };

        if (*schedule) {
            Instance inst = load();
            auto result = run_pipeline(inst, opts);
            auto report = validate(inst, result.schedule);
            if (!out_file.empty()) write_json_file(out_file, to_json(result.schedule, seed));
            if (!report_file.empty()) {
                Json j = to_json(result);
                j["validation"] = to_json(report);
                write_json_file(report_file, j);
            }
            for (const auto& w : result.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
            for (const auto& v : report.violations) {
                if (v.kind != ViolationKind::Threshold) {
                    std::fprintf(stderr, "violation: %s %s\n", to_string(v.kind).c_str(), v.detail.c_str());
                }
            }
            std::printf("slots=%d threshold=%s changed=%d time_ms=%.1f\n", result.slots,
                        result.threshold ? std::to_string(*result.threshold).c_str() : "-", report.changed_signals,
                        result.time_ms);
            return result.feasible ? 0 : 2;
        }
        if (*validate_cmd) {
            Instance inst = load();
            auto report = validate(inst, load_multischedule(schedule_file));
            print_report(report);
            if (!report_file.empty()) write_json_file(report_file, to_json(report));
            return report.ok ? 0 : 2;
        }
        if (*lb_cmd) {
            Instance inst = load();
            auto lb = lower_bound(inst);
            auto vol = message_volume(inst);
            auto vvol = variant_message_volume(inst);
            std::printf("lower_bound=%d%s clique=%d message_volume=%.3f variant_volume=%.3f\n", lb.value,
                        lb.exact ? "" : " (search budget exhausted)", lb.clique, vol.to_double(), vvol.to_double());
            return 0;
        }
        if (*explore_cmd) {
            Instance inst = load();
            ExploreOptions eo;
            eo.pipeline = opts;
            eo.w_step = w_step;
            eo.w_max = w_max;
            auto rows = explore(inst, eo);
            std::ofstream csv(out_file);
            if (!csv) throw Error("cannot write " + out_file);
            write_csv(csv, rows);
            if (!dat_file.empty()) {
                std::ofstream dat(dat_file);
                if (!dat) throw Error("cannot write " + dat_file);
                write_dat(dat, rows);
            }
            std::printf("rows=%zu\n", rows.size());
            return 0;
        }
        if (*gen_cmd) {
            GeneratorParams params = load_params(params_file);
            if (app.count("--seed") > 0) params.seed = seed;
            if (incremental) {
                if (previous_file.empty() || schedule_file.empty()) {
                    throw Error("--incremental needs --previous and --schedule");
                }
                auto res = generate_incremental(params, load_instance(previous_file), load_multischedule(schedule_file));
                write_json_file(out_file, to_json(res.instance));
                if (!stats_file.empty()) write_json_file(stats_file, to_json(res.stats));
                std::printf("signals=%zu variants=%zu\n", res.instance.signals.size(),
                            res.instance.variants.variant_count());
            } else {
                auto inst = generate(params);
                write_json_file(out_file, to_json(inst));
                std::printf("signals=%zu variants=%zu\n", inst.signals.size(), inst.variants.variant_count());
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
