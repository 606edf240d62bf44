#include "mvsched/pipeline.hpp"

#include "mvsched/ordering.hpp"
#include "mvsched/stage_b.hpp"
#include "mvsched/stage_c.hpp"
#include "mvsched/unit_schedule.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

namespace mvsched {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct EcuWork {
    std::vector<int> ordered;  // the ECU's signals in SL order
    std::optional<UnitMultischedule> unit;
    EcuOutcome outcome;
    bool mwis_exact = true;
};

void schedule_ecu(std::size_t e, EcuWork& work, const Instance& instance, const OriginalPositions& original,
                  SignalTable& table, const ContingencyTable& future, const PipelineOptions& options, int H) {
    const int W = instance.network.frame_payload_bits;
    auto read = read_original(original, work.ordered, table, e, H, W);
    auto mis = solve_mwis(read.conflicts, options.mwis);
    work.mwis_exact = mis.exact;
    auto evicted = repair(read.unit, read.conflicts, mis.selected, table);

    std::vector<int> pending_keys = read.new_signals;
    pending_keys.insert(pending_keys.end(), evicted.begin(), evicted.end());
    auto pending = merge_signal_lists(work.ordered, pending_keys);
    place_signals(read.unit, pending, table);

    if (options.extensibility) {
        for (std::size_t s = 0; s < read.unit.slot_count(); ++s) {
            std::uint64_t seed = splitmix(options.seed ^ splitmix((static_cast<std::uint64_t>(e) << 32) | s));
            if (optimize_slot(read.unit, s, pending, future, table, seed).adopted) ++work.outcome.optimized_slots;
        }
    }
    read.unit.drop_empty_slots();

    work.outcome.ecu = instance.ecus[e];
    work.outcome.slots = static_cast<int>(read.unit.slot_count());
    work.outcome.conflicts = static_cast<int>(read.conflicts.size());
    for (int k : evicted) work.outcome.evicted.push_back(instance.signals[static_cast<std::size_t>(k)].id);
    work.unit.emplace(std::move(read.unit));
}

}  // namespace

PipelineResult run_pipeline(const Instance& instance, const PipelineOptions& options) {
    auto start = std::chrono::steady_clock::now();
    instance.check();
    PipelineResult result;
    const int H = hyperperiod(instance);
    auto exclusions = build_exclusions(instance);
    auto signal_ecus = instance.signal_ecus();
    auto original = index_original(instance);

    ContingencyTable future;
    if (options.future_table) {
        future = *options.future_table;
    } else {
        future = derive_contingency_table(instance.signals);
    }
    future.normalize();

    std::vector<EcuWork> work(instance.ecus.size());
    for (std::size_t i : sort_signals(instance.signals)) {
        work[signal_ecus[i]].ordered.push_back(static_cast<int>(i));
    }
    std::vector<std::size_t> active;
    for (std::size_t e = 0; e < work.size(); ++e) {
        if (!work[e].ordered.empty()) active.push_back(e);
    }

    const SignalTable base_table(instance.signals, exclusions);
    unsigned threads = std::max(1U, std::min<unsigned>(options.threads, static_cast<unsigned>(active.size())));
    if (threads <= 1) {
        SignalTable table = base_table;
        for (std::size_t e : active) schedule_ecu(e, work[e], instance, original, table, future, options, H);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_lock;
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                SignalTable table = base_table;
                for (std::size_t k = next++; k < active.size(); k = next++) {
                    try {
                        schedule_ecu(active[k], work[active[k]], instance, original, table, future, options, H);
                    } catch (...) {
                        std::lock_guard lock(failure_lock);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }

    std::vector<UnitMultischedule> units;
    for (std::size_t e : active) {
        units.push_back(std::move(*work[e].unit));
        result.mwis_exact = result.mwis_exact && work[e].mwis_exact;
        result.ecus.push_back(std::move(work[e].outcome));
    }
    if (!result.mwis_exact) result.warnings.push_back("conflict graph above the exact size cap; greedy repair used");

    auto graph = build_slot_graph(units, exclusions, instance.variants.variant_count(), options.mwis);
    for (std::size_t v : graph.released) {
        result.released_fixations.push_back(instance.ecus[graph.nodes[v].ecu] + ":" +
                                            std::to_string(*graph.requested[v]));
    }
    if (!graph.fixation_mwis_exact) result.warnings.push_back("slot fixation conflicts resolved greedily");
    result.clique_bound = clique_lower_bound(graph);
    auto greedy = greedy_color(graph);
    result.greedy_slots = greedy.slots;
    auto coloring = greedy.slots > result.clique_bound
                        ? exact_color(graph, result.clique_bound, greedy, options.coloring_node_budget)
                        : greedy;
    result.coloring_exact = coloring.exact;
    if (!coloring.exact) result.warnings.push_back("slot coloring search budget exhausted; greedy coloring kept");

    result.schedule = assemble(units, graph, coloring, instance, H);
    result.slots = result.schedule.slot_count();
    if (options.threshold) {
        result.threshold = options.threshold;
    } else {
        try {
            result.threshold = slots_threshold(instance.network);
        } catch (const Error& e) {
            result.warnings.push_back(e.what());
        }
    }
    result.feasible = result.threshold && result.slots <= *result.threshold;
    result.time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace mvsched
