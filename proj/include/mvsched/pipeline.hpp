#pragma once

#include "mvsched/extensibility.hpp"
#include "mvsched/model.hpp"
#include "mvsched/mwis.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mvsched {

struct PipelineOptions {
    bool extensibility = true;
    /// Designer-supplied distribution of future signals; derived from the instance otherwise.
    std::optional<ContingencyTable> future_table;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    MwisOptions mwis;
    std::uint64_t coloring_node_budget = 2'000'000;
    std::optional<int> threshold;
};

struct EcuOutcome {
    std::string ecu;
    int slots = 0;
    int conflicts = 0;  ///< conflict-graph nodes
    std::vector<std::string> evicted;
    int optimized_slots = 0;
};

struct PipelineResult {
    Multischedule schedule;
    int slots = 0;
    std::optional<int> threshold;
    bool feasible = false;
    int clique_bound = 0;
    int greedy_slots = 0;
    bool coloring_exact = true;
    bool mwis_exact = true;
    std::vector<EcuOutcome> ecus;
    std::vector<std::string> released_fixations;  ///< "ECU:slot" whose original slot id was given up
    std::vector<std::string> warnings;
    double time_ms = 0;
};

/// Sort, per-ECU stage B (read original, repair, place, extensibility),
/// slot coloring and assembly. The result does not depend on `threads`.
PipelineResult run_pipeline(const Instance& instance, const PipelineOptions& options = {});

}  // namespace mvsched
