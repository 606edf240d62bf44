#pragma once

#include "mvsched/model.hpp"

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace mvsched {

/// Weighted choice over integer values (periods in cycles, payloads in bits).
struct DiscreteDistribution {
    std::vector<std::pair<int, double>> weights;

    int sample(std::mt19937_64& rng) const;
    bool empty() const { return weights.empty(); }
};

/// Percentages used when a previous signal is copied into the new variant.
struct MutationRates {
    double entry = 30.0;           ///< chance to reach the mutation stage at all
    double drop = 35.0;            ///< in the base variant: left out of the new one
    double add = 65.0;             ///< absent, ECU present: added
    double add_absent = 1.0 / 3.0; ///< absent together with its ECU: added
};

struct IncrementalParams {
    int new_signal_count = 0;
    int new_ecu_count = 0;
    double new_ecu_share = 70.0;  ///< percent of new signals sent by new ECUs
    MutationRates mutation;
};

struct GeneratorParams {
    int signal_count = 100;
    int variant_count = 4;
    int ecu_count = 10;
    /// Specific / shared / common signal shares in percent.
    double alpha = 100.0 / 3.0;
    double beta = 100.0 / 3.0;
    double gamma = 100.0 / 3.0;
    /// Specific and common ECU shares in percent; the rest are shared ECUs.
    double ecu_alpha = 0.0;
    double ecu_gamma = 50.0;
    DiscreteDistribution period_distribution;   ///< cycles
    DiscreteDistribution payload_distribution;  ///< bits
    double release_fraction = 0.0;   ///< percent of signals with a release date
    double deadline_fraction = 0.0;  ///< percent of signals with a deadline
    NetworkConfig network;
    std::uint64_t seed = 1;
    IncrementalParams incremental;

    void check() const;
};

struct GenerationStats {
    int with_release = 0;
    int with_deadline = 0;
    int specific = 0;
    int shared = 0;
    int common = 0;
    int repaired = 0;  ///< signals that fell out of every variant and were reassigned
};

struct GenerationResult {
    Instance instance;
    GenerationStats stats;
};

GenerationResult generate_with_stats(const GeneratorParams& params);
Instance generate(const GeneratorParams& params);

struct IncrementalStats {
    std::size_t base_variant = 0;
    int mutable_signals = 0;
    int entered_mutation = 0;
    int in_base = 0;           ///< entered, present in the base variant
    int dropped = 0;
    int ecu_in_base = 0;       ///< entered, absent, ECU present
    int added = 0;
    int ecu_absent = 0;        ///< entered, signal and ECU absent
    int added_absent = 0;
    int new_signals_on_new_ecus = 0;
    GenerationStats generation;
};

struct IncrementalResult {
    Instance instance;
    IncrementalStats stats;
};

/// Next iteration: keeps every signal, ECU and variant, appends new signals
/// and ECUs, and adds one variant derived from a random existing one.
/// `previous_schedule` becomes the original schedule of the result.
IncrementalResult generate_incremental(const GeneratorParams& params, const Instance& previous,
                                       const Multischedule& previous_schedule);

}  // namespace mvsched
