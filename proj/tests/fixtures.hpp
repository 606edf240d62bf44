#pragma once

#include "mvsched/model.hpp"
#include "mvsched/mwis.hpp"
#include "mvsched/stage_c.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace fixtures {

using namespace mvsched;

struct SignalRow {
    std::string id;
    std::string ecu;
    int period;
    int payload;
    std::vector<int> variants;  // 0/1 per variant
};

Instance make_instance(int frame_bits, const std::vector<std::string>& ecus, const std::vector<std::string>& variants,
                       const std::vector<SignalRow>& rows);

/// Three ECUs, ten signals, Variants I-III; the original covers Variants I-II.
Instance example1();
/// Same signals restricted to Variants I and II, without an original.
Instance example1_original_only();

/// One ECU with two slots, Variants I-IV; the original covers I-III.
Instance example2();

/// Five ECUs with one slot each, Variants I-III.
ExclusionMatrices example4_exclusions();
SlotGraph example4_graph();

std::size_t index_of(const Instance& inst, const std::string& id);
std::vector<int> keys_of(const Instance& inst, const std::vector<std::string>& ids);

/// Random conflict graph with period weights.
ConflictGraph random_conflict_graph(std::mt19937_64& rng, int nodes, double density);

/// Exhaustive maximum weight over all independent sets.
Rational brute_force_mwis_weight(const ConflictGraph& graph);

/// Random ECU/variant structure with optional original slot requests.
SlotGraph random_slot_graph(std::mt19937_64& rng, int max_nodes, bool with_fixations);

/// Smallest max color of a proper coloring that honours the fixations.
int brute_force_chromatic(const SlotGraph& graph);

bool proper(const SlotGraph& graph, const std::vector<int>& colors);

/// Instance-level suite used by the bound and pipeline properties.
Instance small_random_instance(std::uint64_t seed, int signals, int ecus, int variants, int frame_bits);

}  // namespace fixtures
