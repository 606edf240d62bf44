#pragma once

#include "mvsched/model.hpp"
#include "mvsched/mwis.hpp"
#include "mvsched/unit_schedule.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace mvsched {

struct SlotNode {
    std::size_t ecu = 0;
    std::size_t local_slot = 0;
    int occurrences = 0;
};

/// Slot graph: one node per (ECU, local slot). Two nodes are adjacent when
/// they belong to ECUs used together in some variant. Nodes are grouped by
/// ECU in input order, local slots ascending.
struct SlotGraph {
    std::vector<SlotNode> nodes;
    std::vector<std::vector<char>> adjacent;
    /// Global slot each node must keep; empty for free nodes.
    std::vector<std::optional<int>> fixed;
    /// Global slot requested before fixation conflicts were resolved.
    std::vector<std::optional<int>> requested;
    /// Nodes whose requested slot was dropped by conflict resolution.
    std::vector<std::size_t> released;
    /// Sum of ECU slot counts per variant.
    std::vector<int> variant_slot_counts;
    bool fixation_mwis_exact = true;

    std::size_t size() const { return nodes.size(); }
    bool adjacent_to(std::size_t a, std::size_t b) const { return adjacent[a][b] != 0; }
};

/// Builds the graph from per-ECU slot counts. `requested[i][l]` is the
/// global slot local slot l of ECU i held in the original, if any.
/// Requests that clash (adjacent nodes asking for the same slot) are
/// resolved by a maximum weighted independent set in which a node weighs
/// |nodes| + occ/(1 + max occ): the most fixations survive, and busier slots
/// win ties.
SlotGraph make_slot_graph(std::span<const std::size_t> ecus, std::span<const std::size_t> slot_counts,
                          const std::vector<std::vector<std::optional<int>>>& requested,
                          const std::vector<std::vector<int>>& occurrences, const ExclusionMatrices& exclusions,
                          std::size_t variant_count, const MwisOptions& mwis = {});

SlotGraph build_slot_graph(std::span<const UnitMultischedule> units, const ExclusionMatrices& exclusions,
                           std::size_t variant_count, const MwisOptions& mwis = {});

/// Largest per-variant clique, i.e. max over variants of the summed ECU slot counts.
int clique_lower_bound(const SlotGraph& graph);

struct Coloring {
    std::vector<int> colors;  ///< 1-based global slot per node
    int slots = 0;            ///< largest color used
    bool exact = true;        ///< false when the exact search hit its budget
    std::uint64_t search_nodes = 0;
};

/// Node order used by both colorings: ECUs in input order; inside an ECU
/// fixed nodes first, then local slot order.
std::vector<std::size_t> coloring_order(const SlotGraph& graph);

/// Each node takes the smallest slot not used by an already colored
/// neighbour and not fixed on any neighbour.
Coloring greedy_color(const SlotGraph& graph);

/// Smallest number of slots in [lower, upper], honouring fixations. Colors
/// are explored in ascending order, so the first coloring found for the
/// optimal count is the lexicographically smallest in coloring order.
/// Returns `fallback` (with exact=false) when `node_budget` search steps are
/// exhausted.
Coloring exact_color(const SlotGraph& graph, int lower, const Coloring& fallback, std::uint64_t node_budget);

/// Multischedule of the instance signals (dummies are ignored).
Multischedule assemble(std::span<const UnitMultischedule> units, const SlotGraph& graph, const Coloring& coloring,
                       const Instance& instance, int hyperperiod);

}  // namespace mvsched
