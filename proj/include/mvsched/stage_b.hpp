#pragma once

#include "mvsched/model.hpp"
#include "mvsched/mwis.hpp"
#include "mvsched/unit_schedule.hpp"

#include <optional>
#include <span>
#include <vector>

namespace mvsched {

/// Original assignment per signal index (nullopt for signals new in this iteration).
using OriginalPositions = std::vector<std::optional<Assignment>>;

OriginalPositions index_original(const Instance& instance);

struct ReadResult {
    UnitMultischedule unit;
    ConflictGraph conflicts;
    std::vector<int> new_signals;  ///< SL^N, in the order of `ordered`
};

/// Rebuilds the ECU's part of the original multischedule and records every
/// pair that now shares a variant while overlapping.
///
/// `ordered` holds the ECU's signals in signal-list order. Local slots are
/// created for the ECU's original global slots in ascending global order.
/// A signal whose original first cycle falls outside its current window is
/// treated as new. Conflict-graph weights are filled with the period rule.
ReadResult read_original(const OriginalPositions& original, std::span<const int> ordered, const SignalTable& table,
                         std::size_t ecu, int hyperperiod, int frame_bits);

/// Removes every conflict-graph node outside `keep` from the unit.
/// Returns the evicted keys in ascending order.
std::vector<int> repair(UnitMultischedule& unit, const ConflictGraph& conflicts, const std::vector<int>& keep,
                        const SignalTable& table);

/// Keeps the order of `ordered` and retains only keys present in `members`.
std::vector<int> merge_signal_lists(std::span<const int> ordered, std::span<const int> members);

/// First-fit placement: for each signal the first slot, then the first
/// cycle in [release, deadline], then the first offset where every
/// occurrence fits; otherwise a fresh slot at (release, offset 0).
void place_signals(UnitMultischedule& unit, std::span<const int> ordered, const SignalTable& table);

/// Same search restricted to one slot; stops and returns false at the first
/// signal that does not fit. Already placed keys stay placed.
bool place_signals_in_slot(UnitMultischedule& unit, std::span<const int> ordered, std::size_t slot,
                           const SignalTable& table);

}  // namespace mvsched
