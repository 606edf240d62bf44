#pragma once

#include "mvsched/model.hpp"
#include "mvsched/unit_schedule.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace mvsched {

struct ContingencyCell {
    int period_cycles = 1;
    int payload_bits = 1;
    double probability = 0.0;
};

enum class TableSource { DerivedFromInstance, DesignerSupplied };

/// Joint distribution of (period, payload) expected for future signals.
struct ContingencyTable {
    std::vector<ContingencyCell> cells;
    TableSource source = TableSource::DerivedFromInstance;

    /// Drops empty cells, merges duplicates and rescales to a sum of 1.
    void normalize();
};

/// Relative frequency of every (period, payload) pair among `signals`.
ContingencyTable derive_contingency_table(std::span<const Signal> signals);

struct DummySignal {
    int period_cycles = 1;
    int payload_bits = 1;

    friend bool operator==(const DummySignal&, const DummySignal&) = default;
};

/// Occurrence volume of one dummy over the hyperperiod. Periods longer than
/// the hyperperiod are clamped to it.
int dummy_volume(const DummySignal& d, int hyperperiod);

/// Dummy set D with total volume <= budget and, when any cell fits at all,
/// total > budget - (largest cell volume).
///
/// Counts follow the table: N = floor(budget / E[volume]) dummies are split
/// by probability (rounded down); the remainder is filled largest volume
/// first. Equal-volume cells are ranked by a generator seeded with `seed`.
std::vector<DummySignal> generate_dummies(const ContingencyTable& table, int budget_bits, int hyperperiod,
                                          std::uint64_t seed);

/// W*H minus the bits covered in any cycle of the slot.
int free_bits(const UnitMultischedule& unit, std::size_t slot);

/// floor(W*H - 1.05*(W*H - free)), the next dummy budget after a failed attempt.
int shrink_budget(int frame_bits, int hyperperiod, int free);

struct SlotOptimization {
    bool adopted = false;
    int attempts = 0;
    int budget = 0;  ///< dummy budget of the adopted (or last) attempt
};

/// Re-packs the signals of this iteration inside one slot together with
/// dummies that stand in for future signals. A layout is adopted only if all
/// signals and dummies fit the slot; the dummies are then removed. Otherwise
/// the budget shrinks and the attempt repeats; when it drops to zero the
/// slot is restored unchanged. Signals not listed in `movable` never move.
///
/// `movable` is in signal-list order; only entries placed in this slot are used.
SlotOptimization optimize_slot(UnitMultischedule& unit, std::size_t slot, std::span<const int> movable,
                               const ContingencyTable& table, SignalTable& signals, std::uint64_t seed);

}  // namespace mvsched
