#pragma once

#include "mvsched/model.hpp"
#include "mvsched/ordering.hpp"

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace mvsched {

struct SignalShape {
    int period = 1;
    int payload = 1;
    int release = 0;
    int deadline = 0;
};

/// Scheduling view over the instance signals plus the dummy signals created
/// by extensibility optimization. Keys below base_count() are instance signal
/// indices; keys above are dummies, which may not overlap anything.
///
/// Copies share the instance part, so each worker can own one cheaply.
class SignalTable {
public:
    SignalTable(std::span<const Signal> signals, const ExclusionMatrices& exclusions);

    int base_count() const { return static_cast<int>(base_->size()); }
    bool is_dummy(int key) const { return key >= base_count(); }
    const SignalShape& shape(int key) const;
    OrderingKey ordering_key(int key) const;

    /// sem == 1: the two signals share a variant and must not overlap.
    bool exclusive(int a, int b) const {
        if (is_dummy(a) || is_dummy(b)) return true;
        return exclusions_->sem(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    }

    /// Window spans the whole period.
    int add_dummy(int period, int payload);
    void clear_dummies() { dummies_.clear(); }
    std::size_t dummy_count() const { return dummies_.size(); }

private:
    std::shared_ptr<const std::vector<SignalShape>> base_;
    const ExclusionMatrices* exclusions_;
    std::vector<SignalShape> dummies_;
};

struct FrameEntry {
    int key = 0;
    int offset = 0;
    int length = 0;
};

struct UnitSlot {
    /// Frame contents per cycle of the hyperperiod.
    std::vector<std::vector<FrameEntry>> cycles;
    /// Global slot id this slot had in the original multischedule.
    std::optional<int> original_global_slot;
};

/// Position in a unit multischedule; `slot` is the 0-based local slot.
struct Placement {
    int cycle = 0;
    int slot = 0;
    int offset = 0;

    friend bool operator==(const Placement&, const Placement&) = default;
};

/// Partial multischedule of one ECU: local slots only, no global slot ids.
class UnitMultischedule {
public:
    UnitMultischedule(std::size_t ecu, int hyperperiod, int frame_bits);

    std::size_t ecu() const { return ecu_; }
    int hyperperiod() const { return hyperperiod_; }
    int frame_bits() const { return frame_bits_; }

    std::size_t slot_count() const { return slots_.size(); }
    const UnitSlot& slot(std::size_t i) const { return slots_.at(i); }
    std::size_t add_slot(std::optional<int> original_global_slot = std::nullopt);

    /// Writes every occurrence y, y+p, ... of the signal. No feasibility check.
    void place(int key, const SignalShape& shape, Placement at);
    void remove(int key, const SignalShape& shape);

    const std::map<int, Placement>& placements() const { return placements_; }
    std::optional<Placement> placement(int key) const;

    /// Keys of already placed signals that overlap `key` at `at` while sharing a variant.
    std::vector<int> exclusive_overlaps(int key, const SignalShape& shape, Placement at,
                                        const SignalTable& table) const;

    /// First feasible (cycle asc, offset asc) position inside one slot.
    std::optional<Placement> find_in_slot(int key, const SignalShape& shape, std::size_t slot,
                                          const SignalTable& table) const;
    /// First feasible position over all slots in slot order.
    std::optional<Placement> find_position(int key, const SignalShape& shape, const SignalTable& table) const;

    std::vector<int> signals_in_slot(std::size_t slot) const;
    /// Bits of the slot covered by at least one occurrence, summed over all cycles.
    int occupied_bits(std::size_t slot) const;
    int occurrence_count(std::size_t slot) const;

    /// Removes slots that hold nothing and renumbers the remaining ones.
    void drop_empty_slots();

    /// Replaces one slot's content (used to roll back an optimization attempt).
    void restore_slot(std::size_t slot, const UnitSlot& content, const std::map<int, Placement>& placements);

private:
    std::size_t ecu_;
    int hyperperiod_;
    int frame_bits_;
    std::vector<UnitSlot> slots_;
    std::map<int, Placement> placements_;
};

}  // namespace mvsched
