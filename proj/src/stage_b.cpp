#include "mvsched/stage_b.hpp"

#include <algorithm>
#include <unordered_set>

namespace mvsched {

OriginalPositions index_original(const Instance& instance) {
    OriginalPositions out(instance.signals.size());
    if (!instance.original) return out;
    auto lookup = instance.signal_lookup();
    for (const auto& [id, a] : instance.original->assignments) {
        auto it = lookup.find(id);
        if (it == lookup.end()) throw Error("original schedule references unknown signal " + id);
        out[it->second] = a;
    }
    return out;
}

ReadResult read_original(const OriginalPositions& original, std::span<const int> ordered, const SignalTable& table,
                         std::size_t ecu, int hyperperiod, int frame_bits) {
    ReadResult result{UnitMultischedule(ecu, hyperperiod, frame_bits), {}, {}};

    std::vector<int> global_slots;
    for (int key : ordered) {
        const auto& a = original.at(static_cast<std::size_t>(key));
        if (!a) continue;
        const auto& shape = table.shape(key);
        if (a->slot < 1 || a->offset < 0 || a->cycle < 0 || a->offset + shape.payload > frame_bits) {
            throw Error("corrupt original schedule: signal at cycle " + std::to_string(a->cycle) + ", slot " +
                        std::to_string(a->slot) + ", offset " + std::to_string(a->offset) +
                        " does not fit the frame");
        }
        global_slots.push_back(a->slot);
    }
    std::sort(global_slots.begin(), global_slots.end());
    global_slots.erase(std::unique(global_slots.begin(), global_slots.end()), global_slots.end());
    for (int g : global_slots) result.unit.add_slot(g);

    for (int key : ordered) {
        const auto& a = original.at(static_cast<std::size_t>(key));
        const auto& shape = table.shape(key);
        if (!a) {
            result.new_signals.push_back(key);
            continue;
        }
        int cycle = a->cycle % shape.period;
        if (cycle < shape.release || cycle > shape.deadline) {
            result.new_signals.push_back(key);
            continue;
        }
        auto local = std::lower_bound(global_slots.begin(), global_slots.end(), a->slot) - global_slots.begin();
        Placement at{cycle, static_cast<int>(local), a->offset};
        for (int other : result.unit.exclusive_overlaps(key, shape, at, table)) {
            result.conflicts.add_edge(key, other);
        }
        result.unit.place(key, shape, at);
    }
    assign_period_weights(result.conflicts, [&](int key) { return table.shape(key).period; });
    return result;
}

std::vector<int> repair(UnitMultischedule& unit, const ConflictGraph& conflicts, const std::vector<int>& keep,
                        const SignalTable& table) {
    std::vector<int> evicted;
    for (int key : conflicts.nodes) {
        if (std::binary_search(keep.begin(), keep.end(), key)) continue;
        unit.remove(key, table.shape(key));
        evicted.push_back(key);
    }
    return evicted;
}

std::vector<int> merge_signal_lists(std::span<const int> ordered, std::span<const int> members) {
    std::unordered_set<int> wanted(members.begin(), members.end());
    std::vector<int> out;
    out.reserve(members.size());
    for (int key : ordered) {
        if (wanted.contains(key)) out.push_back(key);
    }
    return out;
}

void place_signals(UnitMultischedule& unit, std::span<const int> ordered, const SignalTable& table) {
    for (int key : ordered) {
        const auto& shape = table.shape(key);
        if (shape.payload > unit.frame_bits()) {
            throw Error("signal payload of " + std::to_string(shape.payload) + " bits exceeds the frame");
        }
        if (auto at = unit.find_position(key, shape, table)) {
            unit.place(key, shape, *at);
            continue;
        }
        auto slot = unit.add_slot();
        unit.place(key, shape, Placement{shape.release, static_cast<int>(slot), 0});
    }
}

bool place_signals_in_slot(UnitMultischedule& unit, std::span<const int> ordered, std::size_t slot,
                           const SignalTable& table) {
    for (int key : ordered) {
        const auto& shape = table.shape(key);
        auto at = unit.find_in_slot(key, shape, slot, table);
        if (!at) return false;
        unit.place(key, shape, *at);
    }
    return true;
}

}  // namespace mvsched
