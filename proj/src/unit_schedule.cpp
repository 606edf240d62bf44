#include "mvsched/unit_schedule.hpp"

#include <algorithm>

namespace mvsched {

SignalTable::SignalTable(std::span<const Signal> signals, const ExclusionMatrices& exclusions)
    : exclusions_(&exclusions) {
    auto base = std::make_shared<std::vector<SignalShape>>();
    base->reserve(signals.size());
    for (const auto& s : signals) {
        base->push_back({s.period_cycles, s.payload_bits, s.release_cycle, s.deadline_cycle});
    }
    base_ = std::move(base);
}

const SignalShape& SignalTable::shape(int key) const {
    if (is_dummy(key)) return dummies_.at(static_cast<std::size_t>(key - base_count()));
    return (*base_)[static_cast<std::size_t>(key)];
}

OrderingKey SignalTable::ordering_key(int key) const {
    const auto& s = shape(key);
    return {s.payload, s.deadline - s.release, s.period};
}

int SignalTable::add_dummy(int period, int payload) {
    dummies_.push_back({period, payload, 0, period - 1});
    return base_count() + static_cast<int>(dummies_.size()) - 1;
}

UnitMultischedule::UnitMultischedule(std::size_t ecu, int hyperperiod, int frame_bits)
    : ecu_(ecu), hyperperiod_(hyperperiod), frame_bits_(frame_bits) {}

std::size_t UnitMultischedule::add_slot(std::optional<int> original_global_slot) {
    UnitSlot s;
    s.cycles.resize(static_cast<std::size_t>(hyperperiod_));
    s.original_global_slot = original_global_slot;
    slots_.push_back(std::move(s));
    return slots_.size() - 1;
}

void UnitMultischedule::place(int key, const SignalShape& shape, Placement at) {
    auto& slot = slots_.at(static_cast<std::size_t>(at.slot));
    for (int c = at.cycle; c < hyperperiod_; c += shape.period) {
        slot.cycles[static_cast<std::size_t>(c)].push_back({key, at.offset, shape.payload});
    }
    placements_[key] = at;
}

void UnitMultischedule::remove(int key, const SignalShape& shape) {
    auto it = placements_.find(key);
    if (it == placements_.end()) return;
    auto at = it->second;
    auto& slot = slots_.at(static_cast<std::size_t>(at.slot));
    for (int c = at.cycle; c < hyperperiod_; c += shape.period) {
        auto& frame = slot.cycles[static_cast<std::size_t>(c)];
        frame.erase(std::remove_if(frame.begin(), frame.end(), [&](const FrameEntry& e) { return e.key == key; }),
                    frame.end());
    }
    placements_.erase(it);
}

std::optional<Placement> UnitMultischedule::placement(int key) const {
    auto it = placements_.find(key);
    if (it == placements_.end()) return std::nullopt;
    return it->second;
}

std::vector<int> UnitMultischedule::exclusive_overlaps(int key, const SignalShape& shape, Placement at,
                                                       const SignalTable& table) const {
    std::vector<int> out;
    const auto& slot = slots_.at(static_cast<std::size_t>(at.slot));
    int lo = at.offset;
    int hi = at.offset + shape.payload;
    for (int c = at.cycle; c < hyperperiod_; c += shape.period) {
        for (const auto& e : slot.cycles[static_cast<std::size_t>(c)]) {
            if (e.key == key) continue;
            if (e.offset < hi && lo < e.offset + e.length && table.exclusive(e.key, key)) {
                out.push_back(e.key);
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::optional<Placement> UnitMultischedule::find_in_slot(int key, const SignalShape& shape, std::size_t slot_index,
                                                         const SignalTable& table) const {
    thread_local std::vector<std::pair<int, int>> blocked;
    const auto& slot = slots_.at(slot_index);
    int last = std::min(shape.deadline, hyperperiod_ - 1);
    for (int y = shape.release; y <= last; ++y) {
        blocked.clear();
        for (int c = y; c < hyperperiod_; c += shape.period) {
            for (const auto& e : slot.cycles[static_cast<std::size_t>(c)]) {
                if (table.exclusive(e.key, key)) blocked.emplace_back(e.offset, e.offset + e.length);
            }
        }
        std::sort(blocked.begin(), blocked.end());
        int pos = 0;
        bool found = false;
        for (const auto& [from, to] : blocked) {
            if (from - pos >= shape.payload) {
                found = true;
                break;
            }
            pos = std::max(pos, to);
        }
        if (found || frame_bits_ - pos >= shape.payload) {
            return Placement{y, static_cast<int>(slot_index), pos};
        }
    }
    return std::nullopt;
}

std::optional<Placement> UnitMultischedule::find_position(int key, const SignalShape& shape,
                                                          const SignalTable& table) const {
    for (std::size_t s = 0; s < slots_.size(); ++s) {
        if (auto p = find_in_slot(key, shape, s, table)) return p;
    }
    return std::nullopt;
}

std::vector<int> UnitMultischedule::signals_in_slot(std::size_t slot) const {
    std::vector<int> out;
    for (const auto& [key, at] : placements_) {
        if (at.slot == static_cast<int>(slot)) out.push_back(key);
    }
    return out;
}

int UnitMultischedule::occupied_bits(std::size_t slot_index) const {
    std::vector<std::pair<int, int>> spans;
    int total = 0;
    for (const auto& frame : slots_.at(slot_index).cycles) {
        spans.clear();
        for (const auto& e : frame) spans.emplace_back(e.offset, e.offset + e.length);
        std::sort(spans.begin(), spans.end());
        int covered_to = 0;
        for (const auto& [from, to] : spans) {
            int start = std::max(from, covered_to);
            if (to > start) total += to - start;
            covered_to = std::max(covered_to, to);
        }
    }
    return total;
}

int UnitMultischedule::occurrence_count(std::size_t slot_index) const {
    int n = 0;
    for (const auto& frame : slots_.at(slot_index).cycles) n += static_cast<int>(frame.size());
    return n;
}

void UnitMultischedule::drop_empty_slots() {
    std::vector<int> remap(slots_.size(), -1);
    std::vector<UnitSlot> kept;
    for (std::size_t s = 0; s < slots_.size(); ++s) {
        bool empty = std::all_of(slots_[s].cycles.begin(), slots_[s].cycles.end(),
                                 [](const auto& f) { return f.empty(); });
        if (!empty) {
            remap[s] = static_cast<int>(kept.size());
            kept.push_back(std::move(slots_[s]));
        }
    }
    slots_ = std::move(kept);
    for (auto& [key, at] : placements_) at.slot = remap[static_cast<std::size_t>(at.slot)];
}

void UnitMultischedule::restore_slot(std::size_t slot_index, const UnitSlot& content,
                                     const std::map<int, Placement>& placements) {
    for (auto it = placements_.begin(); it != placements_.end();) {
        if (it->second.slot == static_cast<int>(slot_index)) {
            it = placements_.erase(it);
        } else {
            ++it;
        }
    }
    slots_.at(slot_index) = content;
    for (const auto& [key, at] : placements) {
        if (at.slot == static_cast<int>(slot_index)) placements_[key] = at;
    }
}

}  // namespace mvsched
