#include "mvsched/analysis.hpp"

#include "mvsched/stage_c.hpp"

#include <algorithm>
#include <set>

namespace mvsched {

std::string to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::Overlap: return "overlap";
        case ViolationKind::SlotOwnership: return "slot-ownership";
        case ViolationKind::Periodicity: return "periodicity";
        case ViolationKind::Window: return "window";
        case ViolationKind::Sharing: return "sharing";
        case ViolationKind::Payload: return "payload";
        case ViolationKind::Threshold: return "threshold";
    }
    return "unknown";
}

ValidationReport validate(const Instance& instance, const Multischedule& schedule) {
    ValidationReport report;
    auto add = [&](ViolationKind k, std::string detail) { report.violations.push_back({k, std::move(detail)}); };

    auto lookup = instance.signal_lookup();
    auto ecu_index = instance.signal_ecus();
    auto ex = build_exclusions(instance);
    for (const auto& [id, a] : schedule.assignments) {
        if (!lookup.contains(id)) throw Error("schedule references unknown signal " + id);
    }
    std::vector<const Assignment*> at(instance.signals.size(), nullptr);
    for (std::size_t i = 0; i < instance.signals.size(); ++i) {
        auto it = schedule.assignments.find(instance.signals[i].id);
        if (it == schedule.assignments.end()) throw Error("schedule has no position for signal " + instance.signals[i].id);
        at[i] = &it->second;
    }

    const int W = instance.network.frame_payload_bits;
    const int H = schedule.hyperperiod;
    if (!instance.signals.empty() && H != hyperperiod(instance)) {
        add(ViolationKind::Periodicity, "hyperperiod " + std::to_string(H) + " differs from " +
                                            std::to_string(hyperperiod(instance)));
    }

    std::map<std::pair<int, int>, std::vector<std::size_t>> frame;
    for (std::size_t i = 0; i < instance.signals.size(); ++i) {
        const Signal& s = instance.signals[i];
        const Assignment& a = *at[i];
        if (H % s.period_cycles != 0 || a.cycle < 0 || a.cycle >= s.period_cycles) {
            add(ViolationKind::Periodicity, s.id + ": first cycle " + std::to_string(a.cycle) +
                                                " is not inside period " + std::to_string(s.period_cycles));
        }
        if (a.cycle < s.release_cycle || a.cycle > s.deadline_cycle) {
            add(ViolationKind::Window, s.id + ": cycle " + std::to_string(a.cycle) + " outside [" +
                                           std::to_string(s.release_cycle) + ", " + std::to_string(s.deadline_cycle) + "]");
        }
        if (a.slot < 1 || a.offset < 0 || a.offset + s.payload_bits > W) {
            add(ViolationKind::Payload, s.id + ": slot " + std::to_string(a.slot) + " bits [" +
                                            std::to_string(a.offset) + ", " +
                                            std::to_string(a.offset + s.payload_bits) + ") outside the frame");
            continue;
        }
        for (int c = std::max(a.cycle, 0); c < H; c += s.period_cycles) frame[{c, a.slot}].push_back(i);
    }

    // Two signals of one variant may never share a bit. sem is exactly
    // "used together in some variant", so one pass covers every native schedule.
    std::set<std::pair<std::size_t, std::size_t>> clashes;
    for (auto& [key, list] : frame) {
        std::sort(list.begin(), list.end(), [&](std::size_t x, std::size_t y) { return at[x]->offset < at[y]->offset; });
        for (std::size_t u = 0; u < list.size(); ++u) {
            std::size_t i = list[u];
            int end = at[i]->offset + instance.signals[i].payload_bits;
            for (std::size_t v = u + 1; v < list.size() && at[list[v]]->offset < end; ++v) {
                std::size_t j = list[v];
                if (ex.sem(i, j)) clashes.emplace(std::min(i, j), std::max(i, j));
            }
        }
    }
    for (const auto& [i, j] : clashes) {
        add(ViolationKind::Overlap, instance.signals[i].id + " and " + instance.signals[j].id +
                                        " share bits in a common variant");
    }

    std::map<int, std::set<std::size_t>> slot_ecus;
    for (std::size_t i = 0; i < instance.signals.size(); ++i) slot_ecus[at[i]->slot].insert(ecu_index[i]);
    for (const auto& [slot, ecus] : slot_ecus) {
        for (auto a = ecus.begin(); a != ecus.end(); ++a) {
            for (auto b = std::next(a); b != ecus.end(); ++b) {
                if (ex.eem(*a, *b)) {
                    add(ViolationKind::SlotOwnership, "slot " + std::to_string(slot) + " is sent by " +
                                                          instance.ecus[*a] + " and " + instance.ecus[*b] +
                                                          " in a common variant");
                }
            }
        }
        auto owners = schedule.slot_owners.find(slot);
        for (std::size_t e : ecus) {
            if (owners == schedule.slot_owners.end() || !owners->second.contains(instance.ecus[e])) {
                add(ViolationKind::Sharing, "slot " + std::to_string(slot) + " does not list sender " +
                                                instance.ecus[e]);
            }
        }
    }

    report.slots = schedule.slot_count();
    try {
        report.threshold = slots_threshold(instance.network);
    } catch (const Error& e) {
        add(ViolationKind::Threshold, e.what());
    }
    if (report.threshold && report.slots > *report.threshold) {
        add(ViolationKind::Threshold, std::to_string(report.slots) + " slots exceed the threshold of " +
                                          std::to_string(*report.threshold));
    }

    if (instance.original) {
        std::map<std::size_t, std::set<int>> before, after;
        for (const auto& [id, old] : instance.original->assignments) {
            auto it = lookup.find(id);
            if (it == lookup.end()) continue;
            std::size_t i = it->second;
            const Signal& s = instance.signals[i];
            Assignment norm{old.cycle % s.period_cycles, old.slot, old.offset};
            if (!(norm == *at[i])) report.changed.push_back(id);
            before[ecu_index[i]].insert(old.slot);
        }
        for (std::size_t i = 0; i < instance.signals.size(); ++i) after[ecu_index[i]].insert(at[i]->slot);
        for (const auto& [e, slots] : before) {
            for (int s : slots) {
                if (!after[e].contains(s)) ++report.changed_slots;
            }
        }
        std::sort(report.changed.begin(), report.changed.end());
        report.changed_signals = static_cast<int>(report.changed.size());
    }
    report.ok = report.violations.empty();
    return report;
}

std::vector<int> ecu_slot_demand(const Instance& instance) {
    const int H = hyperperiod(instance);
    const long long capacity = static_cast<long long>(instance.network.frame_payload_bits) * H;
    auto ecu_index = instance.signal_ecus();
    std::size_t nv = instance.variants.variant_count();
    std::vector<std::vector<long long>> volume(instance.ecus.size(), std::vector<long long>(nv, 0));
    for (std::size_t i = 0; i < instance.signals.size(); ++i) {
        const Signal& s = instance.signals[i];
        long long bits = static_cast<long long>(s.payload_bits) * (H / s.period_cycles);
        for (std::size_t v = 0; v < nv; ++v) {
            if (instance.variants.contains(i, v)) volume[ecu_index[i]][v] += bits;
        }
    }
    std::vector<int> demand(instance.ecus.size(), 0);
    for (std::size_t e = 0; e < demand.size(); ++e) {
        for (long long vol : volume[e]) {
            demand[e] = std::max(demand[e], static_cast<int>((vol + capacity - 1) / capacity));
        }
    }
    return demand;
}

LowerBound lower_bound(const Instance& instance, std::uint64_t node_budget) {
    auto demand = ecu_slot_demand(instance);
    auto ex = build_exclusions(instance);
    std::vector<std::size_t> ecus, counts;
    for (std::size_t e = 0; e < demand.size(); ++e) {
        if (demand[e] == 0) continue;
        ecus.push_back(e);
        counts.push_back(static_cast<std::size_t>(demand[e]));
    }
    auto graph = make_slot_graph(ecus, counts, {}, {}, ex, instance.variants.variant_count());
    LowerBound lb;
    lb.clique = clique_lower_bound(graph);
    auto greedy = greedy_color(graph);
    auto exact = exact_color(graph, lb.clique, greedy, node_budget);
    lb.exact = exact.exact;
    lb.value = exact.exact ? exact.slots : lb.clique;
    return lb;
}

Rational message_volume(const Instance& instance) {
    if (instance.signals.empty()) return Rational(0);
    const int H = hyperperiod(instance);
    long long bits = 0;
    for (const auto& s : instance.signals) bits += static_cast<long long>(s.payload_bits) * (H / s.period_cycles);
    return Rational(bits, static_cast<long long>(instance.network.frame_payload_bits) * H);
}

Rational variant_message_volume(const Instance& instance) {
    if (instance.signals.empty()) return Rational(0);
    const int H = hyperperiod(instance);
    long long best = 0;
    for (std::size_t v = 0; v < instance.variants.variant_count(); ++v) {
        long long bits = 0;
        for (std::size_t i = 0; i < instance.signals.size(); ++i) {
            const Signal& s = instance.signals[i];
            if (instance.variants.contains(i, v)) bits += static_cast<long long>(s.payload_bits) * (H / s.period_cycles);
        }
        best = std::max(best, bits);
    }
    return Rational(best, static_cast<long long>(instance.network.frame_payload_bits) * H);
}

}  // namespace mvsched
