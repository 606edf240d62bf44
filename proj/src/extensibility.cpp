#include "mvsched/extensibility.hpp"

#include "mvsched/ordering.hpp"
#include "mvsched/stage_b.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace mvsched {

void ContingencyTable::normalize() {
    std::map<std::pair<int, int>, double> merged;
    for (const auto& c : cells) {
        if (c.probability < 0) throw Error("contingency table: negative probability");
        if (c.period_cycles < 1 || c.payload_bits < 1) throw Error("contingency table: bad cell");
        if (c.probability > 0) merged[{c.period_cycles, c.payload_bits}] += c.probability;
    }
    double total = 0;
    for (const auto& [k, p] : merged) total += p;
    cells.clear();
    if (total <= 0) return;
    for (const auto& [k, p] : merged) cells.push_back({k.first, k.second, p / total});
}

ContingencyTable derive_contingency_table(std::span<const Signal> signals) {
    ContingencyTable table;
    table.source = TableSource::DerivedFromInstance;
    std::map<std::pair<int, int>, int> counts;
    for (const auto& s : signals) ++counts[{s.period_cycles, s.payload_bits}];
    for (const auto& [k, n] : counts) {
        table.cells.push_back({k.first, k.second, static_cast<double>(n) / static_cast<double>(signals.size())});
    }
    return table;
}

int dummy_volume(const DummySignal& d, int hyperperiod) {
    int p = std::min(d.period_cycles, hyperperiod);
    return d.payload_bits * (hyperperiod / p);
}

std::vector<DummySignal> generate_dummies(const ContingencyTable& table, int budget_bits, int hyperperiod,
                                          std::uint64_t seed) {
    struct Cell {
        DummySignal d;
        double p;
        int volume;
        std::uint64_t tie;
    };
    std::mt19937_64 rng(seed);
    std::vector<Cell> cells;
    for (const auto& c : table.cells) {
        if (c.probability <= 0) continue;
        DummySignal d{std::min(c.period_cycles, hyperperiod), c.payload_bits};
        cells.push_back({d, c.probability, dummy_volume(d, hyperperiod), rng()});
    }
    std::vector<DummySignal> out;
    if (cells.empty() || budget_bits <= 0) return out;

    std::stable_sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
        if (a.volume != b.volume) return a.volume > b.volume;
        return a.tie < b.tie;
    });

    double expected = 0;
    for (const auto& c : cells) expected += c.p * c.volume;
    auto total_n = static_cast<long long>(std::floor(budget_bits / expected));

    long long used = 0;
    for (const auto& c : cells) {
        auto n = static_cast<long long>(std::floor(static_cast<double>(total_n) * c.p + 1e-9));
        // never overshoot: the largest cells are visited first
        n = std::min<long long>(n, (budget_bits - used) / c.volume);
        for (long long i = 0; i < n; ++i) out.push_back(c.d);
        used += n * c.volume;
    }
    for (const auto& c : cells) {
        while (used + c.volume <= budget_bits) {
            out.push_back(c.d);
            used += c.volume;
        }
    }
    return out;
}

int free_bits(const UnitMultischedule& unit, std::size_t slot) {
    return unit.frame_bits() * unit.hyperperiod() - unit.occupied_bits(slot);
}

int shrink_budget(int frame_bits, int hyperperiod, int free) {
    long long capacity = static_cast<long long>(frame_bits) * hyperperiod;
    long long scaled = 100 * capacity - 105 * (capacity - free);
    long long q = scaled / 100;
    if (scaled % 100 != 0 && scaled < 0) --q;
    return static_cast<int>(q);
}

SlotOptimization optimize_slot(UnitMultischedule& unit, std::size_t slot, std::span<const int> movable,
                               const ContingencyTable& table, SignalTable& signals, std::uint64_t seed) {
    SlotOptimization result;
    std::vector<int> here;
    for (int key : movable) {
        auto at = unit.placement(key);
        if (at && static_cast<std::size_t>(at->slot) == slot) here.push_back(key);
    }
    int budget = free_bits(unit, slot);
    result.budget = budget;
    if (here.empty() || budget <= 0 || table.cells.empty()) return result;

    const UnitSlot snapshot = unit.slot(slot);
    std::map<int, Placement> snapshot_placements;
    for (int key : unit.signals_in_slot(slot)) snapshot_placements[key] = *unit.placement(key);

    while (budget > 0) {
        ++result.attempts;
        result.budget = budget;
        unit.restore_slot(slot, snapshot, snapshot_placements);
        for (int key : here) unit.remove(key, signals.shape(key));

        signals.clear_dummies();
        std::vector<int> list = here;
        for (const auto& d : generate_dummies(table, budget, unit.hyperperiod(),
                                              seed + static_cast<std::uint64_t>(result.attempts - 1))) {
            list.push_back(signals.add_dummy(d.period_cycles, d.payload_bits));
        }
        order_signal_list(list, [&](int key) { return signals.ordering_key(key); });

        if (place_signals_in_slot(unit, list, slot, signals)) {
            for (int key : list) {
                if (signals.is_dummy(key)) unit.remove(key, signals.shape(key));
            }
            signals.clear_dummies();
            result.adopted = true;
            return result;
        }
        for (int key : list) {
            if (signals.is_dummy(key) && unit.placement(key)) unit.remove(key, signals.shape(key));
        }
        budget = shrink_budget(unit.frame_bits(), unit.hyperperiod(), budget);
    }
    signals.clear_dummies();
    unit.restore_slot(slot, snapshot, snapshot_placements);
    return result;
}

}  // namespace mvsched
