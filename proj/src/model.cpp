#include "mvsched/model.hpp"

#include <algorithm>

namespace mvsched {

VariantMatrix::VariantMatrix(std::vector<std::string> variant_names, std::size_t signal_count)
    : names_(std::move(variant_names)), rows_(signal_count) {}

void VariantMatrix::set(std::size_t signal, std::size_t variant, bool value) {
    if (variant >= names_.size()) {
        throw Error("variant index " + std::to_string(variant) + " out of range");
    }
    rows_.at(signal).set(variant, value);
}

std::size_t VariantMatrix::add_variant(std::string name) {
    names_.push_back(std::move(name));
    return names_.size() - 1;
}

std::optional<std::size_t> VariantMatrix::variant_index(std::string_view name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
}

ExclusionMatrices::ExclusionMatrices(const VariantMatrix& variants, std::span<const std::size_t> signal_ecus,
                                     std::size_t ecu_count)
    : ecus_(ecu_count) {
    if (signal_ecus.size() != variants.signal_count()) {
        throw Error("exclusion matrices: signal/ECU mapping size mismatch");
    }
    signals_.reserve(variants.signal_count());
    for (std::size_t s = 0; s < variants.signal_count(); ++s) {
        signals_.push_back(variants.row(s));
        if (signal_ecus[s] >= ecu_count) {
            throw Error("exclusion matrices: ECU index out of range");
        }
        ecus_[signal_ecus[s]] |= variants.row(s);
    }
}

int Multischedule::slot_count() const {
    int n = 0;
    for (const auto& [id, a] : assignments) n = std::max(n, a.slot);
    for (const auto& [slot, owners] : slot_owners) {
        if (!owners.empty()) n = std::max(n, slot);
    }
    return n;
}

bool is_admissible_period(int period_cycles) {
    return period_cycles >= 1 && period_cycles <= kMaxPeriodCycles && std::has_single_bit(
        static_cast<unsigned>(period_cycles));
}

std::unordered_map<std::string, std::size_t> Instance::signal_lookup() const {
    std::unordered_map<std::string, std::size_t> m;
    m.reserve(signals.size());
    for (std::size_t i = 0; i < signals.size(); ++i) m.emplace(signals[i].id, i);
    return m;
}

std::unordered_map<std::string, std::size_t> Instance::ecu_lookup() const {
    std::unordered_map<std::string, std::size_t> m;
    for (std::size_t i = 0; i < ecus.size(); ++i) m.emplace(ecus[i], i);
    return m;
}

std::vector<std::size_t> Instance::signal_ecus() const {
    auto lookup = ecu_lookup();
    std::vector<std::size_t> out;
    out.reserve(signals.size());
    for (const auto& s : signals) {
        auto it = lookup.find(s.ecu);
        if (it == lookup.end()) {
            throw Error("signal " + s.id + " uses unknown ECU " + s.ecu);
        }
        out.push_back(it->second);
    }
    return out;
}

void Instance::check() const {
    const auto& net = network;
    if (net.cycle_duration_ms <= Rational(0)) throw Error("cycle_duration_ms must be positive");
    if (net.frame_payload_bits < 1) throw Error("frame_payload_bits must be >= 1");
    if (net.bandwidth_bits_per_ms < 1) throw Error("bandwidth_bits_per_ms must be positive");
    if (net.nit_duration_us < Rational(0)) throw Error("nit_duration_us must be nonnegative");
    if (net.slots_threshold_override && *net.slots_threshold_override < 1) {
        throw Error("slots_threshold_override must be positive");
    }

    auto ecu_ids = ecu_lookup();
    if (ecu_ids.size() != ecus.size()) throw Error("duplicate ECU id");

    std::unordered_map<std::string, std::size_t> ids;
    for (const auto& s : signals) {
        if (!ids.emplace(s.id, 0).second) throw Error("duplicate signal id " + s.id);
        if (!ecu_ids.contains(s.ecu)) throw Error("signal " + s.id + " uses unknown ECU " + s.ecu);
        if (!is_admissible_period(s.period_cycles)) {
            throw Error("signal " + s.id + ": period must be a power of two between 1 and 64 cycles");
        }
        if (s.payload_bits < 1 || s.payload_bits > std::min(net.frame_payload_bits, kMaxPayloadBits)) {
            throw Error("signal " + s.id + ": payload " + std::to_string(s.payload_bits) +
                        " bits does not fit the frame");
        }
        if (s.release_cycle < 0 || s.release_cycle > s.deadline_cycle ||
            s.deadline_cycle > s.period_cycles - 1) {
            throw Error("signal " + s.id + ": window [" + std::to_string(s.release_cycle) + ", " +
                        std::to_string(s.deadline_cycle) + "] is not inside the period");
        }
    }

    if (variants.signal_count() != signals.size()) {
        throw Error("variant matrix has " + std::to_string(variants.signal_count()) + " rows for " +
                    std::to_string(signals.size()) + " signals");
    }
    std::vector<bool> variant_used(variants.variant_count(), false);
    for (std::size_t s = 0; s < signals.size(); ++s) {
        bool any = false;
        for (std::size_t v = 0; v < variants.variant_count(); ++v) {
            if (variants.contains(s, v)) {
                any = true;
                variant_used[v] = true;
            }
        }
        if (!any) throw Error("signal " + signals[s].id + " belongs to no variant");
    }
    for (std::size_t v = 0; v < variant_used.size(); ++v) {
        if (!variant_used[v]) throw Error("variant " + variants.variant_names()[v] + " contains no signal");
    }

    if (original) {
        for (const auto& [id, a] : original->assignments) {
            if (!ids.contains(id)) throw Error("original schedule references unknown signal " + id);
            (void)a;
        }
    }
}

int hyperperiod(std::span<const Signal> signals) {
    if (signals.empty()) throw Error("empty instance");
    int h = 1;
    for (const auto& s : signals) h = std::max(h, s.period_cycles);
    return h;
}

int hyperperiod(const Instance& instance) { return hyperperiod(instance.signals); }

ExclusionMatrices build_exclusions(const VariantMatrix& variants, std::span<const std::size_t> signal_ecus,
                                   std::size_t ecu_count) {
    return ExclusionMatrices(variants, signal_ecus, ecu_count);
}

ExclusionMatrices build_exclusions(const Instance& instance) {
    auto ecus = instance.signal_ecus();
    return ExclusionMatrices(instance.variants, ecus, instance.ecus.size());
}

int slots_threshold(const NetworkConfig& network, int slot_overhead_bits) {
    if (network.slots_threshold_override) return *network.slots_threshold_override;
    // FlexRay sends every payload byte with a 2-bit byte start sequence.
    Rational slot_bits = Rational(network.frame_payload_bits) * Rational(10, 8) + Rational(slot_overhead_bits);
    Rational slot_ms = slot_bits / Rational(network.bandwidth_bits_per_ms);
    Rational available_ms =
        network.cycle_duration_ms - (network.nit_duration_us + network.cycle_overhead_us) / Rational(1000);
    if (available_ms <= Rational(0)) {
        throw Error("cycle of " + network.cycle_duration_ms.decimal() +
                    " ms leaves no time for the static segment");
    }
    if (slot_ms <= Rational(0)) throw Error("slot duration must be positive");
    return static_cast<int>((available_ms / slot_ms).floor());
}

int slots_threshold(const NetworkConfig& network) { return slots_threshold(network, network.slot_overhead_bits); }

std::map<std::pair<int, int>, std::vector<FrameOccupant>> frames(const Multischedule& schedule,
                                                                 const Instance& instance) {
    auto lookup = instance.signal_lookup();
    std::map<std::pair<int, int>, std::vector<FrameOccupant>> out;
    for (const auto& [id, a] : schedule.assignments) {
        auto it = lookup.find(id);
        if (it == lookup.end()) throw Error("schedule references unknown signal " + id);
        const Signal& s = instance.signals[it->second];
        for (int c = a.cycle; c < schedule.hyperperiod; c += s.period_cycles) {
            out[{c, a.slot}].push_back({id, a.offset, s.payload_bits});
        }
    }
    return out;
}

}  // namespace mvsched
