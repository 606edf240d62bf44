#pragma once

#include "mvsched/rational.hpp"
#include "mvsched/variant_mask.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mvsched {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kMaxPeriodCycles = 64;
inline constexpr int kMaxPayloadBits = 2032;  // 254 bytes

/// Per-slot frame overhead on the wire, added to the byte-coded payload.
inline constexpr int kDefaultSlotOverheadBits = 190;
/// Cycle time unavailable to the static segment besides the NIT.
inline constexpr std::int64_t kDefaultCycleOverheadUs = 190;

struct NetworkConfig {
    Rational cycle_duration_ms{5};
    int frame_payload_bits = 64;
    int bandwidth_bits_per_ms = 10000;
    Rational nit_duration_us{50};
    Rational cycle_overhead_us{kDefaultCycleOverheadUs};
    int slot_overhead_bits = kDefaultSlotOverheadBits;
    std::optional<int> slots_threshold_override;
};

/// One periodic message. All timing is in communication cycles.
struct Signal {
    std::string id;
    int period_cycles = 1;
    int payload_bits = 1;
    std::string ecu;
    int release_cycle = 0;
    int deadline_cycle = 0;  ///< last admissible cycle for the first occurrence

    int window() const { return deadline_cycle - release_cycle; }
};

/// Binary signal-to-variant membership, one row per signal.
class VariantMatrix {
public:
    VariantMatrix() = default;
    VariantMatrix(std::vector<std::string> variant_names, std::size_t signal_count);

    std::size_t signal_count() const { return rows_.size(); }
    std::size_t variant_count() const { return names_.size(); }
    const std::vector<std::string>& variant_names() const { return names_; }

    bool contains(std::size_t signal, std::size_t variant) const { return rows_.at(signal).test(variant); }
    void set(std::size_t signal, std::size_t variant, bool value = true);
    const VariantMask& row(std::size_t signal) const { return rows_.at(signal); }

    std::size_t add_variant(std::string name);
    void add_signal() { rows_.emplace_back(); }

    std::optional<std::size_t> variant_index(std::string_view name) const;

private:
    std::vector<std::string> names_;
    std::vector<VariantMask> rows_;
};

/// SEM and EEM. Both are answered from per-signal and per-ECU variant sets,
/// so storage stays linear in the number of signals.
class ExclusionMatrices {
public:
    ExclusionMatrices() = default;
    ExclusionMatrices(const VariantMatrix& variants, std::span<const std::size_t> signal_ecus,
                      std::size_t ecu_count);

    /// True when some variant uses both signals (they must not overlap).
    bool sem(std::size_t a, std::size_t b) const { return signals_[a].intersects(signals_[b]); }
    /// True when some variant uses both ECUs (they must not share a slot).
    bool eem(std::size_t a, std::size_t b) const { return ecus_[a].intersects(ecus_[b]); }

    std::size_t signal_count() const { return signals_.size(); }
    std::size_t ecu_count() const { return ecus_.size(); }
    const VariantMask& signal_variants(std::size_t s) const { return signals_[s]; }
    const VariantMask& ecu_variants(std::size_t e) const { return ecus_[e]; }

private:
    std::vector<VariantMask> signals_;
    std::vector<VariantMask> ecus_;
};

struct Assignment {
    int cycle = 0;   ///< first occurrence, 0-based
    int slot = 1;    ///< 1-based slot id
    int offset = 0;  ///< bit offset in the frame

    friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct FrameOccupant {
    std::string signal;
    int offset = 0;
    int length = 0;
};

struct Multischedule {
    int hyperperiod = 1;
    std::map<int, std::set<std::string>> slot_owners;
    std::map<std::string, Assignment> assignments;

    int slot_count() const;
};

struct Instance {
    NetworkConfig network;
    std::vector<std::string> ecus;
    std::vector<Signal> signals;
    VariantMatrix variants;
    std::optional<Multischedule> original;

    /// Throws Error when any type invariant is broken.
    void check() const;

    std::unordered_map<std::string, std::size_t> signal_lookup() const;
    std::unordered_map<std::string, std::size_t> ecu_lookup() const;
    /// ECU index per signal, in signal order.
    std::vector<std::size_t> signal_ecus() const;
};

bool is_admissible_period(int period_cycles);

int hyperperiod(std::span<const Signal> signals);
int hyperperiod(const Instance& instance);

ExclusionMatrices build_exclusions(const VariantMatrix& variants, std::span<const std::size_t> signal_ecus,
                                   std::size_t ecu_count);
ExclusionMatrices build_exclusions(const Instance& instance);

/// Number of static slots that fit one cycle.
///
/// slot length = (10/8 * W + slot_overhead_bits) / bandwidth
/// budget      = M - NIT - cycle_overhead
int slots_threshold(const NetworkConfig& network, int slot_overhead_bits);
int slots_threshold(const NetworkConfig& network);

/// Frame contents keyed by (cycle, slot), every occurrence expanded.
std::map<std::pair<int, int>, std::vector<FrameOccupant>> frames(const Multischedule& schedule,
                                                                 const Instance& instance);

}  // namespace mvsched
