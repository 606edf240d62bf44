#pragma once

#include "mvsched/model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mvsched {

enum class ViolationKind { Overlap, SlotOwnership, Periodicity, Window, Sharing, Payload, Threshold };

std::string to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::string detail;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;
    int slots = 0;
    std::optional<int> threshold;
    int changed_signals = 0;
    int changed_slots = 0;
    std::vector<std::string> changed;  ///< ids of moved original signals, sorted
};

/// Checks every hard constraint of the multischedule and of each variant's
/// native schedule, and counts position changes against the original.
/// Throws Error for unknown or missing signals.
ValidationReport validate(const Instance& instance, const Multischedule& schedule);

/// ceil(volume / (W*H)) for every ECU and variant; a_i is the row maximum.
std::vector<int> ecu_slot_demand(const Instance& instance);

struct LowerBound {
    int value = 0;
    int clique = 0;      ///< per-variant clique bound on the demand graph
    bool exact = true;   ///< false when the coloring search ran out of budget
};

/// Chromatic number of the slot graph in which ECU i owns a_i slots.
/// When the exact search exceeds its budget the clique bound is returned.
LowerBound lower_bound(const Instance& instance, std::uint64_t node_budget = 2'000'000);

/// Sum over all signals of c*(H/p), divided by W*H.
Rational message_volume(const Instance& instance);

/// Largest single-variant volume divided by W*H.
Rational variant_message_volume(const Instance& instance);

}  // namespace mvsched
