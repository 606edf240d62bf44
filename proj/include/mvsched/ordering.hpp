#pragma once

#include "mvsched/model.hpp"

#include <algorithm>
#include <span>
#include <vector>

namespace mvsched {

struct OrderingKey {
    int payload_bits = 0;
    int window = 0;
    int period_cycles = 0;
};

inline OrderingKey ordering_key(const Signal& s) { return {s.payload_bits, s.window(), s.period_cycles}; }

/// Three stable passes: increasing period, then increasing window, then
/// decreasing payload. The last pass dominates, so the result is the
/// lexicographic order (payload desc, window asc, period asc) with full ties
/// left in input order.
template <typename T, typename KeyOf>
void order_signal_list(std::vector<T>& list, KeyOf key_of) {
    std::stable_sort(list.begin(), list.end(),
                     [&](const T& a, const T& b) { return key_of(a).period_cycles < key_of(b).period_cycles; });
    std::stable_sort(list.begin(), list.end(),
                     [&](const T& a, const T& b) { return key_of(a).window < key_of(b).window; });
    std::stable_sort(list.begin(), list.end(),
                     [&](const T& a, const T& b) { return key_of(a).payload_bits > key_of(b).payload_bits; });
}

/// Signal list SL: indices into `signals` in scheduling order.
std::vector<std::size_t> sort_signals(std::span<const Signal> signals);

}  // namespace mvsched
