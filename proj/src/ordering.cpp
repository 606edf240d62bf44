#include "mvsched/ordering.hpp"

#include <numeric>

namespace mvsched {

std::vector<std::size_t> sort_signals(std::span<const Signal> signals) {
    std::vector<std::size_t> order(signals.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    order_signal_list(order, [&](std::size_t i) { return ordering_key(signals[i]); });
    return order;
}

}  // namespace mvsched
