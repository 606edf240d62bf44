#include "mvsched/explore.hpp"

#include <algorithm>
#include <ostream>

namespace mvsched {

namespace {

std::int64_t floor_div(const Rational& r) { return r.floor(); }

std::int64_t ceil_div(const Rational& r) {
    std::int64_t f = r.floor();
    return Rational(f) == r ? f : f + 1;
}

}  // namespace

std::vector<int> w_grid(const Instance& instance, const ExploreOptions& options) {
    int max_c = 1;
    for (const auto& s : instance.signals) max_c = std::max(max_c, s.payload_bits);
    std::vector<int> out;
    for (int w = max_c; w <= options.w_max; w += options.w_step) out.push_back(w);
    return out;
}

std::vector<Rational> m_grid(const Instance& instance, const ExploreOptions& options) {
    int min_p = kMaxPeriodCycles;
    for (const auto& s : instance.signals) min_p = std::min(min_p, s.period_cycles);
    Rational m = Rational(min_p) * instance.network.cycle_duration_ms;
    std::vector<Rational> out;
    for (int k = 0; k <= options.m_halvings; ++k) {
        out.push_back(m);
        m = m / Rational(2);
    }
    return out;
}

Instance rescale(const Instance& instance, int w_bits, const Rational& m_ms) {
    Instance out = instance;
    out.network.cycle_duration_ms = m_ms;
    out.network.frame_payload_bits = w_bits;
    out.network.slots_threshold_override.reset();
    const Rational scale = instance.network.cycle_duration_ms / m_ms;  // new cycles per old cycle
    for (auto& s : out.signals) {
        std::int64_t cycles = floor_div(Rational(s.period_cycles) * scale);
        int p = 1;
        while (p * 2 <= cycles && p * 2 <= kMaxPeriodCycles) p *= 2;
        std::int64_t release = ceil_div(Rational(s.release_cycle) * scale);
        std::int64_t deadline = floor_div(Rational(s.deadline_cycle + 1) * scale) - 1;
        deadline = std::clamp<std::int64_t>(deadline, 0, p - 1);
        release = std::clamp<std::int64_t>(release, 0, deadline);
        s.period_cycles = p;
        s.release_cycle = static_cast<int>(release);
        s.deadline_cycle = static_cast<int>(deadline);
    }
    return out;
}

std::vector<ExploreRow> explore(const Instance& instance, const ExploreOptions& options) {
    if (instance.original && !instance.original->assignments.empty()) {
        throw Error("exploration allowed in first iteration only");
    }
    std::vector<ExploreRow> rows;
    auto ms = m_grid(instance, options);
    for (int w : w_grid(instance, options)) {
        for (const auto& m : ms) {
            Instance cell = rescale(instance, w, m);
            ExploreRow row;
            row.w_bits = w;
            row.m_ms = m;
            auto result = run_pipeline(cell, options.pipeline);
            row.slots = result.slots;
            try {
                row.threshold = slots_threshold(cell.network);
            } catch (const Error&) {
                row.threshold = 0;
            }
            if (row.threshold > 0) row.utilization_percent = 100.0 * row.slots / row.threshold;
            rows.push_back(row);
        }
    }
    return rows;
}

void write_csv(std::ostream& out, const std::vector<ExploreRow>& rows) {
    out << "W_bits,M_ms,slots,threshold,utilization_percent\n";
    for (const auto& r : rows) {
        out << r.w_bits << ',' << r.m_ms.decimal() << ',' << r.slots << ',' << r.threshold << ',';
        if (r.utilization_percent) {
            out << *r.utilization_percent;
        } else {
            out << "inf";
        }
        out << '\n';
    }
}

void write_dat(std::ostream& out, const std::vector<ExploreRow>& rows) {
    std::vector<Rational> ms;
    for (const auto& r : rows) {
        if (std::find(ms.begin(), ms.end(), r.m_ms) == ms.end()) ms.push_back(r.m_ms);
    }
    out << "# W_bits utilization_percent slots threshold\n";
    for (const auto& m : ms) {
        out << "# M_ms " << m.decimal() << '\n';
        for (const auto& r : rows) {
            if (r.m_ms != m) continue;
            out << r.w_bits << ' ' << (r.utilization_percent ? std::to_string(*r.utilization_percent) : "inf") << ' '
                << r.slots << ' ' << r.threshold << '\n';
        }
        out << "\n\n";
    }
}

}  // namespace mvsched
