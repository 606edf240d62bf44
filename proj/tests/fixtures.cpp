#include "fixtures.hpp"

#include "mvsched/benchgen.hpp"

#include <algorithm>
#include <functional>

namespace fixtures {

Instance make_instance(int frame_bits, const std::vector<std::string>& ecus, const std::vector<std::string>& variants,
                       const std::vector<SignalRow>& rows) {
    Instance inst;
    inst.network.cycle_duration_ms = Rational(5);
    inst.network.frame_payload_bits = frame_bits;
    inst.ecus = ecus;
    inst.variants = VariantMatrix(variants, rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        inst.signals.push_back(Signal{r.id, r.period, r.payload, r.ecu, 0, r.period - 1});
        for (std::size_t v = 0; v < r.variants.size(); ++v) inst.variants.set(i, v, r.variants[v] == 1);
    }
    return inst;
}

Instance example1() {
    auto inst = make_instance(16, {"ECU1", "ECU2", "ECU3"}, {"I", "II", "III"},
                              {
                                  {"s1", "ECU1", 1, 8, {1, 0, 1}},
                                  {"s2", "ECU1", 2, 8, {1, 1, 1}},
                                  {"s3", "ECU1", 2, 8, {1, 1, 1}},
                                  {"s4", "ECU1", 2, 8, {0, 1, 1}},
                                  {"s5", "ECU1", 2, 8, {0, 1, 1}},
                                  {"s6", "ECU1", 2, 8, {1, 1, 1}},
                                  {"s7", "ECU2", 1, 8, {1, 0, 1}},
                                  {"s8", "ECU3", 2, 8, {0, 1, 1}},
                                  {"s9", "ECU2", 1, 8, {0, 0, 1}},
                                  {"s10", "ECU1", 2, 8, {0, 0, 1}},
                              });
    Multischedule ms;
    ms.hyperperiod = 2;
    ms.slot_owners = {{1, {"ECU1"}}, {2, {"ECU1"}}, {3, {"ECU2", "ECU3"}}};
    ms.assignments = {
        {"s1", {0, 1, 0}}, {"s2", {0, 1, 8}}, {"s5", {1, 1, 0}}, {"s3", {0, 2, 0}},
        {"s6", {0, 2, 8}}, {"s4", {1, 2, 0}}, {"s7", {0, 3, 0}}, {"s8", {0, 3, 0}},
    };
    inst.original = ms;
    return inst;
}

Instance example1_original_only() {
    auto full = example1();
    Instance inst;
    inst.network = full.network;
    inst.ecus = full.ecus;
    inst.variants = VariantMatrix({"I", "II"}, 0);
    for (std::size_t i = 0; i < full.signals.size(); ++i) {
        if (!full.variants.contains(i, 0) && !full.variants.contains(i, 1)) continue;
        inst.signals.push_back(full.signals[i]);
        inst.variants.add_signal();
        for (std::size_t v = 0; v < 2; ++v) inst.variants.set(inst.signals.size() - 1, v, full.variants.contains(i, v));
    }
    return inst;
}

Instance example2() {
    auto inst = make_instance(16, {"ECU1"}, {"I", "II", "III", "IV"},
                              {
                                  {"s1", "ECU1", 4, 8, {0, 1, 0, 1}},
                                  {"s2", "ECU1", 1, 4, {0, 0, 1, 1}},
                                  {"s3", "ECU1", 4, 8, {1, 0, 0, 1}},
                                  {"s4", "ECU1", 2, 8, {1, 0, 0, 1}},
                                  {"s5", "ECU1", 2, 8, {1, 0, 0, 1}},
                                  {"s6", "ECU1", 4, 8, {1, 0, 0, 1}},
                                  {"s7", "ECU1", 4, 8, {1, 0, 0, 1}},
                                  {"s8", "ECU1", 4, 16, {0, 1, 1, 1}},
                                  {"s9", "ECU1", 4, 16, {0, 1, 0, 1}},
                              });
    Multischedule ms;
    ms.hyperperiod = 4;
    ms.slot_owners = {{1, {"ECU1"}}, {2, {"ECU1"}}};
    ms.assignments = {
        {"s4", {0, 1, 0}}, {"s5", {0, 1, 8}}, {"s8", {0, 1, 0}}, {"s9", {2, 1, 0}}, {"s3", {0, 2, 0}},
        {"s6", {0, 2, 8}}, {"s7", {1, 2, 0}}, {"s1", {0, 2, 4}}, {"s2", {0, 2, 6}},
    };
    inst.original = ms;
    return inst;
}

ExclusionMatrices example4_exclusions() {
    // one signal per (ECU, variant) use
    VariantMatrix v({"I", "II", "III"}, 0);
    std::vector<std::size_t> ecu_of;
    auto add = [&](std::size_t ecu, std::size_t variant) {
        v.add_signal();
        v.set(v.signal_count() - 1, variant);
        ecu_of.push_back(ecu);
    };
    for (std::size_t e : {0, 1, 2}) add(e, 0);
    for (std::size_t e : {0, 2, 3}) add(e, 1);
    for (std::size_t e : {0, 3, 4}) add(e, 2);
    return build_exclusions(v, ecu_of, 5);
}

SlotGraph example4_graph() {
    static const ExclusionMatrices ex = example4_exclusions();
    std::vector<std::size_t> ecus{0, 1, 2, 3, 4};
    std::vector<std::size_t> counts(5, 1);
    return make_slot_graph(ecus, counts, {}, {}, ex, 3);
}

std::size_t index_of(const Instance& inst, const std::string& id) { return inst.signal_lookup().at(id); }

std::vector<int> keys_of(const Instance& inst, const std::vector<std::string>& ids) {
    std::vector<int> out;
    for (const auto& id : ids) out.push_back(static_cast<int>(index_of(inst, id)));
    std::sort(out.begin(), out.end());
    return out;
}

ConflictGraph random_conflict_graph(std::mt19937_64& rng, int nodes, double density) {
    ConflictGraph g;
    std::bernoulli_distribution edge(density);
    std::uniform_int_distribution<int> exp(0, 6);
    std::vector<int> period(static_cast<std::size_t>(nodes));
    for (int v = 0; v < nodes; ++v) {
        g.add_node(v);
        period[static_cast<std::size_t>(v)] = 1 << exp(rng);
    }
    for (int a = 0; a < nodes; ++a) {
        for (int b = a + 1; b < nodes; ++b) {
            if (edge(rng)) g.add_edge(a, b);
        }
    }
    assign_period_weights(g, [&](int k) { return period[static_cast<std::size_t>(k)]; });
    return g;
}

Rational brute_force_mwis_weight(const ConflictGraph& graph) {
    const auto& nodes = graph.nodes;
    std::size_t n = nodes.size();
    std::vector<std::uint32_t> adj(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (a != b && graph.has_edge(nodes[a], nodes[b])) adj[a] |= 1U << b;
        }
    }
    Rational best(0);
    // every subset, skipping dependent ones
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
        bool ok = true;
        Rational w(0);
        for (std::size_t v = 0; v < n && ok; ++v) {
            if (!((mask >> v) & 1U)) continue;
            if (adj[v] & mask) ok = false;
            w = w + graph.weights.at(nodes[v]);
        }
        if (ok && best < w) best = w;
    }
    return best;
}

SlotGraph random_slot_graph(std::mt19937_64& rng, int max_nodes, bool with_fixations) {
    std::uniform_int_distribution<int> ecu_count_d(1, 6);
    std::uniform_int_distribution<int> variant_count_d(1, 4);
    int ecus = ecu_count_d(rng);
    int variants = variant_count_d(rng);
    VariantMatrix v;
    for (int k = 0; k < variants; ++k) v.add_variant("V" + std::to_string(k + 1));
    std::vector<std::size_t> ecu_of;
    std::bernoulli_distribution coin(0.5);
    for (int e = 0; e < ecus; ++e) {
        bool any = false;
        for (int k = 0; k < variants; ++k) {
            if (coin(rng)) {
                v.add_signal();
                v.set(v.signal_count() - 1, static_cast<std::size_t>(k));
                ecu_of.push_back(static_cast<std::size_t>(e));
                any = true;
            }
        }
        if (!any) {
            v.add_signal();
            v.set(v.signal_count() - 1, std::uniform_int_distribution<std::size_t>(0, v.variant_count() - 1)(rng));
            ecu_of.push_back(static_cast<std::size_t>(e));
        }
    }
    ExclusionMatrices ex = build_exclusions(v, ecu_of, static_cast<std::size_t>(ecus));

    std::vector<std::size_t> ecu_ids, counts;
    int budget = max_nodes;
    std::uniform_int_distribution<int> slots_d(1, 3);
    for (int e = 0; e < ecus && budget > 0; ++e) {
        int c = std::min(budget, slots_d(rng));
        budget -= c;
        ecu_ids.push_back(static_cast<std::size_t>(e));
        counts.push_back(static_cast<std::size_t>(c));
    }
    std::vector<std::vector<std::optional<int>>> requested(ecu_ids.size());
    if (with_fixations) {
        std::uniform_int_distribution<int> slot_d(1, std::max(2, max_nodes / 2));
        std::bernoulli_distribution fix(0.4);
        for (std::size_t i = 0; i < ecu_ids.size(); ++i) {
            std::vector<int> used;
            for (std::size_t l = 0; l < counts[i]; ++l) {
                std::optional<int> r;
                if (fix(rng)) {
                    int s = slot_d(rng);
                    if (std::find(used.begin(), used.end(), s) == used.end()) {
                        r = s;
                        used.push_back(s);
                    }
                }
                requested[i].push_back(r);
            }
        }
    }
    return make_slot_graph(ecu_ids, counts, requested, {}, ex, v.variant_count());
}

int brute_force_chromatic(const SlotGraph& graph) {
    std::size_t n = graph.size();
    if (n == 0) return 0;
    int max_fixed = 0;
    std::vector<int> colors(n, 0);
    std::vector<std::size_t> free_nodes;
    for (std::size_t v = 0; v < n; ++v) {
        if (graph.fixed[v]) {
            colors[v] = *graph.fixed[v];
            max_fixed = std::max(max_fixed, colors[v]);
        } else {
            free_nodes.push_back(v);
        }
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (colors[a] && colors[a] == colors[b] && graph.adjacent_to(a, b)) return -1;
        }
    }
    // Colors above max_fixed are interchangeable, so a new one is only ever
    // the next unused; every coloring is covered up to relabelling.
    for (int k = std::max(1, max_fixed); k <= static_cast<int>(n) + max_fixed; ++k) {
        std::function<bool(std::size_t, int)> go = [&](std::size_t i, int top) -> bool {
            if (i == free_nodes.size()) return true;
            std::size_t v = free_nodes[i];
            for (int c = 1; c <= std::min(k, top + 1); ++c) {
                bool ok = true;
                for (std::size_t u = 0; u < n && ok; ++u) ok = !(u != v && colors[u] == c && graph.adjacent_to(u, v));
                if (!ok) continue;
                colors[v] = c;
                if (go(i + 1, std::max(top, c))) return true;
            }
            colors[v] = 0;
            return false;
        };
        if (go(0, max_fixed)) return k;
        for (auto v : free_nodes) colors[v] = 0;
    }
    return -1;
}

bool proper(const SlotGraph& graph, const std::vector<int>& colors) {
    for (std::size_t a = 0; a < graph.size(); ++a) {
        if (colors[a] < 1) return false;
        if (graph.fixed[a] && colors[a] != *graph.fixed[a]) return false;
        for (std::size_t b = a + 1; b < graph.size(); ++b) {
            if (graph.adjacent_to(a, b) && colors[a] == colors[b]) return false;
        }
    }
    return true;
}

Instance small_random_instance(std::uint64_t seed, int signals, int ecus, int variants, int frame_bits) {
    GeneratorParams p;
    p.signal_count = signals;
    p.ecu_count = ecus;
    p.variant_count = variants;
    p.alpha = p.beta = p.gamma = 100.0 / 3.0;
    p.ecu_alpha = 0;
    p.ecu_gamma = 50;
    p.period_distribution.weights = {{1, 1}, {2, 1}, {4, 1}, {8, 1}};
    p.payload_distribution.weights = {{1, 1}, {2, 1}, {4, 1}, {8, 2}, {16, 1}};
    p.release_fraction = 20;
    p.deadline_fraction = 20;
    p.network.frame_payload_bits = frame_bits;
    p.seed = seed;
    return generate(p);
}

}  // namespace fixtures
