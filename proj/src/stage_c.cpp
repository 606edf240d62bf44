#include "mvsched/stage_c.hpp"

#include <algorithm>
#include <functional>

namespace mvsched {

SlotGraph make_slot_graph(std::span<const std::size_t> ecus, std::span<const std::size_t> slot_counts,
                          const std::vector<std::vector<std::optional<int>>>& requested,
                          const std::vector<std::vector<int>>& occurrences, const ExclusionMatrices& exclusions,
                          std::size_t variant_count, const MwisOptions& mwis) {
    SlotGraph g;
    for (std::size_t i = 0; i < ecus.size(); ++i) {
        for (std::size_t l = 0; l < slot_counts[i]; ++l) {
            int occ = i < occurrences.size() && l < occurrences[i].size() ? occurrences[i][l] : 0;
            g.nodes.push_back({ecus[i], l, occ});
            std::optional<int> req;
            if (i < requested.size() && l < requested[i].size()) req = requested[i][l];
            g.requested.push_back(req);
        }
    }
    std::size_t n = g.nodes.size();
    g.adjacent.assign(n, std::vector<char>(n, 0));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            std::size_t ea = g.nodes[a].ecu;
            std::size_t eb = g.nodes[b].ecu;
            bool adj = ea == eb || exclusions.eem(ea, eb);
            g.adjacent[a][b] = g.adjacent[b][a] = adj ? 1 : 0;
        }
    }

    ConflictGraph clash;
    for (std::size_t a = 0; a < n; ++a) {
        if (!g.requested[a]) continue;
        for (std::size_t b = a + 1; b < n; ++b) {
            if (g.requested[b] == g.requested[a] && g.adjacent[a][b]) {
                clash.add_edge(static_cast<int>(a), static_cast<int>(b));
            }
        }
    }
    g.fixed = g.requested;
    if (!clash.empty()) {
        int max_occ = 0;
        for (int v : clash.nodes) max_occ = std::max(max_occ, g.nodes[static_cast<std::size_t>(v)].occurrences);
        Rational size(static_cast<std::int64_t>(clash.size()));
        for (int v : clash.nodes) {
            clash.weights[v] = size + Rational(g.nodes[static_cast<std::size_t>(v)].occurrences, 1 + max_occ);
        }
        auto kept = solve_mwis(clash, mwis);
        g.fixation_mwis_exact = kept.exact;
        for (int v : clash.nodes) {
            if (!std::binary_search(kept.selected.begin(), kept.selected.end(), v)) {
                g.fixed[static_cast<std::size_t>(v)].reset();
                g.released.push_back(static_cast<std::size_t>(v));
            }
        }
    }

    g.variant_slot_counts.assign(variant_count, 0);
    for (std::size_t v = 0; v < variant_count; ++v) {
        for (std::size_t i = 0; i < ecus.size(); ++i) {
            if (exclusions.ecu_variants(ecus[i]).test(v)) g.variant_slot_counts[v] += static_cast<int>(slot_counts[i]);
        }
    }
    return g;
}

SlotGraph build_slot_graph(std::span<const UnitMultischedule> units, const ExclusionMatrices& exclusions,
                           std::size_t variant_count, const MwisOptions& mwis) {
    std::vector<std::size_t> ecus;
    std::vector<std::size_t> counts;
    std::vector<std::vector<std::optional<int>>> requested;
    std::vector<std::vector<int>> occurrences;
    for (const auto& u : units) {
        ecus.push_back(u.ecu());
        counts.push_back(u.slot_count());
        auto& req = requested.emplace_back();
        auto& occ = occurrences.emplace_back();
        for (std::size_t l = 0; l < u.slot_count(); ++l) {
            req.push_back(u.slot(l).original_global_slot);
            occ.push_back(u.occurrence_count(l));
        }
    }
    return make_slot_graph(ecus, counts, requested, occurrences, exclusions, variant_count, mwis);
}

int clique_lower_bound(const SlotGraph& graph) {
    int lb = 0;
    for (int c : graph.variant_slot_counts) lb = std::max(lb, c);
    // an ECU's own slots always form a clique
    std::size_t run = 0;
    for (std::size_t i = 0; i < graph.size(); ++i) {
        run = i > 0 && graph.nodes[i].ecu == graph.nodes[i - 1].ecu ? run + 1 : 1;
        lb = std::max(lb, static_cast<int>(run));
    }
    return lb;
}

std::vector<std::size_t> coloring_order(const SlotGraph& graph) {
    std::vector<std::size_t> order;
    std::size_t i = 0;
    while (i < graph.size()) {
        std::size_t j = i;
        while (j < graph.size() && graph.nodes[j].ecu == graph.nodes[i].ecu) ++j;
        for (std::size_t k = i; k < j; ++k) {
            if (graph.fixed[k]) order.push_back(k);
        }
        for (std::size_t k = i; k < j; ++k) {
            if (!graph.fixed[k]) order.push_back(k);
        }
        i = j;
    }
    return order;
}

Coloring greedy_color(const SlotGraph& graph) {
    Coloring out;
    std::size_t n = graph.size();
    out.colors.assign(n, 0);
    std::vector<char> used;
    for (std::size_t v : coloring_order(graph)) {
        if (graph.fixed[v]) {
            out.colors[v] = *graph.fixed[v];
        } else {
            used.assign(n + 2, 0);
            auto mark = [&](int c) {
                if (c > 0 && static_cast<std::size_t>(c) < used.size()) used[static_cast<std::size_t>(c)] = 1;
            };
            for (std::size_t u = 0; u < n; ++u) {
                if (u == v || !graph.adjacent[v][u]) continue;
                if (graph.fixed[u]) mark(*graph.fixed[u]);
                mark(out.colors[u]);
            }
            int c = 1;
            while (static_cast<std::size_t>(c) < used.size() && used[static_cast<std::size_t>(c)]) ++c;
            out.colors[v] = c;
        }
        out.slots = std::max(out.slots, out.colors[v]);
    }
    return out;
}

namespace {

/// Depth-first search for a coloring with at most z colors. Nodes of one ECU
/// share their adjacency, so the search works on ECU groups: per group it
/// tracks which colors are blocked and how many free nodes still need one.
class ColorSearch {
public:
    ColorSearch(const SlotGraph& g, std::uint64_t budget) : g_(g), budget_(budget) {
        for (std::size_t v = 0; v < g.size(); ++v) {
            if (v == 0 || g.nodes[v].ecu != g.nodes[v - 1].ecu) {
                rep_.push_back(v);
            }
            group_of_.push_back(rep_.size() - 1);
        }
        std::size_t k = rep_.size();
        gadj_.assign(k, {});
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = 0; b < k; ++b) {
                if (a == b || g.adjacent[rep_[a]][rep_[b]]) gadj_[a].push_back(b);
            }
        }
        for (std::size_t v : coloring_order(g)) {
            if (!g.fixed[v]) free_.push_back(v);
        }
    }

    std::uint64_t steps() const { return steps_; }
    bool exhausted() const { return exhausted_; }

    /// Colors for z, or empty if none exists (or the budget ran out).
    std::vector<int> run(int z) {
        std::size_t k = rep_.size();
        z_ = z;
        colors_.assign(g_.size(), 0);
        blocked_.assign(k, std::vector<int>(static_cast<std::size_t>(z) + 1, 0));
        avail_.assign(k, z);
        remaining_.assign(k, 0);
        last_.assign(k, 0);
        for (std::size_t v = 0; v < g_.size(); ++v) {
            if (g_.fixed[v]) {
                int c = *g_.fixed[v];
                if (c > z) return {};
                colors_[v] = c;
                block(group_of_[v], c);
            } else {
                ++remaining_[group_of_[v]];
            }
        }
        for (std::size_t h = 0; h < k; ++h) {
            if (avail_[h] < remaining_[h]) return {};
        }
        if (!dfs(0)) return {};
        return colors_;
    }

private:
    void block(std::size_t g, int c) {
        for (std::size_t h : gadj_[g]) {
            if (blocked_[h][static_cast<std::size_t>(c)]++ == 0) --avail_[h];
        }
    }
    void unblock(std::size_t g, int c) {
        for (std::size_t h : gadj_[g]) {
            if (--blocked_[h][static_cast<std::size_t>(c)] == 0) ++avail_[h];
        }
    }

    bool dfs(std::size_t i) {
        if (i == free_.size()) return true;
        std::size_t v = free_[i];
        std::size_t g = group_of_[v];
        int prev_last = last_[g];
        for (int c = prev_last + 1; c <= z_; ++c) {
            if (blocked_[g][static_cast<std::size_t>(c)] != 0) continue;
            if (++steps_ > budget_) {
                exhausted_ = true;
                return false;
            }
            colors_[v] = c;
            block(g, c);
            --remaining_[g];
            last_[g] = c;
            bool ok = true;
            for (std::size_t h : gadj_[g]) {
                if (avail_[h] < remaining_[h]) {
                    ok = false;
                    break;
                }
            }
            if (ok && dfs(i + 1)) return true;
            last_[g] = prev_last;
            ++remaining_[g];
            unblock(g, c);
            colors_[v] = 0;
            if (exhausted_) return false;
        }
        return false;
    }

    const SlotGraph& g_;
    std::uint64_t budget_;
    std::uint64_t steps_ = 0;
    bool exhausted_ = false;
    int z_ = 0;
    std::vector<std::size_t> rep_;
    std::vector<std::size_t> group_of_;
    std::vector<std::vector<std::size_t>> gadj_;
    std::vector<std::size_t> free_;
    std::vector<int> colors_;
    std::vector<std::vector<int>> blocked_;
    std::vector<int> avail_;
    std::vector<int> remaining_;
    std::vector<int> last_;
};

}  // namespace

Coloring exact_color(const SlotGraph& graph, int lower, const Coloring& fallback, std::uint64_t node_budget) {
    int start = lower;
    for (const auto& f : graph.fixed) {
        if (f) start = std::max(start, *f);
    }
    ColorSearch search(graph, node_budget);
    for (int z = start; z < fallback.slots; ++z) {
        auto colors = search.run(z);
        if (search.exhausted()) {
            Coloring out = fallback;
            out.exact = false;
            out.search_nodes = search.steps();
            return out;
        }
        if (!colors.empty()) {
            Coloring out;
            out.colors = std::move(colors);
            out.slots = 0;
            for (int c : out.colors) out.slots = std::max(out.slots, c);
            out.search_nodes = search.steps();
            return out;
        }
    }
    Coloring out = fallback;
    out.exact = true;
    out.search_nodes = search.steps();
    return out;
}

Multischedule assemble(std::span<const UnitMultischedule> units, const SlotGraph& graph, const Coloring& coloring,
                       const Instance& instance, int hyperperiod) {
    if (coloring.colors.size() != graph.size()) throw Error("coloring does not match the slot graph");
    Multischedule ms;
    ms.hyperperiod = hyperperiod;
    std::size_t base = 0;
    for (const auto& u : units) {
        const std::string& ecu = instance.ecus.at(u.ecu());
        for (std::size_t l = 0; l < u.slot_count(); ++l) {
            ms.slot_owners[coloring.colors.at(base + l)].insert(ecu);
        }
        for (const auto& [key, at] : u.placements()) {
            if (key >= static_cast<int>(instance.signals.size())) continue;
            int slot = coloring.colors.at(base + static_cast<std::size_t>(at.slot));
            ms.assignments[instance.signals[static_cast<std::size_t>(key)].id] = {at.cycle, slot, at.offset};
        }
        base += u.slot_count();
    }
    return ms;
}

}  // namespace mvsched
