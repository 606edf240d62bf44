#include "mvsched/mwis.hpp"

#include "mvsched/model.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>

namespace mvsched {

void ConflictGraph::add_node(int key) {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), key);
    if (it == nodes.end() || *it != key) nodes.insert(it, key);
}

void ConflictGraph::add_edge(int a, int b) {
    if (a == b) return;
    add_node(a);
    add_node(b);
    edges.emplace(std::min(a, b), std::max(a, b));
}

bool ConflictGraph::has_edge(int a, int b) const { return edges.contains({std::min(a, b), std::max(a, b)}); }

void assign_period_weights(ConflictGraph& graph, const std::function<int(int)>& period_of) {
    Rational n(static_cast<std::int64_t>(graph.nodes.size()));
    graph.weights.clear();
    for (int key : graph.nodes) graph.weights[key] = n + Rational(1, period_of(key));
}

Rational set_weight(const ConflictGraph& graph, const std::vector<int>& keys) {
    Rational total(0);
    for (int k : keys) total = total + graph.weights.at(k);
    return total;
}

bool is_independent(const ConflictGraph& graph, const std::vector<int>& keys) {
    for (std::size_t i = 0; i < keys.size(); ++i) {
        for (std::size_t j = i + 1; j < keys.size(); ++j) {
            if (graph.has_edge(keys[i], keys[j])) return false;
        }
    }
    return true;
}

namespace {

struct Local {
    std::vector<int> keys;  // ascending
    std::vector<std::vector<int>> adj;
    std::vector<std::int64_t> weight;
};

/// Integer weights on a common denominator, adjacency by local index.
Local localize(const ConflictGraph& graph, const std::vector<int>& keys) {
    Local g;
    g.keys = keys;
    std::map<int, int> index;
    for (std::size_t i = 0; i < keys.size(); ++i) index[keys[i]] = static_cast<int>(i);
    g.adj.resize(keys.size());
    for (const auto& [a, b] : graph.edges) {
        auto ia = index.find(a);
        auto ib = index.find(b);
        if (ia == index.end() || ib == index.end()) continue;
        g.adj[static_cast<std::size_t>(ia->second)].push_back(ib->second);
        g.adj[static_cast<std::size_t>(ib->second)].push_back(ia->second);
    }
    std::int64_t den = 1;
    for (int k : keys) {
        const Rational& w = graph.weights.at(k);
        if (w <= Rational(0)) throw Error("mwis: node weights must be positive");
        den = std::lcm(den, w.den());
    }
    for (int k : keys) {
        const Rational& w = graph.weights.at(k);
        g.weight.push_back(w.num() * (den / w.den()));
    }
    return g;
}

std::vector<int> greedy_local(const Local& g) {
    std::size_t n = g.keys.size();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    // w_a/(deg_a+1) > w_b/(deg_b+1), compared without division
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        auto ua = static_cast<__int128>(g.weight[static_cast<std::size_t>(a)]) *
                  static_cast<__int128>(g.adj[static_cast<std::size_t>(b)].size() + 1);
        auto ub = static_cast<__int128>(g.weight[static_cast<std::size_t>(b)]) *
                  static_cast<__int128>(g.adj[static_cast<std::size_t>(a)].size() + 1);
        return ua > ub;
    });
    std::vector<char> blocked(n, 0);
    std::vector<int> chosen;
    for (int v : order) {
        if (blocked[static_cast<std::size_t>(v)]) continue;
        chosen.push_back(v);
        blocked[static_cast<std::size_t>(v)] = 1;
        for (int u : g.adj[static_cast<std::size_t>(v)]) blocked[static_cast<std::size_t>(u)] = 1;
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

/// Branch and bound over one connected component of at most 64 nodes.
/// Nodes are branched in index order, include first, so leaves are met in
/// decreasing lexicographic order of their characteristic vectors; only a
/// strict improvement replaces an incumbent found by the search itself.
class Exact {
public:
    explicit Exact(const Local& g) : g_(g), n_(g.keys.size()), adj_(n_, 0) {
        for (std::size_t v = 0; v < n_; ++v) {
            for (int u : g.adj[v]) adj_[v] |= std::uint64_t{1} << u;
        }
    }

    std::vector<int> solve() {
        auto seed = greedy_local(g_);
        best_weight_ = 0;
        for (int v : seed) best_weight_ += g_.weight[static_cast<std::size_t>(v)];
        best_from_search_ = false;
        best_mask_ = 0;
        for (int v : seed) best_mask_ |= std::uint64_t{1} << v;
        std::uint64_t all = n_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_) - 1);
        search(all, 0, 0);
        std::vector<int> out;
        for (std::size_t v = 0; v < n_; ++v) {
            if ((best_mask_ >> v) & 1U) out.push_back(static_cast<int>(v));
        }
        return out;
    }

private:
    std::int64_t bound(std::uint64_t cand) const {
        // Greedy clique cover of the candidates; an independent set takes at most
        // one node from each clique.
        std::uint64_t cliques[64];
        std::int64_t best[64];
        int count = 0;
        for (std::uint64_t rest = cand; rest != 0; rest &= rest - 1) {
            int v = std::countr_zero(rest);
            int target = -1;
            for (int c = 0; c < count; ++c) {
                if ((cliques[c] & ~adj_[static_cast<std::size_t>(v)]) == 0) {
                    target = c;
                    break;
                }
            }
            std::int64_t w = g_.weight[static_cast<std::size_t>(v)];
            if (target < 0) {
                cliques[count] = std::uint64_t{1} << v;
                best[count] = w;
                ++count;
            } else {
                cliques[target] |= std::uint64_t{1} << v;
                best[target] = std::max(best[target], w);
            }
        }
        std::int64_t total = 0;
        for (int c = 0; c < count; ++c) total += best[c];
        return total;
    }

    void search(std::uint64_t cand, std::uint64_t chosen, std::int64_t weight) {
        if (cand == 0) {
            if (weight > best_weight_ || (weight == best_weight_ && !best_from_search_)) {
                best_weight_ = weight;
                best_mask_ = chosen;
                best_from_search_ = true;
            }
            return;
        }
        std::int64_t ub = weight + bound(cand);
        if (ub < best_weight_ || (ub == best_weight_ && best_from_search_)) return;
        int v = std::countr_zero(cand);
        std::uint64_t bit = std::uint64_t{1} << v;
        search(cand & ~bit & ~adj_[static_cast<std::size_t>(v)], chosen | bit,
               weight + g_.weight[static_cast<std::size_t>(v)]);
        if ((cand & adj_[static_cast<std::size_t>(v)]) == 0) return;  // isolated: always taken
        search(cand & ~bit, chosen, weight);
    }

    const Local& g_;
    std::size_t n_;
    std::vector<std::uint64_t> adj_;
    std::int64_t best_weight_ = 0;
    std::uint64_t best_mask_ = 0;
    bool best_from_search_ = false;
};

std::vector<std::vector<int>> components(const ConflictGraph& graph) {
    std::map<int, std::vector<int>> adj;
    for (const auto& [a, b] : graph.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::set<int> seen;
    std::vector<std::vector<int>> out;
    for (int start : graph.nodes) {
        if (seen.contains(start)) continue;
        std::vector<int> comp{start};
        seen.insert(start);
        for (std::size_t i = 0; i < comp.size(); ++i) {
            for (int u : adj[comp[i]]) {
                if (seen.insert(u).second) comp.push_back(u);
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

}  // namespace

std::vector<int> greedy_mwis(const ConflictGraph& graph) {
    if (graph.empty()) return {};
    Local g = localize(graph, graph.nodes);
    std::vector<int> out;
    for (int v : greedy_local(g)) out.push_back(g.keys[static_cast<std::size_t>(v)]);
    std::sort(out.begin(), out.end());
    return out;
}

MwisResult solve_mwis(const ConflictGraph& graph, const MwisOptions& options) {
    MwisResult result;
    std::size_t cap = std::min<std::size_t>(options.exact_node_cap, 64);
    for (const auto& comp : components(graph)) {
        Local g = localize(graph, comp);
        std::vector<int> picked;
        if (comp.size() > cap) {
            result.exact = false;
            picked = greedy_local(g);
        } else {
            picked = Exact(g).solve();
        }
        for (int v : picked) result.selected.push_back(g.keys[static_cast<std::size_t>(v)]);
    }
    std::sort(result.selected.begin(), result.selected.end());
    return result;
}

}  // namespace mvsched
