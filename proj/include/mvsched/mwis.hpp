#pragma once

#include "mvsched/rational.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace mvsched {

/// Undirected graph with rational node weights. Node keys are opaque ints:
/// signal indices during conflict repair, slot-node indices in slot scheduling.
struct ConflictGraph {
    std::vector<int> nodes;  ///< ascending
    std::set<std::pair<int, int>> edges;  ///< (smaller, larger)
    std::map<int, Rational> weights;

    void add_node(int key);
    void add_edge(int a, int b);
    bool has_edge(int a, int b) const;
    std::size_t size() const { return nodes.size(); }
    bool empty() const { return nodes.empty(); }
};

/// w_i = |N_CG| + 1/p_i. Keeping one more signal always outweighs any
/// difference in occurrence counts because sum(1/p_i) <= |N_CG|.
void assign_period_weights(ConflictGraph& graph, const std::function<int(int)>& period_of);

struct MwisOptions {
    /// Components larger than this are solved greedily.
    std::size_t exact_node_cap = 64;
};

struct MwisResult {
    std::vector<int> selected;  ///< ascending keys
    bool exact = true;
};

/// Maximum weighted independent set. Among optimal sets the lexicographically
/// smallest key list is returned.
MwisResult solve_mwis(const ConflictGraph& graph, const MwisOptions& options = {});

/// Weight/(degree+1) greedy; used above the node cap and as the initial incumbent.
std::vector<int> greedy_mwis(const ConflictGraph& graph);

Rational set_weight(const ConflictGraph& graph, const std::vector<int>& keys);
bool is_independent(const ConflictGraph& graph, const std::vector<int>& keys);

}  // namespace mvsched
