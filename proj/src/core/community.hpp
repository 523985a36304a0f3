#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/graph.hpp"

namespace socio {

struct Grouping {
    std::vector<std::vector<std::uint32_t>> blocks; // partition of all vertices
    double modularity_q = 0.0;
    bool q_defined = false;                          // false iff the graph has no edges
    std::vector<std::optional<std::string>> labels;  // per block, filled by the text stage
};

// Newman modularity of a partition on the symmetrized weight-1 view
// (duplicates collapsed, self-loops dropped). Throws contract_error if the
// partition does not cover every vertex exactly once, undefined_metric_error
// when the graph has no edges.
double modularity(const Sociogram& g, const std::vector<std::vector<std::uint32_t>>& partition);

// Greedy agglomerative maximization: start from singletons, repeatedly merge
// the connected block pair with the largest modularity gain until no
// connected pair remains, then cut the merge sequence at its modularity
// peak (earliest peak on ties). Gains and the peak are compared in exact
// integer arithmetic (2m*E_ij - d_i*d_j for gains), ties broken by the
// smallest (min-member, min-member) block pair, so the partition is
// deterministic. Blocks come out ordered by size descending, then by
// smallest member.
Grouping cnm_partition(const Sociogram& g);

// Modularity and cross-edge fraction of the two-block state of the forced
// merge sequence (merging past zero gain until only connected blocks remain).
// Empty when the graph never passes through exactly two blocks, i.e. it has
// fewer than two vertices, more than two weak components, or no edges.
struct Bipartition {
    double q = 0.0;
    double cross_edge_fraction = 0.0; // cross-block share of symmetrized edges
};
std::optional<Bipartition> best_bipartition(const Sociogram& g);

} // namespace socio
