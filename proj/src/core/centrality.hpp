#pragma once

#include <cstdint>
#include <vector>

#include "core/graph.hpp"

namespace socio {

enum class Directedness { Directed, Undirected };

struct PageRankResult {
    std::vector<double> scores; // sums to 1
    bool converged = false;
    int iterations = 0;
};

struct EigenvectorResult {
    std::vector<double> scores; // max-normalized; all zero for edgeless graphs
    bool converged = false;     // false also flags the edgeless case
    int iterations = 0;
};

// Shortest-path betweenness by Brandes accumulation over unit-length edges.
// Undirected mode sums over unordered {s,t} pairs, directed mode over
// ordered (s,t). Self-loops never lie on a shortest path and are ignored.
// With `normalized`, scores are divided by (n-1)(n-2) (directed) or
// (n-1)(n-2)/2 (undirected).
//
// Per-source passes are distributed over fixed-size source blocks with an
// ordered reduction, so output is bit-identical for any thread count.
std::vector<double> betweenness(const Sociogram& g, Directedness mode, bool normalized = false,
                                unsigned threads = 1);

// Power iteration on the out-degree-normalized directed adjacency with
// uniform teleport; dangling vertices redistribute uniformly. Stops when the
// L1 change drops below tol. Self-loops count as ordinary out-links.
PageRankResult pagerank(const Sociogram& g, double damping = 0.85, double tol = 1e-10,
                        int max_iter = 200, unsigned threads = 1);

// Power iteration with a unit shift (A + I) on the symmetrized adjacency from
// a uniform positive start; the shift keeps bipartite graphs from
// oscillating and leaves the principal eigenvector unchanged. Scores are
// max-normalized. An edgeless graph yields all zeros with converged=false.
EigenvectorResult eigenvector_centrality(const Sociogram& g, double tol = 1e-10,
                                         int max_iter = 1000, unsigned threads = 1);

} // namespace socio
