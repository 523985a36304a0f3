#include "core/centrality.hpp"

#include <cmath>
#include <cstring>

#include "core/parallel.hpp"

namespace socio {

namespace {

// Directed or symmetrized adjacency without self-loops, for path algorithms.
std::vector<std::vector<std::uint32_t>> path_adjacency(const Sociogram& g, Directedness mode) {
    const std::size_t n = g.vertex_count();
    std::vector<std::vector<std::uint32_t>> adj(n);
    for (std::uint32_t v = 0; v < n; ++v) {
        if (mode == Directedness::Undirected) {
            adj[v] = g.und_neighbors(v);
        } else {
            adj[v].reserve(g.out_neighbors(v).size());
            for (std::uint32_t w : g.out_neighbors(v))
                if (w != v) adj[v].push_back(w);
        }
    }
    return adj;
}

} // namespace

std::vector<double> betweenness(const Sociogram& g, Directedness mode, bool normalized,
                                unsigned threads) {
    const std::size_t n = g.vertex_count();
    std::vector<double> cb(n, 0.0);
    if (n < 3) return cb;

    const auto adj = path_adjacency(g, mode);

    const std::size_t block = 32;
    std::vector<std::vector<double>> partials(block_count(n, block));

    parallel_blocks(n, block, threads, [&](std::size_t b, std::size_t begin, std::size_t end) {
        std::vector<double> acc(n, 0.0);
        std::vector<std::int64_t> dist(n);
        std::vector<double> sigma(n);
        std::vector<double> delta(n);
        std::vector<std::vector<std::uint32_t>> preds(n);
        std::vector<std::uint32_t> order; // vertices in dequeue order
        std::vector<std::uint32_t> queue;

        for (std::size_t s = begin; s < end; ++s) {
            std::fill(dist.begin(), dist.end(), -1);
            std::fill(sigma.begin(), sigma.end(), 0.0);
            std::fill(delta.begin(), delta.end(), 0.0);
            for (auto& p : preds) p.clear();
            order.clear();
            queue.clear();

            dist[s] = 0;
            sigma[s] = 1.0;
            queue.push_back(static_cast<std::uint32_t>(s));
            std::size_t head = 0;
            while (head < queue.size()) {
                std::uint32_t v = queue[head++];
                order.push_back(v);
                for (std::uint32_t w : adj[v]) {
                    if (dist[w] < 0) {
                        dist[w] = dist[v] + 1;
                        queue.push_back(w);
                    }
                    if (dist[w] == dist[v] + 1) {
                        sigma[w] += sigma[v];
                        preds[w].push_back(v);
                    }
                }
            }
            for (std::size_t i = order.size(); i-- > 0;) {
                std::uint32_t w = order[i];
                for (std::uint32_t v : preds[w])
                    delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
                if (w != s) acc[w] += delta[w];
            }
        }
        partials[b] = std::move(acc);
    });

    for (const auto& acc : partials)
        for (std::size_t v = 0; v < n; ++v) cb[v] += acc[v];

    // Brandes accumulates over ordered source/sink pairs; fold to unordered
    // pairs in undirected mode.
    double scale = (mode == Directedness::Undirected) ? 0.5 : 1.0;
    if (normalized) {
        double pairs = static_cast<double>(n - 1) * static_cast<double>(n - 2);
        if (mode == Directedness::Undirected) pairs /= 2.0;
        scale /= pairs;
    }
    if (scale != 1.0)
        for (double& x : cb) x *= scale;
    return cb;
}

PageRankResult pagerank(const Sociogram& g, double damping, double tol, int max_iter,
                        unsigned threads) {
    const std::size_t n = g.vertex_count();
    PageRankResult res;
    if (n == 0) {
        res.converged = true;
        return res;
    }

    std::vector<double> rank(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n, 0.0);
    std::vector<double> out_deg(n);
    for (std::uint32_t v = 0; v < n; ++v) out_deg[v] = static_cast<double>(g.out_degree(v));

    const double teleport = (1.0 - damping) / static_cast<double>(n);

    for (int it = 0; it < max_iter; ++it) {
        double dangling = 0.0;
        for (std::uint32_t v = 0; v < n; ++v)
            if (out_deg[v] == 0.0) dangling += rank[v];
        const double base = teleport + damping * dangling / static_cast<double>(n);

        parallel_blocks(n, 512, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
            for (std::size_t v = begin; v < end; ++v) {
                double sum = 0.0;
                for (std::uint32_t u : g.in_neighbors(static_cast<std::uint32_t>(v)))
                    sum += rank[u] / out_deg[u];
                next[v] = base + damping * sum;
            }
        });

        double change = 0.0;
        for (std::size_t v = 0; v < n; ++v) change += std::fabs(next[v] - rank[v]);
        rank.swap(next);
        res.iterations = it + 1;
        if (change < tol) {
            res.converged = true;
            break;
        }
    }

    // compensate accumulated rounding so the sum is exactly normalized
    double sum = 0.0;
    for (double r : rank) sum += r;
    if (sum > 0.0)
        for (double& r : rank) r /= sum;
    res.scores = std::move(rank);
    return res;
}

EigenvectorResult eigenvector_centrality(const Sociogram& g, double tol, int max_iter,
                                         unsigned threads) {
    const std::size_t n = g.vertex_count();
    EigenvectorResult res;
    res.scores.assign(n, 0.0);
    if (n == 0 || g.und_edge_count() == 0) return res;

    std::vector<double> x(n, 1.0);
    std::vector<double> y(n, 0.0);

    for (int it = 0; it < max_iter; ++it) {
        parallel_blocks(n, 512, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
            for (std::size_t v = begin; v < end; ++v) {
                double sum = x[v]; // unit shift
                for (std::uint32_t w : g.und_neighbors(static_cast<std::uint32_t>(v))) sum += x[w];
                y[v] = sum;
            }
        });
        double max_val = 0.0;
        for (double v : y)
            if (v > max_val) max_val = v;
        if (max_val <= 0.0) break; // unreachable once an edge exists
        double diff = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
            y[v] /= max_val;
            double d = std::fabs(y[v] - x[v]);
            if (d > diff) diff = d;
        }
        x.swap(y);
        res.iterations = it + 1;
        if (diff < tol) {
            res.converged = true;
            break;
        }
    }
    res.scores = std::move(x);
    return res;
}

} // namespace socio
