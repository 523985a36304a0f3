#include "core/metrics.hpp"

#include <cmath>
#include <limits>

#include "core/errors.hpp"
#include "core/parallel.hpp"

namespace socio {

double local_clustering(const Sociogram& g, std::uint32_t v) {
    const auto& nbrs = g.und_neighbors(v);
    const std::size_t d = nbrs.size();
    if (d < 2) return 0.0;
    std::uint64_t links = 0;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) {
            if (g.has_und_edge(nbrs[i], nbrs[j])) ++links;
        }
    }
    return static_cast<double>(links) / (static_cast<double>(d) * (d - 1) / 2.0);
}

double global_clustering(const Sociogram& g, unsigned threads) {
    const std::size_t n = g.vertex_count();
    if (n == 0) throw undefined_metric_error("global clustering undefined for an empty graph");
    std::vector<double> local(n, 0.0);
    parallel_blocks(n, 256, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t v = begin; v < end; ++v)
            local[v] = local_clustering(g, static_cast<std::uint32_t>(v));
    });
    double sum = 0.0;
    for (double c : local) sum += c; // fixed order, thread-count independent
    return sum / static_cast<double>(n);
}

double density(const Sociogram& g) {
    const std::size_t n = g.vertex_count();
    if (n < 2) throw undefined_metric_error("density undefined for fewer than 2 vertices");
    return static_cast<double>(g.unique_nonloop_edge_count()) /
           (static_cast<double>(n) * static_cast<double>(n - 1));
}

std::uint64_t max_edges(const Sociogram& g) {
    const std::uint64_t n = g.vertex_count();
    return n * (n - 1) / 2;
}

GeodesicStats geodesic_stats(const Sociogram& g, unsigned threads) {
    const std::size_t n = g.vertex_count();
    if (n < 2) throw undefined_metric_error("geodesics undefined for fewer than 2 vertices");

    struct Partial {
        std::uint64_t sum = 0;
        std::uint64_t pairs = 0;
        std::uint32_t diameter = 0;
    };
    const std::size_t block = 64;
    std::vector<Partial> partials(block_count(n, block));

    parallel_blocks(n, block, threads, [&](std::size_t b, std::size_t begin, std::size_t end) {
        Partial p;
        std::vector<std::uint32_t> dist(n);
        std::vector<std::uint32_t> frontier;
        for (std::size_t s = begin; s < end; ++s) {
            std::fill(dist.begin(), dist.end(), std::numeric_limits<std::uint32_t>::max());
            dist[s] = 0;
            frontier.assign(1, static_cast<std::uint32_t>(s));
            std::uint32_t level = 0;
            std::vector<std::uint32_t> next;
            while (!frontier.empty()) {
                ++level;
                next.clear();
                for (std::uint32_t v : frontier) {
                    for (std::uint32_t w : g.und_neighbors(v)) {
                        if (dist[w] == std::numeric_limits<std::uint32_t>::max()) {
                            dist[w] = level;
                            next.push_back(w);
                        }
                    }
                }
                p.sum += static_cast<std::uint64_t>(level) * next.size();
                p.pairs += next.size();
                if (!next.empty() && level > p.diameter) p.diameter = level;
                frontier.swap(next);
            }
        }
        partials[b] = p;
    });

    GeodesicStats stats;
    std::uint64_t sum = 0;
    for (const Partial& p : partials) {
        sum += p.sum;
        stats.reachable_pairs += p.pairs;
        if (p.diameter > stats.diameter) stats.diameter = p.diameter;
    }
    if (stats.reachable_pairs == 0)
        throw undefined_metric_error("geodesics undefined: no reachable vertex pairs");
    stats.avg_geodesic = static_cast<double>(sum) / static_cast<double>(stats.reachable_pairs);
    return stats;
}

DegreeHistogram degree_distribution(const Sociogram& g, DegreeMode mode) {
    DegreeHistogram h;
    h.mode = mode;
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
        std::uint32_t d = 0;
        switch (mode) {
            case DegreeMode::In: d = g.in_degree(v); break;
            case DegreeMode::Out: d = g.out_degree(v); break;
            case DegreeMode::Total: d = g.total_degree(v); break;
        }
        ++h.bins[d];
    }
    return h;
}

namespace {

VertexAsymmetry asymmetry_from_counts(const Sociogram& g, const std::vector<std::uint64_t>& in_m,
                                      const std::vector<std::uint64_t>& out_m) {
    VertexAsymmetry a;
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
        a.in_endpoints += in_m[v];
        a.out_endpoints += out_m[v];
        if (g.in_degree(v) > 0) ++a.in_active_vertices;
        if (g.out_degree(v) > 0) ++a.out_active_vertices;
    }
    return a;
}

} // namespace

VertexAsymmetry vertex_asymmetry(const Sociogram& g, const EdgeListDocument& raw) {
    if (raw.edges.empty() && g.unique_edge_count() == 0)
        throw undefined_metric_error("vertex asymmetry undefined: graph has no edges");
    std::vector<std::uint64_t> in_m(g.vertex_count(), 0), out_m(g.vertex_count(), 0);
    for (const Edge& e : raw.edges) {
        auto u = g.vertex_index(e.source);
        auto v = g.vertex_index(e.target);
        if (!u || !v) continue; // raw document and graph disagree; count what maps
        ++out_m[*u];
        ++in_m[*v];
    }
    return asymmetry_from_counts(g, in_m, out_m);
}

VertexAsymmetry vertex_asymmetry(const Sociogram& g) {
    if (g.unique_edge_count() == 0)
        throw undefined_metric_error("vertex asymmetry undefined: graph has no edges");
    std::vector<std::uint64_t> in_m(g.vertex_count(), 0), out_m(g.vertex_count(), 0);
    for (const GraphEdge& e : g.edges()) {
        ++out_m[e.source];
        ++in_m[e.target];
    }
    return asymmetry_from_counts(g, in_m, out_m);
}

double asymmetry_ratio(double n_in, double n_out) {
    return std::log10(n_in / n_out);
}

namespace {

GraphStats stats_with_asymmetry(const Sociogram& g, const VertexAsymmetry* asym,
                                unsigned threads) {
    GraphStats s;
    try {
        s.c_global = {global_clustering(g, threads), ""};
    } catch (const undefined_metric_error& e) {
        s.c_global = {std::nullopt, e.what()};
    }
    try {
        s.rho = {density(g), ""};
    } catch (const undefined_metric_error& e) {
        s.rho = {std::nullopt, e.what()};
    }
    try {
        GeodesicStats geo = geodesic_stats(g, threads);
        s.d_avg = {geo.avg_geodesic, ""};
        s.diameter_d = {static_cast<double>(geo.diameter), ""};
    } catch (const undefined_metric_error& e) {
        s.d_avg = {std::nullopt, e.what()};
        s.diameter_d = {std::nullopt, e.what()};
    }

    const std::uint64_t n = g.vertex_count();
    s.max_edges = n < 2 ? 0 : n * (n - 1) / 2;

    if (asym) {
        s.n_in = asym->in_active_vertices;
        s.n_out = asym->out_active_vertices;
        if (s.n_in == 0) {
            s.r_vertex = {std::nullopt, "asymmetry undefined: zero numerator"};
        } else if (s.n_out == 0) {
            s.r_vertex = {std::nullopt, "asymmetry undefined: zero denominator"};
        } else {
            s.r_vertex = {asymmetry_ratio(static_cast<double>(s.n_in),
                                          static_cast<double>(s.n_out)),
                          ""};
        }
    } else {
        s.r_vertex = {std::nullopt, "asymmetry undefined: graph has no edges"};
    }
    return s;
}

} // namespace

GraphStats graph_stats(const Sociogram& g, unsigned threads) {
    if (g.unique_edge_count() == 0) return stats_with_asymmetry(g, nullptr, threads);
    VertexAsymmetry a = vertex_asymmetry(g);
    return stats_with_asymmetry(g, &a, threads);
}

GraphStats graph_stats(const Sociogram& g, const EdgeListDocument& raw, unsigned threads) {
    if (raw.edges.empty() && g.unique_edge_count() == 0)
        return stats_with_asymmetry(g, nullptr, threads);
    VertexAsymmetry a = vertex_asymmetry(g, raw);
    return stats_with_asymmetry(g, &a, threads);
}

} // namespace socio
