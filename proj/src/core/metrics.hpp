#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/graph.hpp"

namespace socio {

struct GeodesicStats {
    double avg_geodesic = 0.0;   // mean over ordered reachable pairs, u != v
    std::uint32_t diameter = 0;  // maximum finite shortest-path length
    std::uint64_t reachable_pairs = 0;
};

// Two readings of the aggregate in/out balance, both reported so either can
// be compared against published tables:
//   endpoint counts: total in-/out-edge endpoints of the raw multigraph
//                    (duplicates retained, self-loops included)
//   active vertex counts: number of vertices with in-degree > 0 / out-degree > 0
struct VertexAsymmetry {
    std::uint64_t in_endpoints = 0;
    std::uint64_t out_endpoints = 0;
    std::uint64_t in_active_vertices = 0;
    std::uint64_t out_active_vertices = 0;
};

struct DegreeHistogram {
    DegreeMode mode = DegreeMode::Total;
    std::map<std::uint32_t, std::uint64_t> bins; // degree -> vertex count
};

// Metric slot that reports, rather than throws, when undefined; `reason` is
// set exactly when `value` is absent.
struct MaybeMetric {
    std::optional<double> value;
    std::string reason;
};

// The global summary record assembled into reports: clustering, density,
// geodesics, and the aggregate in/out balance. n_in and n_out count active
// vertices (in-degree > 0 / out-degree > 0).
struct GraphStats {
    MaybeMetric c_global;
    MaybeMetric rho;
    MaybeMetric d_avg;
    MaybeMetric diameter_d;
    MaybeMetric r_vertex;
    std::uint64_t max_edges = 0; // V(V-1)/2, the Eq-style reporting formula
    std::uint64_t n_in = 0;
    std::uint64_t n_out = 0;
};

GraphStats graph_stats(const Sociogram& g, unsigned threads = 1);
GraphStats graph_stats(const Sociogram& g, const EdgeListDocument& raw, unsigned threads = 1);

// Local clustering coefficient on the symmetrized view; 0 when degree < 2.
double local_clustering(const Sociogram& g, std::uint32_t v);

// Arithmetic mean of local coefficients over every vertex. Degenerate
// vertices contribute 0. Throws undefined_metric_error on an empty graph.
double global_clustering(const Sociogram& g, unsigned threads = 1);

// Directed density: distinct non-self-loop edges / (V * (V-1)).
// Throws undefined_metric_error when V < 2.
double density(const Sociogram& g);

// Maximum edge count of Eq-style reporting: V * (V-1) / 2.
std::uint64_t max_edges(const Sociogram& g);

// BFS from every vertex over the symmetrized view; pairs in different
// components are excluded. Throws undefined_metric_error when no vertex
// pair is reachable.
GeodesicStats geodesic_stats(const Sociogram& g, unsigned threads = 1);

DegreeHistogram degree_distribution(const Sociogram& g, DegreeMode mode);

VertexAsymmetry vertex_asymmetry(const Sociogram& g, const EdgeListDocument& raw);
// Graph-only variant: endpoint counts fall back to the retained edge list.
VertexAsymmetry vertex_asymmetry(const Sociogram& g);

// log10(n_in / n_out). Returns +/-infinity when exactly one side is zero and
// NaN when both are; callers that must render a value use the report
// sentinels instead.
double asymmetry_ratio(double n_in, double n_out);

} // namespace socio
