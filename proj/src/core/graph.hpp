#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace socio {

enum class EdgeKind : std::uint8_t { Tweet = 0, Retweet = 1, Mention = 2, Reply = 3 };

const char* edge_kind_name(EdgeKind k);
std::optional<EdgeKind> edge_kind_from_string(std::string_view s); // case-insensitive

// One accepted communication record. Endpoints are case-folded screen names;
// Twitter handles are case-insensitive so "Alice" and "alice" are one vertex.
struct Edge {
    std::string source;
    std::string target;
    EdgeKind kind = EdgeKind::Tweet;
    std::optional<std::string> text;
    std::optional<std::string> timestamp; // ISO-8601, kept verbatim
};

struct ParseError {
    std::size_t line = 0;
    std::string message;
};

// Result of CSV ingestion: accepted edges plus per-row rejects.
struct EdgeListDocument {
    std::vector<std::string> header;
    std::vector<Edge> edges;          // one per accepted row, input order
    std::vector<ParseError> errors;   // rejected rows with line numbers
    std::size_t row_count = 0;        // accepted + rejected
};

enum class DedupMode { KeepAll, CollapsePairs };

// Indexed edge inside a Sociogram. Endpoints refer to the sorted vertex table.
struct GraphEdge {
    std::uint32_t source = 0;
    std::uint32_t target = 0;
    EdgeKind kind = EdgeKind::Tweet;
    std::optional<std::string> text;
    std::optional<std::string> timestamp;
};

// Directed multigraph of users and communications. Immutable once built;
// every read operation is safe to call concurrently.
//
// Vertex indices follow the lexicographically sorted name table, so all
// index-ordered iteration is relabeling-stable. Adjacency lists cover the
// distinct (source,target) pairs; `edges` holds either every accepted row
// (KeepAll) or the first row per distinct pair (CollapsePairs).
class Sociogram {
public:
    Sociogram() = default;

    std::size_t vertex_count() const { return names_.size(); }
    const std::vector<std::string>& vertex_names() const { return names_; }
    const std::string& vertex_name(std::uint32_t v) const { return names_[v]; }
    // Index for a (case-folded) name, or nullopt.
    std::optional<std::uint32_t> vertex_index(std::string_view name) const;

    const std::vector<GraphEdge>& edges() const { return edges_; }
    std::size_t raw_edge_count() const { return raw_edge_count_; }
    std::size_t unique_edge_count() const { return unique_edges_; }         // self-loops included
    std::size_t duplicate_count() const { return duplicate_count_; }
    std::size_t unique_nonloop_edge_count() const { return unique_nonloop_edges_; }
    std::size_t unique_self_loop_count() const { return unique_self_loops_; }
    DedupMode dedup_mode() const { return dedup_; }

    // Distinct out-/in-neighbours, sorted ascending; self-loops included.
    const std::vector<std::uint32_t>& out_neighbors(std::uint32_t v) const { return out_adj_[v]; }
    const std::vector<std::uint32_t>& in_neighbors(std::uint32_t v) const { return in_adj_[v]; }
    // Symmetrized simple view: sorted distinct neighbours, self-loops dropped.
    const std::vector<std::uint32_t>& und_neighbors(std::uint32_t v) const { return und_adj_[v]; }
    std::size_t und_edge_count() const { return und_edge_count_; }

    bool has_und_edge(std::uint32_t u, std::uint32_t v) const;

    // Raw self-loop rows per vertex (duplicates counted); feeds the
    // fragmented-archetype signal and the per-vertex report column.
    std::uint32_t self_loop_tally(std::uint32_t v) const { return self_loops_[v]; }

    std::uint32_t in_degree(std::uint32_t v) const { return static_cast<std::uint32_t>(in_adj_[v].size()); }
    std::uint32_t out_degree(std::uint32_t v) const { return static_cast<std::uint32_t>(out_adj_[v].size()); }
    std::uint32_t total_degree(std::uint32_t v) const { return in_degree(v) + out_degree(v); }
    std::uint32_t und_degree(std::uint32_t v) const { return static_cast<std::uint32_t>(und_adj_[v].size()); }

    friend Sociogram build_graph(const EdgeListDocument& doc, DedupMode dedup);
    friend Sociogram induced_subgraph(const Sociogram& g,
                                      const std::vector<std::uint32_t>& vertices);

private:
    std::vector<std::string> names_;                  // sorted
    std::vector<GraphEdge> edges_;
    std::vector<std::vector<std::uint32_t>> out_adj_;
    std::vector<std::vector<std::uint32_t>> in_adj_;
    std::vector<std::vector<std::uint32_t>> und_adj_;
    std::vector<std::uint32_t> self_loops_;
    std::size_t raw_edge_count_ = 0;
    std::size_t unique_edges_ = 0;
    std::size_t duplicate_count_ = 0;
    std::size_t unique_nonloop_edges_ = 0;
    std::size_t unique_self_loops_ = 0;
    std::size_t und_edge_count_ = 0;
    DedupMode dedup_ = DedupMode::CollapsePairs;
};

// Parses an edge-list CSV. Header must contain `source` and `target`;
// `kind`, `text` and `timestamp` columns are optional and matched by name in
// any order. Malformed rows (empty endpoint, unknown kind, bad timestamp)
// are recorded in `errors` with their line number and skipped. A missing
// mandatory column throws format_error.
EdgeListDocument parse_edge_csv(std::string_view input);

// Reads the file and delegates to parse_edge_csv. Throws io_error.
EdgeListDocument parse_edge_csv_file(const std::string& path);

// Builds the immutable graph. Duplicate means identical ordered
// (source,target) pair regardless of kind.
Sociogram build_graph(const EdgeListDocument& doc, DedupMode dedup);

// Subgraph on the given vertex indices (edgeless members kept). Throws
// contract_error on an out-of-range index.
Sociogram induced_subgraph(const Sociogram& g, const std::vector<std::uint32_t>& vertices);

enum class DegreeMode { In, Out, Total };

// Distinct-pair degree of a named vertex. Throws contract_error for an
// unknown name.
std::uint32_t degree(const Sociogram& g, std::string_view vertex, DegreeMode mode);

// Weakly connected components over the symmetrized view. Blocks are ordered
// by smallest member index and sorted internally.
std::vector<std::vector<std::uint32_t>> connected_components(const Sociogram& g);

// Edge-list CSV for the graph's retained edges (header included).
std::string serialize_edge_csv(const Sociogram& g);

bool valid_iso8601(std::string_view s);
std::string fold_identifier(std::string_view s); // trim + ASCII lowercase

} // namespace socio
