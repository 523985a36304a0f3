#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "core/graph.hpp"

namespace socio {

// Pipeline stages in execution order; --stage stops after the named one.
enum class Stage : int {
    Graphcore = 0,
    Metrics = 1,
    Centrality = 2,
    Community = 3,
    Classify = 4,
    Text = 5,
    Statfit = 6,
    Layout = 7,
};

const char* stage_name(Stage s);
std::optional<Stage> stage_from_string(std::string_view s);

struct LayoutParams {
    double repulsion = 3.5;
    std::size_t iterations = 10;
    std::uint64_t seed = 42;
};

struct PageRankParams {
    double damping = 0.85;
    double tol = 1e-10;
    int max_iter = 200;
};

struct EmitSet {
    bool report = true;
    bool vertices_csv = true;
    bool layout_csv = true;
    bool graphml = true;
    bool dot = true;
};

struct AnalysisConfig {
    std::string input_edges;
    std::string lexicon_dir;
    std::string risk_config;
    std::string classifier_config; // empty -> built-in defaults
    DedupMode dedup = DedupMode::CollapsePairs;
    LayoutParams layout;
    PageRankParams pagerank;
    std::string output_dir;
    EmitSet emit;
    unsigned threads = 1;
    bool deterministic = false; // omit the provenance timestamp
    Stage stage = Stage::Layout;
};

struct AnalysisOutcome {
    nlohmann::json report;
    std::vector<std::string> files_written;
};

// Validates the config up front (config_error names the offending path or
// parameter), runs graphcore -> ... -> layout through config.stage, and
// writes the requested artifacts into output_dir. vertices.csv and the graph
// exports require the community stage; layout.csv requires the layout stage.
// A failure past validation is rethrown with the failing stage prefixed to
// its message, after removing any files already written.
AnalysisOutcome run_analyze(const AnalysisConfig& config);

} // namespace socio
