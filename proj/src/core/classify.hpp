#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "core/graph.hpp"

namespace socio {

enum class Archetype : std::uint8_t {
    Unified = 0,
    InHub = 1,
    OutHub = 2,
    MultiTopic = 3,
    Polarized = 4,
    Fragmented = 5,
};

const char* archetype_name(Archetype k);
std::optional<Archetype> archetype_from_string(std::string_view s);

// Label-free shape summary of a sociogram. Edge counts are distinct directed
// pairs (self-loops included); und/cross quantities use the symmetrized view.
struct FeatureVector {
    std::size_t n_vertices = 0;
    std::size_t n_edges = 0;
    double isolate_fraction = 0.0;           // und_degree == 0 (self-loops only)
    double largest_component_fraction = 0.0;
    double largest_component_density = 0.0;  // directed density within the LC
    double hub_in_share = 0.0;               // max in-degree / n_edges
    double hub_out_share = 0.0;
    double bipartition_q = 0.0;              // 0 when no 2-block cut exists
    double cross_block_edge_fraction = 1.0;  // 1 when no 2-block cut exists
    std::size_t component_count = 0;
    double self_loop_fraction = 0.0;         // vertices carrying a self-loop
};

// Requires |V| >= 1 (contract error otherwise).
FeatureVector extract_features(const Sociogram& g);

// Decision-list thresholds. Defaults follow the shipped classifier.json.
struct ClassifierConfig {
    double hub_share = 0.6;             // min in-share (out-share) for a hub
    double hub_other_max = 0.2;         // max share on the opposite side
    double isolate_fraction = 0.5;      // min isolate fraction for fragmented
    double polarized_q = 0.3;           // min bipartition modularity
    double polarized_cross_max = 0.05;  // max cross-block edge fraction
    double unified_component_fraction = 0.8;
    double unified_density = 0.3;       // min density of the largest component
};

ClassifierConfig default_classifier_config();

// Loads thresholds from a JSON object file; absent keys keep their defaults,
// unknown keys or non-numeric values throw config_error.
ClassifierConfig load_classifier_config(const std::string& path);

struct ArchetypeLabel {
    Archetype kind = Archetype::MultiTopic;
    double confidence = 0.0; // decisive-feature margin, clamped to [0,1]
};

// First-match decision list:
//   fragmented -> in_hub -> out_hub -> polarized -> unified -> multi_topic.
// multi_topic is the unconditional fallback.
ArchetypeLabel classify_archetype(const FeatureVector& f, const ClassifierConfig& cfg);
ArchetypeLabel classify_archetype(const Sociogram& g, const ClassifierConfig& cfg);

// Seeded synthetic graph with the archetype's defining shape; identical
// output for identical (kind, size, seed). size < 5 throws contract_error.
Sociogram generate_archetype(Archetype kind, std::size_t size, std::uint64_t seed);

} // namespace socio
