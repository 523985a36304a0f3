#include "core/classify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include <json.hpp>

#include "core/community.hpp"
#include "core/errors.hpp"
#include "core/rand.hpp"

namespace socio {

const char* archetype_name(Archetype k) {
    switch (k) {
        case Archetype::Unified: return "unified";
        case Archetype::InHub: return "in_hub";
        case Archetype::OutHub: return "out_hub";
        case Archetype::MultiTopic: return "multi_topic";
        case Archetype::Polarized: return "polarized";
        case Archetype::Fragmented: return "fragmented";
    }
    return "multi_topic";
}

std::optional<Archetype> archetype_from_string(std::string_view s) {
    if (s == "unified") return Archetype::Unified;
    if (s == "in_hub") return Archetype::InHub;
    if (s == "out_hub") return Archetype::OutHub;
    if (s == "multi_topic") return Archetype::MultiTopic;
    if (s == "polarized") return Archetype::Polarized;
    if (s == "fragmented") return Archetype::Fragmented;
    return std::nullopt;
}

FeatureVector extract_features(const Sociogram& g) {
    const std::size_t n = g.vertex_count();
    if (n == 0) throw contract_error("features require a nonempty graph");

    FeatureVector f;
    f.n_vertices = n;
    f.n_edges = g.unique_edge_count();

    std::size_t isolates = 0, looped = 0;
    std::uint32_t max_in = 0, max_out = 0;
    for (std::uint32_t v = 0; v < n; ++v) {
        if (g.und_degree(v) == 0) ++isolates;
        if (g.self_loop_tally(v) > 0) ++looped;
        max_in = std::max(max_in, g.in_degree(v));
        max_out = std::max(max_out, g.out_degree(v));
    }
    f.isolate_fraction = static_cast<double>(isolates) / static_cast<double>(n);
    f.self_loop_fraction = static_cast<double>(looped) / static_cast<double>(n);
    if (f.n_edges > 0) {
        f.hub_in_share = static_cast<double>(max_in) / static_cast<double>(f.n_edges);
        f.hub_out_share = static_cast<double>(max_out) / static_cast<double>(f.n_edges);
    }

    auto comps = connected_components(g);
    f.component_count = comps.size();
    const auto& largest = *std::max_element(
        comps.begin(), comps.end(),
        [](const auto& a, const auto& b) { return a.size() < b.size(); });
    f.largest_component_fraction = static_cast<double>(largest.size()) / static_cast<double>(n);

    if (largest.size() >= 2) {
        std::vector<char> in_lc(n, 0);
        for (std::uint32_t v : largest) in_lc[v] = 1;
        std::size_t lc_edges = 0;
        for (std::uint32_t v : largest)
            for (std::uint32_t w : g.out_neighbors(v))
                if (w != v && in_lc[w]) ++lc_edges;
        const double nl = static_cast<double>(largest.size());
        f.largest_component_density = static_cast<double>(lc_edges) / (nl * (nl - 1.0));
    }

    if (auto bp = best_bipartition(g)) {
        f.bipartition_q = bp->q;
        f.cross_block_edge_fraction = bp->cross_edge_fraction;
    }
    return f;
}

ClassifierConfig default_classifier_config() { return ClassifierConfig{}; }

ClassifierConfig load_classifier_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("classifier config: cannot read " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw config_error("classifier config: " + path + ": " + e.what());
    }
    if (!doc.is_object()) throw config_error("classifier config: " + path + ": expected a JSON object");

    ClassifierConfig cfg;
    const std::map<std::string, double*> keys = {
        {"hub_share", &cfg.hub_share},
        {"hub_other_max", &cfg.hub_other_max},
        {"isolate_fraction", &cfg.isolate_fraction},
        {"polarized_q", &cfg.polarized_q},
        {"polarized_cross_max", &cfg.polarized_cross_max},
        {"unified_component_fraction", &cfg.unified_component_fraction},
        {"unified_density", &cfg.unified_density},
    };
    for (const auto& [key, value] : doc.items()) {
        auto it = keys.find(key);
        if (it == keys.end())
            throw config_error("classifier config: unknown key \"" + key + "\"");
        if (!value.is_number())
            throw config_error("classifier config: key \"" + key + "\" must be a number");
        double d = value.get<double>();
        if (!(d >= 0.0 && d <= 1.0))
            throw config_error("classifier config: key \"" + key + "\" must lie in [0,1]");
        *it->second = d;
    }
    return cfg;
}

namespace {

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

} // namespace

ArchetypeLabel classify_archetype(const FeatureVector& f, const ClassifierConfig& cfg) {
    if (f.isolate_fraction >= cfg.isolate_fraction)
        return {Archetype::Fragmented, clamp01(f.isolate_fraction - cfg.isolate_fraction)};
    if (f.hub_in_share >= cfg.hub_share && f.hub_out_share < cfg.hub_other_max)
        return {Archetype::InHub, clamp01(f.hub_in_share - cfg.hub_share)};
    if (f.hub_out_share >= cfg.hub_share && f.hub_in_share < cfg.hub_other_max)
        return {Archetype::OutHub, clamp01(f.hub_out_share - cfg.hub_share)};
    if (f.bipartition_q >= cfg.polarized_q && f.cross_block_edge_fraction < cfg.polarized_cross_max)
        return {Archetype::Polarized, clamp01(f.bipartition_q - cfg.polarized_q)};
    if (f.largest_component_fraction >= cfg.unified_component_fraction &&
        f.largest_component_density >= cfg.unified_density)
        return {Archetype::Unified, clamp01(f.largest_component_density - cfg.unified_density)};
    return {Archetype::MultiTopic, clamp01(1.0 - f.largest_component_fraction)};
}

ArchetypeLabel classify_archetype(const Sociogram& g, const ClassifierConfig& cfg) {
    return classify_archetype(extract_features(g), cfg);
}

namespace {

struct EdgeSink {
    EdgeListDocument doc;
    std::string prefix;
    int width;

    EdgeSink(std::size_t n) : width(1) {
        for (std::size_t v = n - 1; v >= 10; v /= 10) ++width;
        doc.header = {"source", "target", "kind", "text", "timestamp"};
    }

    std::string name(std::size_t v) const {
        std::string digits = std::to_string(v);
        std::string out = "v";
        out.append(static_cast<std::size_t>(width) - digits.size(), '0');
        out += digits;
        return out;
    }

    void add(std::size_t a, std::size_t b, EdgeKind kind) {
        doc.edges.push_back(Edge{name(a), name(b), kind, std::nullopt, std::nullopt});
    }

    Sociogram build() {
        doc.row_count = doc.edges.size();
        return build_graph(doc, DedupMode::CollapsePairs);
    }
};

void gen_hub(EdgeSink& sink, std::size_t n, rng::engine& eng, bool inward) {
    for (std::size_t v = 1; v < n; ++v) {
        if (inward)
            sink.add(v, 0, EdgeKind::Retweet);
        else
            sink.add(0, v, EdgeKind::Retweet);
    }
    const std::size_t noise = (n - 1) / 20;
    for (std::size_t i = 0; i < noise; ++i) {
        std::size_t a = 1 + rng::below(eng, n - 1);
        std::size_t b = 1 + rng::below(eng, n - 1);
        while (b == a) b = 1 + rng::below(eng, n - 1);
        sink.add(a, b, EdgeKind::Mention);
    }
}

// Dense directed block over [lo, lo+len) plus a spanning path.
void gen_block(EdgeSink& sink, std::size_t lo, std::size_t len, double p, rng::engine& eng) {
    if (len == 1) {
        sink.add(lo, lo, EdgeKind::Tweet);
        return;
    }
    for (std::size_t u = lo; u < lo + len; ++u)
        for (std::size_t v = lo; v < lo + len; ++v)
            if (u != v && rng::unit(eng) < p) sink.add(u, v, EdgeKind::Mention);
    for (std::size_t u = lo; u + 1 < lo + len; ++u) sink.add(u, u + 1, EdgeKind::Reply);
}

void gen_unified(EdgeSink& sink, std::size_t n, rng::engine& eng) {
    gen_block(sink, 0, n, 0.4, eng);
}

void gen_polarized(EdgeSink& sink, std::size_t n, rng::engine& eng) {
    const std::size_t na = (n + 1) / 2;
    gen_block(sink, 0, na, 0.3, eng);
    gen_block(sink, na, n - na, 0.3, eng);
    const std::size_t cross = std::max<std::size_t>(1, sink.doc.edges.size() / 50);
    for (std::size_t i = 0; i < cross; ++i) {
        std::size_t a = rng::below(eng, na);
        std::size_t b = na + rng::below(eng, n - na);
        if (rng::unit(eng) < 0.5)
            sink.add(a, b, EdgeKind::Reply);
        else
            sink.add(b, a, EdgeKind::Reply);
    }
}

void gen_fragmented(EdgeSink& sink, std::size_t n, rng::engine& eng) {
    const std::size_t isolates = (13 * n + 19) / 20; // ceil(0.65 n)
    for (std::size_t v = 0; v < isolates; ++v) sink.add(v, v, EdgeKind::Tweet);
    std::size_t v = isolates;
    while (v < n) {
        std::size_t left = n - v;
        std::size_t len = 2;
        if (left == 1)
            len = 1;
        else if (left >= 3 && rng::unit(eng) < 0.5)
            len = 3;
        if (len == 1) {
            sink.add(v, v, EdgeKind::Tweet);
        } else {
            for (std::size_t u = v; u + 1 < v + len; ++u) sink.add(u, u + 1, EdgeKind::Mention);
        }
        v += len;
    }
}

void gen_multi_topic(EdgeSink& sink, std::size_t n, rng::engine& eng) {
    const std::size_t blocks = 3 + rng::below(eng, 4);
    const std::size_t outliers = n / 10;
    const std::size_t nb = n - outliers;
    std::size_t lo = 0;
    for (std::size_t b = 0; b < blocks && lo < nb; ++b) {
        std::size_t len = nb / blocks + (b < nb % blocks ? 1 : 0);
        if (len == 0) continue;
        gen_block(sink, lo, len, 0.35, eng);
        lo += len;
    }
    for (std::size_t v = nb; v < n; ++v) sink.add(v, v, EdgeKind::Tweet);
}

} // namespace

Sociogram generate_archetype(Archetype kind, std::size_t size, std::uint64_t seed) {
    if (size < 5) throw contract_error("archetype generation requires size >= 5");

    rng::engine eng(rng::mix(seed, static_cast<std::uint64_t>(kind) + 1));
    EdgeSink sink(size);
    switch (kind) {
        case Archetype::Unified: gen_unified(sink, size, eng); break;
        case Archetype::InHub: gen_hub(sink, size, eng, true); break;
        case Archetype::OutHub: gen_hub(sink, size, eng, false); break;
        case Archetype::MultiTopic: gen_multi_topic(sink, size, eng); break;
        case Archetype::Polarized: gen_polarized(sink, size, eng); break;
        case Archetype::Fragmented: gen_fragmented(sink, size, eng); break;
    }
    return sink.build();
}

} // namespace socio
