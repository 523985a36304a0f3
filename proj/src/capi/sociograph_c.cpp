#include "sociograph/sociograph.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <map>
#include <string>

#include "core/analysis.hpp"
#include "core/centrality.hpp"
#include "core/classify.hpp"
#include "core/community.hpp"
#include "core/errors.hpp"
#include "core/graph.hpp"
#include "core/layout.hpp"
#include "core/metrics.hpp"
#include "core/report.hpp"
#include "core/statfit.hpp"
#include "core/version.hpp"

struct sg_graph {
    socio::Sociogram g;
};

namespace {

thread_local std::string t_last_error;

sg_status fail(sg_status code, const char* what) {
    t_last_error = what;
    return code;
}

template <typename Fn>
sg_status wrap(Fn&& fn) {
    try {
        fn();
        t_last_error.clear();
        return SG_OK;
    } catch (const socio::io_error& e) {
        return fail(SG_ERR_IO, e.what());
    } catch (const socio::format_error& e) {
        return fail(SG_ERR_FORMAT, e.what());
    } catch (const socio::config_error& e) {
        return fail(SG_ERR_CONFIG, e.what());
    } catch (const socio::undefined_metric_error& e) {
        return fail(SG_ERR_UNDEFINED, e.what());
    } catch (const socio::singular_fit_error& e) {
        return fail(SG_ERR_SINGULAR, e.what());
    } catch (const socio::contract_error& e) {
        return fail(SG_ERR_INVALID, e.what());
    } catch (const std::exception& e) {
        return fail(SG_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(SG_ERR_INTERNAL, "unknown error");
    }
}

sg_status require(bool ok, const char* what) {
    if (ok) return SG_OK;
    return fail(SG_ERR_INVALID, what);
}

char* dup_string(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) return nullptr;
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

sg_status emit_string(const std::string& s, char** out) {
    *out = dup_string(s);
    if (!*out) return fail(SG_ERR_INTERNAL, "out of memory");
    return SG_OK;
}

socio::VertexAttributes export_attributes(const socio::Sociogram& g) {
    socio::VertexAttributes attrs;
    const std::size_t n = g.vertex_count();
    auto grouping = socio::cnm_partition(g);
    attrs.group.assign(n, 0);
    for (std::size_t b = 0; b < grouping.blocks.size(); ++b)
        for (std::uint32_t v : grouping.blocks[b]) attrs.group[v] = static_cast<std::uint32_t>(b);
    attrs.clustering.resize(n);
    for (std::uint32_t v = 0; v < n; ++v) attrs.clustering[v] = socio::local_clustering(g, v);
    attrs.betweenness = socio::betweenness(g, socio::Directedness::Directed, false, 1);
    attrs.pagerank = socio::pagerank(g, 0.85, 1e-10, 200, 1).scores;
    attrs.eigenvector = socio::eigenvector_centrality(g, 1e-10, 1000, 1).scores;
    return attrs;
}

} // namespace

extern "C" {

const char* sg_version(void) { return socio::version_string; }

const char* sg_last_error(void) { return t_last_error.c_str(); }

void sg_string_free(char* s) { std::free(s); }

sg_status sg_graph_load_csv(const char* path, int collapse_duplicates, sg_graph** out) {
    if (sg_status s = require(path && out, "null argument"); s != SG_OK) return s;
    return wrap([&] {
        auto doc = socio::parse_edge_csv_file(path);
        auto mode = collapse_duplicates ? socio::DedupMode::CollapsePairs
                                        : socio::DedupMode::KeepAll;
        *out = new sg_graph{socio::build_graph(doc, mode)};
    });
}

sg_status sg_graph_from_csv_text(const char* text, int collapse_duplicates, sg_graph** out) {
    if (sg_status s = require(text && out, "null argument"); s != SG_OK) return s;
    return wrap([&] {
        auto doc = socio::parse_edge_csv(text);
        auto mode = collapse_duplicates ? socio::DedupMode::CollapsePairs
                                        : socio::DedupMode::KeepAll;
        *out = new sg_graph{socio::build_graph(doc, mode)};
    });
}

sg_status sg_graph_generate(const char* archetype, uint32_t size, uint64_t seed, sg_graph** out) {
    if (sg_status s = require(archetype && out, "null argument"); s != SG_OK) return s;
    return wrap([&] {
        auto kind = socio::archetype_from_string(archetype);
        if (!kind) throw socio::contract_error(std::string("unknown archetype: ") + archetype);
        *out = new sg_graph{socio::generate_archetype(*kind, size, seed)};
    });
}

void sg_graph_free(sg_graph* g) { delete g; }

size_t sg_graph_vertex_count(const sg_graph* g) { return g ? g->g.vertex_count() : 0; }

size_t sg_graph_edge_count(const sg_graph* g) { return g ? g->g.edges().size() : 0; }

size_t sg_graph_unique_edge_count(const sg_graph* g) { return g ? g->g.unique_edge_count() : 0; }

const char* sg_graph_vertex_name(const sg_graph* g, uint32_t v) {
    if (!g || v >= g->g.vertex_count()) return nullptr;
    return g->g.vertex_name(v).c_str();
}

sg_status sg_graph_vertex_index(const sg_graph* g, const char* name, uint32_t* out) {
    if (sg_status s = require(g && name && out, "null argument"); s != SG_OK) return s;
    auto idx = g->g.vertex_index(socio::fold_identifier(name));
    if (!idx) return fail(SG_ERR_INVALID, "unknown vertex name");
    *out = *idx;
    t_last_error.clear();
    return SG_OK;
}

uint32_t sg_graph_in_degree(const sg_graph* g, uint32_t v) {
    if (!g || v >= g->g.vertex_count()) return 0;
    return g->g.in_degree(v);
}

uint32_t sg_graph_out_degree(const sg_graph* g, uint32_t v) {
    if (!g || v >= g->g.vertex_count()) return 0;
    return g->g.out_degree(v);
}

sg_status sg_global_clustering(const sg_graph* g, double* out) {
    if (sg_status s = require(g && out, "null argument"); s != SG_OK) return s;
    return wrap([&] { *out = socio::global_clustering(g->g); });
}

sg_status sg_density(const sg_graph* g, double* out) {
    if (sg_status s = require(g && out, "null argument"); s != SG_OK) return s;
    return wrap([&] { *out = socio::density(g->g); });
}

sg_status sg_geodesics(const sg_graph* g, double* avg_out, uint32_t* diameter_out) {
    if (sg_status s = require(g && avg_out && diameter_out, "null argument"); s != SG_OK) return s;
    return wrap([&] {
        auto st = socio::geodesic_stats(g->g);
        *avg_out = st.avg_geodesic;
        *diameter_out = st.diameter;
    });
}

sg_status sg_asymmetry_ratio(double n_in, double n_out, double* out) {
    if (sg_status s = require(out != nullptr, "null argument"); s != SG_OK) return s;
    if (!(n_in > 0.0) || !(n_out > 0.0))
        return fail(SG_ERR_INVALID, "asymmetry ratio requires positive counts");
    *out = socio::asymmetry_ratio(n_in, n_out);
    t_last_error.clear();
    return SG_OK;
}

sg_status sg_betweenness(const sg_graph* g, int directed, int normalized, unsigned threads,
                         double* out) {
    if (sg_status s = require(g && out, "null argument"); s != SG_OK) return s;
    return wrap([&] {
        auto mode = directed ? socio::Directedness::Directed : socio::Directedness::Undirected;
        auto scores = socio::betweenness(g->g, mode, normalized != 0, threads);
        std::memcpy(out, scores.data(), scores.size() * sizeof(double));
    });
}

sg_status sg_pagerank(const sg_graph* g, double damping, double tol, int max_iter,
                      unsigned threads, double* out, int* iterations_out, int* converged_out) {
    if (sg_status s = require(g && out, "null argument"); s != SG_OK) return s;
    return wrap([&] {
        auto r = socio::pagerank(g->g, damping, tol, max_iter, threads);
        std::memcpy(out, r.scores.data(), r.scores.size() * sizeof(double));
        if (iterations_out) *iterations_out = r.iterations;
        if (converged_out) *converged_out = r.converged ? 1 : 0;
    });
}

sg_status sg_eigenvector(const sg_graph* g, double tol, int max_iter, unsigned threads,
                         double* out, int* iterations_out, int* converged_out) {
    if (sg_status s = require(g && out, "null argument"); s != SG_OK) return s;
    return wrap([&] {
        auto r = socio::eigenvector_centrality(g->g, tol, max_iter, threads);
        std::memcpy(out, r.scores.data(), r.scores.size() * sizeof(double));
        if (iterations_out) *iterations_out = r.iterations;
        if (converged_out) *converged_out = r.converged ? 1 : 0;
    });
}

sg_status sg_cnm_partition(const sg_graph* g, uint32_t* labels_out, size_t* group_count_out,
                           double* q_out) {
    if (sg_status s = require(g && labels_out && group_count_out && q_out, "null argument");
        s != SG_OK)
        return s;
    return wrap([&] {
        auto grouping = socio::cnm_partition(g->g);
        for (std::size_t b = 0; b < grouping.blocks.size(); ++b)
            for (std::uint32_t v : grouping.blocks[b])
                labels_out[v] = static_cast<uint32_t>(b);
        *group_count_out = grouping.blocks.size();
        *q_out = grouping.q_defined ? grouping.modularity_q : std::nan("");
    });
}

sg_status sg_modularity(const sg_graph* g, const uint32_t* labels, size_t n_labels,
                        double* q_out) {
    if (sg_status s = require(g && labels && q_out, "null argument"); s != SG_OK) return s;
    return wrap([&] {
        if (n_labels != g->g.vertex_count())
            throw socio::contract_error("label array must cover every vertex");
        std::map<uint32_t, std::vector<std::uint32_t>> blocks;
        for (std::size_t v = 0; v < n_labels; ++v)
            blocks[labels[v]].push_back(static_cast<std::uint32_t>(v));
        std::vector<std::vector<std::uint32_t>> partition;
        partition.reserve(blocks.size());
        for (auto& [label, members] : blocks) partition.push_back(std::move(members));
        *q_out = socio::modularity(g->g, partition);
    });
}

sg_status sg_classify(const sg_graph* g, const char* config_path, char** kind_out,
                      double* confidence_out) {
    if (sg_status s = require(g && kind_out && confidence_out, "null argument"); s != SG_OK)
        return s;
    return wrap([&] {
        socio::ClassifierConfig cfg = config_path ? socio::load_classifier_config(config_path)
                                                  : socio::default_classifier_config();
        auto label = socio::classify_archetype(g->g, cfg);
        char* kind = dup_string(socio::archetype_name(label.kind));
        if (!kind) throw std::bad_alloc();
        *kind_out = kind;
        *confidence_out = label.confidence;
    });
}

sg_status sg_fit(const char* model, const double* xs, const double* ys, size_t n, double* a_out,
                 double* b_out, double* r2_out, int* flat_out) {
    if (sg_status s = require(model && xs && ys && a_out && b_out && r2_out, "null argument");
        s != SG_OK)
        return s;
    return wrap([&] {
        std::vector<socio::FitPoint> pts(n);
        for (std::size_t i = 0; i < n; ++i) pts[i] = {xs[i], ys[i]};
        std::string m = model;
        socio::FitResult r;
        if (m == "power_law")
            r = socio::fit_power_law(pts);
        else if (m == "exponential")
            r = socio::fit_exponential(pts);
        else if (m == "power_law_stretched")
            r = socio::fit_power_law_stretched(pts);
        else
            throw socio::contract_error("unknown fit model: " + m);
        *a_out = r.param_a_or_k;
        *b_out = r.param_beta_or_alpha;
        *r2_out = r.r_squared;
        if (flat_out) *flat_out = r.flat ? 1 : 0;
    });
}

sg_status sg_layout(const sg_graph* g, double repulsion, uint32_t iterations, uint64_t seed,
                    double* xy_out) {
    if (sg_status s = require(g && xy_out, "null argument"); s != SG_OK) return s;
    return wrap([&] {
        auto lay = socio::fr_layout(g->g, repulsion, iterations, seed);
        for (std::size_t v = 0; v < lay.positions.size(); ++v) {
            xy_out[2 * v] = lay.positions[v].x;
            xy_out[2 * v + 1] = lay.positions[v].y;
        }
    });
}

sg_status sg_layout_csv(const sg_graph* g, double repulsion, uint32_t iterations, uint64_t seed,
                        char** out) {
    if (sg_status s = require(g && out, "null argument"); s != SG_OK) return s;
    return wrap([&] {
        auto lay = socio::fr_layout(g->g, repulsion, iterations, seed);
        if (emit_string(socio::layout_csv(g->g, lay), out) != SG_OK) throw std::bad_alloc();
    });
}

sg_status sg_export_graphml(const sg_graph* g, char** out) {
    if (sg_status s = require(g && out, "null argument"); s != SG_OK) return s;
    return wrap([&] {
        std::string doc = g->g.vertex_count() == 0
                              ? socio::empty_graphml_document()
                              : socio::graphml_document(g->g, export_attributes(g->g));
        if (emit_string(doc, out) != SG_OK) throw std::bad_alloc();
    });
}

sg_status sg_export_dot(const sg_graph* g, char** out) {
    if (sg_status s = require(g && out, "null argument"); s != SG_OK) return s;
    return wrap([&] {
        std::string doc = g->g.vertex_count() == 0
                              ? socio::empty_dot_document()
                              : socio::dot_document(g->g, export_attributes(g->g));
        if (emit_string(doc, out) != SG_OK) throw std::bad_alloc();
    });
}

sg_status sg_export_edges_csv(const sg_graph* g, char** out) {
    if (sg_status s = require(g && out, "null argument"); s != SG_OK) return s;
    return wrap([&] {
        if (emit_string(socio::serialize_edge_csv(g->g), out) != SG_OK) throw std::bad_alloc();
    });
}

void sg_analyze_options_init(sg_analyze_options* opts) {
    if (!opts) return;
    std::memset(opts, 0, sizeof(*opts));
    opts->collapse_duplicates = 1;
    opts->damping = 0.85;
    opts->fr_repulsion = 3.5;
    opts->fr_iterations = 10;
    opts->seed = 42;
    opts->threads = 1;
}

sg_status sg_analyze(const sg_analyze_options* opts, char** report_json_out) {
    if (sg_status s = require(opts != nullptr, "null argument"); s != SG_OK) return s;
    if (sg_status s = require(opts->edges_path && opts->lexicon_dir && opts->risk_config_path &&
                                  opts->output_dir,
                              "edges_path, lexicon_dir, risk_config_path and output_dir are "
                              "required");
        s != SG_OK)
        return s;
    return wrap([&] {
        socio::AnalysisConfig cfg;
        cfg.input_edges = opts->edges_path;
        cfg.lexicon_dir = opts->lexicon_dir;
        cfg.risk_config = opts->risk_config_path;
        if (opts->classifier_config_path) cfg.classifier_config = opts->classifier_config_path;
        cfg.output_dir = opts->output_dir;
        cfg.dedup = opts->collapse_duplicates ? socio::DedupMode::CollapsePairs
                                              : socio::DedupMode::KeepAll;
        cfg.pagerank.damping = opts->damping;
        cfg.layout.repulsion = opts->fr_repulsion;
        cfg.layout.iterations = opts->fr_iterations;
        cfg.layout.seed = opts->seed;
        cfg.threads = opts->threads;
        cfg.deterministic = opts->deterministic != 0;
        if (opts->stage) {
            auto stage = socio::stage_from_string(opts->stage);
            if (!stage) throw socio::config_error(std::string("unknown stage: ") + opts->stage);
            cfg.stage = *stage;
        }
        auto outcome = socio::run_analyze(cfg);
        if (report_json_out) {
            if (emit_string(socio::canonical_json(outcome.report), report_json_out) != SG_OK)
                throw std::bad_alloc();
        }
    });
}

} // extern "C"
