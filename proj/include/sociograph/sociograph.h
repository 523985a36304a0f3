#ifndef SOCIOGRAPH_H
#define SOCIOGRAPH_H

/* C interface to the sociograph analysis library.
 *
 * Every fallible call returns an sg_status; on failure sg_last_error()
 * holds a thread-local message describing what went wrong. Output buffers
 * are caller-allocated unless a function documents malloc semantics, in
 * which case the result must be released with sg_string_free(). */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SG_API __declspec(dllexport)
#else
#define SG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sg_status {
    SG_OK = 0,
    SG_ERR_IO = 1,        /* unreadable or unwritable file */
    SG_ERR_FORMAT = 2,    /* malformed input document */
    SG_ERR_CONFIG = 3,    /* invalid configuration value or file */
    SG_ERR_UNDEFINED = 4, /* metric undefined for this input */
    SG_ERR_INVALID = 5,   /* argument violates a precondition */
    SG_ERR_SINGULAR = 6,  /* regression admits no unique solution */
    SG_ERR_INTERNAL = 7
} sg_status;

/* Opaque immutable directed multigraph. */
typedef struct sg_graph sg_graph;

SG_API const char* sg_version(void);
/* Message for the most recent failure on this thread; empty after success. */
SG_API const char* sg_last_error(void);
SG_API void sg_string_free(char* s);

/* ---- graph lifecycle -------------------------------------------------- */

/* collapse_duplicates nonzero keeps one row per ordered (source,target). */
SG_API sg_status sg_graph_load_csv(const char* path, int collapse_duplicates, sg_graph** out);
SG_API sg_status sg_graph_from_csv_text(const char* text, int collapse_duplicates, sg_graph** out);
/* archetype is one of unified, in_hub, out_hub, multi_topic, polarized,
 * fragmented; size must be at least 5. */
SG_API sg_status sg_graph_generate(const char* archetype, uint32_t size, uint64_t seed,
                                   sg_graph** out);
SG_API void sg_graph_free(sg_graph* g);

/* ---- shape ------------------------------------------------------------ */

SG_API size_t sg_graph_vertex_count(const sg_graph* g);
SG_API size_t sg_graph_edge_count(const sg_graph* g);        /* retained rows */
SG_API size_t sg_graph_unique_edge_count(const sg_graph* g); /* distinct pairs */
/* Pointer into the graph, valid until sg_graph_free; NULL if out of range. */
SG_API const char* sg_graph_vertex_name(const sg_graph* g, uint32_t v);
/* Name is trimmed and lowercased before lookup, matching ingestion. */
SG_API sg_status sg_graph_vertex_index(const sg_graph* g, const char* name, uint32_t* out);
SG_API uint32_t sg_graph_in_degree(const sg_graph* g, uint32_t v);
SG_API uint32_t sg_graph_out_degree(const sg_graph* g, uint32_t v);

/* ---- global metrics ---------------------------------------------------- */

SG_API sg_status sg_global_clustering(const sg_graph* g, double* out);
SG_API sg_status sg_density(const sg_graph* g, double* out);
SG_API sg_status sg_geodesics(const sg_graph* g, double* avg_out, uint32_t* diameter_out);
/* log10(n_in / n_out); either argument nonpositive is invalid. */
SG_API sg_status sg_asymmetry_ratio(double n_in, double n_out, double* out);

/* ---- centrality: out buffers hold vertex_count doubles ----------------- */

SG_API sg_status sg_betweenness(const sg_graph* g, int directed, int normalized, unsigned threads,
                                double* out);
SG_API sg_status sg_pagerank(const sg_graph* g, double damping, double tol, int max_iter,
                             unsigned threads, double* out, int* iterations_out,
                             int* converged_out);
SG_API sg_status sg_eigenvector(const sg_graph* g, double tol, int max_iter, unsigned threads,
                                double* out, int* iterations_out, int* converged_out);

/* ---- community ---------------------------------------------------------- */

/* labels_out holds vertex_count entries: block id per vertex. q_out is NaN
 * when modularity is undefined (edgeless graph). */
SG_API sg_status sg_cnm_partition(const sg_graph* g, uint32_t* labels_out,
                                  size_t* group_count_out, double* q_out);
SG_API sg_status sg_modularity(const sg_graph* g, const uint32_t* labels, size_t n_labels,
                               double* q_out);

/* ---- classification ------------------------------------------------------ */

/* config_path NULL uses built-in thresholds. kind_out is malloc'd. */
SG_API sg_status sg_classify(const sg_graph* g, const char* config_path, char** kind_out,
                             double* confidence_out);

/* ---- regression ----------------------------------------------------------- */

/* model is power_law, exponential, or power_law_stretched. a_out/b_out
 * receive (a, beta) or (k, alpha); flat_out reports the constant-target
 * convention. */
SG_API sg_status sg_fit(const char* model, const double* xs, const double* ys, size_t n,
                        double* a_out, double* b_out, double* r2_out, int* flat_out);

/* ---- layout ----------------------------------------------------------------- */

/* xy_out holds 2*vertex_count doubles: x0,y0,x1,y1,... on a 1000x1000 canvas. */
SG_API sg_status sg_layout(const sg_graph* g, double repulsion, uint32_t iterations,
                           uint64_t seed, double* xy_out);
/* Canonical layout.csv document for the same computation; malloc'd. */
SG_API sg_status sg_layout_csv(const sg_graph* g, double repulsion, uint32_t iterations,
                               uint64_t seed, char** out);

/* ---- exports: results are malloc'd strings ----------------------------------- */

SG_API sg_status sg_export_graphml(const sg_graph* g, char** out);
SG_API sg_status sg_export_dot(const sg_graph* g, char** out);
SG_API sg_status sg_export_edges_csv(const sg_graph* g, char** out);

/* ---- full pipeline -------------------------------------------------------------- */

typedef struct sg_analyze_options {
    const char* edges_path;
    const char* lexicon_dir;
    const char* risk_config_path;
    const char* classifier_config_path; /* NULL uses built-in thresholds */
    const char* output_dir;
    const char* stage;                  /* NULL runs the full pipeline */
    int collapse_duplicates;
    double damping;
    double fr_repulsion;
    uint32_t fr_iterations;
    uint64_t seed;
    unsigned threads;
    int deterministic; /* nonzero omits the provenance timestamp */
} sg_analyze_options;

/* Fills in the documented defaults: collapse dedup, damping 0.85,
 * repulsion 3.5, 10 iterations, seed 42, 1 thread. */
SG_API void sg_analyze_options_init(sg_analyze_options* opts);

/* Runs the pipeline and writes the requested artifacts under output_dir.
 * report_json_out, when non-NULL, receives the canonical report (malloc'd). */
SG_API sg_status sg_analyze(const sg_analyze_options* opts, char** report_json_out);

#ifdef __cplusplus
}
#endif

#endif /* SOCIOGRAPH_H */
