#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sociograph/sociograph.h"

namespace {

int exit_code_for(sg_status s) {
    switch (s) {
        case SG_OK:
            return 0;
        case SG_ERR_CONFIG:
        case SG_ERR_FORMAT:
        case SG_ERR_INVALID:
            return 2;
        default:
            return 1;
    }
}

int report_failure(sg_status s) {
    std::fprintf(stderr, "error: %s\n", sg_last_error());
    return exit_code_for(s);
}

// Writes text to the path, "-" meaning stdout.
bool write_text(const std::string& path, const char* text) {
    if (path == "-") {
        std::fputs(text, stdout);
        return true;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out << text;
    out.flush();
    return static_cast<bool>(out);
}

struct AnalyzeArgs {
    std::string edges, lexicons, risk, out_dir, classifier, stage;
    std::string dedup = "collapse";
    double repulsion = 3.5;
    double damping = 0.85;
    std::uint32_t iterations = 10;
    std::uint64_t seed = 42;
    unsigned threads = 1;
    bool deterministic = false;
};

int run_analyze(const AnalyzeArgs& a) {
    sg_analyze_options o;
    sg_analyze_options_init(&o);
    o.edges_path = a.edges.c_str();
    o.lexicon_dir = a.lexicons.c_str();
    o.risk_config_path = a.risk.c_str();
    o.classifier_config_path = a.classifier.empty() ? nullptr : a.classifier.c_str();
    o.output_dir = a.out_dir.c_str();
    o.stage = a.stage.empty() ? nullptr : a.stage.c_str();
    o.collapse_duplicates = a.dedup == "collapse" ? 1 : 0;
    o.damping = a.damping;
    o.fr_repulsion = a.repulsion;
    o.fr_iterations = a.iterations;
    o.seed = a.seed;
    o.threads = a.threads;
    o.deterministic = a.deterministic ? 1 : 0;
    sg_status s = sg_analyze(&o, nullptr);
    if (s != SG_OK) return report_failure(s);
    return 0;
}

struct GenerateArgs {
    std::string kind;
    std::uint32_t size = 0;
    std::uint64_t seed = 1;
    std::string out = "-";
};

int run_generate(const GenerateArgs& a) {
    sg_graph* g = nullptr;
    sg_status s = sg_graph_generate(a.kind.c_str(), a.size, a.seed, &g);
    if (s != SG_OK) return report_failure(s);
    char* csv = nullptr;
    s = sg_export_edges_csv(g, &csv);
    sg_graph_free(g);
    if (s != SG_OK) return report_failure(s);
    bool ok = write_text(a.out, csv);
    sg_string_free(csv);
    if (!ok) {
        std::fprintf(stderr, "error: cannot write %s\n", a.out.c_str());
        return 1;
    }
    return 0;
}

struct FitArgs {
    std::string model;
    std::string data;
};

// Reads a two-column numeric CSV; one optional non-numeric header line.
bool read_points(const std::string& path, std::vector<double>& xs, std::vector<double>& ys,
                 std::string& error) {
    std::ifstream in(path);
    if (!in) {
        error = "cannot open: " + path;
        return false;
    }
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) {
            error = "line " + std::to_string(lineno) + ": expected two comma-separated columns";
            return false;
        }
        char* end = nullptr;
        const std::string xs_str = line.substr(0, comma);
        const std::string ys_str = line.substr(comma + 1);
        double x = std::strtod(xs_str.c_str(), &end);
        bool x_ok = end && *end == '\0' && !xs_str.empty();
        double y = std::strtod(ys_str.c_str(), &end);
        bool y_ok = end && *end == '\0' && !ys_str.empty();
        if (!x_ok || !y_ok) {
            if (lineno == 1) continue; // header
            error = "line " + std::to_string(lineno) + ": expected two numeric columns";
            return false;
        }
        xs.push_back(x);
        ys.push_back(y);
    }
    return true;
}

int run_fit(const FitArgs& a) {
    std::vector<double> xs, ys;
    std::string error;
    if (!read_points(a.data, xs, ys, error)) {
        std::fprintf(stderr, "error: %s\n", error.c_str());
        return error.rfind("cannot open", 0) == 0 ? 1 : 2;
    }
    double pa = 0, pb = 0, r2 = 0;
    int flat = 0;
    sg_status s = sg_fit(a.model.c_str(), xs.data(), ys.data(), xs.size(), &pa, &pb, &r2, &flat);
    if (s != SG_OK) return report_failure(s);
    std::printf("{\n");
    std::printf("  \"flat\": %s,\n", flat ? "true" : "false");
    std::printf("  \"model\": \"%s\",\n", a.model.c_str());
    std::printf("  \"n_points\": %zu,\n", xs.size());
    std::printf("  \"param_a_or_k\": %.12g,\n", pa);
    std::printf("  \"param_beta_or_alpha\": %.12g,\n", pb);
    std::printf("  \"r_squared\": %.12g\n", r2);
    std::printf("}\n");
    return 0;
}

struct LayoutArgs {
    std::string edges;
    std::string out = "-";
    std::string dedup = "collapse";
    double repulsion = 3.5;
    std::uint32_t iterations = 10;
    std::uint64_t seed = 42;
};

int run_layout(const LayoutArgs& a) {
    sg_graph* g = nullptr;
    sg_status s = sg_graph_load_csv(a.edges.c_str(), a.dedup == "collapse" ? 1 : 0, &g);
    if (s != SG_OK) return report_failure(s);
    char* csv = nullptr;
    s = sg_layout_csv(g, a.repulsion, a.iterations, a.seed, &csv);
    sg_graph_free(g);
    if (s != SG_OK) return report_failure(s);
    bool ok = write_text(a.out, csv);
    sg_string_free(csv);
    if (!ok) {
        std::fprintf(stderr, "error: cannot write %s\n", a.out.c_str());
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sociogram analysis toolkit"};
    app.set_version_flag("--version", std::string(sg_version()));
    app.require_subcommand(1);

    AnalyzeArgs an;
    CLI::App* analyze = app.add_subcommand("analyze", "Run the pipeline and write artifacts");
    analyze->add_option("--edges", an.edges, "Edge-list CSV")->required();
    analyze->add_option("--lexicons", an.lexicons, "Directory with the six lexicon files")
        ->required();
    analyze->add_option("--risk", an.risk, "Risk factor category JSON")->required();
    analyze->add_option("--out", an.out_dir, "Output directory")->required();
    analyze->add_option("--classifier", an.classifier, "Classifier threshold JSON");
    analyze->add_option("--dedup", an.dedup, "Duplicate handling")
        ->check(CLI::IsMember({"collapse", "keep"}));
    analyze->add_option("--fr-repulsion", an.repulsion, "Layout repulsion multiplier");
    analyze->add_option("--fr-iterations", an.iterations, "Layout iterations");
    analyze->add_option("--seed", an.seed, "Layout seed");
    analyze->add_option("--damping", an.damping, "PageRank damping factor");
    analyze->add_option("--threads", an.threads, "Worker cap; never changes output bytes");
    analyze->add_flag("--deterministic", an.deterministic, "Omit the provenance timestamp");
    analyze->add_option("--stage", an.stage, "Stop after this stage")
        ->check(CLI::IsMember({"graphcore", "metrics", "centrality", "community", "classify",
                               "text", "statfit", "layout"}));

    GenerateArgs ge;
    CLI::App* generate = app.add_subcommand("generate", "Write a synthetic archetype fixture");
    generate->add_option("--kind", ge.kind, "Archetype")
        ->required()
        ->check(CLI::IsMember(
            {"unified", "in_hub", "out_hub", "multi_topic", "polarized", "fragmented"}));
    generate->add_option("--size", ge.size, "Vertex count (at least 5)")->required();
    generate->add_option("--seed", ge.seed, "Generator seed");
    generate->add_option("--out", ge.out, "Destination CSV, - for stdout");

    FitArgs fi;
    CLI::App* fit = app.add_subcommand("fit", "Fit a model to x,y points");
    fit->add_option("--model", fi.model, "Model")
        ->required()
        ->check(CLI::IsMember({"power_law", "exponential", "power_law_stretched"}));
    fit->add_option("--data", fi.data, "Two-column CSV of x,y points")->required();

    LayoutArgs la;
    CLI::App* layout = app.add_subcommand("layout", "Compute a force-directed layout");
    layout->add_option("--edges", la.edges, "Edge-list CSV")->required();
    layout->add_option("--out", la.out, "Destination CSV, - for stdout");
    layout->add_option("--dedup", la.dedup, "Duplicate handling")
        ->check(CLI::IsMember({"collapse", "keep"}));
    layout->add_option("--fr-repulsion", la.repulsion, "Repulsion multiplier");
    layout->add_option("--fr-iterations", la.iterations, "Iterations");
    layout->add_option("--seed", la.seed, "Seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (*analyze) return run_analyze(an);
    if (*generate) return run_generate(ge);
    if (*fit) return run_fit(fi);
    if (*layout) return run_layout(la);
    return 2;
}
