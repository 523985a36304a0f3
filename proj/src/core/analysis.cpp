#include "core/analysis.hpp"

#include <algorithm>
#include <array>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "core/centrality.hpp"
#include "core/classify.hpp"
#include "core/community.hpp"
#include "core/errors.hpp"
#include "core/layout.hpp"
#include "core/metrics.hpp"
#include "core/report.hpp"
#include "core/statfit.hpp"
#include "core/text.hpp"
#include "core/version.hpp"

namespace fs = std::filesystem;

namespace socio {

const char* stage_name(Stage s) {
    switch (s) {
        case Stage::Graphcore: return "graphcore";
        case Stage::Metrics: return "metrics";
        case Stage::Centrality: return "centrality";
        case Stage::Community: return "community";
        case Stage::Classify: return "classify";
        case Stage::Text: return "text";
        case Stage::Statfit: return "statfit";
        case Stage::Layout: return "layout";
    }
    return "layout";
}

std::optional<Stage> stage_from_string(std::string_view s) {
    for (int i = 0; i <= static_cast<int>(Stage::Layout); ++i) {
        Stage st = static_cast<Stage>(i);
        if (s == stage_name(st)) return st;
    }
    return std::nullopt;
}

namespace {

std::string prefixed(Stage s, const char* what) {
    return std::string(stage_name(s)) + ": " + what;
}

// Rethrows with the failing stage prefixed, preserving the error type so the
// CLI's exit-code mapping still sees it.
template <typename Fn>
auto guarded(Stage s, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const io_error& e) {
        throw io_error(prefixed(s, e.what()));
    } catch (const format_error& e) {
        throw format_error(prefixed(s, e.what()));
    } catch (const config_error& e) {
        throw config_error(prefixed(s, e.what()));
    } catch (const undefined_metric_error& e) {
        throw undefined_metric_error(prefixed(s, e.what()));
    } catch (const singular_fit_error& e) {
        throw singular_fit_error(prefixed(s, e.what()));
    } catch (const contract_error& e) {
        throw contract_error(prefixed(s, e.what()));
    }
}

std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw io_error("read failure: " + path);
    return ss.str();
}

std::string iso_utc_now() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

nlohmann::json summary_stats(const std::vector<double>& xs) {
    if (xs.empty()) return sentinel("undefined for an empty graph");
    double mn = xs[0], mx = xs[0], sum = 0.0;
    for (double v : xs) {
        mn = std::min(mn, v);
        mx = std::max(mx, v);
        sum += v;
    }
    nlohmann::json j;
    j["min"] = mn;
    j["max"] = mx;
    j["mean"] = sum / static_cast<double>(xs.size());
    return j;
}

nlohmann::json maybe_metric(const MaybeMetric& m) { return number_or_sentinel(m.value, m.reason); }

nlohmann::json histogram_json(const DegreeHistogram& hist) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [degree, count] : hist.bins) {
        nlohmann::json bin;
        bin["degree"] = degree;
        bin["count"] = count;
        arr.push_back(bin);
    }
    return arr;
}

nlohmann::json fit_json(const FitResult& r) {
    nlohmann::json j;
    j["model"] = fit_model_name(r.model);
    j["param_a_or_k"] = r.param_a_or_k;
    j["param_beta_or_alpha"] = r.param_beta_or_alpha;
    j["r_squared"] = r.r_squared;
    j["n_points"] = r.n_points;
    j["log_space"] = r.log_space;
    j["flat"] = r.flat;
    return j;
}

std::string hash_or_absent(const std::string& path) {
    try {
        return fnv1a64_hex(read_file_bytes(path));
    } catch (const io_error&) {
        return "absent";
    }
}

} // namespace

AnalysisOutcome run_analyze(const AnalysisConfig& config) {
    if (config.input_edges.empty() || !fs::exists(config.input_edges))
        throw config_error("input edges file does not exist: " + config.input_edges);
    if (config.lexicon_dir.empty() || !fs::is_directory(config.lexicon_dir))
        throw config_error("lexicon directory does not exist: " + config.lexicon_dir);
    if (config.risk_config.empty() || !fs::exists(config.risk_config))
        throw config_error("risk config file does not exist: " + config.risk_config);
    if (!config.classifier_config.empty() && !fs::exists(config.classifier_config))
        throw config_error("classifier config file does not exist: " + config.classifier_config);
    if (!(config.pagerank.damping > 0.0 && config.pagerank.damping < 1.0))
        throw config_error("damping must lie strictly between 0 and 1");
    if (!(config.pagerank.tol > 0.0)) throw config_error("pagerank tolerance must be positive");
    if (config.pagerank.max_iter < 1) throw config_error("pagerank max_iter must be at least 1");
    if (!(config.layout.repulsion > 0.0)) throw config_error("layout repulsion must be positive");
    if (config.threads < 1) throw config_error("threads must be at least 1");
    if (config.output_dir.empty()) throw config_error("output directory not set");
    {
        std::error_code ec;
        fs::create_directories(config.output_dir, ec);
        if (ec) throw io_error("cannot create output directory: " + config.output_dir);
    }

    auto reached = [&](Stage s) { return static_cast<int>(config.stage) >= static_cast<int>(s); };

    AnalysisOutcome outcome;
    std::vector<std::string>& written = outcome.files_written;
    nlohmann::json& report = outcome.report;
    nlohmann::json stages = nlohmann::json::array();

    try {
        const std::string input_bytes =
            guarded(Stage::Graphcore, [&] { return read_file_bytes(config.input_edges); });
        const EdgeListDocument doc =
            guarded(Stage::Graphcore, [&] { return parse_edge_csv(input_bytes); });
        const Sociogram g = guarded(Stage::Graphcore, [&] { return build_graph(doc, config.dedup); });
        stages.push_back(stage_name(Stage::Graphcore));

        const std::size_t n = g.vertex_count();
        {
            nlohmann::json ingest;
            ingest["rows"] = doc.row_count;
            ingest["accepted"] = doc.edges.size();
            nlohmann::json rejected = nlohmann::json::array();
            for (const auto& err : doc.errors) {
                nlohmann::json r;
                r["line"] = err.line;
                r["message"] = err.message;
                rejected.push_back(r);
            }
            ingest["rejected"] = rejected;
            ingest["dedup"] = config.dedup == DedupMode::CollapsePairs ? "collapse" : "keep";
            report["ingest"] = ingest;
        }

        if (reached(Stage::Metrics)) {
            GraphStats stats =
                guarded(Stage::Metrics, [&] { return graph_stats(g, doc, config.threads); });
            nlohmann::json gs;
            gs["vertices"] = n;
            gs["edges_raw"] = g.raw_edge_count();
            gs["edges_unique"] = g.unique_edge_count();
            gs["edges_unique_nonloop"] = g.unique_nonloop_edge_count();
            gs["self_loops_unique"] = g.unique_self_loop_count();
            gs["duplicates"] = g.duplicate_count();
            gs["c_global"] = maybe_metric(stats.c_global);
            gs["rho"] = maybe_metric(stats.rho);
            gs["d_avg"] = maybe_metric(stats.d_avg);
            gs["diameter_D"] = maybe_metric(stats.diameter_d);
            gs["max_edges"] = stats.max_edges;
            gs["r_vertex"] = maybe_metric(stats.r_vertex);
            gs["n_in"] = stats.n_in;
            gs["n_out"] = stats.n_out;
            report["graph_stats"] = gs;

            nlohmann::json dd;
            dd["in"] = histogram_json(degree_distribution(g, DegreeMode::In));
            dd["out"] = histogram_json(degree_distribution(g, DegreeMode::Out));
            dd["total"] = histogram_json(degree_distribution(g, DegreeMode::Total));
            report["degree_distributions"] = dd;
            stages.push_back(stage_name(Stage::Metrics));
        }

        std::vector<double> bw, clustering;
        PageRankResult pr;
        EigenvectorResult ev;
        if (reached(Stage::Centrality)) {
            guarded(Stage::Centrality, [&] {
                if (n > 0) {
                    bw = betweenness(g, Directedness::Directed, false, config.threads);
                    pr = pagerank(g, config.pagerank.damping, config.pagerank.tol,
                                  config.pagerank.max_iter, config.threads);
                    ev = eigenvector_centrality(g, 1e-10, 1000, config.threads);
                    clustering.resize(n);
                    for (std::uint32_t v = 0; v < n; ++v) clustering[v] = local_clustering(g, v);
                }
            });
            nlohmann::json cs;
            cs["betweenness"] = summary_stats(bw);
            nlohmann::json prj = summary_stats(pr.scores);
            if (n > 0) {
                prj["converged"] = pr.converged;
                prj["iterations"] = pr.iterations;
            }
            cs["pagerank"] = prj;
            nlohmann::json evj = summary_stats(ev.scores);
            if (n > 0) {
                evj["converged"] = ev.converged;
                evj["iterations"] = ev.iterations;
            }
            cs["eigenvector"] = evj;
            report["centrality_summary"] = cs;
            stages.push_back(stage_name(Stage::Centrality));
        }

        Grouping grouping;
        std::vector<std::uint32_t> group_of(n, 0);
        if (reached(Stage::Community)) {
            grouping = guarded(Stage::Community, [&] { return cnm_partition(g); });
            for (std::size_t b = 0; b < grouping.blocks.size(); ++b)
                for (std::uint32_t v : grouping.blocks[b]) group_of[v] = static_cast<std::uint32_t>(b);
            stages.push_back(stage_name(Stage::Community));
        }

        std::vector<FeatureVector> features;
        std::vector<ArchetypeLabel> labels;
        if (reached(Stage::Classify)) {
            guarded(Stage::Classify, [&] {
                ClassifierConfig ccfg = config.classifier_config.empty()
                                            ? default_classifier_config()
                                            : load_classifier_config(config.classifier_config);
                features.reserve(grouping.blocks.size());
                labels.reserve(grouping.blocks.size());
                for (const auto& block : grouping.blocks) {
                    Sociogram sub = induced_subgraph(g, block);
                    features.push_back(extract_features(sub));
                    labels.push_back(classify_archetype(features.back(), ccfg));
                }
            });
            stages.push_back(stage_name(Stage::Classify));
        }

        std::vector<nlohmann::json> group_words(grouping.blocks.size(), nlohmann::json::array());
        if (reached(Stage::Text)) {
            guarded(Stage::Text, [&] {
                LexiconSet lex = load_lexicons(config.lexicon_dir);
                RiskFactorConfig rcfg = load_risk_config(config.risk_config);

                std::vector<std::string> texts;
                std::vector<std::size_t> doc_group;
                for (const Edge& e : doc.edges) {
                    if (!e.text) continue;
                    texts.push_back(*e.text);
                    if (!grouping.blocks.empty())
                        doc_group.push_back(group_of[*g.vertex_index(e.source)]);
                    else
                        doc_group.push_back(0);
                }
                TokenCorpus corpus = build_corpus(texts);

                if (corpus.total_tokens > 0) {
                    SentimentReport s = sentiment_scores(corpus, lex);
                    nlohmann::json sj;
                    sj["s_pos"] = s.s_pos;
                    sj["s_neg"] = s.s_neg;
                    sj["s_anger_mild"] = s.s_anger_mild;
                    sj["s_anger_typical"] = s.s_anger_typical;
                    sj["s_anger_violent"] = s.s_anger_violent;
                    sj["s_calm"] = s.s_calm;
                    sj["r_sent"] = number_or_sentinel(s.r_sent.value, s.r_sent.reason);
                    sj["r_angr"] = number_or_sentinel(s.r_angr.value, s.r_angr.reason);
                    report["sentiment"] = sj;
                } else {
                    report["sentiment"] = sentinel("corpus has no tokens");
                }

                nlohmann::json text_section;
                nlohmann::json top_terms = nlohmann::json::array();
                if (corpus.total_tokens > 0) {
                    auto stats = term_stats(corpus);
                    std::vector<std::pair<std::string, TermStat>> ordered(stats.begin(), stats.end());
                    std::stable_sort(ordered.begin(), ordered.end(),
                                     [](const auto& a, const auto& b) {
                                         if (a.second.count != b.second.count)
                                             return a.second.count > b.second.count;
                                         return a.first < b.first;
                                     });
                    if (ordered.size() > 25) ordered.resize(25);
                    for (const auto& [token, stat] : ordered) {
                        nlohmann::json t;
                        t["token"] = token;
                        t["count"] = stat.count;
                        t["salience"] = stat.salience;
                        top_terms.push_back(t);
                    }
                }
                text_section["top_terms"] = top_terms;

                nlohmann::json bigrams = nlohmann::json::array();
                auto bg = bigram_stats(corpus, 2);
                if (bg.size() > 50) bg.resize(50);
                for (const auto& b : bg) {
                    nlohmann::json bj;
                    bj["w1"] = b.w1;
                    bj["w2"] = b.w2;
                    bj["count"] = b.count;
                    bj["salience"] = b.salience;
                    bj["mutual_information"] = b.mutual_information;
                    bigrams.push_back(bj);
                }
                text_section["bigrams"] = bigrams;
                text_section["pmi_base"] = 2;
                report["text"] = text_section;

                RiskFactorReport rr = risk_factor_match(corpus.documents, rcfg);
                nlohmann::json riskj;
                riskj["total_tokens"] = rr.total_tokens;
                nlohmann::json cats = nlohmann::json::array();
                for (const auto& cat : rr.categories) {
                    nlohmann::json c;
                    c["name"] = cat.name;
                    c["matched_tweets"] = cat.matched_tweets;
                    c["salience"] = cat.salience;
                    cats.push_back(c);
                }
                riskj["categories"] = cats;
                report["risk"] = riskj;

                if (!grouping.blocks.empty()) {
                    std::vector<std::map<std::string, std::uint64_t>> counts(grouping.blocks.size());
                    std::vector<std::uint64_t> totals(grouping.blocks.size(), 0);
                    for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
                        for (const auto& tok : corpus.documents[i]) ++counts[doc_group[i]][tok];
                        totals[doc_group[i]] += corpus.documents[i].size();
                    }
                    for (std::size_t b = 0; b < grouping.blocks.size(); ++b) {
                        std::vector<std::pair<std::string, std::uint64_t>> ordered(
                            counts[b].begin(), counts[b].end());
                        std::stable_sort(ordered.begin(), ordered.end(),
                                         [](const auto& x, const auto& y) {
                                             if (x.second != y.second) return x.second > y.second;
                                             return x.first < y.first;
                                         });
                        if (!ordered.empty()) grouping.labels[b] = ordered.front().first;
                        if (ordered.size() > 5) ordered.resize(5);
                        for (const auto& [token, count] : ordered) {
                            nlohmann::json w;
                            w["token"] = token;
                            w["count"] = count;
                            w["salience"] =
                                static_cast<double>(count) / static_cast<double>(totals[b]);
                            group_words[b].push_back(w);
                        }
                    }
                }
            });
            stages.push_back(stage_name(Stage::Text));
        }

        if (reached(Stage::Statfit)) {
            nlohmann::json fits = nlohmann::json::array();
            guarded(Stage::Statfit, [&] {
                nlohmann::json degree_fit;
                degree_fit["target"] = "total_degree_distribution";
                DegreeHistogram hist = degree_distribution(g, DegreeMode::Total);
                std::vector<FitPoint> pts;
                for (const auto& [degree, count] : hist.bins)
                    if (degree >= 1) pts.push_back({static_cast<double>(degree),
                                                    static_cast<double>(count)});
                if (pts.size() < 3) {
                    degree_fit["result"] = sentinel("fewer than 3 positive-degree bins");
                } else {
                    try {
                        degree_fit["result"] = fit_json(fit_power_law(pts));
                    } catch (const singular_fit_error& e) {
                        degree_fit["result"] = sentinel(e.what());
                    }
                }
                fits.push_back(degree_fit);

                nlohmann::json cb_fit;
                cb_fit["target"] = "betweenness_vs_pagerank";
                std::vector<FitPoint> pts2;
                for (std::size_t v = 0; v < bw.size(); ++v)
                    if (bw[v] > 0.0) pts2.push_back({pr.scores[v], bw[v]});
                if (pts2.size() < 3) {
                    cb_fit["result"] = sentinel("fewer than 3 vertices with positive betweenness");
                } else {
                    try {
                        cb_fit["result"] = fit_json(fit_exponential(pts2));
                    } catch (const singular_fit_error& e) {
                        cb_fit["result"] = sentinel(e.what());
                    }
                }
                fits.push_back(cb_fit);
            });
            report["fits"] = fits;
            stages.push_back(stage_name(Stage::Statfit));
        }

        LayoutResult lay;
        if (reached(Stage::Layout)) {
            lay = guarded(Stage::Layout, [&] {
                return fr_layout(g, config.layout.repulsion, config.layout.iterations,
                                 config.layout.seed);
            });
            nlohmann::json lj;
            lj["iterations"] = lay.iterations_run;
            lj["repulsion"] = lay.repulsion_multiplier;
            lj["seed"] = lay.seed;
            nlohmann::json positions;
            for (std::uint32_t v = 0; v < n; ++v)
                positions[g.vertex_name(v)] =
                    nlohmann::json::array({lay.positions[v].x, lay.positions[v].y});
            lj["positions"] = positions.is_null() ? nlohmann::json::object() : positions;
            report["layout"] = lj;
            stages.push_back(stage_name(Stage::Layout));
        }

        if (reached(Stage::Community)) {
            nlohmann::json gj;
            gj["algorithm"] = "clauset-newman-moore";
            gj["modularity_q"] = grouping.q_defined
                                     ? nlohmann::json(grouping.modularity_q)
                                     : sentinel("modularity undefined: graph has no edges");
            gj["group_count"] = grouping.blocks.size();
            nlohmann::json groups = nlohmann::json::array();
            for (std::size_t b = 0; b < grouping.blocks.size(); ++b) {
                nlohmann::json grp;
                grp["id"] = b;
                grp["size"] = grouping.blocks[b].size();
                nlohmann::json members = nlohmann::json::array();
                for (std::uint32_t v : grouping.blocks[b]) members.push_back(g.vertex_name(v));
                grp["members"] = members;
                grp["label"] = grouping.labels[b] ? nlohmann::json(*grouping.labels[b])
                                                  : nlohmann::json(nullptr);
                if (reached(Stage::Classify)) {
                    nlohmann::json arch;
                    arch["kind"] = archetype_name(labels[b].kind);
                    arch["confidence"] = labels[b].confidence;
                    grp["archetype"] = arch;
                    const FeatureVector& f = features[b];
                    nlohmann::json fj;
                    fj["n_vertices"] = f.n_vertices;
                    fj["n_edges"] = f.n_edges;
                    fj["isolate_fraction"] = f.isolate_fraction;
                    fj["largest_component_fraction"] = f.largest_component_fraction;
                    fj["largest_component_density"] = f.largest_component_density;
                    fj["hub_in_share"] = f.hub_in_share;
                    fj["hub_out_share"] = f.hub_out_share;
                    fj["bipartition_q"] = f.bipartition_q;
                    fj["cross_block_edge_fraction"] = f.cross_block_edge_fraction;
                    fj["component_count"] = f.component_count;
                    fj["self_loop_fraction"] = f.self_loop_fraction;
                    grp["features"] = fj;
                }
                grp["top_words"] = group_words[b];
                groups.push_back(grp);
            }
            gj["groups"] = groups;
            report["grouping"] = gj;

            if (reached(Stage::Classify)) {
                nlohmann::json freq;
                for (int k = 0; k <= static_cast<int>(Archetype::Fragmented); ++k)
                    freq[archetype_name(static_cast<Archetype>(k))] = 0;
                for (const auto& label : labels) {
                    auto& slot = freq[archetype_name(label.kind)];
                    slot = slot.get<std::uint64_t>() + 1;
                }
                report["archetype_frequency"] = freq;
            }
        }

        nlohmann::json params;
        params["dedup"] = config.dedup == DedupMode::CollapsePairs ? "collapse" : "keep";
        nlohmann::json prp;
        prp["damping"] = config.pagerank.damping;
        prp["tol"] = config.pagerank.tol;
        prp["max_iter"] = config.pagerank.max_iter;
        params["pagerank"] = prp;
        nlohmann::json lp;
        lp["repulsion"] = config.layout.repulsion;
        lp["iterations"] = config.layout.iterations;
        lp["seed"] = config.layout.seed;
        params["layout"] = lp;
        params["stage"] = stage_name(config.stage);
        nlohmann::json conv;
        conv["pmi_base"] = 2;
        conv["power_law_form"] = "a*x^-beta";
        conv["repulsive_index"] = "multiplicative";
        conv["betweenness_normalized"] = false;
        params["conventions"] = conv;
        report["parameters"] = params;

        nlohmann::json hash_basis = params;
        {
            const std::string base = config.lexicon_dir.back() == '/' ? config.lexicon_dir
                                                                      : config.lexicon_dir + "/";
            static const std::array<const char*, 6> lex_names = {
                "positive.txt", "negative.txt",      "anger_mild.txt",
                "calm.txt",     "anger_typical.txt", "anger_violent.txt"};
            nlohmann::json lhj;
            for (const char* name : lex_names) lhj[name] = hash_or_absent(base + name);
            hash_basis["lexicons"] = lhj;
            hash_basis["risk"] = hash_or_absent(config.risk_config);
            hash_basis["classifier"] = config.classifier_config.empty()
                                           ? "builtin"
                                           : hash_or_absent(config.classifier_config);
        }
        nlohmann::json prov;
        prov["tool_version"] = version_string;
        prov["config_hash"] = fnv1a64_hex(canonical_json(hash_basis));
        prov["input_hash"] = fnv1a64_hex(input_bytes);
        if (!config.deterministic) prov["timestamp"] = iso_utc_now();
        report["provenance"] = prov;
        report["stages_run"] = stages;

        auto out_path = [&](const char* name) {
            return (fs::path(config.output_dir) / name).string();
        };
        auto emit_file = [&](const std::string& path, std::string_view data) {
            write_file(path, data);
            written.push_back(path);
        };

        VertexAttributes attrs;
        attrs.group = group_of;
        attrs.clustering = clustering;
        attrs.betweenness = bw;
        attrs.pagerank = pr.scores;
        attrs.eigenvector = ev.scores;

        if (config.emit.vertices_csv && reached(Stage::Community))
            emit_file(out_path("vertices.csv"), vertices_csv(g, attrs));
        if (config.emit.graphml && reached(Stage::Community))
            emit_file(out_path("graph.graphml"),
                      n == 0 ? empty_graphml_document() : graphml_document(g, attrs));
        if (config.emit.dot && reached(Stage::Community))
            emit_file(out_path("graph.dot"), n == 0 ? empty_dot_document() : dot_document(g, attrs));
        if (config.emit.layout_csv && reached(Stage::Layout))
            emit_file(out_path("layout.csv"), layout_csv(g, lay));
        if (config.emit.report) emit_file(out_path("report.json"), canonical_json(report));
    } catch (...) {
        for (const std::string& f : written) {
            std::error_code rc;
            fs::remove(f, rc);
        }
        throw;
    }
    return outcome;
}

} // namespace socio
