#include "core/graph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "core/csv.hpp"
#include "core/errors.hpp"

namespace socio {

namespace {

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

std::string_view trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r' || s[b] == '\n')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r' || s[e - 1] == '\n')) --e;
    return s.substr(b, e - b);
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

} // namespace

const char* edge_kind_name(EdgeKind k) {
    switch (k) {
        case EdgeKind::Tweet: return "tweet";
        case EdgeKind::Retweet: return "retweet";
        case EdgeKind::Mention: return "mention";
        case EdgeKind::Reply: return "reply";
    }
    return "tweet";
}

std::optional<EdgeKind> edge_kind_from_string(std::string_view s) {
    std::string l = ascii_lower(trim(s));
    if (l == "tweet") return EdgeKind::Tweet;
    if (l == "retweet") return EdgeKind::Retweet;
    if (l == "mention") return EdgeKind::Mention;
    if (l == "reply" || l == "replies-to" || l == "replies_to") return EdgeKind::Reply;
    return std::nullopt;
}

std::string fold_identifier(std::string_view s) {
    return ascii_lower(trim(s));
}

bool valid_iso8601(std::string_view s) {
    // YYYY-MM-DDTHH:MM:SS with optional .fraction and optional Z or +/-HH:MM
    if (s.size() < 19) return false;
    auto d = [&](std::size_t i) { return s[i] >= '0' && s[i] <= '9'; };
    if (!(d(0) && d(1) && d(2) && d(3) && s[4] == '-' && d(5) && d(6) && s[7] == '-' &&
          d(8) && d(9) && (s[10] == 'T' || s[10] == 't' || s[10] == ' ') && d(11) && d(12) &&
          s[13] == ':' && d(14) && d(15) && s[16] == ':' && d(17) && d(18)))
        return false;
    int month = (s[5] - '0') * 10 + (s[6] - '0');
    int day = (s[8] - '0') * 10 + (s[9] - '0');
    int hour = (s[11] - '0') * 10 + (s[12] - '0');
    int minute = (s[14] - '0') * 10 + (s[15] - '0');
    int sec = (s[17] - '0') * 10 + (s[18] - '0');
    if (month < 1 || month > 12 || day < 1 || day > 31) return false;
    if (hour > 23 || minute > 59 || sec > 60) return false;
    std::size_t i = 19;
    if (i < s.size() && s[i] == '.') {
        ++i;
        std::size_t start = i;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
        if (i == start) return false;
    }
    if (i == s.size()) return true;
    if (s[i] == 'Z' || s[i] == 'z') return i + 1 == s.size();
    if (s[i] == '+' || s[i] == '-') {
        std::string_view off = s.substr(i + 1);
        if (off.size() == 5 && off[2] == ':' && all_digits(off.substr(0, 2)) && all_digits(off.substr(3, 2)))
            return true;
        if (off.size() == 4 && all_digits(off)) return true;
        return false;
    }
    return false;
}

EdgeListDocument parse_edge_csv(std::string_view input) {
    csv::Document raw = csv::parse(input);
    if (raw.header.empty()) {
        // empty stream: no header at all
        throw format_error("edge CSV is empty: header row with source,target required");
    }

    // header lookup is case-insensitive, first occurrence wins
    std::unordered_map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < raw.header.size(); ++i) {
        std::string key = ascii_lower(trim(raw.header[i]));
        col.emplace(key, i);
    }
    auto find_col = [&](const char* name) -> std::optional<std::size_t> {
        auto it = col.find(name);
        if (it == col.end()) return std::nullopt;
        return it->second;
    };

    auto src_col = find_col("source");
    auto tgt_col = find_col("target");
    if (!src_col || !tgt_col)
        throw format_error("edge CSV header must contain 'source' and 'target' columns");
    auto kind_col = find_col("kind");
    auto text_col = find_col("text");
    auto ts_col = find_col("timestamp");

    EdgeListDocument doc;
    doc.header = raw.header;
    for (const auto& [line, msg] : raw.errors) {
        doc.errors.push_back({line, msg});
        ++doc.row_count;
    }

    auto cell = [](const csv::Record& r, std::size_t i) -> std::string_view {
        return i < r.fields.size() ? std::string_view(r.fields[i]) : std::string_view();
    };

    for (const auto& rec : raw.records) {
        ++doc.row_count;
        std::string source = fold_identifier(cell(rec, *src_col));
        std::string target = fold_identifier(cell(rec, *tgt_col));
        if (source.empty() || target.empty()) {
            doc.errors.push_back({rec.line, "empty source or target"});
            continue;
        }
        Edge e;
        e.source = std::move(source);
        e.target = std::move(target);
        if (kind_col) {
            std::string_view k = trim(cell(rec, *kind_col));
            if (!k.empty()) {
                auto parsed = edge_kind_from_string(k);
                if (!parsed) {
                    doc.errors.push_back({rec.line, "unknown edge kind '" + std::string(k) + "'"});
                    continue;
                }
                e.kind = *parsed;
            }
        }
        if (text_col) {
            std::string_view t = cell(rec, *text_col);
            if (!t.empty()) e.text = std::string(t);
        }
        if (ts_col) {
            std::string_view t = trim(cell(rec, *ts_col));
            if (!t.empty()) {
                if (!valid_iso8601(t)) {
                    doc.errors.push_back({rec.line, "malformed ISO-8601 timestamp '" + std::string(t) + "'"});
                    continue;
                }
                e.timestamp = std::string(t);
            }
        }
        doc.edges.push_back(std::move(e));
    }
    return doc;
}

EdgeListDocument parse_edge_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open edge CSV file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw io_error("read failure on edge CSV file: " + path);
    return parse_edge_csv(buf.str());
}

Sociogram build_graph(const EdgeListDocument& doc, DedupMode dedup) {
    Sociogram g;
    g.dedup_ = dedup;

    std::vector<std::string> names;
    names.reserve(doc.edges.size() * 2);
    for (const Edge& e : doc.edges) {
        names.push_back(e.source);
        names.push_back(e.target);
    }
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    g.names_ = std::move(names);

    std::unordered_map<std::string_view, std::uint32_t> index;
    index.reserve(g.names_.size());
    for (std::uint32_t i = 0; i < g.names_.size(); ++i) index.emplace(g.names_[i], i);

    const std::size_t n = g.names_.size();
    g.out_adj_.assign(n, {});
    g.in_adj_.assign(n, {});
    g.und_adj_.assign(n, {});
    g.self_loops_.assign(n, 0);
    g.raw_edge_count_ = doc.edges.size();

    std::unordered_set<std::uint64_t> seen_pairs;
    seen_pairs.reserve(doc.edges.size());

    for (const Edge& e : doc.edges) {
        std::uint32_t u = index.find(e.source)->second;
        std::uint32_t v = index.find(e.target)->second;
        if (u == v) ++g.self_loops_[u];
        std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | v;
        bool first = seen_pairs.insert(key).second;
        if (first) {
            ++g.unique_edges_;
            if (u == v) {
                ++g.unique_self_loops_;
            } else {
                ++g.unique_nonloop_edges_;
            }
            g.out_adj_[u].push_back(v);
            g.in_adj_[v].push_back(u);
        } else {
            ++g.duplicate_count_;
        }
        if (first || dedup == DedupMode::KeepAll) {
            GraphEdge ge;
            ge.source = u;
            ge.target = v;
            ge.kind = e.kind;
            ge.text = e.text;
            ge.timestamp = e.timestamp;
            g.edges_.push_back(std::move(ge));
        }
    }

    for (std::uint32_t v = 0; v < n; ++v) {
        std::sort(g.out_adj_[v].begin(), g.out_adj_[v].end());
        std::sort(g.in_adj_[v].begin(), g.in_adj_[v].end());
        auto& und = g.und_adj_[v];
        und.reserve(g.out_adj_[v].size() + g.in_adj_[v].size());
        std::merge(g.out_adj_[v].begin(), g.out_adj_[v].end(), g.in_adj_[v].begin(),
                   g.in_adj_[v].end(), std::back_inserter(und));
        und.erase(std::unique(und.begin(), und.end()), und.end());
        und.erase(std::remove(und.begin(), und.end(), v), und.end());
        g.und_edge_count_ += und.size();
    }
    g.und_edge_count_ /= 2;

    return g;
}

Sociogram induced_subgraph(const Sociogram& g, const std::vector<std::uint32_t>& vertices) {
    std::vector<std::uint32_t> keep(vertices);
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    for (std::uint32_t v : keep)
        if (v >= g.vertex_count()) throw contract_error("induced subgraph: vertex index out of range");

    Sociogram s;
    s.dedup_ = g.dedup_;
    s.names_.reserve(keep.size());
    for (std::uint32_t v : keep) s.names_.push_back(g.vertex_name(v));

    std::vector<std::int64_t> remap(g.vertex_count(), -1);
    for (std::uint32_t i = 0; i < keep.size(); ++i) remap[keep[i]] = i;

    const std::size_t n = keep.size();
    s.out_adj_.assign(n, {});
    s.in_adj_.assign(n, {});
    s.und_adj_.assign(n, {});
    s.self_loops_.assign(n, 0);

    std::unordered_set<std::uint64_t> seen_pairs;
    for (const GraphEdge& e : g.edges()) {
        if (remap[e.source] < 0 || remap[e.target] < 0) continue;
        std::uint32_t u = static_cast<std::uint32_t>(remap[e.source]);
        std::uint32_t v = static_cast<std::uint32_t>(remap[e.target]);
        ++s.raw_edge_count_;
        if (u == v) ++s.self_loops_[u];
        std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | v;
        bool first = seen_pairs.insert(key).second;
        if (first) {
            ++s.unique_edges_;
            if (u == v) {
                ++s.unique_self_loops_;
            } else {
                ++s.unique_nonloop_edges_;
            }
            s.out_adj_[u].push_back(v);
            s.in_adj_[v].push_back(u);
        } else {
            ++s.duplicate_count_;
        }
        if (first || s.dedup_ == DedupMode::KeepAll) {
            GraphEdge ge = e;
            ge.source = u;
            ge.target = v;
            s.edges_.push_back(std::move(ge));
        }
    }

    for (std::uint32_t v = 0; v < n; ++v) {
        std::sort(s.out_adj_[v].begin(), s.out_adj_[v].end());
        std::sort(s.in_adj_[v].begin(), s.in_adj_[v].end());
        auto& und = s.und_adj_[v];
        std::merge(s.out_adj_[v].begin(), s.out_adj_[v].end(), s.in_adj_[v].begin(),
                   s.in_adj_[v].end(), std::back_inserter(und));
        und.erase(std::unique(und.begin(), und.end()), und.end());
        und.erase(std::remove(und.begin(), und.end(), v), und.end());
        s.und_edge_count_ += und.size();
    }
    s.und_edge_count_ /= 2;
    return s;
}

std::optional<std::uint32_t> Sociogram::vertex_index(std::string_view name) const {
    auto it = std::lower_bound(names_.begin(), names_.end(), name);
    if (it == names_.end() || *it != name) return std::nullopt;
    return static_cast<std::uint32_t>(it - names_.begin());
}

bool Sociogram::has_und_edge(std::uint32_t u, std::uint32_t v) const {
    const auto& adj = und_adj_[u];
    return std::binary_search(adj.begin(), adj.end(), v);
}

std::uint32_t degree(const Sociogram& g, std::string_view vertex, DegreeMode mode) {
    auto idx = g.vertex_index(fold_identifier(vertex));
    if (!idx) throw contract_error("unknown vertex '" + std::string(vertex) + "'");
    switch (mode) {
        case DegreeMode::In: return g.in_degree(*idx);
        case DegreeMode::Out: return g.out_degree(*idx);
        case DegreeMode::Total: return g.total_degree(*idx);
    }
    return 0;
}

std::vector<std::vector<std::uint32_t>> connected_components(const Sociogram& g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::vector<std::uint32_t>> comps;
    std::vector<char> visited(n, 0);
    std::vector<std::uint32_t> stack;
    for (std::uint32_t s = 0; s < n; ++s) {
        if (visited[s]) continue;
        std::vector<std::uint32_t> comp;
        stack.push_back(s);
        visited[s] = 1;
        while (!stack.empty()) {
            std::uint32_t v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (std::uint32_t w : g.und_neighbors(v)) {
                if (!visited[w]) {
                    visited[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

std::string serialize_edge_csv(const Sociogram& g) {
    std::string out = "source,target,kind,text,timestamp\n";
    for (const GraphEdge& e : g.edges()) {
        std::vector<std::string> row{
            g.vertex_name(e.source), g.vertex_name(e.target), edge_kind_name(e.kind),
            e.text.value_or(""), e.timestamp.value_or("")};
        out += csv::join_row(row);
        out.push_back('\n');
    }
    return out;
}

} // namespace socio
