#include "core/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "core/csv.hpp"
#include "core/errors.hpp"

namespace socio {

std::string fnv1a64_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

void append_json(std::string& out, const nlohmann::json& node, int depth) {
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    const std::string pad_in(static_cast<std::size_t>(depth + 1) * 2, ' ');
    switch (node.type()) {
        case nlohmann::json::value_t::null:
            out += "null";
            break;
        case nlohmann::json::value_t::boolean:
            out += node.get<bool>() ? "true" : "false";
            break;
        case nlohmann::json::value_t::number_integer:
            out += std::to_string(node.get<std::int64_t>());
            break;
        case nlohmann::json::value_t::number_unsigned:
            out += std::to_string(node.get<std::uint64_t>());
            break;
        case nlohmann::json::value_t::number_float: {
            const double v = node.get<double>();
            out += std::isfinite(v) ? format_double(v) : "null";
            break;
        }
        case nlohmann::json::value_t::string:
            out += nlohmann::json(node.get<std::string>()).dump();
            break;
        case nlohmann::json::value_t::array: {
            if (node.empty()) {
                out += "[]";
                break;
            }
            out += "[\n";
            for (std::size_t i = 0; i < node.size(); ++i) {
                out += pad_in;
                append_json(out, node[i], depth + 1);
                if (i + 1 < node.size()) out += ",";
                out += "\n";
            }
            out += pad + "]";
            break;
        }
        case nlohmann::json::value_t::object: {
            if (node.empty()) {
                out += "{}";
                break;
            }
            out += "{\n";
            std::size_t i = 0;
            for (auto it = node.begin(); it != node.end(); ++it, ++i) {
                out += pad_in;
                out += nlohmann::json(it.key()).dump();
                out += ": ";
                append_json(out, it.value(), depth + 1);
                if (i + 1 < node.size()) out += ",";
                out += "\n";
            }
            out += pad + "}";
            break;
        }
        default:
            out += "null";
            break;
    }
}

} // namespace

std::string canonical_json(const nlohmann::json& doc) {
    std::string out;
    append_json(out, doc, 0);
    out += "\n";
    return out;
}

nlohmann::json sentinel(std::string_view reason) {
    nlohmann::json j;
    j["value"] = nullptr;
    j["reason"] = std::string(reason);
    return j;
}

nlohmann::json number_or_sentinel(const std::optional<double>& value, std::string_view reason) {
    if (value && std::isfinite(*value)) return *value;
    return sentinel(reason);
}

namespace {

std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c; break;
        }
    }
    return out;
}

std::string dot_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

void check_attrs(const Sociogram& g, const VertexAttributes& attrs) {
    const std::size_t n = g.vertex_count();
    if (n == 0) throw contract_error("graph export requires a nonempty graph");
    if (attrs.group.size() != n || attrs.clustering.size() != n ||
        attrs.betweenness.size() != n || attrs.pagerank.size() != n ||
        attrs.eigenvector.size() != n)
        throw contract_error("vertex attribute columns must cover every vertex");
}

} // namespace

std::string graphml_document(const Sociogram& g, const VertexAttributes& attrs) {
    check_attrs(g, attrs);
    std::string out =
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        "  <key id=\"group\" for=\"node\" attr.name=\"group\" attr.type=\"long\"/>\n"
        "  <key id=\"c_j\" for=\"node\" attr.name=\"c_j\" attr.type=\"double\"/>\n"
        "  <key id=\"C_B\" for=\"node\" attr.name=\"C_B\" attr.type=\"double\"/>\n"
        "  <key id=\"pagerank\" for=\"node\" attr.name=\"pagerank\" attr.type=\"double\"/>\n"
        "  <key id=\"eigenvector\" for=\"node\" attr.name=\"eigenvector\" attr.type=\"double\"/>\n"
        "  <key id=\"kind\" for=\"edge\" attr.name=\"kind\" attr.type=\"string\"/>\n"
        "  <graph id=\"sociogram\" edgedefault=\"directed\">\n";
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
        out += "    <node id=\"" + xml_escape(g.vertex_name(v)) + "\">\n";
        out += "      <data key=\"group\">" + std::to_string(attrs.group[v]) + "</data>\n";
        out += "      <data key=\"c_j\">" + format_double(attrs.clustering[v]) + "</data>\n";
        out += "      <data key=\"C_B\">" + format_double(attrs.betweenness[v]) + "</data>\n";
        out += "      <data key=\"pagerank\">" + format_double(attrs.pagerank[v]) + "</data>\n";
        out += "      <data key=\"eigenvector\">" + format_double(attrs.eigenvector[v]) +
               "</data>\n";
        out += "    </node>\n";
    }
    for (const GraphEdge& e : g.edges()) {
        out += "    <edge source=\"" + xml_escape(g.vertex_name(e.source)) + "\" target=\"" +
               xml_escape(g.vertex_name(e.target)) + "\">\n";
        out += "      <data key=\"kind\">";
        out += edge_kind_name(e.kind);
        out += "</data>\n";
        out += "    </edge>\n";
    }
    out += "  </graph>\n</graphml>\n";
    return out;
}

std::string dot_document(const Sociogram& g, const VertexAttributes& attrs) {
    check_attrs(g, attrs);
    std::string out = "digraph sociogram {\n";
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
        out += "  \"" + dot_escape(g.vertex_name(v)) + "\" [group=" +
               std::to_string(attrs.group[v]) + "];\n";
    }
    for (const GraphEdge& e : g.edges()) {
        out += "  \"" + dot_escape(g.vertex_name(e.source)) + "\" -> \"" +
               dot_escape(g.vertex_name(e.target)) + "\" [kind=\"";
        out += edge_kind_name(e.kind);
        out += "\"];\n";
    }
    out += "}\n";
    return out;
}

std::string empty_graphml_document() {
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
           "  <graph id=\"sociogram\" edgedefault=\"directed\"/>\n"
           "</graphml>\n";
}

std::string empty_dot_document() { return "digraph sociogram {\n}\n"; }

std::string vertices_csv(const Sociogram& g, const VertexAttributes& attrs) {
    if (g.vertex_count() != 0) check_attrs(g, attrs);
    std::string out = "vertex,in,out,c_j,C_B,pagerank,eigenvector,group,self_loops\n";
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
        std::vector<std::string> row{
            g.vertex_name(v),
            std::to_string(g.in_degree(v)),
            std::to_string(g.out_degree(v)),
            format_double(attrs.clustering[v]),
            format_double(attrs.betweenness[v]),
            format_double(attrs.pagerank[v]),
            format_double(attrs.eigenvector[v]),
            std::to_string(attrs.group[v]),
            std::to_string(g.self_loop_tally(v))};
        out += csv::join_row(row);
        out.push_back('\n');
    }
    return out;
}

std::string layout_csv(const Sociogram& g, const LayoutResult& layout) {
    if (layout.positions.size() != g.vertex_count())
        throw contract_error("layout does not cover every vertex");
    std::string out = "vertex,x,y\n";
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
        std::vector<std::string> row{g.vertex_name(v), format_double(layout.positions[v].x),
                                     format_double(layout.positions[v].y)};
        out += csv::join_row(row);
        out.push_back('\n');
    }
    return out;
}

void write_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open for writing: " + path);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw io_error("write failure: " + path);
}

} // namespace socio
