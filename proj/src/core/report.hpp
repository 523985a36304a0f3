#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "core/graph.hpp"
#include "core/layout.hpp"

namespace socio {

// FNV-1a over the bytes, rendered as 16 hex digits.
std::string fnv1a64_hex(std::string_view bytes);

// %.12g rendering shared by every emitted artifact.
std::string format_double(double v);

// Canonical rendering: keys sorted, two-space indent, floats at 12
// significant digits. Non-finite floats render as null.
std::string canonical_json(const nlohmann::json& doc);

// {"value": null, "reason": ...}, the report's undefined-metric shape.
nlohmann::json sentinel(std::string_view reason);
nlohmann::json number_or_sentinel(const std::optional<double>& value, std::string_view reason);

// Per-vertex columns shared by the CSV and graph exports, indexed by vertex.
struct VertexAttributes {
    std::vector<std::uint32_t> group;
    std::vector<double> clustering;
    std::vector<double> betweenness;
    std::vector<double> pagerank;
    std::vector<double> eigenvector;
};

// Well-formed GraphML/DOT with group + centrality data per vertex and kind
// per edge. contract_error on an empty graph (writers of empty artifacts
// emit the documents below instead).
std::string graphml_document(const Sociogram& g, const VertexAttributes& attrs);
std::string dot_document(const Sociogram& g, const VertexAttributes& attrs);

std::string empty_graphml_document();
std::string empty_dot_document();

// vertex,in,out,c_j,C_B,pagerank,eigenvector,group,self_loops
std::string vertices_csv(const Sociogram& g, const VertexAttributes& attrs);

// vertex,x,y
std::string layout_csv(const Sociogram& g, const LayoutResult& layout);

// Atomic overwrite is not attempted; failures throw io_error.
void write_file(const std::string& path, std::string_view contents);

} // namespace socio
