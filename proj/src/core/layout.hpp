#pragma once

#include <cstdint>
#include <vector>

#include "core/graph.hpp"

namespace socio {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct LayoutResult {
    std::vector<Point> positions; // indexed by vertex
    std::size_t iterations_run = 0;
    std::uint64_t seed = 0;
    double repulsion_multiplier = 0.0;
};

// Fruchterman-Reingold with the repulsive term scaled by `repulsion`.
// Initial placement is seeded uniform over the canvas, assigned in sorted
// vertex order; iterations == 0 returns that placement unchanged. A single
// vertex lands at the canvas centre; an empty graph yields no positions.
// contract_error: repulsion <= 0 or nonpositive canvas.
LayoutResult fr_layout(const Sociogram& g, double repulsion, std::size_t iterations,
                       std::uint64_t seed, double width = 1000.0, double height = 1000.0);

// Same recurrence from caller-supplied starting coordinates (one per
// vertex; contract_error on size mismatch).
LayoutResult fr_layout_from(const Sociogram& g, std::vector<Point> initial, double repulsion,
                            std::size_t iterations, double width = 1000.0,
                            double height = 1000.0);

} // namespace socio
