#include "core/layout.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"
#include "core/rand.hpp"

namespace socio {

namespace {

void validate(double repulsion, double width, double height) {
    if (!(repulsion > 0.0)) throw contract_error("layout repulsion must be positive");
    if (!(width > 0.0) || !(height > 0.0)) throw contract_error("layout canvas must be positive");
}

void run_iterations(const Sociogram& g, std::vector<Point>& pos, double repulsion,
                    std::size_t iterations, double width, double height) {
    const std::size_t n = g.vertex_count();
    if (n < 2 || iterations == 0) return;

    const double k = std::sqrt(width * height / static_cast<double>(n));
    const double t0 = width / 10.0;
    std::vector<Point> disp(n);

    for (std::size_t iter = 0; iter < iterations; ++iter) {
        const double t = t0 * static_cast<double>(iterations - iter) /
                         static_cast<double>(iterations);
        for (auto& d : disp) d = {0.0, 0.0};

        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double dx = pos[i].x - pos[j].x;
                double dy = pos[i].y - pos[j].y;
                double d = std::sqrt(dx * dx + dy * dy);
                if (d < 1e-9) {
                    dx = 1e-6;
                    dy = 0.0;
                    d = 1e-6;
                }
                const double f = repulsion * k * k / d;
                disp[i].x += dx / d * f;
                disp[i].y += dy / d * f;
                disp[j].x -= dx / d * f;
                disp[j].y -= dy / d * f;
            }
        }

        for (std::uint32_t u = 0; u < n; ++u) {
            for (std::uint32_t v : g.und_neighbors(u)) {
                if (v <= u) continue;
                double dx = pos[u].x - pos[v].x;
                double dy = pos[u].y - pos[v].y;
                double d = std::sqrt(dx * dx + dy * dy);
                if (d < 1e-9) {
                    dx = 1e-6;
                    dy = 0.0;
                    d = 1e-6;
                }
                const double f = d * d / k;
                disp[u].x -= dx / d * f;
                disp[u].y -= dy / d * f;
                disp[v].x += dx / d * f;
                disp[v].y += dy / d * f;
            }
        }

        for (std::size_t i = 0; i < n; ++i) {
            const double len = std::sqrt(disp[i].x * disp[i].x + disp[i].y * disp[i].y);
            if (len > 0.0) {
                const double step = std::min(len, t);
                pos[i].x += disp[i].x / len * step;
                pos[i].y += disp[i].y / len * step;
            }
            pos[i].x = std::clamp(pos[i].x, 0.0, width);
            pos[i].y = std::clamp(pos[i].y, 0.0, height);
        }
    }
}

} // namespace

LayoutResult fr_layout(const Sociogram& g, double repulsion, std::size_t iterations,
                       std::uint64_t seed, double width, double height) {
    validate(repulsion, width, height);

    LayoutResult result;
    result.iterations_run = iterations;
    result.seed = seed;
    result.repulsion_multiplier = repulsion;

    const std::size_t n = g.vertex_count();
    if (n == 0) return result;
    result.positions.resize(n);
    if (n == 1) {
        result.positions[0] = {width / 2.0, height / 2.0};
        return result;
    }

    rng::engine eng(rng::mix(seed));
    for (auto& p : result.positions) {
        p.x = rng::unit(eng) * width;
        p.y = rng::unit(eng) * height;
    }
    run_iterations(g, result.positions, repulsion, iterations, width, height);
    return result;
}

LayoutResult fr_layout_from(const Sociogram& g, std::vector<Point> initial, double repulsion,
                            std::size_t iterations, double width, double height) {
    validate(repulsion, width, height);
    if (initial.size() != g.vertex_count())
        throw contract_error("initial positions must cover every vertex");

    LayoutResult result;
    result.iterations_run = iterations;
    result.repulsion_multiplier = repulsion;
    result.positions = std::move(initial);
    run_iterations(g, result.positions, repulsion, iterations, width, height);
    return result;
}

} // namespace socio
