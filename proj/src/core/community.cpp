#include "core/community.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "core/errors.hpp"

namespace socio {

double modularity(const Sociogram& g, const std::vector<std::vector<std::uint32_t>>& partition) {
    const std::size_t n = g.vertex_count();
    const std::uint64_t m = g.und_edge_count();
    if (m == 0) throw undefined_metric_error("modularity undefined: graph has no edges");

    std::vector<std::int64_t> block_of(n, -1);
    for (std::size_t b = 0; b < partition.size(); ++b) {
        for (std::uint32_t v : partition[b]) {
            if (v >= n || block_of[v] != -1)
                throw contract_error("partition blocks must be disjoint subsets of the vertex set");
            block_of[v] = static_cast<std::int64_t>(b);
        }
    }
    for (std::size_t v = 0; v < n; ++v)
        if (block_of[v] == -1) throw contract_error("partition must cover every vertex");

    std::vector<std::uint64_t> intra(partition.size(), 0), deg(partition.size(), 0);
    for (std::uint32_t v = 0; v < n; ++v) {
        deg[block_of[v]] += g.und_degree(v);
        for (std::uint32_t w : g.und_neighbors(v)) {
            if (w > v && block_of[w] == block_of[v]) ++intra[block_of[v]];
        }
    }
    double q = 0.0;
    const double two_m = 2.0 * static_cast<double>(m);
    for (std::size_t b = 0; b < partition.size(); ++b) {
        double frac = static_cast<double>(deg[b]) / two_m;
        q += static_cast<double>(intra[b]) / static_cast<double>(m) - frac * frac;
    }
    return q;
}

namespace {

// Agglomeration state shared by cnm_partition and best_bipartition.
// Blocks are keyed by their smallest member index; merge gains are compared
// as the exact integer 2m*E_ij - d_i*d_j, which has the sign and order of
// the real-valued gain E_ij/m - d_i*d_j/(2m^2). Candidates live in a lazy
// max-heap; stale entries are detected by recomputing the key at pop time.
struct MergeEngine {
    struct Cand {
        std::int64_t key;
        std::uint32_t r, s; // r < s
    };
    struct CandLess {
        bool operator()(const Cand& a, const Cand& b) const {
            if (a.key != b.key) return a.key < b.key;
            if (a.r != b.r) return a.r > b.r;
            return a.s > b.s;
        }
    };

    std::uint64_t m = 0;
    std::vector<std::uint32_t> parent;           // union-find toward block rep
    std::vector<std::map<std::uint32_t, std::int64_t>> between;
    std::vector<std::int64_t> deg;
    std::vector<char> live;
    std::int64_t sum_intra = 0;                  // sum of within-block edges
    std::int64_t sum_deg_sq = 0;                 // sum of squared block degrees
    std::size_t block_count = 0;
    std::priority_queue<Cand, std::vector<Cand>, CandLess> heap;

    explicit MergeEngine(const Sociogram& g) {
        const std::size_t n = g.vertex_count();
        m = g.und_edge_count();
        parent.resize(n);
        between.resize(n);
        deg.resize(n);
        live.assign(n, 1);
        block_count = n;
        for (std::uint32_t v = 0; v < n; ++v) {
            parent[v] = v;
            deg[v] = static_cast<std::int64_t>(g.und_degree(v));
            sum_deg_sq += deg[v] * deg[v];
            for (std::uint32_t w : g.und_neighbors(v)) between[v][w] = 1;
        }
        for (std::uint32_t r = 0; r < n; ++r)
            for (const auto& [s, e] : between[r])
                if (s > r) heap.push({pair_key(e, r, s), r, s});
    }

    std::int64_t pair_key(std::int64_t e, std::uint32_t r, std::uint32_t s) const {
        return static_cast<std::int64_t>(2 * m) * e - deg[r] * deg[s];
    }

    std::uint32_t root(std::uint32_t v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    }

    double q() const {
        const double md = static_cast<double>(m);
        return static_cast<double>(sum_intra) / md -
               static_cast<double>(sum_deg_sq) / (4.0 * md * md);
    }

    // Pops until the top entry matches the current state. Returns false when
    // no two blocks remain connected.
    bool best_pair(Cand& out) {
        while (!heap.empty()) {
            Cand c = heap.top();
            heap.pop();
            if (!live[c.r] || !live[c.s]) continue;
            auto it = between[c.r].find(c.s);
            if (it == between[c.r].end()) continue;
            if (c.key != pair_key(it->second, c.r, c.s)) continue;
            out = c;
            return true;
        }
        return false;
    }

    void merge(std::uint32_t r, std::uint32_t s) { // r < s, both live
        auto it = between[r].find(s);
        const std::int64_t e_rs = it->second;
        between[r].erase(it);
        between[s].erase(r);

        sum_intra += e_rs;
        sum_deg_sq += 2 * deg[r] * deg[s];
        deg[r] += deg[s];

        for (const auto& [x, e] : between[s]) {
            between[x].erase(s);
            between[x][r] += e;
            between[r][x] += e;
        }
        between[s].clear();
        live[s] = 0;
        parent[s] = r;
        --block_count;

        // deg[r] changed, so every key involving r is refreshed.
        for (const auto& [x, e] : between[r]) {
            std::uint32_t a = std::min(r, x), b = std::max(r, x);
            heap.push({pair_key(e, a, b), a, b});
        }
    }

    std::vector<std::vector<std::uint32_t>> blocks() {
        std::vector<std::vector<std::uint32_t>> by_root(parent.size());
        for (std::uint32_t v = 0; v < parent.size(); ++v) by_root[root(v)].push_back(v);
        std::vector<std::vector<std::uint32_t>> out;
        for (auto& b : by_root)
            if (!b.empty()) out.push_back(std::move(b));
        return out;
    }
};

} // namespace

Grouping cnm_partition(const Sociogram& g) {
    Grouping result;
    const std::size_t n = g.vertex_count();
    if (g.und_edge_count() == 0) {
        for (std::uint32_t v = 0; v < n; ++v) result.blocks.push_back({v});
        result.q_defined = false;
        result.labels.assign(result.blocks.size(), std::nullopt);
        return result;
    }

    // Full dendrogram pass. Q = (4m*sum_intra - sum_deg_sq) / (4m^2), so the
    // integer numerator orders the trace exactly; the earliest peak wins.
    MergeEngine eng(g);
    const std::int64_t four_m = 4 * static_cast<std::int64_t>(eng.m);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> seq;
    std::int64_t best_score = -eng.sum_deg_sq;
    std::size_t best_len = 0;
    MergeEngine::Cand c;
    while (eng.best_pair(c)) {
        eng.merge(c.r, c.s);
        seq.emplace_back(c.r, c.s);
        const std::int64_t score = four_m * eng.sum_intra - eng.sum_deg_sq;
        if (score > best_score) {
            best_score = score;
            best_len = seq.size();
        }
    }

    MergeEngine cut(g);
    for (std::size_t i = 0; i < best_len; ++i) cut.merge(seq[i].first, seq[i].second);

    result.blocks = cut.blocks();
    std::stable_sort(result.blocks.begin(), result.blocks.end(),
                     [](const auto& a, const auto& b) {
                         if (a.size() != b.size()) return a.size() > b.size();
                         return a.front() < b.front();
                     });
    result.modularity_q = cut.q();
    result.q_defined = true;
    result.labels.assign(result.blocks.size(), std::nullopt);
    return result;
}

std::optional<Bipartition> best_bipartition(const Sociogram& g) {
    const std::size_t n = g.vertex_count();
    if (n < 2 || g.und_edge_count() == 0) return std::nullopt;

    MergeEngine eng(g);
    MergeEngine::Cand c;
    while (eng.block_count > 2 && eng.best_pair(c)) eng.merge(c.r, c.s);
    if (eng.block_count != 2) return std::nullopt;

    Bipartition bp;
    bp.q = eng.q();
    bp.cross_edge_fraction =
        static_cast<double>(static_cast<std::int64_t>(eng.m) - eng.sum_intra) /
        static_cast<double>(eng.m);
    return bp;
}

} // namespace socio
