#include "ppm/pattern_graph.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

#include "ppm/twirl.hpp"

namespace ppm {

PatternGraph build_graph(const Permutation& perm) {
    const int k = perm.size();
    if (k == 0) throw std::invalid_argument("build_graph: empty permutation");
    std::map<std::pair<int, int>, std::pair<bool, bool>> flags;  // (u,v) -> (red, blue)
    for (int a = 1; a < k; ++a) flags[{a, a + 1}].first = true;
    for (int p = 0; p + 1 < k; ++p) {
        const int u = std::min(perm[p], perm[p + 1]);
        const int v = std::max(perm[p], perm[p + 1]);
        flags[{u, v}].second = true;
    }
    PatternGraph g;
    g.host = perm;
    g.vertex_count = k;
    g.edges.reserve(flags.size());
    for (const auto& [uv, rb] : flags)
        g.edges.push_back({uv.first, uv.second, rb.first, rb.second});
    return g;
}

std::vector<int> stair_order(const StairDecomposition& dec) {
    return linear_extension(dec);
}

std::vector<int> stair_order(const SpiralDecomposition& dec) {
    const UntwirlResult un = untwirl(dec);
    const std::vector<int> order = linear_extension(un.out);
    // map the stair values back to the spiral's values
    std::vector<int> back(static_cast<size_t>(dec.host.size()) + 1, 0);
    for (int v = 1; v <= dec.host.size(); ++v)
        back[static_cast<size_t>(un.val_map[static_cast<size_t>(v - 1)])] = v;
    std::vector<int> out;
    out.reserve(order.size());
    for (int v : order) out.push_back(back[static_cast<size_t>(v)]);
    return out;
}

int vertex_separation(const PatternGraph& graph, const std::vector<int>& order) {
    const int k = graph.vertex_count;
    if (static_cast<int>(order.size()) != k)
        throw std::invalid_argument("vertex_separation: order must cover all vertices");
    std::vector<int> step(static_cast<size_t>(k + 1), 0);  // value -> 1-based step
    for (int i = 0; i < k; ++i) {
        const int v = order[static_cast<size_t>(i)];
        if (v < 1 || v > k || step[static_cast<size_t>(v)] != 0)
            throw std::invalid_argument("vertex_separation: order must cover all vertices");
        step[static_cast<size_t>(v)] = i + 1;
    }

    // vertex v is active at cut i if step[v] < i and some neighbour sits at step >= i
    std::vector<int> max_nb(static_cast<size_t>(k + 1), 0);
    for (const auto& e : graph.edges) {
        max_nb[static_cast<size_t>(e.u)] = std::max(max_nb[static_cast<size_t>(e.u)], step[static_cast<size_t>(e.v)]);
        max_nb[static_cast<size_t>(e.v)] = std::max(max_nb[static_cast<size_t>(e.v)], step[static_cast<size_t>(e.u)]);
    }
    std::vector<int> delta(static_cast<size_t>(k + 2), 0);
    for (int v = 1; v <= k; ++v) {
        const int s = step[static_cast<size_t>(v)];
        if (max_nb[static_cast<size_t>(v)] > s) {
            delta[static_cast<size_t>(s + 1)] += 1;
            delta[static_cast<size_t>(max_nb[static_cast<size_t>(v)] + 1)] -= 1;
        }
    }
    int best = 0, cur = 0;
    for (int i = 1; i <= k; ++i) {
        cur += delta[static_cast<size_t>(i)];
        best = std::max(best, cur);
    }
    return best;
}

WidthBound pathwidth_bound(const StairDecomposition& dec) {
    const PatternGraph g = build_graph(dec.host);
    return {vertex_separation(g, stair_order(dec)), 2 * static_cast<int>(dec.blocks.size())};
}

WidthBound pathwidth_bound(const SpiralDecomposition& dec) {
    const UntwirlResult un = untwirl(dec);
    const PatternGraph g = build_graph(un.out.host);
    return {vertex_separation(g, linear_extension(un.out)), 6 * static_cast<int>(dec.blocks.size())};
}

namespace {

EdgeLabels classify(const Permutation& host, const std::vector<std::vector<int>>& blocks) {
    EdgeLabels out;
    out.graph = build_graph(host);
    std::vector<int> block_of(static_cast<size_t>(host.size() + 1), 0);
    for (size_t i = 0; i < blocks.size(); ++i)
        for (int v : blocks[i]) block_of[static_cast<size_t>(v)] = static_cast<int>(i) + 1;
    out.bad.reserve(out.graph.edges.size());
    for (const auto& e : out.graph.edges) {
        int i = block_of[static_cast<size_t>(e.u)];
        int j = block_of[static_cast<size_t>(e.v)];
        if (i > j) std::swap(i, j);
        bool good = (i == j);
        if (!good && j == i + 1) {
            if (e.blue && i % 2 == 1) good = true;
            if (e.red && i % 2 == 0) good = true;
        }
        out.bad.push_back(!good);
    }
    return out;
}

}  // namespace

EdgeLabels classify_edges(const StairDecomposition& dec) { return classify(dec.host, dec.blocks); }
EdgeLabels classify_edges(const SpiralDecomposition& dec) { return classify(dec.host, dec.blocks); }

}  // namespace ppm
