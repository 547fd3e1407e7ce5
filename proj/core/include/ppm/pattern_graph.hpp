#ifndef PPM_PATTERN_GRAPH_HPP
#define PPM_PATTERN_GRAPH_HPP

#include <vector>

#include "ppm/decompose.hpp"
#include "ppm/permutation.hpp"

namespace ppm {

/// The incidence graph of a permutation: vertices are the values 1..k, an
/// edge joins value-adjacent elements (red) and position-adjacent elements
/// (blue). An edge may carry both colors; each color forms a Hamiltonian
/// path.
struct PatternGraph {
    struct Edge {
        int u, v;  // values, u < v
        bool red, blue;
    };
    Permutation host;
    int vertex_count = 0;
    std::vector<Edge> edges;
};

PatternGraph build_graph(const Permutation& perm);

/// The deterministic linear order on the host's values used for the
/// separation bound (the stair linear extension; for spiral decompositions
/// the untwirled order transported back).
std::vector<int> stair_order(const StairDecomposition& dec);
std::vector<int> stair_order(const SpiralDecomposition& dec);

/// max_i |{u placed before step i with a neighbour at step >= i}| under the
/// given order. Equals the pathwidth when minimized over orders; here the
/// order is an input. Throws if order does not cover the vertices.
int vertex_separation(const PatternGraph& graph, const std::vector<int>& order);

struct WidthBound {
    int separation;  // computed vertex separation (untwirled order for spirals)
    int bound;       // guaranteed ceiling: 2m for stair, 6m for spiral
};

WidthBound pathwidth_bound(const StairDecomposition& dec);
WidthBound pathwidth_bound(const SpiralDecomposition& dec);

/// Per-edge good/bad relative to a block decomposition: good means same
/// block, or blue across consecutive blocks (odd, odd+1), or red across
/// (even, even+1). bad[i] lines up with graph.edges[i].
struct EdgeLabels {
    PatternGraph graph;
    std::vector<bool> bad;
};

EdgeLabels classify_edges(const StairDecomposition& dec);
EdgeLabels classify_edges(const SpiralDecomposition& dec);

}  // namespace ppm

#endif
