#ifndef PPM_IO_HPP
#define PPM_IO_HPP

#include <string>
#include <vector>

#include "ppm/decompose.hpp"
#include "ppm/pattern_graph.hpp"
#include "ppm/permutation.hpp"
#include "ppm/reduction.hpp"

namespace ppm {

/// .perm format: one line of space-separated integers 1..n. Lines whose
/// first non-space character is '#' are ignored; surrounding whitespace is
/// tolerated.
Permutation parse_perm(const std::string& text);
Permutation read_perm_file(const std::string& path);
std::string format_perm(const Permutation& perm);
void write_perm_file(const std::string& path, const Permutation& perm);

CnfFormula read_dimacs_file(const std::string& path);

/// {"host": [...], "blocks": [[...], ...], "kind": "stair"|"spiral"}
std::string decomposition_json(const StairDecomposition& dec);
std::string decomposition_json(const SpiralDecomposition& dec);

struct ParsedDecomposition {
    std::vector<int> host;  // may be empty if the file omits it
    std::vector<std::vector<int>> blocks;
    std::string kind;  // "stair" or "spiral"
};
ParsedDecomposition parse_decomposition_json(const std::string& text);

/// {"k": n, "edges": [{"u","v","red","blue","bad"}...], "vertex_separation": vs,
///  "width_bound": b}
std::string graph_json(const EdgeLabels& labels, int vertex_separation_value, int width_bound);

/// Instance metadata written next to pattern.perm / text.perm.
std::string reduction_meta_json(const ReductionInstance& inst, bool twirled,
                                const std::vector<Provenance>& provenance_by_position);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace ppm

#endif
