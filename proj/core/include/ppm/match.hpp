#ifndef PPM_MATCH_HPP
#define PPM_MATCH_HPP

#include <cstdint>
#include <vector>

#include "ppm/permutation.hpp"

namespace ppm {

enum class MatchOutcome { Contained, NotContained, Indeterminate };

struct MatchBudget {
    std::uint64_t node_limit = UINT64_MAX;  // search-tree nodes before giving up
};

struct MatchResult {
    MatchOutcome outcome = MatchOutcome::NotContained;
    Occurrence occurrence;  // valid iff Contained
    std::uint64_t nodes = 0;
};

/// Depth-first search over pattern positions left to right, text candidates
/// left to right, pruned by exact value windows and remaining-length counts.
/// Deterministic: a Contained result carries the lexicographically smallest
/// occurrence. Indeterminate only on budget exhaustion.
MatchResult match_backtrack(const Permutation& pattern, const Permutation& text,
                            MatchBudget budget = {});

struct SeparatorDpResult {
    MatchOutcome outcome = MatchOutcome::NotContained;  // never Indeterminate
    Occurrence occurrence;
    int max_separator = 0;  // largest active-separator size over all steps
};

/// Exact decision by dynamic programming over the given vertex order of the
/// pattern's incidence graph: a state is the assignment of the active
/// separator to text elements, checked against the red/blue adjacency
/// constraints of the newly placed element; states with equal separator
/// images are merged. Work is bounded by n^(separator size) per step.
SeparatorDpResult match_separator_dp(const Permutation& pattern, const std::vector<int>& order,
                                     const Permutation& text);

}  // namespace ppm

#endif
