#ifndef PPM_DECOMPOSE_HPP
#define PPM_DECOMPOSE_HPP

#include <vector>

#include "ppm/permutation.hpp"

namespace ppm {

/// Ordered partition of a permutation's elements (as values 1..n) into
/// blocks B_1..B_m, each block stored as an ascending value list.
/// Stair shape: each block induces an increasing subsequence, B_{2i} is
/// above B_{2i-1}, B_{2i+1} is right of B_{2i}, and B_{i+2} is above and
/// right of B_i. The relaxed variant drops the within-block monotonicity.
struct StairDecomposition {
    Permutation host;
    std::vector<std::vector<int>> blocks;
};

/// Spiral shape: odd blocks decreasing, even increasing, with the mutual
/// positions of B_{i-1}, B_i, B_{>i} cycling by i mod 4 (B_2 below B_1,
/// B_3 right of B_2, B_4 above B_3, B_5 left of B_4, ...).
struct SpiralDecomposition {
    Permutation host;
    std::vector<std::vector<int>> blocks;
};

/// True iff dec satisfies all stair-decomposition conditions.
/// Throws if the blocks do not partition the host's elements.
bool validate_stair(const StairDecomposition& dec);

/// Stair conditions minus within-block monotonicity.
bool validate_stair_relaxed(const StairDecomposition& dec);

bool validate_spiral(const SpiralDecomposition& dec);
bool validate_spiral_relaxed(const SpiralDecomposition& dec);

/// Greedy stair decomposition of a 321-avoiding permutation: B_1 is the
/// longest value interval [d] forming an increasing subsequence, B_2 the
/// maximal increasing prefix of the rest, then alternate maximal down-set /
/// maximal prefix until exhausted. Throws (with a witness) when the input
/// contains 321.
StairDecomposition stair_decompose(const Permutation& perm);

/// The universal k^2-sized 321-avoiding pattern with its canonical
/// decomposition into k blocks of k elements; consecutive blocks form
/// vertical/horizontal alternations.
StairDecomposition k_track(int k);

/// Block-preserving occurrence of dec's host in the q-track (block B_i of
/// the host lands inside block A_i of the track). Requires
/// q >= max(host size, block count).
Occurrence embed_in_track(const StairDecomposition& dec, int q);

/// Canonical spiral decomposition of a permutation avoiding
/// {2143, 3412, 3142}: peel the fixed skew partition in rotating order
/// (right of D, above I, left of D, below I). Interior empty blocks are
/// kept so block indices retain their i mod 4 meaning. Throws (with a
/// witness) outside the class.
SpiralDecomposition spiral_decompose(const Permutation& perm);

/// The k-spiral: the k-track twirled along its canonical decomposition.
SpiralDecomposition k_spiral(int k);

/// Block-preserving occurrence of dec's host in the q-spiral, obtained by
/// untwirling, embedding into the q-track, and transporting back.
Occurrence embed_in_spiral(const SpiralDecomposition& dec, int q);

/// A linear order on the host's values extending the left-to-right orders
/// of B_{2i-1} u B_{2i} and the bottom-to-top orders of B_{2i} u B_{2i+1}.
/// New blocks are interleaved between their already-placed neighbours, so
/// the result is deterministic.
std::vector<int> linear_extension(const StairDecomposition& dec);

}  // namespace ppm

#endif
