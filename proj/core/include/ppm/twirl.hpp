#ifndef PPM_TWIRL_HPP
#define PPM_TWIRL_HPP

#include <vector>

#include "ppm/decompose.hpp"

namespace ppm {

/// Result of twirling: the rearranged permutation with its spiral
/// decomposition, plus the element correspondence. pos_map[p] is the new
/// 0-based position of the element at old 0-based position p, and
/// val_map[v-1] is the new value of the element with old value v.
struct TwirlResult {
    SpiralDecomposition out;
    std::vector<int> pos_map;
    std::vector<int> val_map;
};

struct UntwirlResult {
    StairDecomposition out;
    std::vector<int> pos_map;
    std::vector<int> val_map;
};

/// Rearrange a (relaxed) stair-decomposed permutation into its spiral
/// form: each block is rotated or reflected (rows to rows, columns to
/// columns), adjacent blocks keep their interleaving on the shared axis up
/// to the per-residue flip, and blocks are rearranged into the spiral
/// layout. The output is the unique permutation satisfying all of these
/// constraints. Throws on an invalid decomposition.
TwirlResult twirl(const StairDecomposition& dec);

/// Inverse of twirl: untwirl(twirl(d)) restores d exactly.
UntwirlResult untwirl(const SpiralDecomposition& dec);

}  // namespace ppm

#endif
