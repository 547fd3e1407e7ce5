#ifndef PPM_REDUCTION_HPP
#define PPM_REDUCTION_HPP

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ppm/decompose.hpp"
#include "ppm/permutation.hpp"
#include "ppm/twirl.hpp"

namespace ppm {

struct Literal {
    int var = 0;         // 1-based variable index
    bool positive = true;
};

/// Exactly three literals over three distinct variables.
struct Clause {
    std::array<Literal, 3> lits;
};

struct CnfFormula {
    int num_vars = 0;  // at least 3
    std::vector<Clause> clauses;
};

/// Strict DIMACS CNF reader for this instance family: every clause must
/// have exactly three literals over distinct variables. Errors carry the
/// offending line number.
CnfFormula parse_dimacs(std::istream& in);
CnfFormula parse_dimacs(const std::string& text);

using Assignment = std::vector<bool>;  // index i-1 holds the value of variable i

/// Smallest satisfying assignment in binary order (variable 1 is the least
/// significant bit), or nullopt. Guarded to num_vars <= 25.
std::optional<Assignment> sat_bruteforce(const CnfFormula& formula);

/// Where a text element of the instance came from.
struct Provenance {
    bool anchor = false;
    int var = 0;          // 1-based variable, when not anchor
    bool positive = true; // which literal staircase
    int step = 0;         // 1-based step in the staircase
    bool inner = false;   // inner bend (vs outer)
    bool bypass = false;  // belongs to a bypass rather than the original bends
    int clause = 0;       // 1-based clause, when bypass
};

/// One bend of a staircase in the laid-out text: the two element positions
/// of the outer increase and of the matching inner increase (0-based).
struct BendElements {
    std::array<int, 2> outer{{-1, -1}};
    std::array<int, 2> inner{{-1, -1}};
};

/// A bypass detour inserted for one clause on one staircase: fork bend and
/// its inner bend at the fork step, and the merge bend one step later.
struct BypassElements {
    int staircase = -1;  // 0-based: variable (s/2)+1, positive iff s even
    std::array<int, 2> fork_outer{{-1, -1}};
    std::array<int, 2> fork_inner{{-1, -1}};
    std::array<int, 2> merge_outer{{-1, -1}};
};

/// The pattern/text pair produced from a formula, with the block structure
/// and element provenance needed for structured verification.
struct ReductionInstance {
    CnfFormula formula;
    Permutation pattern;
    Permutation text;
    StairDecomposition pattern_dec;  // relaxed: anchor, then alternating outer/inner bend blocks
    StairDecomposition text_dec;
    int anchor_length = 0;  // one more than the non-anchor text size

    std::vector<Provenance> provenance;  // per text element, by 0-based position

    // layout tables (0-based element positions)
    std::vector<int> pattern_anchor;                      // M positions
    std::vector<int> text_anchor;                         // M positions
    std::vector<std::vector<BendElements>> pattern_bends; // [variable-1][step-1]
    std::vector<std::vector<BendElements>> text_bends;    // [staircase][step-1]
    std::vector<std::vector<BypassElements>> bypasses;    // [clause-1]
};

ReductionInstance build_instance(const CnfFormula& formula);

/// Map the pattern into the text along a truth assignment: anchor to
/// anchor, each variable's staircase into the staircase of its assigned
/// literal, picking per clause either the original bends or the bypass so
/// chosen bends stay increasing inside every gadget (lowest feasible choice
/// first). Returns nullopt exactly when some clause is unsatisfied.
std::optional<Occurrence> embed_from_assignment(const ReductionInstance& inst, const Assignment& phi);

struct SatWitness {
    Assignment assignment;
    Occurrence occurrence;
};

/// Iterate all assignments in binary order and return the first embedding;
/// equivalent to containment of the pattern in the text.
std::optional<SatWitness> decide_via_assignments(const ReductionInstance& inst);

/// Read the assignment off a pattern occurrence: the base of each
/// variable's staircase must land on one of the two base pairs. Throws if
/// occ is not a valid, anchor-aligned occurrence.
Assignment assignment_from_occurrence(const ReductionInstance& inst, const Occurrence& occ);

struct TwirledInstance {
    Permutation pattern;
    Permutation text;
    SpiralDecomposition pattern_dec;  // relaxed on the text side
    SpiralDecomposition text_dec;
    std::vector<int> pattern_pos_map, pattern_val_map;  // old -> new, as in TwirlResult
    std::vector<int> text_pos_map, text_val_map;
};

/// Twirl both sides of the instance along their stair decompositions.
TwirledInstance build_twirled_instance(const CnfFormula& formula);

/// A single staircase of the given number of steps with one bypass, as a
/// standalone permutation with labelled bends; used to examine the rigidity
/// of bypassed staircases.
struct BypassedStaircase {
    Permutation perm;
    std::vector<BendElements> bends;  // per step, the original bends (0-based positions)
    BypassElements bypass;
    int bypass_step = 0;
};

BypassedStaircase staircase_with_bypass(int steps, int bypass_step);

}  // namespace ppm

#endif
