#include <doctest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "ppm/match.hpp"
#include "ppm/permutation.hpp"
#include "ppm/reduction.hpp"

using namespace ppm;

namespace {

CnfFormula single_clause_formula() {
    return parse_dimacs("p cnf 3 1\n1 -2 3 0\n");
}

bool is_increase(const Permutation& perm, const std::array<int, 2>& e) {
    return e[0] < e[1] && perm[e[0]] < perm[e[1]];
}

bool box_above_left(const Permutation& perm, const std::array<int, 2>& hi,
                    const std::array<int, 2>& lo) {
    return std::min(perm[hi[0]], perm[hi[1]]) > std::max(perm[lo[0]], perm[lo[1]]) &&
           std::max(hi[0], hi[1]) < std::min(lo[0], lo[1]);
}

// full structural check of a k-step staircase given its bend elements
bool is_staircase(const Permutation& perm, const std::vector<BendElements>& bends) {
    const int k = static_cast<int>(bends.size());
    for (int i = 0; i < k; ++i) {
        const auto& q = bends[static_cast<size_t>(i)].outer;
        const auto& p = bends[static_cast<size_t>(i)].inner;
        if (!is_increase(perm, q) || !is_increase(perm, p)) return false;
        // p sandwiched by q from the left
        for (int leg : p) {
            if (!(perm[leg] > perm[q[0]] && perm[leg] < perm[q[1]])) return false;
            if (!(leg > q[1])) return false;
        }
        if (i > 0) {
            const auto& prev_p = bends[static_cast<size_t>(i - 1)].inner;
            for (int leg : q) {  // q sandwiched by prev_p from below
                if (!(leg > prev_p[0] && leg < prev_p[1])) return false;
                if (!(perm[leg] > perm[prev_p[1]] && perm[leg] > perm[prev_p[0]])) return false;
            }
            const auto& prev_q = bends[static_cast<size_t>(i - 1)].outer;
            if (!(perm[q[0]] > perm[prev_q[1]] && q[0] > prev_q[1])) return false;
            const auto& pp = bends[static_cast<size_t>(i - 1)].inner;
            if (!(perm[p[0]] > perm[pp[1]] && p[0] > pp[1])) return false;
        }
    }
    return true;
}

Permutation four_elements(const Permutation& perm, std::array<int, 2> a, std::array<int, 2> b) {
    std::vector<int> pos{a[0], a[1], b[0], b[1]};
    std::sort(pos.begin(), pos.end());
    std::vector<int> vals;
    for (int p : pos) vals.push_back(perm[p]);
    return reduce_sequence(vals);
}

}  // namespace

TEST_CASE("parse_dimacs accepts the basic format") {
    const auto f = single_clause_formula();
    CHECK(f.num_vars == 3);
    REQUIRE(f.clauses.size() == 1);
    CHECK(f.clauses[0].lits[0].var == 1);
    CHECK(f.clauses[0].lits[0].positive);
    CHECK(f.clauses[0].lits[1].var == 2);
    CHECK_FALSE(f.clauses[0].lits[1].positive);
    CHECK(f.clauses[0].lits[2].var == 3);
}

TEST_CASE("parse_dimacs rejects malformed input with line numbers") {
    CHECK_THROWS_WITH_AS(parse_dimacs("p cnf 3 1\n1 1 2 0\n"), doctest::Contains("line 2"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(parse_dimacs("p cnf 3 1\n1 2 0\n"), doctest::Contains("3 literals"),
                         std::runtime_error);
    CHECK_THROWS_AS(parse_dimacs("p dnf 3 1\n1 -2 3 0\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_dimacs("1 -2 3 0\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_dimacs("p cnf 3 2\n1 -2 3 0\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 0\n"), std::runtime_error);
}

TEST_CASE("sat_bruteforce") {
    const auto f = single_clause_formula();
    const auto a = sat_bruteforce(f);
    REQUIRE(a);
    CHECK(*a == Assignment{false, false, false});  // smallest in binary order

    CnfFormula empty;
    empty.num_vars = 3;
    const auto e = sat_bruteforce(empty);
    REQUIRE(e);
    CHECK(*e == Assignment{false, false, false});

    // all eight polarity combinations over three variables: unsatisfiable
    std::string text = "p cnf 3 8\n";
    for (int mask = 0; mask < 8; ++mask) {
        for (int i = 0; i < 3; ++i) text += std::to_string((mask >> i) & 1 ? (i + 1) : -(i + 1)) + " ";
        text += "0\n";
    }
    CHECK_FALSE(sat_bruteforce(parse_dimacs(text)));

    CnfFormula big;
    big.num_vars = 26;
    CHECK_THROWS_AS(sat_bruteforce(big), std::invalid_argument);
}

TEST_CASE("build_instance sizes and classes for the single clause") {
    const auto inst = build_instance(single_clause_formula());
    CHECK(inst.text.size() - inst.anchor_length == 78);
    CHECK(inst.anchor_length == 79);
    CHECK(inst.pattern.size() == 115);
    CHECK(inst.text.size() == 157);
    CHECK(longest_decreasing_length(inst.pattern) == 2);
    CHECK(longest_decreasing_length(inst.text) == 3);
    CHECK(validate_stair_relaxed(inst.pattern_dec));
    CHECK(validate_stair_relaxed(inst.text_dec));
    CHECK(validate_stair(inst.pattern_dec));  // pattern blocks are monotone

    // anchor outnumbers the rest of the text
    CHECK(inst.anchor_length > inst.text.size() - inst.anchor_length);

    // base pairs form 3412
    for (int u = 0; u < 3; ++u) {
        const auto& t_base = inst.text_bends[static_cast<size_t>(2 * u)][0].outer;
        const auto& f_base = inst.text_bends[static_cast<size_t>(2 * u + 1)][0].outer;
        CHECK(four_elements(inst.text, t_base, f_base) == Permutation({3, 4, 1, 2}));
    }
}

TEST_CASE("instance staircases and bypasses are structurally sound") {
    std::vector<CnfFormula> formulas;
    formulas.push_back(parse_dimacs("p cnf 4 2\n1 -2 3 0\n-2 3 -4 0\n"));
    std::mt19937 rng(90210);
    for (int iter = 0; iter < 8; ++iter) {
        CnfFormula f;
        f.num_vars = 3 + static_cast<int>(rng() % 3);
        std::vector<int> vars(static_cast<size_t>(f.num_vars));
        std::iota(vars.begin(), vars.end(), 1);
        const int c = 1 + static_cast<int>(rng() % 4);
        for (int t = 0; t < c; ++t) {
            std::shuffle(vars.begin(), vars.end(), rng);
            Clause cl;
            for (int i = 0; i < 3; ++i)
                cl.lits[static_cast<size_t>(i)] = {vars[static_cast<size_t>(i)], (rng() & 1u) != 0};
            f.clauses.push_back(cl);
        }
        formulas.push_back(std::move(f));
    }

    for (const auto& f : formulas) {
        const auto inst = build_instance(f);
        CHECK(validate_stair_relaxed(inst.text_dec));
        CHECK(longest_decreasing_length(inst.pattern) <= 2);
        CHECK(longest_decreasing_length(inst.text) <= 3);

        for (int s = 0; s < 2 * f.num_vars; ++s)
            CHECK(is_staircase(inst.text, inst.text_bends[static_cast<size_t>(s)]));
        for (int u = 0; u < f.num_vars; ++u)
            CHECK(is_staircase(inst.pattern, inst.pattern_bends[static_cast<size_t>(u)]));

        for (size_t t = 0; t < inst.bypasses.size(); ++t)
            for (const auto& b : inst.bypasses[t]) {
                const int m = 2 * (static_cast<int>(t) + 1);
                auto swapped = inst.text_bends[static_cast<size_t>(b.staircase)];
                swapped[static_cast<size_t>(m - 1)].outer = b.fork_outer;
                swapped[static_cast<size_t>(m - 1)].inner = b.fork_inner;
                swapped[static_cast<size_t>(m)].outer = b.merge_outer;
                CHECK(is_staircase(inst.text, swapped));

                const auto& orig = inst.text_bends[static_cast<size_t>(b.staircase)];
                CHECK(box_above_left(inst.text, orig[static_cast<size_t>(m - 1)].outer, b.fork_outer));
                CHECK(four_elements(inst.text, orig[static_cast<size_t>(m - 1)].outer, b.fork_outer) ==
                      Permutation({3, 4, 1, 2}));
                CHECK(four_elements(inst.text, orig[static_cast<size_t>(m)].outer, b.merge_outer) ==
                      Permutation({2, 3, 1, 4}));
            }
    }
}

TEST_CASE("every gadget avoids 321 and inner layers increase") {
    const auto inst = build_instance(single_clause_formula());
    for (size_t i = 1; i < inst.text_dec.blocks.size(); ++i) {
        const auto& blk = inst.text_dec.blocks[i];
        std::vector<int> positions;
        for (int v : blk) positions.push_back(inst.text.position_of(v) + 1);
        std::sort(positions.begin(), positions.end());
        const auto sub = oracle::subpattern(inst.text, positions);
        CHECK(longest_decreasing_length(sub) <= 2);
    }
}

TEST_CASE("embedding follows the assignment") {
    const auto inst = build_instance(single_clause_formula());

    auto all_true = embed_from_assignment(inst, {true, true, true});
    REQUIRE(all_true);
    CHECK(is_occurrence(inst.pattern, inst.text, *all_true));

    CHECK_FALSE(embed_from_assignment(inst, {false, true, false}));

    auto all_false = embed_from_assignment(inst, {false, false, false});
    REQUIRE(all_false);
    CHECK(is_occurrence(inst.pattern, inst.text, *all_false));

    CHECK_THROWS_AS(embed_from_assignment(inst, {true}), std::invalid_argument);
}

TEST_CASE("assignment-driven decision matches brute-force SAT") {
    const auto inst = build_instance(single_clause_formula());
    const auto w = decide_via_assignments(inst);
    REQUIRE(w);
    CHECK(w->assignment == *sat_bruteforce(inst.formula));
    CHECK(is_occurrence(inst.pattern, inst.text, w->occurrence));
}

TEST_CASE("degenerate clause-free instance is satisfiable") {
    CnfFormula f;
    f.num_vars = 3;
    const auto inst = build_instance(f);
    CHECK(inst.pattern.size() == 12 + inst.anchor_length);
    const auto w = decide_via_assignments(inst);
    REQUIRE(w);
    CHECK(is_occurrence(inst.pattern, inst.text, w->occurrence));
}

TEST_CASE("assignment_from_occurrence round-trips and rejects junk") {
    const auto inst = build_instance(single_clause_formula());
    for (int mask = 0; mask < 8; ++mask) {
        Assignment phi{(mask & 1) != 0, (mask & 2) != 0, (mask & 4) != 0};
        const auto occ = embed_from_assignment(inst, phi);
        if (!occ) continue;
        CHECK(assignment_from_occurrence(inst, *occ) == phi);
    }
    auto occ = *embed_from_assignment(inst, {false, false, false});
    auto broken = occ;
    std::swap(broken[0], broken[1]);
    CHECK_THROWS_AS(assignment_from_occurrence(inst, broken), std::invalid_argument);
}

TEST_CASE("generic backtracking cross-validates the embedding decision") {
    // satisfiable single-clause instance: an unconstrained search finds a
    // containment witness on its own
    const auto inst = build_instance(single_clause_formula());
    const auto bt = match_backtrack(inst.pattern, inst.text, MatchBudget{50000000});
    REQUIRE(bt.outcome == MatchOutcome::Contained);
    CHECK(is_occurrence(inst.pattern, inst.text, bt.occurrence));

    // unsatisfiable eight-clause instance: a budgeted search never certifies
    // containment (full exhaustion is out of reach at this size)
    std::string cnf = "p cnf 3 8\n";
    for (int mask = 0; mask < 8; ++mask) {
        for (int i = 0; i < 3; ++i)
            cnf += std::to_string((mask >> i) & 1 ? (i + 1) : -(i + 1)) + " ";
        cnf += "0\n";
    }
    const auto unsat = build_instance(parse_dimacs(cnf));
    CHECK_FALSE(decide_via_assignments(unsat));
    const auto bt2 = match_backtrack(unsat.pattern, unsat.text, MatchBudget{2000000});
    CHECK(bt2.outcome != MatchOutcome::Contained);
}

TEST_CASE("twirled instance lands in the skew classes") {
    const auto f = single_clause_formula();
    const auto tw = build_twirled_instance(f);
    CHECK(tw.pattern.size() == 115);
    CHECK(tw.text.size() == 157);
    CHECK(in_skew_star(tw.pattern));
    CHECK(validate_spiral(tw.pattern_dec));
    CHECK(validate_spiral_relaxed(tw.text_dec));

    // odd-indexed blocks union decreasing; even-indexed union splits into
    // at most two increasing sequences
    std::vector<int> odd_positions, even_positions;
    for (size_t i = 0; i < tw.text_dec.blocks.size(); ++i)
        for (int v : tw.text_dec.blocks[i]) {
            if (i % 2 == 0)
                odd_positions.push_back(tw.text.position_of(v) + 1);
            else
                even_positions.push_back(tw.text.position_of(v) + 1);
        }
    std::sort(odd_positions.begin(), odd_positions.end());
    std::sort(even_positions.begin(), even_positions.end());
    CHECK(longest_increasing_length(oracle::subpattern(tw.text, odd_positions)) <= 1);
    CHECK(longest_decreasing_length(oracle::subpattern(tw.text, even_positions)) <= 2);
}

TEST_CASE("embeddings transport to the twirled instance") {
    const auto f = single_clause_formula();
    const auto inst = build_instance(f);
    const auto tw = build_twirled_instance(f);
    for (int mask = 0; mask < 8; ++mask) {
        Assignment phi{(mask & 1) != 0, (mask & 2) != 0, (mask & 4) != 0};
        const auto occ = embed_from_assignment(inst, phi);
        if (!occ) continue;
        // transported occurrence: pattern element at twirled position a*
        // maps to the twirled position of its old image
        Occurrence star(occ->size());
        for (int p = 0; p < inst.pattern.size(); ++p) {
            const int new_p = tw.pattern_pos_map[static_cast<size_t>(p)];
            const int old_t = (*occ)[static_cast<size_t>(p)] - 1;
            star[static_cast<size_t>(new_p)] = tw.text_pos_map[static_cast<size_t>(old_t)] + 1;
        }
        CHECK(is_occurrence(tw.pattern, tw.text, star));
    }
}

TEST_CASE("standalone bypassed staircase") {
    const auto bs = staircase_with_bypass(4, 2);
    CHECK(bs.perm.size() == 22);
    CHECK(is_staircase(bs.perm, bs.bends));

    auto swapped = bs.bends;
    swapped[1].outer = bs.bypass.fork_outer;
    swapped[1].inner = bs.bypass.fork_inner;
    swapped[2].outer = bs.bypass.merge_outer;
    CHECK(is_staircase(bs.perm, swapped));

    CHECK(four_elements(bs.perm, bs.bends[1].outer, bs.bypass.fork_outer) == Permutation({3, 4, 1, 2}));
    CHECK(four_elements(bs.perm, bs.bends[2].outer, bs.bypass.merge_outer) == Permutation({2, 3, 1, 4}));

    CHECK_THROWS_AS(staircase_with_bypass(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(staircase_with_bypass(4, 4), std::invalid_argument);
}

TEST_CASE("base selectivity: long increasing runs in the base pick one polarity per variable") {
    for (int v = 3; v <= 4; ++v) {
        CnfFormula f;
        f.num_vars = v;
        const auto inst = build_instance(f);
        // collect the base: first outer bends of all staircases, by position
        std::vector<int> base_positions;
        for (int s = 0; s < 2 * v; ++s)
            for (int leg : inst.text_bends[static_cast<size_t>(s)][0].outer)
                base_positions.push_back(leg);
        std::sort(base_positions.begin(), base_positions.end());
        REQUIRE(static_cast<int>(base_positions.size()) == 4 * v);

        // enumerate all increasing subsequences of length 2v of the base
        std::vector<int> stack;
        int count = 0;
        auto rec = [&](auto&& self, size_t from) -> void {
            if (static_cast<int>(stack.size()) == 2 * v) {
                ++count;
                // must contain exactly one base pair per variable
                for (int u = 0; u < v; ++u) {
                    int hits = 0;
                    for (int pos : stack)
                        for (int s = 2 * u; s <= 2 * u + 1; ++s) {
                            const auto& b = inst.text_bends[static_cast<size_t>(s)][0].outer;
                            if (pos == b[0] || pos == b[1]) ++hits;
                        }
                    CHECK(hits == 2);
                    bool t_pair = false, f_pair = false;
                    const auto& tb = inst.text_bends[static_cast<size_t>(2 * u)][0].outer;
                    const auto& fb = inst.text_bends[static_cast<size_t>(2 * u + 1)][0].outer;
                    t_pair = std::count(stack.begin(), stack.end(), tb[0]) &&
                             std::count(stack.begin(), stack.end(), tb[1]);
                    f_pair = std::count(stack.begin(), stack.end(), fb[0]) &&
                             std::count(stack.begin(), stack.end(), fb[1]);
                    CHECK(t_pair != f_pair);
                }
                return;
            }
            for (size_t i = from; i < base_positions.size(); ++i) {
                const int pos = base_positions[i];
                if (!stack.empty() && inst.text[pos] <= inst.text[stack.back()]) continue;
                if (!stack.empty() && pos <= stack.back()) continue;
                stack.push_back(pos);
                self(self, i + 1);
                stack.pop_back();
            }
        };
        rec(rec, 0);
        CHECK(count == (1 << v));  // one independent pair choice per variable
    }
}
