#include "ppm/reduction.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ppm {

namespace {

void validate_formula(const CnfFormula& f) {
    if (f.num_vars < 3)
        throw std::invalid_argument("formula must have at least 3 variables");
    for (const auto& cl : f.clauses) {
        for (const auto& lit : cl.lits)
            if (lit.var < 1 || lit.var > f.num_vars)
                throw std::invalid_argument("literal variable out of range");
        if (cl.lits[0].var == cl.lits[1].var || cl.lits[0].var == cl.lits[2].var ||
            cl.lits[1].var == cl.lits[2].var)
            throw std::invalid_argument("clause repeats a variable");
    }
}

[[noreturn]] void parse_fail(int line, const std::string& what) {
    throw std::runtime_error("dimacs line " + std::to_string(line) + ": " + what);
}

}  // namespace

CnfFormula parse_dimacs(std::istream& in) {
    CnfFormula f;
    int declared_clauses = -1;
    int line_no = 0;
    std::string line;
    std::vector<int> pending;
    int clause_start_line = 0;

    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;        // blank
        if (first[0] == 'c') continue;       // comment
        if (first == "p") {
            if (declared_clauses >= 0) parse_fail(line_no, "duplicate header");
            std::string fmt;
            if (!(ls >> fmt) || fmt != "cnf") parse_fail(line_no, "malformed header");
            if (!(ls >> f.num_vars >> declared_clauses) || f.num_vars < 3 || declared_clauses < 0)
                parse_fail(line_no, "malformed header");
            continue;
        }
        if (declared_clauses < 0) parse_fail(line_no, "clause before header");
        // integer tokens; a clause ends at 0 and may span lines
        std::istringstream ts(line);
        int x;
        if (pending.empty()) clause_start_line = line_no;
        while (ts >> x) {
            if (x == 0) {
                if (pending.size() != 3)
                    parse_fail(clause_start_line, "clause must have exactly 3 literals");
                Clause cl;
                for (int a = 0; a < 3; ++a)
                    cl.lits[static_cast<size_t>(a)] = {std::abs(pending[static_cast<size_t>(a)]),
                                                       pending[static_cast<size_t>(a)] > 0};
                if (cl.lits[0].var == cl.lits[1].var || cl.lits[0].var == cl.lits[2].var ||
                    cl.lits[1].var == cl.lits[2].var)
                    parse_fail(clause_start_line, "clause repeats a variable");
                for (const auto& lit : cl.lits)
                    if (lit.var < 1 || lit.var > f.num_vars)
                        parse_fail(clause_start_line, "literal out of range");
                f.clauses.push_back(cl);
                pending.clear();
                clause_start_line = line_no;
            } else {
                pending.push_back(x);
            }
        }
        if (!ts.eof()) parse_fail(line_no, "bad token");
    }
    if (!pending.empty()) parse_fail(clause_start_line, "unterminated clause");
    if (declared_clauses < 0) throw std::runtime_error("dimacs: missing header");
    if (static_cast<int>(f.clauses.size()) != declared_clauses)
        throw std::runtime_error("dimacs: clause count does not match header");
    return f;
}

CnfFormula parse_dimacs(const std::string& text) {
    std::istringstream ss(text);
    return parse_dimacs(ss);
}

std::optional<Assignment> sat_bruteforce(const CnfFormula& formula) {
    validate_formula(formula);
    const int v = formula.num_vars;
    if (v > 25) throw std::invalid_argument("sat_bruteforce: too many variables");
    for (std::uint32_t mask = 0; mask < (1u << v); ++mask) {
        bool ok = true;
        for (const auto& cl : formula.clauses) {
            bool sat = false;
            for (const auto& lit : cl.lits)
                if (((mask >> (lit.var - 1)) & 1u) == (lit.positive ? 1u : 0u)) { sat = true; break; }
            if (!sat) { ok = false; break; }
        }
        if (ok) {
            Assignment a(static_cast<size_t>(v));
            for (int i = 0; i < v; ++i) a[static_cast<size_t>(i)] = ((mask >> i) & 1u) != 0;
            return a;
        }
    }
    return std::nullopt;
}

namespace {

using Key = std::vector<int>;

struct Cell {
    Key col, row;
    Provenance prov;
};

struct GridBuilder {
    std::vector<Cell> cells;

    int add(Key col, Key row, Provenance prov = {}) {
        cells.push_back({std::move(col), std::move(row), prov});
        return static_cast<int>(cells.size()) - 1;
    }

    // realize positions and values by ranking the keys
    void finish(Permutation& out, std::vector<int>& pos_of_cell, std::vector<int>& val_of_cell) const {
        const int n = static_cast<int>(cells.size());
        std::vector<int> by_col(static_cast<size_t>(n)), by_row(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) by_col[static_cast<size_t>(i)] = by_row[static_cast<size_t>(i)] = i;
        std::sort(by_col.begin(), by_col.end(),
                  [&](int a, int b) { return cells[static_cast<size_t>(a)].col < cells[static_cast<size_t>(b)].col; });
        std::sort(by_row.begin(), by_row.end(),
                  [&](int a, int b) { return cells[static_cast<size_t>(a)].row < cells[static_cast<size_t>(b)].row; });
        pos_of_cell.assign(static_cast<size_t>(n), 0);
        val_of_cell.assign(static_cast<size_t>(n), 0);
        for (int r = 0; r < n; ++r) pos_of_cell[static_cast<size_t>(by_col[static_cast<size_t>(r)])] = r;
        for (int r = 0; r < n; ++r) val_of_cell[static_cast<size_t>(by_row[static_cast<size_t>(r)])] = r + 1;
        std::vector<int> vals(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) vals[static_cast<size_t>(pos_of_cell[static_cast<size_t>(i)])] = val_of_cell[static_cast<size_t>(i)];
        out = Permutation(std::move(vals));
    }
};

// per-clause gadget description
struct GadgetPlan {
    int t = 0;             // 1-based clause
    int vi = 0, vj = 0, vk = 0;  // sorted 1-based variables
    int s_plus_i = 0, s_minus_i = 0, s_plus_j = 0, s_minus_j = 0, s_plus_k = 0, s_minus_k = 0;
    std::vector<char> bypassed;             // per staircase
    std::vector<int> rec_orig, rec_bypass;  // staircase -> record index in the fork value order, -1 if absent
};

// fork-gadget record order: bottom level, middle level, top level, each in
// staircase order; bypassed staircases contribute a second record
GadgetPlan plan_gadget(const CnfFormula& f, int t, int num_staircases) {
    const Clause& cl = f.clauses[static_cast<size_t>(t - 1)];
    std::array<Literal, 3> lits = cl.lits;
    std::sort(lits.begin(), lits.end(), [](const Literal& a, const Literal& b) { return a.var < b.var; });

    GadgetPlan g;
    g.t = t;
    g.vi = lits[0].var; g.vj = lits[1].var; g.vk = lits[2].var;
    auto s_of = [](const Literal& l) { return 2 * (l.var - 1) + (l.positive ? 0 : 1); };
    auto other = [](int s) { return s ^ 1; };
    g.s_plus_i = s_of(lits[0]); g.s_minus_i = other(g.s_plus_i);
    g.s_plus_j = s_of(lits[1]); g.s_minus_j = other(g.s_plus_j);
    g.s_plus_k = s_of(lits[2]); g.s_minus_k = other(g.s_plus_k);

    g.bypassed.assign(static_cast<size_t>(num_staircases), 0);
    for (int s = 2 * g.vi; s <= 2 * g.vj - 3; ++s) g.bypassed[static_cast<size_t>(s)] = 1;
    for (int s = 2 * g.vj; s <= 2 * g.vk - 3; ++s) g.bypassed[static_cast<size_t>(s)] = 1;
    g.bypassed[static_cast<size_t>(g.s_minus_j)] = 1;

    g.rec_orig.assign(static_cast<size_t>(num_staircases), -1);
    g.rec_bypass.assign(static_cast<size_t>(num_staircases), -1);
    int idx = 0;
    auto orig = [&](int s) { g.rec_orig[static_cast<size_t>(s)] = idx++; };
    auto byp = [&](int s) { g.rec_bypass[static_cast<size_t>(s)] = idx++; };
    // bottom
    for (int s = 0; s <= 2 * (g.vi - 1) - 1; ++s) orig(s);
    orig(g.s_plus_i);
    for (int s = 2 * g.vi; s <= 2 * g.vj - 3; ++s) byp(s);
    byp(g.s_minus_j);
    // middle
    orig(g.s_minus_i);
    for (int s = 2 * g.vi; s <= 2 * g.vj - 3; ++s) orig(s);
    orig(g.s_plus_j);
    for (int s = 2 * g.vj; s <= 2 * g.vk - 3; ++s) byp(s);
    orig(g.s_minus_k);
    // top
    orig(g.s_minus_j);
    for (int s = 2 * g.vj; s <= 2 * g.vk - 3; ++s) orig(s);
    orig(g.s_plus_k);
    for (int s = 2 * g.vk; s <= num_staircases - 1; ++s) orig(s);
    return g;
}

}  // namespace

ReductionInstance build_instance(const CnfFormula& formula) {
    validate_formula(formula);
    const int v = formula.num_vars;
    const int c = static_cast<int>(formula.clauses.size());
    const int steps = 2 * c + 1;
    const int S = 2 * v;

    std::vector<GadgetPlan> gadgets;
    gadgets.reserve(static_cast<size_t>(c));
    int bypass_total = 0;
    for (int t = 1; t <= c; ++t) {
        gadgets.push_back(plan_gadget(formula, t, S));
        bypass_total += 2 * (gadgets.back().vk - gadgets.back().vi) - 3;
    }
    const int staircase_elems = 4 * steps * S;
    const int M = staircase_elems + 6 * bypass_total + 1;

    ReductionInstance inst;
    inst.formula = formula;
    inst.anchor_length = M;

    // ---- text ----
    GridBuilder tg;
    inst.text_bends.assign(static_cast<size_t>(S), std::vector<BendElements>(static_cast<size_t>(steps)));
    inst.bypasses.assign(static_cast<size_t>(c), {});
    std::vector<int> anchor_cells;

    // value-order index of the inner bend owning the column window at each step
    auto plist_index = [&](int m, int s, bool bypass) -> int {
        if (m % 2 == 0) {
            const GadgetPlan& g = gadgets[static_cast<size_t>(m / 2 - 1)];
            return bypass ? g.rec_bypass[static_cast<size_t>(s)] : g.rec_orig[static_cast<size_t>(s)];
        }
        return s;  // base and merge steps keep staircase order
    };

    std::vector<std::vector<std::array<int, 4>>> q_cells(static_cast<size_t>(S),
        std::vector<std::array<int, 4>>(static_cast<size_t>(steps)));  // per staircase/step: q0,q1,p0,p1
    std::map<std::pair<int, int>, std::array<int, 6>> byp_cells;  // (t,s) -> fq0,fq1,fp0,fp1,mq0,mq1

    for (int s = 0; s < S; ++s) {
        const int var = s / 2 + 1;
        const bool pos = (s % 2 == 0);
        for (int m = 1; m <= steps; ++m) {
            Provenance pq{false, var, pos, m, false, false, 0};
            Provenance pp{false, var, pos, m, true, false, 0};
            Key cq0, cq1, rq0, rq1, rp0, rp1;
            if (m == 1) {
                const int u = s / 2;
                const int base_off = pos ? 2 : 0;  // bases swapped: the negative staircase sits left
                cq0 = {0, u, base_off};
                cq1 = {0, u, base_off + 1};
                rq0 = {1, s, 0}; rp0 = {1, s, 1}; rp1 = {1, s, 2}; rq1 = {1, s, 3};
            } else if (m % 2 == 0) {
                const GadgetPlan& g = gadgets[static_cast<size_t>(m / 2 - 1)];
                const int j = g.rec_orig[static_cast<size_t>(s)];
                const int pj = plist_index(m - 1, s, false);
                cq0 = {2, m - 1, pj, 1, 0};
                cq1 = {2, m - 1, pj, 1, 1};
                rq0 = {m, j, 0}; rp0 = {m, j, 1}; rp1 = {m, j, 2}; rq1 = {m, j, 3};
            } else {  // merge step
                const int pj = plist_index(m - 1, s, false);
                cq0 = {2, m - 1, pj, 1, 0};
                cq1 = {2, m - 1, pj, 1, 1};
                rq0 = {m, s, 0}; rp0 = {m, s, 2}; rp1 = {m, s, 3}; rq1 = {m, s, 5};
            }
            const int pj_self = plist_index(m, s, false);
            auto& cell4 = q_cells[static_cast<size_t>(s)][static_cast<size_t>(m - 1)];
            cell4[0] = tg.add(cq0, rq0, pq);
            cell4[1] = tg.add(cq1, rq1, pq);
            cell4[2] = tg.add({2, m, pj_self, 0}, rp0, pp);
            cell4[3] = tg.add({2, m, pj_self, 2}, rp1, pp);
        }
    }
    for (const GadgetPlan& g : gadgets) {
        const int m = 2 * g.t;
        for (int s = 0; s < S; ++s) {
            if (!g.bypassed[static_cast<size_t>(s)]) continue;
            const int var = s / 2 + 1;
            const bool pos = (s % 2 == 0);
            Provenance bq{false, var, pos, m, false, true, g.t};
            Provenance bp{false, var, pos, m, true, true, g.t};
            Provenance mq{false, var, pos, m + 1, false, true, g.t};
            const int j = g.rec_bypass[static_cast<size_t>(s)];
            const int pj_prev = plist_index(m - 1, s, false);
            const int pj_self = g.rec_bypass[static_cast<size_t>(s)];
            std::array<int, 6> cells{};
            cells[0] = tg.add({2, m - 1, pj_prev, 1, 2}, {m, j, 0}, bq);
            cells[1] = tg.add({2, m - 1, pj_prev, 1, 3}, {m, j, 3}, bq);
            cells[2] = tg.add({2, m, pj_self, 0}, {m, j, 1}, bp);
            cells[3] = tg.add({2, m, pj_self, 2}, {m, j, 2}, bp);
            cells[4] = tg.add({2, m, pj_self, 1, 0}, {m + 1, s, 1}, mq);
            cells[5] = tg.add({2, m, pj_self, 1, 1}, {m + 1, s, 4}, mq);
            byp_cells[{g.t, s}] = cells;
        }
    }
    for (int a = 0; a < M; ++a)
        anchor_cells.push_back(tg.add({1, a}, {0, a}, Provenance{true, 0, true, 0, false, false, 0}));

    std::vector<int> tpos, tval;
    tg.finish(inst.text, tpos, tval);

    inst.provenance.assign(static_cast<size_t>(inst.text.size()), {});
    for (size_t i = 0; i < tg.cells.size(); ++i)
        inst.provenance[static_cast<size_t>(tpos[i])] = tg.cells[i].prov;

    for (int s = 0; s < S; ++s)
        for (int m = 1; m <= steps; ++m) {
            const auto& cell4 = q_cells[static_cast<size_t>(s)][static_cast<size_t>(m - 1)];
            auto& bend = inst.text_bends[static_cast<size_t>(s)][static_cast<size_t>(m - 1)];
            bend.outer = {tpos[static_cast<size_t>(cell4[0])], tpos[static_cast<size_t>(cell4[1])]};
            bend.inner = {tpos[static_cast<size_t>(cell4[2])], tpos[static_cast<size_t>(cell4[3])]};
        }
    for (const auto& [key, cells] : byp_cells) {
        BypassElements b;
        b.staircase = key.second;
        b.fork_outer = {tpos[static_cast<size_t>(cells[0])], tpos[static_cast<size_t>(cells[1])]};
        b.fork_inner = {tpos[static_cast<size_t>(cells[2])], tpos[static_cast<size_t>(cells[3])]};
        b.merge_outer = {tpos[static_cast<size_t>(cells[4])], tpos[static_cast<size_t>(cells[5])]};
        inst.bypasses[static_cast<size_t>(key.first - 1)].push_back(b);
    }
    for (int cell : anchor_cells) inst.text_anchor.push_back(tpos[static_cast<size_t>(cell)]);
    std::sort(inst.text_anchor.begin(), inst.text_anchor.end());

    // text blocks: anchor, then alternating outer/inner bend unions per step
    {
        std::vector<std::vector<int>> blocks(static_cast<size_t>(2 * steps + 1));
        for (size_t i = 0; i < tg.cells.size(); ++i) {
            const Provenance& p = tg.cells[i].prov;
            const int value = tval[i];
            if (p.anchor)
                blocks[0].push_back(value);
            else
                blocks[static_cast<size_t>(2 * p.step - (p.inner ? 0 : 1))].push_back(value);
        }
        for (auto& b : blocks) std::sort(b.begin(), b.end());
        inst.text_dec = StairDecomposition{inst.text, std::move(blocks)};
    }

    // ---- pattern ----
    GridBuilder pg;
    inst.pattern_bends.assign(static_cast<size_t>(v), std::vector<BendElements>(static_cast<size_t>(steps)));
    std::vector<int> panchor_cells;
    std::vector<std::vector<std::array<int, 4>>> pq_cells(static_cast<size_t>(v),
        std::vector<std::array<int, 4>>(static_cast<size_t>(steps)));

    for (int u = 0; u < v; ++u)
        for (int m = 1; m <= steps; ++m) {
            Key cq0 = (m == 1) ? Key{0, u, 0} : Key{2, m - 1, u, 1, 0};
            Key cq1 = (m == 1) ? Key{0, u, 1} : Key{2, m - 1, u, 1, 1};
            auto& cell4 = pq_cells[static_cast<size_t>(u)][static_cast<size_t>(m - 1)];
            cell4[0] = pg.add(cq0, {m, u, 0});
            cell4[1] = pg.add(cq1, {m, u, 3});
            cell4[2] = pg.add({2, m, u, 0}, {m, u, 1});
            cell4[3] = pg.add({2, m, u, 2}, {m, u, 2});
        }
    for (int a = 0; a < M; ++a) panchor_cells.push_back(pg.add({1, a}, {0, a}));

    std::vector<int> ppos, pval;
    pg.finish(inst.pattern, ppos, pval);
    for (int u = 0; u < v; ++u)
        for (int m = 1; m <= steps; ++m) {
            const auto& cell4 = pq_cells[static_cast<size_t>(u)][static_cast<size_t>(m - 1)];
            auto& bend = inst.pattern_bends[static_cast<size_t>(u)][static_cast<size_t>(m - 1)];
            bend.outer = {ppos[static_cast<size_t>(cell4[0])], ppos[static_cast<size_t>(cell4[1])]};
            bend.inner = {ppos[static_cast<size_t>(cell4[2])], ppos[static_cast<size_t>(cell4[3])]};
        }
    for (int cell : panchor_cells) inst.pattern_anchor.push_back(ppos[static_cast<size_t>(cell)]);
    std::sort(inst.pattern_anchor.begin(), inst.pattern_anchor.end());

    {
        std::vector<std::vector<int>> blocks(static_cast<size_t>(2 * steps + 1));
        for (int cell : panchor_cells) blocks[0].push_back(pval[static_cast<size_t>(cell)]);
        for (int u = 0; u < v; ++u)
            for (int m = 1; m <= steps; ++m) {
                const auto& cell4 = pq_cells[static_cast<size_t>(u)][static_cast<size_t>(m - 1)];
                blocks[static_cast<size_t>(2 * m - 1)].push_back(pval[static_cast<size_t>(cell4[0])]);
                blocks[static_cast<size_t>(2 * m - 1)].push_back(pval[static_cast<size_t>(cell4[1])]);
                blocks[static_cast<size_t>(2 * m)].push_back(pval[static_cast<size_t>(cell4[2])]);
                blocks[static_cast<size_t>(2 * m)].push_back(pval[static_cast<size_t>(cell4[3])]);
            }
        for (auto& b : blocks) std::sort(b.begin(), b.end());
        inst.pattern_dec = StairDecomposition{inst.pattern, std::move(blocks)};
    }

    return inst;
}

std::optional<Occurrence> embed_from_assignment(const ReductionInstance& inst, const Assignment& phi) {
    const int v = inst.formula.num_vars;
    const int c = static_cast<int>(inst.formula.clauses.size());
    const int steps = 2 * c + 1;
    if (static_cast<int>(phi.size()) != v)
        throw std::invalid_argument("embed_from_assignment: assignment must cover all variables");

    std::vector<int> chosen_s(static_cast<size_t>(v));
    for (int u = 0; u < v; ++u) chosen_s[static_cast<size_t>(u)] = 2 * u + (phi[static_cast<size_t>(u)] ? 0 : 1);

    // bypass lookup: (clause, staircase) -> BypassElements
    std::map<std::pair<int, int>, const BypassElements*> byp;
    for (int t = 1; t <= c; ++t)
        for (const auto& b : inst.bypasses[static_cast<size_t>(t - 1)])
            byp[{t, b.staircase}] = &b;

    std::vector<std::pair<int, int>> pairs;  // (pattern pos, text pos)
    pairs.reserve(static_cast<size_t>(inst.pattern.size()));
    for (size_t a = 0; a < inst.pattern_anchor.size(); ++a)
        pairs.emplace_back(inst.pattern_anchor[a], inst.text_anchor[a]);

    // per clause, whether each variable's staircase takes its bypass
    std::vector<std::vector<char>> use_bypass(static_cast<size_t>(c + 1),
                                              std::vector<char>(static_cast<size_t>(v), 0));

    for (int m = 1; m <= steps; ++m) {
        const bool fork = (m % 2 == 0);
        const int t = fork ? m / 2 : (m - 1) / 2;  // owning clause (0 for the base step)
        int prev_top = 0;
        for (int u = 0; u < v; ++u) {
            const int s = chosen_s[static_cast<size_t>(u)];
            const BendElements& orig = inst.text_bends[static_cast<size_t>(s)][static_cast<size_t>(m - 1)];
            std::array<int, 2> outer = orig.outer, inner = orig.inner;
            if (fork) {
                const auto it = byp.find({t, s});
                bool decided = false;
                if (it != byp.end()) {
                    // the bypass fork sits below the original: prefer it when feasible
                    const auto& b = *it->second;
                    if (inst.text[b.fork_outer[0]] > prev_top) {
                        outer = b.fork_outer;
                        inner = b.fork_inner;
                        use_bypass[static_cast<size_t>(t)][static_cast<size_t>(u)] = 1;
                        decided = true;
                    }
                }
                if (!decided && inst.text[orig.outer[0]] <= prev_top) return std::nullopt;
            } else if (m > 1) {
                // merge step: mirror the fork choice; the inner bend is shared
                const auto it = byp.find({t, s});
                if (it != byp.end() && use_bypass[static_cast<size_t>(t)][static_cast<size_t>(u)])
                    outer = it->second->merge_outer;
            }
            prev_top = inst.text[outer[1]];
            const BendElements& pat = inst.pattern_bends[static_cast<size_t>(u)][static_cast<size_t>(m - 1)];
            pairs.emplace_back(pat.outer[0], outer[0]);
            pairs.emplace_back(pat.outer[1], outer[1]);
            pairs.emplace_back(pat.inner[0], inner[0]);
            pairs.emplace_back(pat.inner[1], inner[1]);
        }
    }

    std::sort(pairs.begin(), pairs.end());
    Occurrence occ;
    occ.reserve(pairs.size());
    for (const auto& [pp, tp] : pairs) occ.push_back(tp + 1);
    return occ;
}

std::optional<SatWitness> decide_via_assignments(const ReductionInstance& inst) {
    const int v = inst.formula.num_vars;
    if (v > 25) throw std::invalid_argument("decide_via_assignments: too many variables");
    for (std::uint32_t mask = 0; mask < (1u << v); ++mask) {
        Assignment phi(static_cast<size_t>(v));
        for (int i = 0; i < v; ++i) phi[static_cast<size_t>(i)] = ((mask >> i) & 1u) != 0;
        if (auto occ = embed_from_assignment(inst, phi))
            return SatWitness{std::move(phi), std::move(*occ)};
    }
    return std::nullopt;
}

Assignment assignment_from_occurrence(const ReductionInstance& inst, const Occurrence& occ) {
    if (!is_occurrence(inst.pattern, inst.text, occ))
        throw std::invalid_argument("assignment_from_occurrence: not an occurrence");
    // the full anchor must land inside the text anchor
    std::vector<char> is_anchor_pos(static_cast<size_t>(inst.text.size()), 0);
    for (int p : inst.text_anchor) is_anchor_pos[static_cast<size_t>(p)] = 1;
    for (int p : inst.pattern_anchor)
        if (!is_anchor_pos[static_cast<size_t>(occ[static_cast<size_t>(p)] - 1)])
            throw std::invalid_argument("assignment_from_occurrence: occurrence is not anchor-aligned");

    const int v = inst.formula.num_vars;
    Assignment phi(static_cast<size_t>(v));
    for (int u = 0; u < v; ++u) {
        const BendElements& base = inst.pattern_bends[static_cast<size_t>(u)][0];
        const Provenance& p0 = inst.provenance[static_cast<size_t>(occ[static_cast<size_t>(base.outer[0])] - 1)];
        const Provenance& p1 = inst.provenance[static_cast<size_t>(occ[static_cast<size_t>(base.outer[1])] - 1)];
        const bool clean = !p0.anchor && !p1.anchor && p0.var == u + 1 && p1.var == u + 1 &&
                           p0.step == 1 && p1.step == 1 && !p0.inner && !p1.inner &&
                           !p0.bypass && !p1.bypass && p0.positive == p1.positive;
        if (!clean)
            throw std::invalid_argument("assignment_from_occurrence: base of variable " +
                                        std::to_string(u + 1) + " is not mapped to a base pair");
        phi[static_cast<size_t>(u)] = p0.positive;
    }
    return phi;
}

TwirledInstance build_twirled_instance(const CnfFormula& formula) {
    const ReductionInstance inst = build_instance(formula);
    TwirlResult tp = twirl(inst.pattern_dec);
    TwirlResult tt = twirl(inst.text_dec);
    TwirledInstance out;
    out.pattern = tp.out.host;
    out.text = tt.out.host;
    out.pattern_dec = std::move(tp.out);
    out.text_dec = std::move(tt.out);
    out.pattern_pos_map = std::move(tp.pos_map);
    out.pattern_val_map = std::move(tp.val_map);
    out.text_pos_map = std::move(tt.pos_map);
    out.text_val_map = std::move(tt.val_map);
    return out;
}

BypassedStaircase staircase_with_bypass(int steps, int bypass_step) {
    if (steps < 3 || bypass_step < 2 || bypass_step > steps - 1)
        throw std::invalid_argument("staircase_with_bypass: need steps >= 3 and 2 <= bypass_step <= steps-1");
    GridBuilder g;
    const int i = bypass_step;
    std::vector<std::array<int, 4>> q_cells(static_cast<size_t>(steps));
    std::array<int, 6> b_cells{};

    // inner-bend windows: pj 0 everywhere except the fork step, where the
    // bypass inner bend (pj 0) sits left of the original (pj 1)
    auto pj_orig = [&](int m) { return m == i ? 1 : 0; };

    for (int m = 1; m <= steps; ++m) {
        Key cq0 = (m == 1) ? Key{0, 0} : Key{2, m - 1, pj_orig(m - 1), 1, 0};
        Key cq1 = (m == 1) ? Key{0, 1} : Key{2, m - 1, pj_orig(m - 1), 1, 1};
        Key rq0, rq1, rp0, rp1;
        if (m == i) {  // original bend block above the bypass block
            rq0 = {m, 1, 0}; rp0 = {m, 1, 1}; rp1 = {m, 1, 2}; rq1 = {m, 1, 3};
        } else if (m == i + 1) {  // merge nesting
            rq0 = {m, 0, 0}; rp0 = {m, 0, 2}; rp1 = {m, 0, 3}; rq1 = {m, 0, 5};
        } else {
            rq0 = {m, 0, 0}; rp0 = {m, 0, 1}; rp1 = {m, 0, 2}; rq1 = {m, 0, 3};
        }
        auto& cell4 = q_cells[static_cast<size_t>(m - 1)];
        cell4[0] = g.add(cq0, rq0);
        cell4[1] = g.add(cq1, rq1);
        cell4[2] = g.add({2, m, pj_orig(m), 0}, rp0);
        cell4[3] = g.add({2, m, pj_orig(m), 2}, rp1);
    }
    // bypass: fork bend + inner at step i, merge bend at step i+1
    b_cells[0] = g.add({2, i - 1, 0, 1, 2}, {i, 0, 0});
    b_cells[1] = g.add({2, i - 1, 0, 1, 3}, {i, 0, 3});
    b_cells[2] = g.add({2, i, 0, 0}, {i, 0, 1});
    b_cells[3] = g.add({2, i, 0, 2}, {i, 0, 2});
    b_cells[4] = g.add({2, i, 0, 1, 0}, {i + 1, 0, 1});
    b_cells[5] = g.add({2, i, 0, 1, 1}, {i + 1, 0, 4});

    BypassedStaircase out;
    std::vector<int> pos, val;
    g.finish(out.perm, pos, val);
    out.bends.resize(static_cast<size_t>(steps));
    for (int m = 1; m <= steps; ++m) {
        const auto& cell4 = q_cells[static_cast<size_t>(m - 1)];
        out.bends[static_cast<size_t>(m - 1)].outer = {pos[static_cast<size_t>(cell4[0])], pos[static_cast<size_t>(cell4[1])]};
        out.bends[static_cast<size_t>(m - 1)].inner = {pos[static_cast<size_t>(cell4[2])], pos[static_cast<size_t>(cell4[3])]};
    }
    out.bypass.staircase = 0;
    out.bypass.fork_outer = {pos[static_cast<size_t>(b_cells[0])], pos[static_cast<size_t>(b_cells[1])]};
    out.bypass.fork_inner = {pos[static_cast<size_t>(b_cells[2])], pos[static_cast<size_t>(b_cells[3])]};
    out.bypass.merge_outer = {pos[static_cast<size_t>(b_cells[4])], pos[static_cast<size_t>(b_cells[5])]};
    out.bypass_step = bypass_step;
    return out;
}

}  // namespace ppm
