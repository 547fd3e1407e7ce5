#include "ppm/match.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace ppm {

namespace {

struct BacktrackSearch {
    const Permutation& pattern;
    const Permutation& text;
    int k, n;
    std::uint64_t limit, nodes = 0;
    bool exhausted = false;
    std::vector<int> vpred, vsucc, image;

    BacktrackSearch(const Permutation& p, const Permutation& t, std::uint64_t lim)
        : pattern(p), text(t), k(p.size()), n(t.size()), limit(lim),
          vpred(static_cast<size_t>(k), -1), vsucc(static_cast<size_t>(k), -1),
          image(static_cast<size_t>(k), 0) {
        for (int p2 = 0; p2 < k; ++p2) {
            int bestlo = 0, besthi = k + 1;
            for (int q = 0; q < p2; ++q) {
                if (pattern[q] < pattern[p2] && pattern[q] > bestlo) { bestlo = pattern[q]; vpred[static_cast<size_t>(p2)] = q; }
                if (pattern[q] > pattern[p2] && pattern[q] < besthi) { besthi = pattern[q]; vsucc[static_cast<size_t>(p2)] = q; }
            }
        }
    }

    bool dfs(int p, int from) {
        if (p == k) return true;
        int lo = 0, hi = n + 1;
        if (vpred[static_cast<size_t>(p)] >= 0) lo = text[image[static_cast<size_t>(vpred[static_cast<size_t>(p)])] - 1];
        if (vsucc[static_cast<size_t>(p)] >= 0) hi = text[image[static_cast<size_t>(vsucc[static_cast<size_t>(p)])] - 1];
        for (int t = from; t <= n - (k - p - 1); ++t) {
            if (++nodes > limit) { exhausted = true; return false; }
            const int val = text[t - 1];
            if (val <= lo || val >= hi) continue;
            image[static_cast<size_t>(p)] = t;
            if (dfs(p + 1, t + 1)) return true;
            if (exhausted) return false;
        }
        return false;
    }
};

}  // namespace

MatchResult match_backtrack(const Permutation& pattern, const Permutation& text, MatchBudget budget) {
    if (budget.node_limit < 1)
        throw std::invalid_argument("match_backtrack: node limit must be at least 1");
    MatchResult res;
    if (pattern.empty()) {
        res.outcome = MatchOutcome::Contained;
        return res;
    }
    if (pattern.size() > text.size()) {
        res.outcome = MatchOutcome::NotContained;
        return res;
    }
    BacktrackSearch s(pattern, text, budget.node_limit);
    const bool found = s.dfs(0, 1);
    res.nodes = s.nodes;
    if (found) {
        res.outcome = MatchOutcome::Contained;
        res.occurrence = s.image;
    } else {
        res.outcome = s.exhausted ? MatchOutcome::Indeterminate : MatchOutcome::NotContained;
    }
    return res;
}

namespace {

struct VecHash {
    size_t operator()(const std::vector<int>& v) const {
        size_t h = 1469598103934665603ull;
        for (int x : v) {
            h ^= static_cast<size_t>(x);
            h *= 1099511628211ull;
        }
        return h;
    }
};

}  // namespace

SeparatorDpResult match_separator_dp(const Permutation& pattern, const std::vector<int>& order,
                                     const Permutation& text) {
    const int k = pattern.size();
    const int n = text.size();
    SeparatorDpResult res;
    if (k == 0) {
        res.outcome = MatchOutcome::Contained;
        return res;
    }
    if (static_cast<int>(order.size()) != k)
        throw std::invalid_argument("match_separator_dp: order must cover all pattern elements");
    std::vector<int> step_of(static_cast<size_t>(k + 1), 0);
    for (int i = 0; i < k; ++i) {
        const int v = order[static_cast<size_t>(i)];
        if (v < 1 || v > k || step_of[static_cast<size_t>(v)] != 0)
            throw std::invalid_argument("match_separator_dp: order must cover all pattern elements");
        step_of[static_cast<size_t>(v)] = i + 1;
    }
    if (k > n) return res;

    // neighbours in the incidence graph, by value
    std::vector<std::vector<int>> nbr(static_cast<size_t>(k + 1));
    auto add_edge = [&](int a, int b) {
        nbr[static_cast<size_t>(a)].push_back(b);
        nbr[static_cast<size_t>(b)].push_back(a);
    };
    for (int a = 1; a < k; ++a) add_edge(a, a + 1);
    for (int p = 0; p + 1 < k; ++p) {
        if (std::abs(pattern[p] - pattern[p + 1]) != 1)  // red edges already added
            add_edge(pattern[p], pattern[p + 1]);
    }

    // active separator before each step: earlier vertices with a neighbour
    // at this step or later
    std::vector<std::vector<int>> sep(static_cast<size_t>(k + 1));
    for (int v = 1; v <= k; ++v) {
        int last = 0;
        for (int u : nbr[static_cast<size_t>(v)]) last = std::max(last, step_of[static_cast<size_t>(u)]);
        for (int i = step_of[static_cast<size_t>(v)] + 1; i <= std::min(last, k); ++i)
            sep[static_cast<size_t>(i)].push_back(v);
    }
    for (auto& s : sep) std::sort(s.begin(), s.end());
    for (int i = 1; i <= k; ++i)
        res.max_separator = std::max(res.max_separator, static_cast<int>(sep[static_cast<size_t>(i)].size()));

    struct Entry {
        std::vector<int> images;  // aligned with sep[i]
        int prev;                 // index into previous layer
        int chosen;               // text index (1-based) placed at this step
    };
    std::vector<std::vector<Entry>> layers(static_cast<size_t>(k + 1));
    layers[0].push_back({{}, -1, 0});

    for (int i = 1; i <= k; ++i) {
        const int v = order[static_cast<size_t>(i - 1)];
        const auto& cur_sep = sep[static_cast<size_t>(i)];
        const auto& next_sep = (i < k) ? sep[static_cast<size_t>(i + 1)] : std::vector<int>{};
        std::unordered_map<std::vector<int>, int, VecHash> dedup;

        // positions of v's already-placed neighbours inside cur_sep
        struct NbrSlot { int slot; bool red, blue; int u; };
        std::vector<NbrSlot> checks;
        for (int u : nbr[static_cast<size_t>(v)]) {
            if (step_of[static_cast<size_t>(u)] >= i) continue;
            const auto it = std::lower_bound(cur_sep.begin(), cur_sep.end(), u);
            const int slot = static_cast<int>(it - cur_sep.begin());
            const bool red = std::abs(u - v) == 1;
            const bool blue = std::abs(pattern.position_of(u) - pattern.position_of(v)) == 1;
            checks.push_back({slot, red, blue, u});
        }

        // where each next-separator vertex sits in the current one (or is v)
        std::vector<int> carry;  // slot in cur_sep, or -1 meaning v itself
        for (int u : next_sep) {
            if (u == v) {
                carry.push_back(-1);
            } else {
                const auto it = std::lower_bound(cur_sep.begin(), cur_sep.end(), u);
                carry.push_back(static_cast<int>(it - cur_sep.begin()));
            }
        }

        for (size_t si = 0; si < layers[static_cast<size_t>(i - 1)].size(); ++si) {
            const auto& state = layers[static_cast<size_t>(i - 1)][si];
            for (int t = 1; t <= n; ++t) {
                bool ok = true;
                for (int img : state.images)
                    if (img == t) { ok = false; break; }
                if (!ok) continue;
                for (const auto& c : checks) {
                    const int img = state.images[static_cast<size_t>(c.slot)];
                    if (c.red && ((text[t - 1] < text[img - 1]) != (v < c.u))) { ok = false; break; }
                    if (c.blue && ((t < img) != (pattern.position_of(v) < pattern.position_of(c.u)))) { ok = false; break; }
                }
                if (!ok) continue;
                std::vector<int> next_images;
                next_images.reserve(carry.size());
                for (int slot : carry)
                    next_images.push_back(slot < 0 ? t : state.images[static_cast<size_t>(slot)]);
                if (dedup.emplace(next_images, static_cast<int>(layers[static_cast<size_t>(i)].size())).second)
                    layers[static_cast<size_t>(i)].push_back({std::move(next_images), static_cast<int>(si), t});
            }
        }
        if (layers[static_cast<size_t>(i)].empty()) return res;  // NotContained
    }

    // reconstruct: walk parents, recovering the text index chosen per step
    std::vector<int> chosen(static_cast<size_t>(k + 1), 0);
    int at = 0;
    for (int i = k; i >= 1; --i) {
        const auto& e = layers[static_cast<size_t>(i)][static_cast<size_t>(at)];
        chosen[static_cast<size_t>(i)] = e.chosen;
        at = e.prev;
    }
    res.outcome = MatchOutcome::Contained;
    res.occurrence.resize(static_cast<size_t>(k));
    for (int p = 0; p < k; ++p)
        res.occurrence[static_cast<size_t>(p)] = chosen[static_cast<size_t>(step_of[static_cast<size_t>(pattern[p])])];
    return res;
}

}  // namespace ppm
