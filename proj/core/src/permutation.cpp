#include "ppm/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ppm {

Permutation::Permutation(std::vector<int> values) : vals_(std::move(values)) {
    const int n = static_cast<int>(vals_.size());
    inv_.assign(vals_.size(), -1);
    for (int i = 0; i < n; ++i) {
        const int v = vals_[static_cast<size_t>(i)];
        if (v < 1 || v > n)
            throw std::invalid_argument("permutation entry " + std::to_string(v) +
                                        " out of range 1.." + std::to_string(n));
        if (inv_[static_cast<size_t>(v - 1)] != -1)
            throw std::invalid_argument("duplicate permutation entry " + std::to_string(v));
        inv_[static_cast<size_t>(v - 1)] = i;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> v(static_cast<size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    return Permutation(std::move(v));
}

std::string Permutation::to_string() const {
    std::string s;
    for (size_t i = 0; i < vals_.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(vals_[i]);
    }
    return s;
}

Permutation reduce_sequence(const std::vector<int>& seq) {
    std::vector<int> sorted = seq;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("reduce_sequence: entries must be distinct");
    std::vector<int> out(seq.size());
    for (size_t i = 0; i < seq.size(); ++i) {
        const auto it = std::lower_bound(sorted.begin(), sorted.end(), seq[i]);
        out[i] = static_cast<int>(it - sorted.begin()) + 1;
    }
    return Permutation(std::move(out));
}

bool is_occurrence(const Permutation& pattern, const Permutation& text, const Occurrence& occ) {
    const int k = pattern.size();
    if (static_cast<int>(occ.size()) != k)
        throw std::invalid_argument("is_occurrence: occurrence length does not match pattern");
    for (int idx : occ)
        if (idx < 1 || idx > text.size())
            throw std::invalid_argument("is_occurrence: index " + std::to_string(idx) +
                                        " out of range");
    for (int a = 1; a < k; ++a)
        if (occ[static_cast<size_t>(a - 1)] >= occ[static_cast<size_t>(a)]) return false;
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) {
            const bool pat_less = pattern[a] < pattern[b];
            const bool txt_less = text[occ[static_cast<size_t>(a)] - 1] < text[occ[static_cast<size_t>(b)] - 1];
            if (pat_less != txt_less) return false;
        }
    return true;
}

namespace {

// DFS in index-lex order with exact value-window pruning; the first
// complete assignment is the lexicographically smallest occurrence.
struct ContainSearch {
    const Permutation& pattern;
    const Permutation& text;
    int k, n;
    std::vector<int> vpred;  // for pattern position p: position q<p with largest value < pattern[p], or -1
    std::vector<int> vsucc;  // position q<p with smallest value > pattern[p], or -1
    std::vector<int> image;  // chosen 1-based text indices

    ContainSearch(const Permutation& p, const Permutation& t)
        : pattern(p), text(t), k(p.size()), n(t.size()),
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
            const int val = text[t - 1];
            if (val <= lo || val >= hi) continue;
            image[static_cast<size_t>(p)] = t;
            if (dfs(p + 1, t + 1)) return true;
        }
        return false;
    }
};

}  // namespace

std::optional<Occurrence> contains_bruteforce(const Permutation& pattern, const Permutation& text) {
    if (pattern.empty()) return Occurrence{};
    if (pattern.size() > text.size()) return std::nullopt;
    ContainSearch s(pattern, text);
    if (!s.dfs(0, 1)) return std::nullopt;
    return s.image;
}

bool avoids(const Permutation& perm, const std::vector<Permutation>& forbidden) {
    for (const auto& f : forbidden)
        if (contains_bruteforce(f, perm)) return false;
    return true;
}

namespace {

int longest_increasing(const std::vector<int>& seq) {
    std::vector<int> tails;  // tails[l] = smallest tail of an increasing subsequence of length l+1
    for (int v : seq) {
        auto it = std::lower_bound(tails.begin(), tails.end(), v);
        if (it == tails.end())
            tails.push_back(v);
        else
            *it = v;
    }
    return static_cast<int>(tails.size());
}

}  // namespace

int longest_decreasing_length(const Permutation& perm) {
    std::vector<int> rev(perm.values().rbegin(), perm.values().rend());
    return longest_increasing(rev);
}

int longest_increasing_length(const Permutation& perm) {
    return longest_increasing(perm.values());
}

Permutation reverse_complement(const Permutation& perm) {
    const int n = perm.size();
    std::vector<int> out(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i)
        out[static_cast<size_t>(i - 1)] = n + 1 - perm[n - i];
    return Permutation(std::move(out));
}

bool in_skew_star(const Permutation& perm) {
    static const std::vector<Permutation> basis = {
        Permutation({2, 1, 4, 3}), Permutation({3, 4, 1, 2}), Permutation({3, 1, 4, 2})};
    return avoids(perm, basis);
}

PatternComplexity classify_principal(const Permutation& rho) {
    if (rho.empty())
        throw std::invalid_argument("classify_principal: empty pattern");
    static const std::vector<Permutation> poly = {
        Permutation({1}),
        Permutation({1, 2}), Permutation({2, 1}),
        Permutation({1, 3, 2}), Permutation({2, 1, 3}),
        Permutation({2, 3, 1}), Permutation({3, 1, 2})};
    for (const auto& p : poly)
        if (rho == p) return PatternComplexity::Polynomial;
    return PatternComplexity::NPComplete;
}

std::vector<Permutation> enumerate_avoiders(int k, const std::vector<Permutation>& forbidden) {
    if (k < 0) throw std::invalid_argument("enumerate_avoiders: negative size");
    std::vector<Permutation> out;
    std::vector<int> v(static_cast<size_t>(k));
    std::iota(v.begin(), v.end(), 1);
    do {
        Permutation p(v);
        if (avoids(p, forbidden)) out.push_back(std::move(p));
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
}

}  // namespace ppm
