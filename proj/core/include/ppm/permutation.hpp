#ifndef PPM_PERMUTATION_HPP
#define PPM_PERMUTATION_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ppm {

/// A permutation of [n], stored as the value sequence pi(1),...,pi(n).
/// Positions are 0-based in the API; values are the integers 1..n.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> values);

    static Permutation identity(int n);

    int size() const { return static_cast<int>(vals_.size()); }
    bool empty() const { return vals_.empty(); }

    /// Value at 0-based position.
    int operator[](int pos) const { return vals_[static_cast<size_t>(pos)]; }

    /// 0-based position of a value in 1..n.
    int position_of(int value) const { return inv_[static_cast<size_t>(value - 1)]; }

    const std::vector<int>& values() const { return vals_; }

    std::string to_string() const;

    bool operator==(const Permutation& o) const { return vals_ == o.vals_; }
    bool operator!=(const Permutation& o) const { return vals_ != o.vals_; }
    bool operator<(const Permutation& o) const { return vals_ < o.vals_; }

private:
    std::vector<int> vals_;
    std::vector<int> inv_;
};

/// An occurrence of a pattern in a text: strictly increasing 1-based text
/// positions whose values realize the pattern's relative order.
using Occurrence = std::vector<int>;

/// Rank-normalize a sequence of distinct integers into a permutation
/// (the i-th smallest entry becomes i). Throws on duplicates.
Permutation reduce_sequence(const std::vector<int>& seq);

/// True iff occ is strictly increasing and the text values at occ are
/// order-isomorphic to the pattern. Throws if |occ| != |pattern| or an
/// index is out of range.
bool is_occurrence(const Permutation& pattern, const Permutation& text, const Occurrence& occ);

/// Lexicographically smallest occurrence of pattern in text, if any.
/// The empty pattern is contained in everything (empty occurrence).
std::optional<Occurrence> contains_bruteforce(const Permutation& pattern, const Permutation& text);

/// True iff perm contains none of the forbidden patterns. Brute force;
/// for monotone bases prefer longest_decreasing_length.
bool avoids(const Permutation& perm, const std::vector<Permutation>& forbidden);

/// Length of the longest strictly decreasing subsequence (patience scan).
int longest_decreasing_length(const Permutation& perm);

/// Length of the longest strictly increasing subsequence.
int longest_increasing_length(const Permutation& perm);

/// Entry i of the result is n+1-perm[n+1-i]; a 180-degree rotation of the
/// diagram, and an involution.
Permutation reverse_complement(const Permutation& perm);

/// Membership in the skew-merged class restricted by 3142, i.e. avoidance
/// of all of {2143, 3412, 3142}.
bool in_skew_star(const Permutation& perm);

enum class PatternComplexity { Polynomial, NPComplete };

/// Complexity of pattern matching restricted to patterns avoiding rho:
/// polynomial exactly for rho in {1,12,21,132,213,231,312}.
PatternComplexity classify_principal(const Permutation& rho);

/// All k-permutations avoiding every forbidden pattern, lexicographic.
std::vector<Permutation> enumerate_avoiders(int k, const std::vector<Permutation>& forbidden);

}  // namespace ppm

#endif
