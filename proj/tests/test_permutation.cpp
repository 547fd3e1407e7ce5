#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "ppm/permutation.hpp"

using namespace ppm;

TEST_CASE("reduce_sequence ranks distinct entries") {
    CHECK(reduce_sequence({5, 9, 2}) == Permutation({2, 3, 1}));
    CHECK(reduce_sequence({1, 2, 3}) == Permutation({1, 2, 3}));
    CHECK(reduce_sequence({1, 4, 3, 6}) == Permutation({1, 3, 2, 4}));
    CHECK(reduce_sequence({}) == Permutation{});
    CHECK_THROWS_AS(reduce_sequence({2, 2}), std::invalid_argument);
}

TEST_CASE("permutation validation") {
    CHECK_THROWS_AS(Permutation({1, 3}), std::invalid_argument);
    CHECK_THROWS_AS(Permutation({1, 1}), std::invalid_argument);
    CHECK(Permutation({2, 1}).position_of(1) == 1);
}

TEST_CASE("is_occurrence checks order and bounds") {
    const Permutation text({3, 1, 4, 2});
    CHECK(is_occurrence(Permutation({1, 3, 2}), text, {2, 3, 4}));
    CHECK(is_occurrence(Permutation({1, 2, 3, 4}), Permutation({1, 2, 3, 4}), {1, 2, 3, 4}));
    CHECK_FALSE(is_occurrence(Permutation({2, 1}), Permutation({1, 2}), {1, 2}));
    CHECK_FALSE(is_occurrence(Permutation({1, 2}), text, {3, 2}));  // not increasing
    CHECK_THROWS_AS(is_occurrence(Permutation({1, 2}), text, {1, 5}), std::invalid_argument);
    CHECK_THROWS_AS(is_occurrence(Permutation({1, 2}), text, {1}), std::invalid_argument);
}

TEST_CASE("contains_bruteforce finds the lex-smallest witness") {
    auto r = contains_bruteforce(Permutation({1, 3, 2}), Permutation({3, 1, 4, 2}));
    REQUIRE(r);
    CHECK(*r == Occurrence{2, 3, 4});
    CHECK_FALSE(contains_bruteforce(Permutation({3, 2, 1}), Permutation({1, 2, 3, 4})));
    auto one = contains_bruteforce(Permutation({1}), Permutation({1}));
    REQUIRE(one);
    CHECK(*one == Occurrence{1});
    CHECK(contains_bruteforce(Permutation{}, Permutation({2, 1})) == Occurrence{});
}

TEST_CASE("contains_bruteforce agrees with subset enumeration") {
    std::mt19937 rng(7101);
    for (int iter = 0; iter < 300; ++iter) {
        const int n = 1 + static_cast<int>(rng() % 8);
        const int k = 1 + static_cast<int>(rng() % n);
        const auto text = oracle::random_perm(rng, n);
        const auto pat = oracle::random_perm(rng, k);
        const auto expect = oracle::contains(pat, text);
        const auto got = contains_bruteforce(pat, text);
        REQUIRE(static_cast<bool>(expect) == static_cast<bool>(got));
        if (expect) CHECK(*expect == *got);  // both lexicographically smallest
    }
}

TEST_CASE("avoids") {
    CHECK(avoids(Permutation({4, 1, 3, 2}), {Permutation({3, 1, 4, 2})}));
    CHECK_FALSE(avoids(Permutation({2, 1, 4, 3}), {Permutation({2, 1, 4, 3}), Permutation({3, 4, 1, 2})}));
    CHECK(avoids(Permutation{}, {Permutation({1})}));
}

TEST_CASE("longest_decreasing_length matches the quadratic oracle") {
    CHECK(longest_decreasing_length(Permutation({1, 3, 2, 4})) == 2);
    CHECK(longest_decreasing_length(Permutation::identity(6)) == 1);
    CHECK(longest_decreasing_length(Permutation({5, 4, 3, 2, 1})) == 5);
    CHECK(longest_decreasing_length(Permutation{}) == 0);
    for (int k = 1; k <= 7; ++k)
        for (const auto& p : oracle::all_perms(k))
            CHECK(longest_decreasing_length(p) == oracle::longest_decreasing(p));
}

TEST_CASE("monotone class membership via decreasing length") {
    // perm avoids (r+1)r...1 exactly when its decreasing length is at most r
    for (int k = 1; k <= 7; ++k)
        for (const auto& p : oracle::all_perms(k))
            for (int r = 1; r <= 3; ++r) {
                std::vector<int> mono(static_cast<size_t>(r + 1));
                for (int i = 0; i <= r; ++i) mono[static_cast<size_t>(i)] = r + 1 - i;
                CHECK((longest_decreasing_length(p) <= r) ==
                      avoids(p, {Permutation(mono)}));
            }
}

TEST_CASE("reverse_complement") {
    CHECK(reverse_complement(Permutation({2, 3, 1})) == Permutation({3, 1, 2}));
    CHECK(reverse_complement(Permutation({1})) == Permutation({1}));
    CHECK(reverse_complement(Permutation({2, 1})) == Permutation({2, 1}));
    for (int k = 1; k <= 8; ++k)
        for (const auto& p : oracle::all_perms(k))
            CHECK(reverse_complement(reverse_complement(p)) == p);
}

TEST_CASE("containment is invariant under reverse-complement of both sides") {
    std::mt19937 rng(23);
    for (int iter = 0; iter < 200; ++iter) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const int k = 1 + static_cast<int>(rng() % n);
        const auto text = oracle::random_perm(rng, n);
        const auto pat = oracle::random_perm(rng, k);
        CHECK(static_cast<bool>(contains_bruteforce(pat, text)) ==
              static_cast<bool>(contains_bruteforce(reverse_complement(pat), reverse_complement(text))));
    }
}

TEST_CASE("self containment yields the identity occurrence") {
    for (int k = 1; k <= 6; ++k)
        for (const auto& p : oracle::all_perms(k)) {
            auto r = contains_bruteforce(p, p);
            REQUIRE(r);
            for (int i = 0; i < k; ++i) CHECK((*r)[static_cast<size_t>(i)] == i + 1);
        }
}

TEST_CASE("containment is transitive") {
    std::mt19937 rng(99);
    int found = 0;
    while (found < 50) {
        const auto p = oracle::random_perm(rng, 1 + static_cast<int>(rng() % 4));
        const auto t = oracle::random_perm(rng, 4 + static_cast<int>(rng() % 3));
        const auto u = oracle::random_perm(rng, 6 + static_cast<int>(rng() % 2));
        if (contains_bruteforce(p, t) && contains_bruteforce(t, u)) {
            CHECK(contains_bruteforce(p, u));
            ++found;
        }
    }
}

TEST_CASE("in_skew_star") {
    CHECK(in_skew_star(Permutation({4, 1, 3, 2})));
    CHECK_FALSE(in_skew_star(Permutation({3, 1, 4, 2})));
    CHECK(in_skew_star(Permutation{}));
    for (int k = 1; k <= 6; ++k)
        for (const auto& p : oracle::all_perms(k))
            CHECK(in_skew_star(p) == oracle::in_skew_star_naive(p));
}

TEST_CASE("classify_principal") {
    CHECK(classify_principal(Permutation({1, 3, 2})) == PatternComplexity::Polynomial);
    CHECK(classify_principal(Permutation({3, 2, 1})) == PatternComplexity::NPComplete);
    CHECK(classify_principal(Permutation({2, 4, 1, 3})) == PatternComplexity::NPComplete);
    CHECK_THROWS_AS(classify_principal(Permutation{}), std::invalid_argument);
}

TEST_CASE("enumerate_avoiders") {
    const auto av3 = enumerate_avoiders(3, {Permutation({3, 2, 1})});
    REQUIRE(av3.size() == 5);
    CHECK(av3[0] == Permutation({1, 2, 3}));
    CHECK(av3[1] == Permutation({1, 3, 2}));
    CHECK(av3[2] == Permutation({2, 1, 3}));
    CHECK(av3[3] == Permutation({2, 3, 1}));
    CHECK(av3[4] == Permutation({3, 1, 2}));
    CHECK(enumerate_avoiders(0, {Permutation({2, 1})}).size() == 1);
    CHECK(enumerate_avoiders(4, {Permutation({3, 2, 1})}).size() == 14);
}
