#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "chainavoid/patterns.hpp"

using namespace chainavoid::patterns;
using chainavoid::precondition_error;

namespace {

// Random family over m colors that forbids a monochromatic chain per color,
// plus up to `extra` random patterns of length 2..3.
ForbiddenFamily random_sparse_family(std::mt19937_64& rng, int m, int extra) {
    std::set<ChainPattern> pats;
    for (int c = 1; c <= m; ++c) {
        int len = 2 + int(rng() % 2);
        pats.insert(ChainPattern{std::vector<int>(std::size_t(len), c)});
    }
    for (int i = 0; i < extra; ++i) {
        int len = 2 + int(rng() % 2);
        std::vector<int> colors;
        for (int j = 0; j < len; ++j) colors.push_back(1 + int(rng() % std::uint64_t(m)));
        pats.insert(ChainPattern{colors});
    }
    return ForbiddenFamily::create(m, {pats.begin(), pats.end()});
}

int greedy_prefix(const std::vector<int>& pat, const std::vector<int>& seq) {
    // longest prefix of pat embeddable as a subsequence of seq
    int best = 0;
    for (int len = int(pat.size()); len >= 1; --len) {
        std::size_t j = 0;
        for (int c : seq) {
            if (j < std::size_t(len) && pat[j] == c) ++j;
        }
        if (int(j) >= len) return len;
    }
    return best;
}

} // namespace

TEST_CASE("family construction validates input") {
    CHECK_THROWS_WITH(ForbiddenFamily::create(1, {ChainPattern{{1}}}), "pattern length < 2");
    CHECK_THROWS_AS(ForbiddenFamily::create(1, {ChainPattern{{1, 2}}}), precondition_error);
    CHECK_THROWS_WITH(ForbiddenFamily::create(1, {ChainPattern{{1, 1}}, ChainPattern{{1, 1}}}),
                      "duplicate pattern");
    CHECK(mono_chain_family(3).max_length() == 3);
    CHECK(four_color_example().patterns.size() == 13);
}

TEST_CASE("sparsity report") {
    CHECK(sparsity_report(mono_chain_family(2)).is_sparse);
    auto dense = ForbiddenFamily::create(2, {ChainPattern{{1, 2}}});
    auto rep = sparsity_report(dense);
    CHECK_FALSE(rep.is_sparse);
    CHECK(rep.missing_colors == std::vector<int>{1, 2});
    CHECK(sparsity_report(four_color_example()).is_sparse);
}

TEST_CASE("advance over color sets") {
    auto g = mono_chain_family(2);
    auto s0 = initial_state(g);
    CHECK(advance(g, s0, 0) == s0); // empty set advances nothing
    auto s1 = advance(g, s0, singleton(1));
    CHECK(s1.t == std::vector<int>{1});
    auto s2 = advance(g, s1, singleton(1));
    CHECK(saturated(g, s2));

    auto g4 = four_color_example();
    auto t0 = initial_state(g4);
    auto t1 = advance(g4, t0, singleton(3) | singleton(4));
    auto t2 = advance(g4, t1, singleton(1));
    CHECK_FALSE(saturated(g4, t1));
    CHECK_FALSE(saturated(g4, t2));
}

TEST_CASE("violating-chain oracle") {
    CHECK(is_violating_chain({1, 1}, mono_chain_family(2)));
    auto g4 = four_color_example();
    CHECK_FALSE(is_violating_chain({3, 1}, g4));
    CHECK_FALSE(is_violating_chain({4, 1}, g4));
    CHECK_FALSE(is_violating_chain({4, 2}, g4));
    // no valid color triple exists in the 4-color family
    for (int a = 1; a <= 4; ++a)
        for (int b = 1; b <= 4; ++b)
            for (int c = 1; c <= 4; ++c) CHECK(is_violating_chain({a, b, c}, g4));
}

TEST_CASE("longest valid length and L") {
    for (int k = 2; k <= 6; ++k) {
        CHECK(longest_valid_length(mono_chain_family(k)) == k - 1);
        CHECK(big_L(mono_chain_family(k)) == k);
    }
    CHECK(longest_valid_length(four_color_example()) == 2);
    CHECK(big_L(four_color_example()) == 3);
    auto dense = ForbiddenFamily::create(2, {ChainPattern{{1, 2}}});
    CHECK_THROWS_WITH(longest_valid_length(dense), "not sparse");
}

TEST_CASE("augmentation with all km-chains") {
    auto g = mono_chain_family(2);
    auto a = augment_with_all_chains(g);
    CHECK(a.patterns.size() == 1); // (1,1) already present
    auto g3 = mono_chain_family(3);
    auto a3 = augment_with_all_chains(g3);
    CHECK(a3.patterns.size() == 1);
    CHECK(augment_with_all_chains(a3).patterns.size() == 1);

    auto g4 = four_color_example();
    auto a4 = augment_with_all_chains(g4);
    CHECK(a4.patterns.size() == 13 + 65536 - 0); // all 4^8 length-8 chains are new
    CHECK(longest_valid_length(a4) == 2);
}

TEST_CASE("valid sequences unchanged by augmentation") {
    std::mt19937_64 rng(11);
    for (int m = 1; m <= 2; ++m)
        for (int trial = 0; trial < 5; ++trial) {
            auto g = random_sparse_family(rng, m, 2);
            int km = g.max_length() * m;
            auto a = augment_with_all_chains(g);
            // odometer over all color sequences of length <= km
            for (int len = 0; len <= km; ++len) {
                std::vector<int> seq(std::size_t(len), 1);
                for (;;) {
                    CHECK(is_violating_chain(seq, g) == is_violating_chain(seq, a));
                    int i = len - 1;
                    while (i >= 0 && seq[std::size_t(i)] == m) seq[std::size_t(i--)] = 1;
                    if (i < 0) break;
                    ++seq[std::size_t(i)];
                }
            }
        }
}

TEST_CASE("greedy automaton agrees with the subsequence oracle") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        int m = 1 + int(rng() % 3);
        auto g = random_sparse_family(rng, m, int(rng() % 4));
        int len = 1 + int(rng() % 6);
        std::vector<int> seq;
        for (int i = 0; i < len; ++i) seq.push_back(1 + int(rng() % std::uint64_t(m)));

        MatchState st = initial_state(g);
        for (int c : seq) st = advance(g, st, singleton(c));
        bool via_fold = saturated(g, st);
        CHECK(via_fold == is_violating_chain(seq, g));
        // greedy dominance: each coordinate is the max matchable prefix
        for (std::size_t pi = 0; pi < g.patterns.size(); ++pi) {
            int want = greedy_prefix(g.patterns[pi].colors, seq);
            CHECK(st.t[pi] == std::min(want, g.patterns[pi].length()));
        }
    }
}

TEST_CASE("advance monotonicity") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        int m = 1 + int(rng() % 3);
        auto g = random_sparse_family(rng, m, 2);
        MatchState st = initial_state(g);
        for (int step = 0; step < 6; ++step) {
            ColorSet s = ColorSet(rng() % (std::uint64_t(1) << m));
            MatchState nx = advance(g, st, s);
            for (std::size_t i = 0; i < st.t.size(); ++i) CHECK(nx.t[i] >= st.t[i]);
            st = nx;
        }
        CHECK(advance(g, st, 0) == st);
    }
}

TEST_CASE("pigeonhole bound on L") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        int m = 1 + int(rng() % 3);
        auto g = random_sparse_family(rng, m, int(rng() % 4));
        CHECK(big_L(g) <= m * (g.max_length() - 1) + 1);
    }
}
