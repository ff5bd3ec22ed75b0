#pragma once

#include <cstdint>
#include <vector>

#include "chainavoid/common.hpp"

namespace chainavoid::patterns {

// Colors are 1..m; a set of colors is a bitmask with bit (c-1) for color c.
using ColorSet = std::uint32_t;

inline bool has_color(ColorSet s, int c) { return (s >> (c - 1)) & 1u; }
inline ColorSet singleton(int c) { return ColorSet(1) << (c - 1); }
inline ColorSet full_set(int m) { return (m == 32) ? ~ColorSet(0) : (ColorSet(1) << m) - 1; }

// A forbidden chain pattern: colors bottom-to-top, length >= 2.
struct ChainPattern {
    std::vector<int> colors;

    int length() const { return static_cast<int>(colors.size()); }
    bool operator==(const ChainPattern&) const = default;
    bool operator<(const ChainPattern& o) const { return colors < o.colors; }
};

struct ForbiddenFamily {
    int m = 0;
    std::vector<ChainPattern> patterns;

    // Validates lengths >= 2, colors in range, no exact duplicates.
    static ForbiddenFamily create(int m, std::vector<ChainPattern> patterns);

    int max_length() const; // k
};

struct SparsityReport {
    bool is_sparse = false;
    std::vector<int> missing_colors;
};

SparsityReport sparsity_report(const ForbiddenFamily& g);

// Greedy per-pattern matching progress: t[p] = matched prefix length of
// pattern p reading the chain bottom-to-top.
struct MatchState {
    std::vector<int> t;

    bool operator==(const MatchState&) const = default;
    bool operator<(const MatchState& o) const { return t < o.t; }
};

MatchState initial_state(const ForbiddenFamily& g);

// One step of the greedy automaton against a set-colored position.
MatchState advance(const ForbiddenFamily& g, const MatchState& state, ColorSet s);

// True iff some pattern coordinate is saturated (t[p] == |p|).
bool saturated(const ForbiddenFamily& g, const MatchState& state);

// Exhaustive subsequence search; the oracle for the greedy automaton.
// `colors` is a colored chain read bottom-to-top.
bool is_violating_chain(const std::vector<int>& colors, const ForbiddenFamily& g);

// Max length of a color sequence with no pattern of g as a subsequence.
// Requires g sparse; throws precondition_error("not sparse") otherwise.
int longest_valid_length(const ForbiddenFamily& g);

inline int big_L(const ForbiddenFamily& g) { return longest_valid_length(g) + 1; }

// g together with every color sequence of length k*m; valid colored subsets
// are unchanged (pigeonhole: a km-chain contains a monochromatic k-chain).
ForbiddenFamily augment_with_all_chains(const ForbiddenFamily& g);

// The 13-pattern 4-color family used throughout the examples: the only
// allowed ordered pairs are (3,1), (4,1), (4,2).
ForbiddenFamily four_color_example();

// Single color, one monochromatic k-chain forbidden.
ForbiddenFamily mono_chain_family(int k);

} // namespace chainavoid::patterns
