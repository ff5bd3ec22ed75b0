#pragma once

#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "chainavoid/common.hpp"

namespace chainavoid::lattice {

// An element of P([n]) is an n-bit mask over ground positions 0..n-1.
using Mask = std::uint32_t;

inline constexpr int kMaxGroundSet = 24;

inline int rank(Mask x) { return std::popcount(x); }

inline bool is_proper_subset(Mask x, Mask y) { return x != y && (x & ~y) == 0; }

inline bool is_subset(Mask x, Mask y) { return (x & ~y) == 0; }

// Canonical element order used everywhere: (rank ascending, mask ascending).
inline bool canonical_less(Mask a, Mask b) {
    int ra = rank(a), rb = rank(b);
    if (ra != rb) return ra < rb;
    return a < b;
}

// A maximal chain from bottom to top element; each step adds one bit.
struct MaximalChain {
    std::vector<Mask> elems;

    Mask top() const { return elems.back(); }
    std::size_t length() const { return elems.size(); }
};

bool chain_is_valid(const MaximalChain& c, int n);

// All elements of rank j in P([n]), ascending mask order.
std::vector<Mask> layer(int n, int j);

// All 2^n elements in canonical order.
std::vector<Mask> canonical_elements(int n);

using Rng = std::mt19937_64;

// Unbiased draw from {0,...,k-1}; rejection sampling so results depend only
// on the engine's output stream, not on library internals.
std::uint64_t bounded_draw(Rng& rng, std::uint64_t k);

// Uniform over all n! maximal chains of P([n]).
MaximalChain random_maximal_chain(int n, Rng& rng);

// Uniform over the rank(x)! maximal chains from the empty set up to x.
MaximalChain random_maximal_chain_below(Mask x, Rng& rng);

// All rank(x)! maximal chains from the empty set up to x, for exact averages.
std::vector<MaximalChain> all_chains_below(Mask x);

double binomial(int n, int k);

} // namespace chainavoid::lattice
