#pragma once

#include <map>
#include <optional>

#include "chainavoid/critical.hpp"
#include "chainavoid/templates.hpp"

namespace chainavoid::supersat {

using lattice::Mask;
using lattice::MaximalChain;
using patterns::ForbiddenFamily;
using templates::Template;
using templates::WeightVector;

struct SupersatConstants {
    double C1 = 0.0;
    double C2 = 0.0;
    double C3 = 0.0;
    double C4 = 0.0;
    double Q = 0.0;
};

// C3 = log(1 + sum beta), C4 = log(1 + min beta), C1 = C4 / (2 C3 omega_crit),
// C2 = min(C4 / (C3 C1), omega_crit). Q is the least value with
// (s-1)^(i-1) <= Q + binom(floor((s-1)/m), k-1) for 1 <= i < k, s in 1..n+1.
SupersatConstants constants(const ForbiddenFamily& g, const WeightVector& beta, int n);

// X(C) = sum over x in C of log(1 + |T(x)|_beta); Y(C) counts (subchain,
// pattern) pairs: colored subchains of C contained in T realizing a pattern.
struct ChainXY {
    double x = 0.0;
    std::uint64_t y = 0;
};

ChainXY chain_X_Y(const Template& t, const ForbiddenFamily& g, const WeightVector& beta,
                  const MaximalChain& c);

// Y^x(C): realized patterns on subchains of C contained in T with top element
// exactly x (x carries the pattern's top color).
std::uint64_t y_x_on_chain(const Template& t, const ForbiddenFamily& g, Mask x,
                           const MaximalChain& c);

// Z^x_{c1 > ... > ci}(C): colored subchains of C contained in T, top element x
// colored c1, then c2..ci descending. `colors_top_down` starts at x.
std::uint64_t z_x_on_chain(const Template& t, const std::vector<int>& colors_top_down, Mask x,
                           const MaximalChain& c);

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0; // 0 in exact mode
    std::uint64_t samples = 0;
    bool exact = false;
};

inline constexpr std::uint64_t kExactChainBudget = 1'000'000;

// E Y^x: exact average over all rank(x)! chains below x, or sampled.
Estimate y_x(const Template& t, const ForbiddenFamily& g, Mask x, bool exact,
             std::uint64_t samples = 0, lattice::Rng* rng = nullptr);

// E Z^x for a prescribed top-down color sequence.
Estimate z_x(const Template& t, const std::vector<int>& colors_top_down, Mask x, bool exact,
             std::uint64_t samples = 0, lattice::Rng* rng = nullptr);

struct AveragelemReport {
    double alpha = 0.0;
    double surplus = 0.0;        // omega(T) - (omega_crit + alpha) * binom(n, n/2)
    Mask witness = 0;
    double witness_ey = 0.0;     // E Y^witness
    bool witness_found = false;
    double pointwise_max = 0.0;  // max over checked chains of X(C) - C3 Y(C)
    std::uint64_t chains_checked = 0;
    SupersatConstants consts;
};

// Finds x in Supp(T) with E Y^x >= C1 * alpha, and audits the pointwise
// inequality X(C) - C3 Y(C) <= omega_crit over sampled chains.
AveragelemReport check_averagelem(const Template& t, const ForbiddenFamily& g,
                                  const WeightVector& beta, double alpha,
                                  std::uint64_t pointwise_samples, lattice::Rng& rng);

struct BoundlemReport {
    double q = 0.0;
    std::uint64_t chains_checked = 0;
    double max_slack = 0.0;      // max over chains of Z - Y^x (violation iff > Q)
    bool violated = false;
};

// Verifies Z^x <= Q + Y^x per chain; g must be augmented so that G_k
// contains every colored chain of length k.
BoundlemReport check_boundlem(const Template& t, const ForbiddenFamily& g_augmented, Mask x,
                              const std::vector<int>& colors_top_down, bool exact,
                              std::uint64_t samples = 0, lattice::Rng* rng = nullptr);

// One colored vertex of the ambient hypergraph P([n]) x {1..m}.
struct ColoredVertex {
    Mask elem = 0;
    int color = 0;

    bool operator==(const ColoredVertex&) const = default;
    bool operator<(const ColoredVertex& o) const {
        if (elem != o.elem) return lattice::canonical_less(elem, o.elem);
        return color < o.color;
    }
};

using Edge = std::vector<ColoredVertex>; // sorted bottom-to-top

struct LeveledHypergraph {
    int n = 0;
    int m = 0;
    std::map<int, std::vector<Edge>> levels; // uniformity -> edges

    std::uint64_t edge_count(int l) const;
    // Number of edges of H_l containing the given vertex tuple.
    std::uint64_t codegree(int l, const std::vector<ColoredVertex>& a) const;
    // Max codegree over all j-subsets occurring in edges of H_l.
    std::uint64_t max_codegree(int l, int j) const;
};

struct BalancedResult {
    LeveledHypergraph h;
    bool reached_target = false;
    int chosen_l = 0;                       // uniformity that reached the target (0 if none)
    std::uint64_t candidates_seen = 0;
    std::uint64_t edges_added = 0;
    std::map<int, std::vector<ColoredVertex>> saturated_singletons; // per uniformity
    // For the T' pruning step: delta must stay below alpha * this factor.
    std::map<int, double> delta_bound_factor;  // 1 / (2 l log(1 + sum beta))
};

// All colored chains contained in t realizing a pattern of g.
std::vector<Edge> forbidden_chains_in(const Template& t, const ForbiddenFamily& g);

// Candidate order: uniformity ascending, top element canonical, then
// lexicographic on (element, color) pairs.
bool edge_canonical_less(const Edge& a, const Edge& b);

// Edge-by-edge greedy construction keeping every codegree below the cap
// (delta n)^(l-j); stops once some uniformity reaches
// delta^l n^(l-1) binom(n, floor(n/2)) edges.
BalancedResult build_balanced(const Template& t, const ForbiddenFamily& g_augmented,
                              const WeightVector& beta, double delta);

// Max over audited colored-chain prefixes of the number of one-vertex
// extensions blocked by a nonempty-subset codegree saturation; the claim
// bounds this by k * delta * n * 2^k.
std::uint64_t max_blocked_extensions(const LeveledHypergraph& h, const Template& t,
                                     double delta);

} // namespace chainavoid::supersat
