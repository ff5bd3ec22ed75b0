#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>

#include "chainavoid/templates.hpp"

namespace chainavoid::enumeration {

using BigInt = boost::multiprecision::cpp_int;
using lattice::Mask;
using patterns::ForbiddenFamily;
using templates::Template;
using templates::WeightVector;

// Closed rank interval; elements outside stay uncolored.
struct Band {
    int lo = 0;
    int hi = 0;

    bool operator==(const Band&) const = default;
};

struct CountResult {
    double mu = 0.0;     // weighted measure (compensated summation)
    BigInt exact = 0;    // exact cardinality; meaningful iff is_exact
    bool is_exact = false;
    std::uint64_t nodes = 0;
    std::uint64_t pruned = 0;
};

inline constexpr std::uint64_t kDefaultNodeCap = 1'000'000'000;

// Weighted measure of all validly colored subsets contained in the host
// template, by depth-first assignment in canonical order with greedy
// match-state pruning. The all-ones weight vector also yields the exact count.
CountResult mu_valid_in_template(const Template& host, const ForbiddenFamily& g,
                                 const WeightVector& beta,
                                 std::uint64_t node_cap = kDefaultNodeCap);

// mu(beta, Lambda(G, n)), optionally restricted to a band of ranks.
CountResult mu_valid(int n, const ForbiddenFamily& g, const WeightVector& beta,
                     std::optional<Band> band = std::nullopt,
                     std::uint64_t node_cap = kDefaultNodeCap);

// Direct sum over all colored subsets contained in T (no validity filter);
// must match templates::mu_contained_closed_form.
double mu_contained_enumerated(const Template& t, const WeightVector& beta);

// Expected number of validly colored subsets under independent coloring with
// probabilities p: equals mu_valid(n, g, p) by linearity of expectation.
CountResult expected_valid_count(int n, const ForbiddenFamily& g, const WeightVector& p,
                                 std::optional<Band> band = std::nullopt);

struct MonteCarloResult {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
};

// Samples R random colorings and counts the valid colored subsets of each.
MonteCarloResult expected_valid_count_monte_carlo(int n, const ForbiddenFamily& g,
                                                  const WeightVector& p, std::uint64_t r,
                                                  lattice::Rng& rng);

} // namespace chainavoid::enumeration
