#pragma once

#include "chainavoid/templates.hpp"

namespace chainavoid::critical {

using patterns::ForbiddenFamily;
using templates::ChainProfile;
using templates::WeightVector;

struct CriticalResult {
    double omega_crit = 0.0;
    std::vector<ChainProfile> optimal_profiles; // canonical order, deduplicated
    bool truncated = false;                     // more than 64 optimal profiles
    int L = 0;
};

// Longest path over greedy match states; edges are nonempty color sets with
// weight log(1 + |S|_beta), pruned when they saturate a pattern.
CriticalResult omega_crit(const ForbiddenFamily& g, const WeightVector& beta);

// Brute force over all sequences of nonempty color sets of length <= max_len.
double omega_crit_oracle(const ForbiddenFamily& g, const WeightVector& beta, int max_len);

// omega_crit under the probability weights; the exponent of the expected
// number of validly colored subsets.
double expectation_exponent(const ForbiddenFamily& g, const WeightVector& p);

} // namespace chainavoid::critical
