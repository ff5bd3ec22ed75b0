#pragma once

#include <optional>
#include <vector>

#include "chainavoid/lattice.hpp"
#include "chainavoid/patterns.hpp"

namespace chainavoid::templates {

using lattice::Mask;
using patterns::ColorSet;
using patterns::ForbiddenFamily;

// Strictly positive per-color weights; also doubles as a probability vector.
struct WeightVector {
    std::vector<double> beta;

    static WeightVector create(std::vector<double> beta);
    static WeightVector ones(int m);

    int m() const { return static_cast<int>(beta.size()); }
    double sum() const;
    double min() const;
};

// A color-set assignment over all of P([n]); dense array indexed by mask.
struct Template {
    int n = 0;
    std::vector<ColorSet> sets; // size 1 << n

    static Template empty(int n);
    // All colors of {1..m} on every element whose rank lies in [lo, hi].
    static Template full_band(int n, int m, int lo, int hi);

    ColorSet at(Mask x) const { return sets[x]; }
    void set(Mask x, ColorSet s) { sets[x] = s; }
    std::vector<Mask> support() const;
    std::size_t support_size() const;

    bool operator==(const Template&) const = default;
};

// A chain-supported template: nonempty color sets bottom-to-top.
struct ChainProfile {
    std::vector<ColorSet> sets;

    bool operator==(const ChainProfile&) const = default;
    bool operator<(const ChainProfile& o) const { return sets < o.sets; }
    int length() const { return static_cast<int>(sets.size()); }
};

double weighted_size(ColorSet s, const WeightVector& beta);

// omega(beta, T) = sum over x of log(1 + |T(x)|_beta), natural log.
double omega(const Template& t, const WeightVector& beta);

double profile_omega(const ChainProfile& profile, const WeightVector& beta);

// Lattice DP: true iff no chain with per-element color choices from T
// realizes a pattern of g.
bool template_is_valid(const Template& t, const ForbiddenFamily& g);

// Validity of a chain profile viewed as a template on a path poset.
bool profile_is_valid(const ChainProfile& profile, const ForbiddenFamily& g);

// Brute-force oracle: enumerates every coloring of Supp(T).
// Requires |Supp(T)| <= 14 and prod (|T(x)|+1) <= 1e7.
bool template_validity_oracle(const Template& t, const ForbiddenFamily& g);

// prod over Supp(T) of (1 + |T(x)|_beta); the measure of colored subsets
// contained in T.
double mu_contained_closed_form(const Template& t, const WeightVector& beta);

// Places profile set j on the whole layer (anchor + j), empty elsewhere.
Template layered_template(const ChainProfile& profile, int n, int anchor);

struct AnchorResult {
    int anchor = 0;
    double omega_value = 0.0;
};

// Anchor maximizing omega of the layered template; ties toward smaller anchor.
AnchorResult best_anchor(const ChainProfile& profile, int n, const WeightVector& beta);

} // namespace chainavoid::templates
