#include "chainavoid/templates.hpp"

#include <algorithm>
#include <cmath>

namespace chainavoid::templates {

WeightVector WeightVector::create(std::vector<double> beta) {
    if (beta.empty()) throw precondition_error("weight vector must be nonempty");
    for (double b : beta)
        if (!(b > 0.0)) throw precondition_error("weights must be positive");
    return WeightVector{std::move(beta)};
}

WeightVector WeightVector::ones(int m) {
    return WeightVector{std::vector<double>(static_cast<std::size_t>(m), 1.0)};
}

double WeightVector::sum() const {
    double s = 0.0;
    for (double b : beta) s += b;
    return s;
}

double WeightVector::min() const {
    double s = beta[0];
    for (double b : beta) s = std::min(s, b);
    return s;
}

Template Template::empty(int n) {
    if (n < 0 || n > lattice::kMaxGroundSet)
        throw precondition_error("template: require 0 <= n <= 24");
    Template t;
    t.n = n;
    t.sets.assign(std::size_t(1) << n, 0);
    return t;
}

Template Template::full_band(int n, int m, int lo, int hi) {
    Template t = empty(n);
    ColorSet all = patterns::full_set(m);
    for (Mask x = 0; x < (Mask(1) << n); ++x)
        if (lattice::rank(x) >= lo && lattice::rank(x) <= hi) t.sets[x] = all;
    return t;
}

std::vector<Mask> Template::support() const {
    std::vector<Mask> out;
    for (Mask x = 0; x < (Mask(1) << n); ++x)
        if (sets[x] != 0) out.push_back(x);
    std::sort(out.begin(), out.end(), lattice::canonical_less);
    return out;
}

std::size_t Template::support_size() const {
    std::size_t c = 0;
    for (ColorSet s : sets)
        if (s != 0) ++c;
    return c;
}

double weighted_size(ColorSet s, const WeightVector& beta) {
    double v = 0.0;
    for (int c = 1; c <= beta.m(); ++c)
        if (patterns::has_color(s, c)) v += beta.beta[static_cast<std::size_t>(c - 1)];
    return v;
}

double omega(const Template& t, const WeightVector& beta) {
    double v = 0.0;
    for (ColorSet s : t.sets)
        if (s != 0) v += std::log1p(weighted_size(s, beta));
    return v;
}

double profile_omega(const ChainProfile& profile, const WeightVector& beta) {
    double v = 0.0;
    for (ColorSet s : profile.sets) v += std::log1p(weighted_size(s, beta));
    return v;
}

bool template_is_valid(const Template& t, const ForbiddenFamily& g) {
    const std::size_t total = std::size_t(1) << t.n;
    // h[x] = longest prefix of the pattern realizable on a chain ending at x.
    std::vector<int> h(total);
    for (const auto& p : g.patterns) {
        for (Mask x = 0; x < total; ++x) {
            int best = 0;
            for (int b = 0; b < t.n; ++b) {
                Mask bit = Mask(1) << b;
                if (x & bit) best = std::max(best, h[x ^ bit]);
            }
            int v = best;
            if (v < p.length() &&
                patterns::has_color(t.sets[x], p.colors[static_cast<std::size_t>(v)]))
                ++v;
            if (v >= p.length()) return false;
            h[x] = v;
        }
    }
    return true;
}

bool profile_is_valid(const ChainProfile& profile, const ForbiddenFamily& g) {
    patterns::MatchState state = patterns::initial_state(g);
    for (ColorSet s : profile.sets) {
        if (s == 0) throw precondition_error("chain profile sets must be nonempty");
        state = patterns::advance(g, state, s);
        if (patterns::saturated(g, state)) return false;
    }
    return true;
}

namespace {

bool oracle_rec(const std::vector<Mask>& supp, std::size_t idx, std::vector<int>& chosen,
                const Template& t, const ForbiddenFamily& g) {
    if (idx == supp.size()) {
        // DFS over all chains inside the support, checking the chosen coloring.
        struct Rec {
            const std::vector<Mask>& supp;
            const std::vector<int>& chosen;
            const ForbiddenFamily& g;
            bool violated = false;
            void go(std::vector<int>& colors, std::size_t last) {
                if (violated) return;
                if (patterns::is_violating_chain(colors, g)) {
                    violated = true;
                    return;
                }
                for (std::size_t j = last + 1; j < supp.size(); ++j) {
                    if (last != static_cast<std::size_t>(-1) &&
                        !lattice::is_proper_subset(supp[last], supp[j]))
                        continue;
                    colors.push_back(chosen[j]);
                    go(colors, j);
                    colors.pop_back();
                    if (violated) return;
                }
            }
        } rec{supp, chosen, g};
        std::vector<int> colors;
        rec.go(colors, static_cast<std::size_t>(-1));
        return !rec.violated;
    }
    for (int c = 1; c <= g.m; ++c) {
        if (!patterns::has_color(t.sets[supp[idx]], c)) continue;
        chosen[idx] = c;
        if (!oracle_rec(supp, idx + 1, chosen, t, g)) return false;
    }
    return true;
}

} // namespace

bool template_validity_oracle(const Template& t, const ForbiddenFamily& g) {
    auto supp = t.support();
    if (supp.size() > 14) throw budget_error("validity oracle: support larger than 14");
    double colorings = 1.0;
    for (Mask x : supp) colorings *= 1.0 + std::popcount(t.sets[x]);
    if (colorings > 1e7) throw budget_error("validity oracle: too many colorings");
    std::vector<int> chosen(supp.size(), 0);
    return oracle_rec(supp, 0, chosen, t, g);
}

double mu_contained_closed_form(const Template& t, const WeightVector& beta) {
    double prod = 1.0;
    for (ColorSet s : t.sets)
        if (s != 0) prod *= 1.0 + weighted_size(s, beta);
    return prod;
}

Template layered_template(const ChainProfile& profile, int n, int anchor) {
    int r = profile.length();
    if (r > n + 1 || anchor < 0 || anchor + r - 1 > n)
        throw precondition_error("layered_template: block out of range");
    Template t = Template::empty(n);
    for (Mask x = 0; x < (Mask(1) << n); ++x) {
        int rk = lattice::rank(x);
        if (rk >= anchor && rk < anchor + r)
            t.sets[x] = profile.sets[static_cast<std::size_t>(rk - anchor)];
    }
    return t;
}

AnchorResult best_anchor(const ChainProfile& profile, int n, const WeightVector& beta) {
    int r = profile.length();
    if (r > n + 1) throw precondition_error("best_anchor: profile longer than n+1");
    AnchorResult best{-1, -1.0};
    for (int a = 0; a + r - 1 <= n; ++a) {
        double w = 0.0;
        for (int j = 0; j < r; ++j)
            w += lattice::binomial(n, a + j) *
                 std::log1p(weighted_size(profile.sets[static_cast<std::size_t>(j)], beta));
        if (w > best.omega_value + 1e-12 || best.anchor < 0) {
            best.anchor = a;
            best.omega_value = w;
        }
    }
    return best;
}

} // namespace chainavoid::templates
