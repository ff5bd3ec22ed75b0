#include "chainavoid/critical.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace chainavoid::critical {

namespace {

constexpr double kTieTol = 1e-12;
constexpr std::uint64_t kStateVisitCap = 10'000'000;
constexpr std::size_t kMaxProfiles = 64;

using patterns::ColorSet;
using patterns::MatchState;

struct Solver {
    const ForbiddenFamily& g;
    const WeightVector& beta;
    std::map<MatchState, double> memo;
    std::uint64_t visited = 0;
    std::vector<double> edge_weight; // indexed by color set

    double value(const MatchState& state) {
        auto it = memo.find(state);
        if (it != memo.end()) return it->second;
        if (++visited > kStateVisitCap)
            throw budget_error("state space too large: visited states exceed " +
                               std::to_string(kStateVisitCap));
        double best = 0.0;
        ColorSet all = patterns::full_set(g.m);
        for (ColorSet s = 1; s <= all; ++s) {
            MatchState next = patterns::advance(g, state, s);
            if (patterns::saturated(g, next)) continue;
            best = std::max(best, edge_weight[s] + value(next));
        }
        memo.emplace(state, best);
        return best;
    }

    void reconstruct(const MatchState& state, double target, std::vector<ColorSet>& prefix,
                     std::vector<ChainProfile>& out, bool& truncated) {
        if (target <= kTieTol) {
            if (out.size() < kMaxProfiles)
                out.push_back(ChainProfile{prefix});
            else
                truncated = true;
            // A state can both stop here and continue with zero-weight gain;
            // weights are strictly positive so continuation is impossible.
            return;
        }
        ColorSet all = patterns::full_set(g.m);
        for (ColorSet s = 1; s <= all; ++s) {
            MatchState next = patterns::advance(g, state, s);
            if (patterns::saturated(g, next)) continue;
            double rest = value(next);
            if (std::fabs(edge_weight[s] + rest - target) <= kTieTol) {
                prefix.push_back(s);
                reconstruct(next, rest, prefix, out, truncated);
                prefix.pop_back();
                if (truncated && out.size() >= kMaxProfiles) return;
            }
        }
    }
};

} // namespace

CriticalResult omega_crit(const ForbiddenFamily& g, const WeightVector& beta) {
    auto rep = patterns::sparsity_report(g);
    if (!rep.is_sparse) throw precondition_error("not sparse");
    if (beta.m() != g.m) throw precondition_error("weight vector length must equal m");

    Solver solver{g, beta, {}, 0, {}};
    ColorSet all = patterns::full_set(g.m);
    solver.edge_weight.assign(std::size_t(all) + 1, 0.0);
    for (ColorSet s = 1; s <= all; ++s)
        solver.edge_weight[s] = std::log1p(templates::weighted_size(s, beta));

    MatchState start = patterns::initial_state(g);
    CriticalResult res;
    res.omega_crit = solver.value(start);
    res.L = patterns::big_L(g);

    std::vector<ColorSet> prefix;
    solver.reconstruct(start, res.omega_crit, prefix, res.optimal_profiles, res.truncated);
    std::sort(res.optimal_profiles.begin(), res.optimal_profiles.end());
    res.optimal_profiles.erase(
        std::unique(res.optimal_profiles.begin(), res.optimal_profiles.end()),
        res.optimal_profiles.end());
    return res;
}

namespace {

double oracle_rec(const ForbiddenFamily& g, const WeightVector& beta, ChainProfile& profile,
                  int remaining) {
    double best = 0.0;
    if (remaining == 0) return best;
    patterns::ColorSet all = patterns::full_set(g.m);
    for (patterns::ColorSet s = 1; s <= all; ++s) {
        profile.sets.push_back(s);
        if (templates::profile_is_valid(profile, g)) {
            double w = templates::profile_omega(profile, beta);
            best = std::max(best, w);
            best = std::max(best, oracle_rec(g, beta, profile, remaining - 1));
        }
        profile.sets.pop_back();
    }
    return best;
}

} // namespace

double omega_crit_oracle(const ForbiddenFamily& g, const WeightVector& beta, int max_len) {
    if (max_len < 0) throw precondition_error("max_len must be nonnegative");
    double sets = std::pow(2.0, g.m);
    if (std::pow(sets, max_len) > 1e8) throw budget_error("omega_crit_oracle: budget exceeded");
    ChainProfile profile;
    return oracle_rec(g, beta, profile, max_len);
}

double expectation_exponent(const ForbiddenFamily& g, const WeightVector& p) {
    double sum = 0.0;
    for (double v : p.beta) {
        if (!(v > 0.0)) throw precondition_error("probabilities must be strictly positive");
        sum += v;
    }
    if (sum > 1.0 + 1e-12) throw precondition_error("probabilities must sum to at most 1");
    return omega_crit(g, p).omega_crit;
}

} // namespace chainavoid::critical
