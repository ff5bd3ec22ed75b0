#include "chainavoid/patterns.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace chainavoid::patterns {

ForbiddenFamily ForbiddenFamily::create(int m, std::vector<ChainPattern> patterns) {
    if (m < 1 || m > 31) throw precondition_error("color count m must be in 1..31");
    std::set<ChainPattern> seen;
    for (const auto& p : patterns) {
        if (p.length() < 2) throw precondition_error("pattern length < 2");
        for (int c : p.colors)
            if (c < 1 || c > m) throw precondition_error("pattern color out of range 1..m");
        if (!seen.insert(p).second) throw precondition_error("duplicate pattern");
    }
    ForbiddenFamily g;
    g.m = m;
    g.patterns = std::move(patterns);
    return g;
}

int ForbiddenFamily::max_length() const {
    int k = 2;
    for (const auto& p : patterns) k = std::max(k, p.length());
    return k;
}

SparsityReport sparsity_report(const ForbiddenFamily& g) {
    SparsityReport rep;
    for (int c = 1; c <= g.m; ++c) {
        bool mono = false;
        for (const auto& p : g.patterns) {
            bool all = true;
            for (int pc : p.colors)
                if (pc != c) { all = false; break; }
            if (all) { mono = true; break; }
        }
        if (!mono) rep.missing_colors.push_back(c);
    }
    rep.is_sparse = rep.missing_colors.empty();
    return rep;
}

MatchState initial_state(const ForbiddenFamily& g) {
    MatchState s;
    s.t.assign(g.patterns.size(), 0);
    return s;
}

MatchState advance(const ForbiddenFamily& g, const MatchState& state, ColorSet s) {
    MatchState out = state;
    for (std::size_t i = 0; i < g.patterns.size(); ++i) {
        const auto& p = g.patterns[i];
        int t = out.t[i];
        if (t < p.length() && has_color(s, p.colors[static_cast<std::size_t>(t)]))
            out.t[i] = t + 1;
    }
    return out;
}

bool saturated(const ForbiddenFamily& g, const MatchState& state) {
    for (std::size_t i = 0; i < g.patterns.size(); ++i)
        if (state.t[i] >= g.patterns[i].length()) return true;
    return false;
}

namespace {

bool is_subsequence(const std::vector<int>& pat, const std::vector<int>& seq) {
    std::size_t j = 0;
    for (int c : seq) {
        if (j < pat.size() && pat[j] == c) ++j;
        if (j == pat.size()) return true;
    }
    return pat.empty();
}

} // namespace

bool is_violating_chain(const std::vector<int>& colors, const ForbiddenFamily& g) {
    for (const auto& p : g.patterns)
        if (is_subsequence(p.colors, colors)) return true;
    return false;
}

namespace {

constexpr std::uint64_t kStateVisitCap = 10'000'000;

int longest_from(const ForbiddenFamily& g, const MatchState& state,
                 std::map<MatchState, int>& memo, std::uint64_t& visited) {
    auto it = memo.find(state);
    if (it != memo.end()) return it->second;
    if (++visited > kStateVisitCap)
        throw budget_error("state space too large: visited states exceed " +
                           std::to_string(kStateVisitCap));
    int best = 0;
    for (int c = 1; c <= g.m; ++c) {
        MatchState next = advance(g, state, singleton(c));
        if (saturated(g, next)) continue;
        best = std::max(best, 1 + longest_from(g, next, memo, visited));
    }
    memo.emplace(state, best);
    return best;
}

} // namespace

int longest_valid_length(const ForbiddenFamily& g) {
    if (!sparsity_report(g).is_sparse) throw precondition_error("not sparse");
    std::map<MatchState, int> memo;
    std::uint64_t visited = 0;
    return longest_from(g, initial_state(g), memo, visited);
}

ForbiddenFamily augment_with_all_chains(const ForbiddenFamily& g) {
    if (!sparsity_report(g).is_sparse) throw precondition_error("not sparse");
    int len = g.max_length() * g.m;
    std::set<ChainPattern> existing(g.patterns.begin(), g.patterns.end());
    std::vector<ChainPattern> out = g.patterns;
    std::vector<int> seq(static_cast<std::size_t>(len), 1);
    for (;;) {
        ChainPattern p{seq};
        if (!existing.count(p)) out.push_back(p);
        // odometer over colors 1..m
        int i = len - 1;
        while (i >= 0 && seq[static_cast<std::size_t>(i)] == g.m) {
            seq[static_cast<std::size_t>(i)] = 1;
            --i;
        }
        if (i < 0) break;
        ++seq[static_cast<std::size_t>(i)];
    }
    ForbiddenFamily res;
    res.m = g.m;
    res.patterns = std::move(out);
    return res;
}

ForbiddenFamily four_color_example() {
    std::vector<ChainPattern> pats;
    for (int a = 1; a <= 4; ++a)
        for (int b = 1; b <= 4; ++b) {
            bool allowed = (a == 3 && b == 1) || (a == 4 && b == 1) || (a == 4 && b == 2);
            if (!allowed) pats.push_back(ChainPattern{{a, b}});
        }
    return ForbiddenFamily::create(4, std::move(pats));
}

ForbiddenFamily mono_chain_family(int k) {
    return ForbiddenFamily::create(1, {ChainPattern{std::vector<int>(static_cast<std::size_t>(k), 1)}});
}

} // namespace chainavoid::patterns
