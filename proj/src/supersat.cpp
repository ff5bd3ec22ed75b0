#include "chainavoid/supersat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace chainavoid::supersat {

namespace {

using patterns::ColorSet;

double factorial(int r) {
    double f = 1.0;
    for (int i = 2; i <= r; ++i) f *= i;
    return f;
}

std::uint64_t binom_int(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

double compute_q(int m, int k, int n) {
    double q = 0.0;
    for (int s = 1; s <= n + 1; ++s) {
        double rhs = double(binom_int(std::uint64_t((s - 1) / m), std::uint64_t(k - 1)));
        for (int i = 1; i < k; ++i) {
            double lhs = std::pow(double(s - 1), double(i - 1));
            q = std::max(q, lhs - rhs);
        }
    }
    return q;
}

// Embeddings of `colors` (bottom-to-top) as a colored subchain of `elems`
// (bottom-to-top) with each color available in the template.
std::uint64_t count_embeddings(const Template& t, const std::vector<int>& colors,
                               const std::vector<Mask>& elems) {
    std::vector<std::uint64_t> ways(colors.size() + 1, 0);
    ways[0] = 1;
    for (Mask e : elems)
        for (std::size_t j = colors.size(); j >= 1; --j)
            if (patterns::has_color(t.sets[e], colors[j - 1])) ways[j] += ways[j - 1];
    return ways[colors.size()];
}

} // namespace

SupersatConstants constants(const ForbiddenFamily& g, const WeightVector& beta, int n) {
    auto crit = critical::omega_crit(g, beta); // throws "not sparse" when needed
    SupersatConstants c;
    c.C3 = std::log1p(beta.sum());
    c.C4 = std::log1p(beta.min());
    c.C1 = c.C4 / (c.C3 * 2.0 * crit.omega_crit);
    c.C2 = std::min(c.C4 / (c.C3 * c.C1), crit.omega_crit);
    c.Q = compute_q(g.m, g.max_length(), n);
    return c;
}

ChainXY chain_X_Y(const Template& t, const ForbiddenFamily& g, const WeightVector& beta,
                  const MaximalChain& c) {
    ChainXY out;
    for (Mask e : c.elems) out.x += std::log1p(templates::weighted_size(t.sets[e], beta));
    for (const auto& p : g.patterns) out.y += count_embeddings(t, p.colors, c.elems);
    return out;
}

std::uint64_t y_x_on_chain(const Template& t, const ForbiddenFamily& g, Mask x,
                           const MaximalChain& c) {
    if (c.top() != x) throw precondition_error("y_x_on_chain: chain top must be x");
    std::vector<Mask> below(c.elems.begin(), c.elems.end() - 1);
    std::uint64_t total = 0;
    for (const auto& p : g.patterns) {
        int top_color = p.colors.back();
        if (!patterns::has_color(t.sets[x], top_color)) continue;
        std::vector<int> prefix(p.colors.begin(), p.colors.end() - 1);
        total += count_embeddings(t, prefix, below);
    }
    return total;
}

std::uint64_t z_x_on_chain(const Template& t, const std::vector<int>& colors_top_down, Mask x,
                           const MaximalChain& c) {
    if (colors_top_down.empty()) throw precondition_error("z_x: empty color sequence");
    if (c.top() != x) throw precondition_error("z_x_on_chain: chain top must be x");
    if (!patterns::has_color(t.sets[x], colors_top_down.front())) return 0;
    std::vector<int> rest_bottom_up(colors_top_down.rbegin(), colors_top_down.rend() - 1);
    std::vector<Mask> below(c.elems.begin(), c.elems.end() - 1);
    return count_embeddings(t, rest_bottom_up, below);
}

namespace {

template <typename PerChain>
Estimate estimate_below(Mask x, bool exact, std::uint64_t samples, lattice::Rng* rng,
                        PerChain&& per_chain) {
    Estimate est;
    if (exact) {
        if (factorial(lattice::rank(x)) > double(kExactChainBudget))
            throw budget_error("exact chain enumeration budget exceeded");
        auto chains = lattice::all_chains_below(x);
        double sum = 0.0;
        for (const auto& c : chains) sum += double(per_chain(c));
        est.mean = sum / double(chains.size());
        est.samples = chains.size();
        est.exact = true;
        return est;
    }
    if (samples == 0 || rng == nullptr)
        throw precondition_error("sampling mode needs a sample count and an rng");
    double sum = 0.0, sq = 0.0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        auto c = lattice::random_maximal_chain_below(x, *rng);
        double v = double(per_chain(c));
        sum += v;
        sq += v * v;
    }
    est.mean = sum / double(samples);
    double var = sq / double(samples) - est.mean * est.mean;
    if (var < 0.0) var = 0.0;
    if (samples > 1) var = var * double(samples) / double(samples - 1);
    est.std_error = std::sqrt(var / double(samples));
    est.samples = samples;
    return est;
}

} // namespace

Estimate y_x(const Template& t, const ForbiddenFamily& g, Mask x, bool exact,
             std::uint64_t samples, lattice::Rng* rng) {
    return estimate_below(x, exact, samples, rng,
                          [&](const MaximalChain& c) { return y_x_on_chain(t, g, x, c); });
}

Estimate z_x(const Template& t, const std::vector<int>& colors_top_down, Mask x, bool exact,
             std::uint64_t samples, lattice::Rng* rng) {
    return estimate_below(x, exact, samples, rng, [&](const MaximalChain& c) {
        return z_x_on_chain(t, colors_top_down, x, c);
    });
}

AveragelemReport check_averagelem(const Template& t, const ForbiddenFamily& g,
                                  const WeightVector& beta, double alpha,
                                  std::uint64_t pointwise_samples, lattice::Rng& rng) {
    AveragelemReport rep;
    rep.alpha = alpha;
    rep.consts = constants(g, beta, t.n);
    double crit = critical::omega_crit(g, beta).omega_crit;
    double mid = lattice::binomial(t.n, t.n / 2);
    double w = templates::omega(t, beta);
    rep.surplus = w - (crit + alpha) * mid;
    if (!(alpha > 0.0) || alpha >= rep.consts.C2)
        throw precondition_error("check_averagelem: alpha must lie in (0, C2)");
    if (rep.surplus < 0.0)
        throw precondition_error("check_averagelem: omega(T) below (omega_crit + alpha) * binom");

    // Pointwise audit of X(C) - C3 Y(C) <= omega_crit over random chains.
    rep.pointwise_max = -std::numeric_limits<double>::infinity();
    for (std::uint64_t i = 0; i < pointwise_samples; ++i) {
        auto c = lattice::random_maximal_chain(t.n, rng);
        ChainXY xy = chain_X_Y(t, g, beta, c);
        double v = xy.x - rep.consts.C3 * double(xy.y);
        rep.pointwise_max = std::max(rep.pointwise_max, v);
        if (v > crit + 1e-9)
            throw counterexample_error("pointwise inequality X - C3 Y <= omega_crit violated");
    }
    rep.chains_checked = pointwise_samples;

    double threshold = rep.consts.C1 * alpha;
    for (Mask x : t.support()) {
        bool exact = factorial(lattice::rank(x)) <= double(kExactChainBudget);
        Estimate est = exact ? y_x(t, g, x, true)
                             : y_x(t, g, x, false, std::max<std::uint64_t>(pointwise_samples, 1000),
                                   &rng);
        double lower = est.exact ? est.mean : est.mean - 3.0 * est.std_error;
        if (lower >= threshold) {
            rep.witness = x;
            rep.witness_ey = est.mean;
            rep.witness_found = true;
            return rep;
        }
    }
    throw counterexample_error("check_averagelem: no witness x with E Y^x >= C1 alpha");
}

BoundlemReport check_boundlem(const Template& t, const ForbiddenFamily& g_augmented, Mask x,
                              const std::vector<int>& colors_top_down, bool exact,
                              std::uint64_t samples, lattice::Rng* rng) {
    BoundlemReport rep;
    rep.q = compute_q(g_augmented.m, g_augmented.max_length(), t.n);
    rep.max_slack = -std::numeric_limits<double>::infinity();
    auto check_chain = [&](const MaximalChain& c) {
        double z = double(z_x_on_chain(t, colors_top_down, x, c));
        double y = double(y_x_on_chain(t, g_augmented, x, c));
        rep.max_slack = std::max(rep.max_slack, z - y);
        ++rep.chains_checked;
        return 0;
    };
    estimate_below(x, exact, samples, rng, check_chain);
    rep.violated = rep.max_slack > rep.q + 1e-9;
    return rep;
}

std::uint64_t LeveledHypergraph::edge_count(int l) const {
    auto it = levels.find(l);
    return it == levels.end() ? 0 : it->second.size();
}

std::uint64_t LeveledHypergraph::codegree(int l, const std::vector<ColoredVertex>& a) const {
    auto it = levels.find(l);
    if (it == levels.end()) return 0;
    std::uint64_t d = 0;
    for (const Edge& e : it->second) {
        bool all = true;
        for (const auto& v : a)
            if (std::find(e.begin(), e.end(), v) == e.end()) {
                all = false;
                break;
            }
        if (all) ++d;
    }
    return d;
}

std::uint64_t LeveledHypergraph::max_codegree(int l, int j) const {
    auto it = levels.find(l);
    if (it == levels.end()) return 0;
    std::map<std::vector<ColoredVertex>, std::uint64_t> counts;
    for (const Edge& e : it->second) {
        int sz = static_cast<int>(e.size());
        for (std::uint32_t mask = 1; mask < (1u << sz); ++mask) {
            if (std::popcount(mask) != j) continue;
            std::vector<ColoredVertex> sub;
            for (int b = 0; b < sz; ++b)
                if (mask & (1u << b)) sub.push_back(e[static_cast<std::size_t>(b)]);
            ++counts[sub];
        }
    }
    std::uint64_t best = 0;
    for (const auto& [k, v] : counts) best = std::max(best, v);
    return best;
}

bool edge_canonical_less(const Edge& a, const Edge& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    const ColoredVertex& ta = a.back();
    const ColoredVertex& tb = b.back();
    if (!(ta == tb)) return ta < tb;
    return a < b;
}

namespace {

void collect_candidates(const Template& t, const patterns::ChainPattern& p, std::size_t depth,
                        Mask below_of, Edge& partial, std::vector<Edge>& out) {
    if (depth == p.colors.size()) {
        out.push_back(partial);
        return;
    }
    // depth indexes from the bottom; build bottom-to-top.
    for (Mask x = 0; x < (Mask(1) << t.n); ++x) {
        if (depth > 0 && !lattice::is_proper_subset(below_of, x)) continue;
        if (!patterns::has_color(t.sets[x], p.colors[depth])) continue;
        partial.push_back({x, p.colors[depth]});
        collect_candidates(t, p, depth + 1, x, partial, out);
        partial.pop_back();
    }
}

} // namespace

std::vector<Edge> forbidden_chains_in(const Template& t, const ForbiddenFamily& g) {
    std::vector<Edge> out;
    for (const auto& p : g.patterns) {
        Edge partial;
        collect_candidates(t, p, 0, 0, partial, out);
    }
    std::sort(out.begin(), out.end(), edge_canonical_less);
    return out;
}

BalancedResult build_balanced(const Template& t, const ForbiddenFamily& g_augmented,
                              const WeightVector& beta, double delta) {
    if (!(delta > 0.0)) throw precondition_error("build_balanced: delta must be positive");
    for (Mask x : t.support()) {
        int r = lattice::rank(x);
        if (3 * r < t.n || 3 * r > 2 * t.n)
            throw precondition_error("build_balanced: support must lie in ranks [n/3, 2n/3]");
    }

    BalancedResult res;
    res.h.n = t.n;
    res.h.m = g_augmented.m;

    std::vector<Edge> candidates = forbidden_chains_in(t, g_augmented);

    const double dn = delta * t.n;
    const double mid = lattice::binomial(t.n, t.n / 2);
    std::map<int, std::map<std::vector<ColoredVertex>, std::uint64_t>> codeg;

    for (const Edge& e : candidates) {
        ++res.candidates_seen;
        int l = static_cast<int>(e.size());
        auto& cd = codeg[l];
        bool ok = true;
        for (std::uint32_t mask = 1; mask < (1u << l) && ok; ++mask) {
            std::vector<ColoredVertex> sub;
            for (int b = 0; b < l; ++b)
                if (mask & (1u << b)) sub.push_back(e[static_cast<std::size_t>(b)]);
            double cap = std::pow(dn, double(l - static_cast<int>(sub.size())));
            auto it = cd.find(sub);
            std::uint64_t cur = it == cd.end() ? 0 : it->second;
            if (double(cur) + 1.0 > cap) ok = false;
        }
        if (!ok) continue;
        for (std::uint32_t mask = 1; mask < (1u << l); ++mask) {
            std::vector<ColoredVertex> sub;
            for (int b = 0; b < l; ++b)
                if (mask & (1u << b)) sub.push_back(e[static_cast<std::size_t>(b)]);
            ++cd[sub];
        }
        res.h.levels[l].push_back(e);
        ++res.edges_added;
        double target = std::pow(delta, double(l)) * std::pow(double(t.n), double(l - 1)) * mid;
        if (double(res.h.levels[l].size()) >= target) {
            res.reached_target = true;
            res.chosen_l = l;
            break;
        }
    }

    double c3 = std::log1p(beta.sum());
    for (const auto& [l, edges] : res.h.levels) {
        res.delta_bound_factor[l] = 1.0 / (2.0 * l * c3);
        std::map<ColoredVertex, std::uint64_t> deg;
        for (const Edge& e : edges)
            for (const auto& v : e) ++deg[v];
        double cap = std::pow(dn, double(l - 1));
        for (const auto& [v, d] : deg)
            if (double(d) + 1.0 > cap) res.saturated_singletons[l].push_back(v);
    }
    return res;
}

std::uint64_t max_blocked_extensions(const LeveledHypergraph& h, const Template& t,
                                     double delta) {
    const double dn = delta * t.n;
    std::uint64_t worst = 0;
    // Audit every top-down prefix of every stored edge.
    for (const auto& [l, edges] : h.levels) {
        (void)l;
        for (const Edge& e : edges) {
            for (std::size_t plen = 1; plen < e.size(); ++plen) {
                // prefix = top plen vertices, top-down
                std::vector<ColoredVertex> prefix(e.rbegin(),
                                                  e.rbegin() + static_cast<std::ptrdiff_t>(plen));
                Mask bottom = prefix.back().elem;
                std::uint64_t blocked = 0;
                for (Mask x = 0; x < (Mask(1) << t.n); ++x) {
                    if (!lattice::is_proper_subset(x, bottom)) continue;
                    for (int c = 1; c <= h.m; ++c) {
                        if (!patterns::has_color(t.sets[x], c)) continue;
                        ColoredVertex v{x, c};
                        bool bad = false;
                        for (const auto& [l2, edges2] : h.levels) {
                            (void)edges2;
                            for (std::uint32_t mask = 1;
                                 mask < (1u << prefix.size()) && !bad; ++mask) {
                                if (std::popcount(mask) > l2 - 1) continue;
                                std::vector<ColoredVertex> a;
                                for (std::size_t b = 0; b < prefix.size(); ++b)
                                    if (mask & (1u << b)) a.push_back(prefix[b]);
                                a.push_back(v);
                                std::sort(a.begin(), a.end());
                                double cap =
                                    std::pow(dn, double(l2 - static_cast<int>(a.size())));
                                if (double(h.codegree(l2, a)) >= cap) bad = true;
                            }
                            if (bad) break;
                        }
                        if (bad) ++blocked;
                    }
                }
                worst = std::max(worst, blocked);
            }
        }
    }
    return worst;
}

} // namespace chainavoid::supersat
