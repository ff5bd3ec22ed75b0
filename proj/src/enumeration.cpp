#include "chainavoid/enumeration.hpp"

#include <cmath>
#include <limits>

namespace chainavoid::enumeration {

using patterns::ColorSet;

namespace {

// Kahan-compensated accumulator for the weighted sums.
struct Kahan {
    double sum = 0.0;
    double carry = 0.0;

    void add(double v) {
        double y = v - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

struct Search {
    const Template& host;
    const ForbiddenFamily& g;
    const WeightVector& beta;
    std::uint64_t node_cap;
    bool all_ones;

    std::vector<Mask> order;                 // canonical order
    std::vector<std::vector<int>> h;         // per pattern, per mask: greedy value
    Kahan mu;
    BigInt exact = 0;
    std::uint64_t nodes = 0;
    std::uint64_t pruned = 0;

    Search(const Template& host_, const ForbiddenFamily& g_, const WeightVector& beta_,
           std::uint64_t cap)
        : host(host_), g(g_), beta(beta_), node_cap(cap) {
        all_ones = true;
        for (double b : beta.beta)
            if (b != 1.0) all_ones = false;
        order = lattice::canonical_elements(host.n);
        h.assign(g.patterns.size(), std::vector<int>(std::size_t(1) << host.n, 0));
    }

    // Greedy value at x given predecessors already assigned; -1 on violation.
    int advance_value(std::size_t pi, Mask x, int chosen_color) const {
        const auto& p = g.patterns[pi];
        int best = 0;
        for (int b = 0; b < host.n; ++b) {
            Mask bit = Mask(1) << b;
            if (x & bit) best = std::max(best, h[pi][x ^ bit]);
        }
        if (chosen_color != 0 && best < p.length() &&
            p.colors[static_cast<std::size_t>(best)] == chosen_color)
            ++best;
        return best;
    }

    void run(std::size_t idx, double weight) {
        if (++nodes > node_cap)
            throw budget_error("mu_valid: node cap exceeded after " + std::to_string(nodes) +
                               " nodes");
        if (idx == order.size()) {
            mu.add(weight);
            if (all_ones) ++exact;
            return;
        }
        Mask x = order[idx];
        // Option 1: leave x uncolored.
        for (std::size_t pi = 0; pi < g.patterns.size(); ++pi)
            h[pi][x] = advance_value(pi, x, 0);
        run(idx + 1, weight);
        // Option 2: each color available at x in the host template.
        ColorSet avail = host.sets[x];
        for (int c = 1; c <= g.m; ++c) {
            if (!patterns::has_color(avail, c)) continue;
            bool violated = false;
            for (std::size_t pi = 0; pi < g.patterns.size(); ++pi) {
                int v = advance_value(pi, x, c);
                if (v >= g.patterns[pi].length()) {
                    violated = true;
                    break;
                }
                h[pi][x] = v;
            }
            if (violated) {
                ++pruned;
                continue;
            }
            run(idx + 1, weight * beta.beta[static_cast<std::size_t>(c - 1)]);
        }
    }

    CountResult result() {
        run(0, 1.0);
        CountResult res;
        res.mu = mu.sum;
        res.exact = exact;
        res.is_exact = all_ones;
        res.nodes = nodes;
        res.pruned = pruned;
        return res;
    }
};

} // namespace

CountResult mu_valid_in_template(const Template& host, const ForbiddenFamily& g,
                                 const WeightVector& beta, std::uint64_t node_cap) {
    if (beta.m() != g.m) throw precondition_error("weight vector length must equal m");
    Search s(host, g, beta, node_cap);
    return s.result();
}

CountResult mu_valid(int n, const ForbiddenFamily& g, const WeightVector& beta,
                     std::optional<Band> band, std::uint64_t node_cap) {
    int lo = band ? band->lo : 0;
    int hi = band ? band->hi : n;
    if (lo < 0 || hi > n || lo > hi + 1)
        throw precondition_error("mu_valid: band out of range");
    Template host = Template::full_band(n, g.m, lo, hi);
    return mu_valid_in_template(host, g, beta, node_cap);
}

namespace {

double contained_rec(const std::vector<Mask>& supp, std::size_t idx, double weight,
                     const Template& t, const WeightVector& beta, Kahan& acc) {
    if (idx == supp.size()) {
        acc.add(weight);
        return weight;
    }
    contained_rec(supp, idx + 1, weight, t, beta, acc);
    for (int c = 1; c <= beta.m(); ++c)
        if (patterns::has_color(t.sets[supp[idx]], c))
            contained_rec(supp, idx + 1, weight * beta.beta[static_cast<std::size_t>(c - 1)], t,
                          beta, acc);
    return 0.0;
}

} // namespace

double mu_contained_enumerated(const Template& t, const WeightVector& beta) {
    auto supp = t.support();
    double total = 1.0;
    for (Mask x : supp) total *= 1.0 + std::popcount(t.sets[x]);
    if (total > 1e7) throw budget_error("mu_contained_enumerated: budget exceeded");
    Kahan acc;
    contained_rec(supp, 0, 1.0, t, beta, acc);
    return acc.sum;
}

CountResult expected_valid_count(int n, const ForbiddenFamily& g, const WeightVector& p,
                                 std::optional<Band> band) {
    double sum = 0.0;
    for (double v : p.beta) {
        if (!(v > 0.0)) throw precondition_error("probabilities must be strictly positive");
        sum += v;
    }
    if (sum > 1.0 + 1e-12) throw precondition_error("probabilities must sum to at most 1");
    return mu_valid(n, g, p, band);
}

MonteCarloResult expected_valid_count_monte_carlo(int n, const ForbiddenFamily& g,
                                                  const WeightVector& p, std::uint64_t r,
                                                  lattice::Rng& rng) {
    if (r == 0) throw precondition_error("monte carlo: sample count must be positive");
    double sum = 0.0;
    for (double v : p.beta) sum += v;
    if (sum > 1.0 + 1e-12) throw precondition_error("probabilities must sum to at most 1");

    WeightVector ones = WeightVector::ones(g.m);
    Kahan mean_acc, sq_acc;
    for (std::uint64_t i = 0; i < r; ++i) {
        // Sample a random coloring as a singleton-set template.
        Template chi = Template::empty(n);
        for (Mask x = 0; x < (Mask(1) << n); ++x) {
            double u = double(rng()) / double(std::numeric_limits<std::uint64_t>::max());
            double acc = 0.0;
            for (int c = 1; c <= g.m; ++c) {
                acc += p.beta[static_cast<std::size_t>(c - 1)];
                if (u < acc) {
                    chi.sets[x] = patterns::singleton(c);
                    break;
                }
            }
        }
        CountResult cr = mu_valid_in_template(chi, g, ones);
        double v = cr.mu;
        mean_acc.add(v);
        sq_acc.add(v * v);
    }
    MonteCarloResult res;
    res.samples = r;
    res.mean = mean_acc.sum / double(r);
    double var = sq_acc.sum / double(r) - res.mean * res.mean;
    if (var < 0.0) var = 0.0;
    if (r > 1) var = var * double(r) / double(r - 1);
    res.std_error = std::sqrt(var / double(r));
    return res;
}

} // namespace chainavoid::enumeration
