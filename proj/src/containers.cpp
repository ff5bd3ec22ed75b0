#include "chainavoid/containers.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace chainavoid::containers {

LeveledHypergraph ambient_hypergraph(int n, const ForbiddenFamily& g, std::optional<Band> band,
                                     std::uint64_t edge_cap) {
    int lo = band ? band->lo : 0;
    int hi = band ? band->hi : n;
    Template host = Template::full_band(n, g.m, lo, hi);
    auto edges = supersat::forbidden_chains_in(host, g);
    if (edges.size() > edge_cap) throw budget_error("ambient_hypergraph: edge budget exceeded");
    LeveledHypergraph h;
    h.n = n;
    h.m = g.m;
    for (auto& e : edges) h.levels[static_cast<int>(e.size())].push_back(std::move(e));
    return h;
}

namespace {

using VertexSet = std::set<ColoredVertex>;

// One selection step: the max-degree vertex among edges fully inside `avail`,
// ties broken by canonical vertex order. Returns false when no edge is live.
bool select_vertex(const std::vector<Edge>& cur, const VertexSet& avail, ColoredVertex& out) {
    std::map<ColoredVertex, std::uint64_t> deg;
    for (const Edge& e : cur) {
        bool live = true;
        for (const auto& v : e)
            if (!avail.count(v)) {
                live = false;
                break;
            }
        if (!live) continue;
        for (const auto& v : e) ++deg[v];
    }
    if (deg.empty()) return false;
    std::uint64_t best = 0;
    for (const auto& [v, d] : deg) best = std::max(best, d);
    for (const auto& [v, d] : deg)
        if (d == best) {
            out = v;
            return true;
        }
    return false;
}

std::vector<Edge> link_of(const std::vector<Edge>& cur, const VertexSet& avail,
                          const ColoredVertex& u) {
    std::vector<Edge> out;
    for (const Edge& e : cur) {
        bool live = true, has_u = false;
        for (const auto& v : e) {
            if (!avail.count(v)) live = false;
            if (v == u) has_u = true;
        }
        if (!live || !has_u) continue;
        Edge reduced;
        for (const auto& v : e)
            if (!(v == u)) reduced.push_back(v);
        out.push_back(std::move(reduced));
    }
    return out;
}

std::vector<ColoredVertex> make_container(const VertexSet& avail,
                                          const std::vector<ColoredVertex>& f) {
    VertexSet c = avail;
    for (const auto& v : f) c.insert(v);
    return {c.begin(), c.end()};
}

struct StepDriver {
    std::size_t fingerprint_cap;

    // Runs the shared selection loop. `in_independent` decides each branch;
    // for the single-I run it is the membership test, for enumeration it
    // branches both ways via recursion (see enumerate_rec).
    template <typename Decide>
    ContainerStepResult run(std::vector<Edge> cur, VertexSet avail, Decide&& decide) const {
        std::vector<ColoredVertex> f;
        for (;;) {
            if (!cur.empty() && cur.front().size() == 1) {
                // Uniformity 1: drop every available vertex of positive degree.
                for (const Edge& e : cur)
                    if (avail.count(e[0])) avail.erase(e[0]);
                break;
            }
            ColoredVertex u;
            if (!select_vertex(cur, avail, u)) break;
            if (decide(u)) {
                f.push_back(u);
                if (f.size() >= fingerprint_cap) break;
                cur = link_of(cur, avail, u);
            } else {
                avail.erase(u);
            }
        }
        return {f, make_container(avail, f)};
    }
};

void enumerate_rec(const std::vector<Edge>& cur, VertexSet avail, std::vector<ColoredVertex>& f,
                   std::size_t cap, std::vector<ContainerStepResult>& out) {
    if (!cur.empty() && cur.front().size() == 1) {
        VertexSet a = avail;
        for (const Edge& e : cur)
            if (a.count(e[0])) a.erase(e[0]);
        out.push_back({f, make_container(a, f)});
        return;
    }
    ColoredVertex u;
    if (!select_vertex(cur, avail, u)) {
        out.push_back({f, make_container(avail, f)});
        return;
    }
    // Branch: u belongs to the independent set.
    f.push_back(u);
    if (f.size() >= cap) {
        out.push_back({f, make_container(avail, f)});
    } else {
        enumerate_rec(link_of(cur, avail, u), avail, f, cap, out);
    }
    f.pop_back();
    // Branch: u does not.
    VertexSet reduced = avail;
    reduced.erase(u);
    enumerate_rec(cur, std::move(reduced), f, cap, out);
}

std::size_t fingerprint_cap(const std::vector<Edge>& edges, std::size_t n_vertices, double tau) {
    std::size_t l = edges.empty() ? 2 : edges.front().size();
    double cap = std::ceil(double(l) * tau * double(n_vertices));
    return cap < 1.0 ? 1 : static_cast<std::size_t>(cap);
}

} // namespace

ContainerStepResult container_step(const std::vector<Edge>& edges,
                                   const std::vector<ColoredVertex>& vertices, double tau,
                                   const std::vector<ColoredVertex>& independent) {
    for (const Edge& e : edges)
        if (e.size() != edges.front().size())
            throw precondition_error("container_step: hypergraph must be single-uniformity");
    VertexSet iset(independent.begin(), independent.end());
    for (const Edge& e : edges) {
        bool inside = true;
        for (const auto& v : e)
            if (!iset.count(v)) {
                inside = false;
                break;
            }
        if (inside) throw precondition_error("container_step: set is not independent");
    }
    StepDriver d{fingerprint_cap(edges, vertices.size(), tau)};
    return d.run(edges, VertexSet(vertices.begin(), vertices.end()),
                 [&](const ColoredVertex& u) { return iset.count(u) > 0; });
}

std::vector<ContainerStepResult> enumerate_containers(const std::vector<Edge>& edges,
                                                      const std::vector<ColoredVertex>& vertices,
                                                      double tau) {
    std::vector<ContainerStepResult> out;
    std::vector<ColoredVertex> f;
    enumerate_rec(edges, VertexSet(vertices.begin(), vertices.end()), f,
                  fingerprint_cap(edges, vertices.size(), tau), out);
    return out;
}

namespace {

std::vector<ColoredVertex> template_vertices(const Template& t, int m) {
    std::vector<ColoredVertex> out;
    for (Mask x : t.support())
        for (int c = 1; c <= m; ++c)
            if (patterns::has_color(t.sets[x], c)) out.push_back({x, c});
    return out;
}

Template template_from_vertices(int n, const std::vector<ColoredVertex>& vs) {
    Template t = Template::empty(n);
    for (const auto& v : vs) t.sets[v.elem] |= patterns::singleton(v.color);
    return t;
}

double band_omega(const Template& t, const WeightVector& beta) { return templates::omega(t, beta); }

// Greedy prefix partition of the template's vertices into pieces of weight
// about the threshold; the underweight remainder is dropped (the proof's T0).
std::vector<Template> greedy_partition(const Template& t, const WeightVector& beta,
                                       double threshold, int m) {
    std::vector<Template> pieces;
    Template cur = Template::empty(t.n);
    for (const auto& v : template_vertices(t, m)) {
        cur.sets[v.elem] |= patterns::singleton(v.color);
        if (templates::omega(cur, beta) >= threshold) {
            pieces.push_back(cur);
            cur = Template::empty(t.n);
        }
    }
    if (cur.support_size() > 0) pieces.push_back(cur); // trailing T0
    return pieces;
}

} // namespace

BranchingRun branching_run(int n, const ForbiddenFamily& g, const WeightVector& beta,
                           double alpha, double delta, double tau) {
    if (!(alpha > 0.0) || !(delta > 0.0) || !(tau > 0.0))
        throw precondition_error("branching_run: parameters must be positive");
    auto rep = patterns::sparsity_report(g);
    if (!rep.is_sparse) throw precondition_error("not sparse");

    ForbiddenFamily g_aug = patterns::augment_with_all_chains(g);
    double crit = critical::omega_crit(g, beta).omega_crit;

    BranchingRun run;
    run.alpha = alpha;
    run.delta = delta;
    run.tau = tau;
    run.band = Band{(n + 2) / 3, 2 * n / 3};
    if (run.band.lo > run.band.hi) run.band = Band{n / 2, n / 2};
    run.threshold = (crit + alpha) * lattice::binomial(n, n / 2);

    std::vector<Template> frontier{Template::full_band(n, g.m, run.band.lo, run.band.hi)};
    std::vector<Template> finals;

    int round_idx = 0;
    while (!frontier.empty()) {
        RoundLog log;
        log.round = round_idx++;
        log.frontier_size = frontier.size();
        std::set<std::vector<patterns::ColorSet>> seen;
        std::vector<Template> next;
        bool any_split = false;

        for (const Template& t : frontier) {
            double w = band_omega(t, beta);
            log.max_omega = std::max(log.max_omega, w);
            if (w <= run.threshold + 1e-12) {
                finals.push_back(t);
                continue;
            }
            // Try the balanced-supersaturation + container-step split.
            std::vector<Template> children;
            std::map<int, std::vector<Edge>> by_uniformity;
            std::map<int, int> freq;
            for (const Template& piece : greedy_partition(t, beta, run.threshold, g.m)) {
                if (templates::omega(piece, beta) < run.threshold) continue;
                auto bal = supersat::build_balanced(piece, g_aug, beta, delta);
                int l = bal.chosen_l;
                if (l == 0) {
                    // shortfall: take the uniformity holding the most edges
                    std::uint64_t best = 0;
                    for (const auto& [lv, es] : bal.h.levels)
                        if (es.size() > best) {
                            best = es.size();
                            l = lv;
                        }
                }
                if (l == 0) continue;
                ++freq[l];
                auto& dst = by_uniformity[l];
                for (const auto& e : bal.h.levels[l]) dst.push_back(e);
            }
            int chosen = 0, best_freq = 0;
            for (const auto& [l, f] : freq)
                if (f > best_freq) {
                    best_freq = f;
                    chosen = l;
                }
            if (chosen != 0) {
                auto vertices = template_vertices(t, g.m);
                for (const auto& r : enumerate_containers(by_uniformity[chosen], vertices, tau))
                    children.push_back(template_from_vertices(n, r.container));
            }
            bool shrank = !children.empty();
            for (const Template& c : children)
                if (c == t) {
                    shrank = false;
                    break;
                }
            if (!shrank) {
                // Force-split on the first forbidden chain inside t: some
                // vertex of the edge is outside any independent set.
                auto edges = supersat::forbidden_chains_in(t, g);
                if (edges.empty()) {
                    // t is a valid template; it cannot be split further.
                    run.slack = std::max(run.slack, w - run.threshold);
                    finals.push_back(t);
                    continue;
                }
                children.clear();
                for (const auto& v : edges.front()) {
                    Template c = t;
                    c.sets[v.elem] &= ~patterns::singleton(v.color);
                    children.push_back(std::move(c));
                }
                ++log.forced_splits;
            }
            any_split = true;
            for (Template& c : children)
                if (seen.insert(c.sets).second) next.push_back(std::move(c));
        }
        log.container_count = next.size() + finals.size();
        run.rounds.push_back(log);
        frontier = std::move(next);
        if (!any_split && !frontier.empty())
            throw counterexample_error("branching_run: round made no progress");
    }

    // Deduplicate finals and extend with all colors outside the band.
    std::set<std::vector<patterns::ColorSet>> uniq;
    double outside = 0.0;
    double log_full = std::log1p(beta.sum());
    for (Mask x = 0; x < (Mask(1) << n); ++x) {
        int r = lattice::rank(x);
        if (r < run.band.lo || r > run.band.hi) outside += log_full;
    }
    double bound = 0.0;
    for (const Template& t : finals) {
        if (!uniq.insert(t.sets).second) continue;
        double w = band_omega(t, beta);
        run.final_band_omegas.push_back(w);
        Template ext = t;
        for (Mask x = 0; x < (Mask(1) << n); ++x) {
            int r = lattice::rank(x);
            if (r < run.band.lo || r > run.band.hi) ext.sets[x] = patterns::full_set(g.m);
        }
        run.final_containers.push_back(std::move(ext));
        bound += std::exp(w + outside);
    }
    run.union_bound = bound;
    return run;
}

namespace {

bool covered(const std::vector<Template>& containers, const std::vector<Mask>& elems,
             const std::vector<int>& colors) {
    for (const Template& t : containers) {
        bool ok = true;
        for (std::size_t i = 0; i < elems.size() && ok; ++i)
            if (colors[i] != 0 && !patterns::has_color(t.sets[elems[i]], colors[i])) ok = false;
        if (ok) return true;
    }
    return false;
}

} // namespace

bool verify_coverage(const std::vector<Template>& containers, int n, const ForbiddenFamily& g,
                     std::optional<Band> band, std::uint64_t budget) {
    std::vector<Mask> elems;
    for (Mask x : lattice::canonical_elements(n)) {
        int r = lattice::rank(x);
        if (!band || (r >= band->lo && r <= band->hi)) elems.push_back(x);
    }
    double total = std::pow(double(g.m + 1), double(elems.size()));
    if (total > double(budget))
        throw budget_error("verify_coverage: exhaustive budget exceeded");

    std::vector<int> colors(elems.size(), 0);
    Template assignment = Template::empty(n);
    for (;;) {
        // Build the colored subset and check validity, then coverage.
        for (std::size_t i = 0; i < elems.size(); ++i)
            assignment.sets[elems[i]] =
                colors[i] == 0 ? 0 : patterns::singleton(colors[i]);
        if (templates::template_is_valid(assignment, g) &&
            !covered(containers, elems, colors))
            return false;
        std::size_t i = 0;
        while (i < elems.size() && colors[i] == g.m) colors[i++] = 0;
        if (i == elems.size()) break;
        ++colors[i];
    }
    return true;
}

} // namespace chainavoid::containers
