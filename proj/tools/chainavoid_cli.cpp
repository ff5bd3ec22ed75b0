#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "chainavoid/config.hpp"
#include "chainavoid/containers.hpp"
#include "chainavoid/critical.hpp"
#include "chainavoid/enumeration.hpp"
#include "chainavoid/supersat.hpp"

namespace {

using namespace chainavoid;
using config::Json;
using config::ProblemConfig;

std::string fmt_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

Json profile_to_json(const templates::ChainProfile& profile, int m) {
    Json layers = Json::array();
    for (patterns::ColorSet s : profile.sets) {
        std::vector<int> colors;
        for (int c = 1; c <= m; ++c)
            if (patterns::has_color(s, c)) colors.push_back(c);
        layers.push_back(colors);
    }
    return layers;
}

int require_n(const ProblemConfig& cfg) {
    if (!cfg.n) throw precondition_error("n: required for this command");
    return *cfg.n;
}

// The session template: the full band template when a band is configured,
// else an explicit layered profile, else the extremal layered template from
// the critical profile.
templates::Template resolve_template(const ProblemConfig& cfg, int n) {
    auto g = cfg.family();
    auto beta = cfg.weights();
    if (cfg.band && !cfg.template_spec)
        return templates::Template::full_band(n, cfg.m, cfg.band->lo, cfg.band->hi);
    templates::ChainProfile profile;
    if (cfg.template_spec) {
        profile.sets = cfg.template_spec->profile;
    } else {
        auto crit = critical::omega_crit(g, beta);
        if (crit.optimal_profiles.empty())
            throw precondition_error("template: no profile configured and no optimal profile");
        profile = crit.optimal_profiles.front();
    }
    int anchor = cfg.template_spec && cfg.template_spec->anchor
                     ? *cfg.template_spec->anchor
                     : templates::best_anchor(profile, n, beta).anchor;
    return templates::layered_template(profile, n, anchor);
}

std::optional<enumeration::Band> config_band(const ProblemConfig& cfg) {
    if (cfg.band) return enumeration::Band{cfg.band->lo, cfg.band->hi};
    return std::nullopt;
}

Json template_to_json(const templates::Template& t, int m) {
    Json arr = Json::array();
    for (lattice::Mask x : t.support()) {
        std::vector<int> colors;
        for (int c = 1; c <= m; ++c)
            if (patterns::has_color(t.sets[x], c)) colors.push_back(c);
        arr.push_back(Json::array({x, colors}));
    }
    return arr;
}

templates::Template template_from_json(int n, const Json& arr) {
    templates::Template t = templates::Template::empty(n);
    for (const auto& entry : arr) {
        lattice::Mask x = entry[0].get<lattice::Mask>();
        for (const auto& c : entry[1]) t.sets[x] |= patterns::singleton(c.get<int>());
    }
    return t;
}

Json run_check(const ProblemConfig& cfg) {
    auto rep = patterns::sparsity_report(cfg.family());
    std::cout << "sparse: " << (rep.is_sparse ? "yes" : "no") << "\n";
    for (int c : rep.missing_colors)
        std::cout << "missing monochromatic chain for color " << c << "\n";
    Json res;
    res["is_sparse"] = rep.is_sparse;
    res["missing_colors"] = rep.missing_colors;
    return res;
}

Json run_lcg(const ProblemConfig& cfg) {
    auto g = cfg.family();
    int longest = patterns::longest_valid_length(g);
    std::cout << "longest valid chain length: " << longest << "\nL: " << longest + 1 << "\n";
    Json res;
    res["longest_valid_length"] = longest;
    res["L"] = longest + 1;
    return res;
}

Json run_omega_crit(const ProblemConfig& cfg) {
    auto g = cfg.family();
    auto crit = critical::omega_crit(g, cfg.weights());
    std::cout << "omega_crit: " << fmt_real(crit.omega_crit) << "\n";
    for (const auto& p : crit.optimal_profiles)
        std::cout << "optimal profile: " << profile_to_json(p, g.m).dump() << "\n";
    Json res;
    res["omega_crit"] = config::report_real(crit.omega_crit);
    res["L"] = crit.L;
    Json profs = Json::array();
    for (const auto& p : crit.optimal_profiles) profs.push_back(profile_to_json(p, g.m));
    res["optimal_profiles"] = profs;
    res["truncated"] = crit.truncated;
    return res;
}

Json run_extremal(const ProblemConfig& cfg) {
    int n = require_n(cfg);
    auto g = cfg.family();
    auto beta = cfg.weights();
    auto crit = critical::omega_crit(g, beta);
    Json res;
    Json entries = Json::array();
    for (const auto& profile : crit.optimal_profiles) {
        auto anchor = templates::best_anchor(profile, n, beta);
        auto t = templates::layered_template(profile, n, anchor.anchor);
        Json e;
        e["profile"] = profile_to_json(profile, g.m);
        e["anchor"] = anchor.anchor;
        e["omega"] = config::report_real(anchor.omega_value);
        e["mu_contained"] = config::report_real(templates::mu_contained_closed_form(t, beta));
        entries.push_back(e);
        std::cout << "profile " << profile_to_json(profile, g.m).dump() << " anchor "
                  << anchor.anchor << " omega " << fmt_real(anchor.omega_value) << "\n";
    }
    res["omega_crit"] = config::report_real(crit.omega_crit);
    res["extremal_templates"] = entries;
    return res;
}

Json run_count(const ProblemConfig& cfg) {
    int n = require_n(cfg);
    auto g = cfg.family();
    auto beta = cfg.weights();
    auto cr = enumeration::mu_valid(n, g, beta, config_band(cfg));
    Json res;
    res["nodes"] = cr.nodes;
    res["pruned"] = cr.pruned;
    if (cr.is_exact) {
        std::cout << "count: " << cr.exact.str() << "\n";
        res["count"] = cr.exact.str();
    } else {
        std::cout << "mu: " << fmt_real(cr.mu) << "\n";
    }
    res["mu"] = config::report_real(cr.mu);
    double mid = lattice::binomial(n, n / 2);
    res["exponent_estimate"] = config::report_real(std::log(cr.mu) / mid);
    return res;
}

Json run_expect(const ProblemConfig& cfg) {
    auto g = cfg.family();
    auto p = cfg.probabilities();
    double exponent = critical::expectation_exponent(g, p);
    std::cout << "expectation exponent: " << fmt_real(exponent) << "\n";
    Json res;
    res["exponent"] = config::report_real(exponent);
    if (cfg.n) {
        auto cr = enumeration::expected_valid_count(*cfg.n, g, p, config_band(cfg));
        std::cout << "exact expected count at n=" << *cfg.n << ": " << fmt_real(cr.mu) << "\n";
        res["expected_count"] = config::report_real(cr.mu);
    }
    return res;
}

Json run_sample(const ProblemConfig& cfg) {
    int n = require_n(cfg);
    auto g = cfg.family();
    auto p = cfg.probabilities();
    std::uint64_t samples = cfg.samples.value_or(10000);
    lattice::Rng rng(cfg.seed);
    auto mc = enumeration::expected_valid_count_monte_carlo(n, g, p, samples, rng);
    auto exact = enumeration::expected_valid_count(n, g, p);
    double sigmas = mc.std_error > 0.0 ? std::fabs(mc.mean - exact.mu) / mc.std_error : 0.0;
    std::cout << "monte carlo mean: " << fmt_real(mc.mean) << " +- " << fmt_real(mc.std_error)
              << " (exact " << fmt_real(exact.mu) << ", " << fmt_real(sigmas) << " sigma)\n";
    Json res;
    res["mean"] = config::report_real(mc.mean);
    res["std_error"] = config::report_real(mc.std_error);
    res["samples"] = mc.samples;
    res["exact"] = config::report_real(exact.mu);
    res["sigmas"] = config::report_real(sigmas);
    return res;
}

Json run_supersat(const ProblemConfig& cfg) {
    int n = require_n(cfg);
    auto g = cfg.family();
    auto beta = cfg.weights();
    auto consts = supersat::constants(g, beta, n);
    Json res;
    res["C1"] = config::report_real(consts.C1);
    res["C2"] = config::report_real(consts.C2);
    res["C3"] = config::report_real(consts.C3);
    res["C4"] = config::report_real(consts.C4);
    res["Q"] = config::report_real(consts.Q);
    std::cout << "C1=" << fmt_real(consts.C1) << " C2=" << fmt_real(consts.C2)
              << " C3=" << fmt_real(consts.C3) << " C4=" << fmt_real(consts.C4)
              << " Q=" << fmt_real(consts.Q) << "\n";

    auto t = resolve_template(cfg, n);
    double crit = critical::omega_crit(g, beta).omega_crit;
    std::uint64_t samples = cfg.samples.value_or(1000);
    lattice::Rng rng(cfg.seed);
    double worst = -1e300;
    for (std::uint64_t i = 0; i < samples; ++i) {
        auto c = lattice::random_maximal_chain(n, rng);
        auto xy = supersat::chain_X_Y(t, g, beta, c);
        worst = std::max(worst, xy.x - consts.C3 * double(xy.y));
    }
    res["pointwise_max"] = config::report_real(worst);
    res["pointwise_bound"] = config::report_real(crit);
    res["pointwise_ok"] = worst <= crit + 1e-9;
    std::cout << "max X - C3 Y over " << samples << " chains: " << fmt_real(worst)
              << " (bound " << fmt_real(crit) << ")\n";

    if (cfg.alpha) {
        auto rep = supersat::check_averagelem(t, g, beta, *cfg.alpha, samples, rng);
        res["witness"] = rep.witness;
        res["witness_ey"] = config::report_real(rep.witness_ey);
        std::cout << "witness x=" << rep.witness << " E Y^x=" << fmt_real(rep.witness_ey)
                  << " >= C1*alpha=" << fmt_real(consts.C1 * *cfg.alpha) << "\n";
    }
    return res;
}

Json run_balanced(const ProblemConfig& cfg, const std::string& csv_path) {
    int n = require_n(cfg);
    auto g = cfg.family();
    auto beta = cfg.weights();
    double delta = cfg.delta.value_or(0.5);
    auto g_aug = patterns::augment_with_all_chains(g);
    auto t = resolve_template(cfg, n);
    auto bal = supersat::build_balanced(t, g_aug, beta, delta);
    Json res;
    res["reached_target"] = bal.reached_target;
    res["chosen_uniformity"] = bal.chosen_l;
    res["edges_added"] = bal.edges_added;
    res["candidates_seen"] = bal.candidates_seen;
    Json levels = Json::array();
    std::string csv = "uniformity,j,max_codegree,cap\n";
    for (const auto& [l, edges] : bal.h.levels) {
        Json lv;
        lv["uniformity"] = l;
        lv["edges"] = edges.size();
        Json degs = Json::array();
        for (int j = 1; j <= l; ++j) {
            double cap = std::pow(delta * n, double(l - j));
            std::uint64_t d = bal.h.max_codegree(l, j);
            degs.push_back(Json{{"j", j},
                                {"max_codegree", d},
                                {"cap", config::report_real(cap)}});
            csv += std::to_string(l) + "," + std::to_string(j) + "," + std::to_string(d) + "," +
                   fmt_real(cap) + "\n";
        }
        lv["codegrees"] = degs;
        lv["saturated_singletons"] = bal.saturated_singletons[l].size();
        levels.push_back(lv);
        std::cout << "H_" << l << ": " << edges.size() << " edges\n";
    }
    res["levels"] = levels;
    if (!csv_path.empty()) {
        std::ofstream out(csv_path, std::ios::binary);
        out << csv;
    }
    std::cout << (bal.reached_target ? "target reached" : "shortfall") << "\n";
    return res;
}

Json run_containers(const ProblemConfig& cfg) {
    int n = require_n(cfg);
    auto g = cfg.family();
    auto beta = cfg.weights();
    double alpha = cfg.alpha.value_or(0.5);
    double delta = cfg.delta.value_or(0.5);
    double tau = cfg.tau.value_or(n > 0 ? 1.0 / n : 1.0);
    auto run = containers::branching_run(n, g, beta, alpha, delta, tau);
    Json res;
    res["n"] = n;
    res["threshold"] = config::report_real(run.threshold);
    res["band"] = std::vector<int>{run.band.lo, run.band.hi};
    res["union_bound"] = config::report_real(run.union_bound);
    res["slack"] = config::report_real(run.slack);
    Json rounds = Json::array();
    for (const auto& r : run.rounds) {
        rounds.push_back(Json{{"round", r.round},
                              {"frontier", r.frontier_size},
                              {"max_omega", config::report_real(r.max_omega)},
                              {"containers", r.container_count},
                              {"forced_splits", r.forced_splits}});
        std::cout << "round " << r.round << ": frontier " << r.frontier_size << " max omega "
                  << fmt_real(r.max_omega) << " forced splits " << r.forced_splits << "\n";
    }
    res["rounds"] = rounds;
    Json conts = Json::array();
    for (const auto& t : run.final_containers) conts.push_back(template_to_json(t, g.m));
    res["containers"] = conts;
    std::cout << run.final_containers.size() << " containers, union bound "
              << fmt_real(run.union_bound) << "\n";
    return res;
}

int run_verify(const std::string& report_path, const std::string& out_path) {
    std::ifstream in(report_path);
    if (!in) throw precondition_error("verify: cannot open report " + report_path);
    Json rep = Json::parse(in);
    if (rep.value("schema", "") != config::kReportSchema || rep.value("command", "") != "containers")
        throw precondition_error("verify: input must be a containers report");
    ProblemConfig cfg = config::parse_config(rep["config"]);
    auto g = cfg.family();
    int n = rep["results"]["n"].get<int>();
    std::vector<templates::Template> conts;
    for (const auto& c : rep["results"]["containers"])
        conts.push_back(template_from_json(n, c));
    bool ok = containers::verify_coverage(conts, n, g);
    double bound = rep["results"]["union_bound"].get<double>();
    auto mv = enumeration::mu_valid(n, g, cfg.weights());
    bool bound_ok = bound >= mv.mu * (1.0 - 1e-9);
    std::cout << "coverage: " << (ok ? "complete" : "INCOMPLETE") << "\n";
    std::cout << "union bound " << fmt_real(bound) << " vs mu " << fmt_real(mv.mu) << ": "
              << (bound_ok ? "ok" : "VIOLATED") << "\n";
    if (!out_path.empty()) {
        Json res;
        res["covered"] = ok;
        res["union_bound"] = config::report_real(bound);
        res["mu_valid"] = config::report_real(mv.mu);
        res["union_bound_ok"] = bound_ok;
        config::write_report(config::make_report("verify", cfg, res), out_path);
    }
    return ok && bound_ok ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"colored chain-avoidance toolkit for the Boolean lattice"};
    app.require_subcommand(1);

    std::string config_path, out_path, csv_path;
    std::uint64_t seed_override = 0;
    bool seed_set = false;
    int n_override = -1;
    double alpha = -1, delta = -1, tau = -1;
    std::int64_t samples = -1;
    std::string band_arg;
    int threads = 0;
    bool exact_mode = false, sample_mode = false;

    app.add_option("--config", config_path, "problem configuration (JSON)");
    app.add_option("--out", out_path, "machine-readable report output path");
    app.add_option("--csv", csv_path, "CSV output for codegree tables");
    app.add_option("--seed", seed_override, "RNG seed")->each([&](const std::string&) {
        seed_set = true;
    });
    app.add_option("--n", n_override, "ground set size");
    app.add_option("--alpha", alpha, "weight surplus parameter");
    app.add_option("--delta", delta, "codegree cap parameter");
    app.add_option("--tau", tau, "fingerprint density parameter");
    app.add_option("--samples", samples, "Monte Carlo sample count");
    app.add_option("--band", band_arg, "rank band LO,HI");
    app.add_option("--threads", threads, "worker cap (computations are single-threaded)");
    app.add_flag("--exact", exact_mode, "force exact enumeration mode");
    app.add_flag("--sample", sample_mode, "force sampling mode");

    for (const char* name : {"check", "lcg", "omega-crit", "extremal", "count", "expect",
                             "sample", "supersat", "balanced", "containers", "verify"})
        app.add_subcommand(name)->fallthrough();

    CLI11_PARSE(app, argc, argv);
    std::string cmd = app.get_subcommands().front()->get_name();

    try {
        if (cmd == "verify") {
            if (config_path.empty()) throw precondition_error("verify: --config report required");
            return run_verify(config_path, out_path);
        }
        if (config_path.empty()) throw precondition_error("--config is required");
        ProblemConfig cfg = config::load_config(config_path);
        if (seed_set) cfg.seed = seed_override;
        if (n_override >= 0) cfg.n = n_override;
        if (alpha >= 0) cfg.alpha = alpha;
        if (delta >= 0) cfg.delta = delta;
        if (tau >= 0) cfg.tau = tau;
        if (samples >= 0) cfg.samples = static_cast<std::uint64_t>(samples);
        if (!band_arg.empty()) {
            auto comma = band_arg.find(',');
            if (comma == std::string::npos) throw precondition_error("--band expects LO,HI");
            cfg.band = enumeration::Band{std::stoi(band_arg.substr(0, comma)),
                                         std::stoi(band_arg.substr(comma + 1))};
        }

        Json results;
        if (cmd == "check")
            results = run_check(cfg);
        else if (cmd == "lcg")
            results = run_lcg(cfg);
        else if (cmd == "omega-crit")
            results = run_omega_crit(cfg);
        else if (cmd == "extremal")
            results = run_extremal(cfg);
        else if (cmd == "count")
            results = run_count(cfg);
        else if (cmd == "expect")
            results = run_expect(cfg);
        else if (cmd == "sample")
            results = run_sample(cfg);
        else if (cmd == "supersat")
            results = run_supersat(cfg);
        else if (cmd == "balanced")
            results = run_balanced(cfg, csv_path);
        else if (cmd == "containers")
            results = run_containers(cfg);

        if (!out_path.empty())
            config::write_report(config::make_report(cmd, cfg, std::move(results)), out_path);
        return 0;
    } catch (const budget_error& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 2;
    } catch (const counterexample_error& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 3;
    } catch (const precondition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
