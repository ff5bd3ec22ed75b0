#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chainavoid/containers.hpp"
#include "chainavoid/critical.hpp"
#include "chainavoid/enumeration.hpp"
#include "chainavoid/supersat.hpp"

namespace py = pybind11;
using namespace chainavoid;

namespace {

patterns::ForbiddenFamily make_family(int m, const std::vector<std::vector<int>>& pats) {
    std::vector<patterns::ChainPattern> cps;
    for (const auto& p : pats) cps.push_back(patterns::ChainPattern{p});
    return patterns::ForbiddenFamily::create(m, std::move(cps));
}

templates::WeightVector make_weights(int m, const std::optional<std::vector<double>>& beta) {
    return beta ? templates::WeightVector::create(*beta) : templates::WeightVector::ones(m);
}

std::vector<std::vector<int>> profile_to_colors(const templates::ChainProfile& prof, int m) {
    std::vector<std::vector<int>> out;
    for (patterns::ColorSet s : prof.sets) {
        std::vector<int> colors;
        for (int c = 1; c <= m; ++c)
            if (patterns::has_color(s, c)) colors.push_back(c);
        out.push_back(std::move(colors));
    }
    return out;
}

templates::ChainProfile profile_from_colors(const std::vector<std::vector<int>>& layers) {
    templates::ChainProfile prof;
    for (const auto& layer : layers) {
        patterns::ColorSet s = 0;
        for (int c : layer) s |= patterns::singleton(c);
        prof.sets.push_back(s);
    }
    return prof;
}

} // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "exact computation for colored chain avoidance in the Boolean lattice";

    py::register_exception<precondition_error>(mod, "PreconditionError");
    py::register_exception<budget_error>(mod, "BudgetError");
    py::register_exception<counterexample_error>(mod, "CounterexampleError");

    mod.def(
        "sparsity",
        [](int m, const std::vector<std::vector<int>>& pats) {
            auto rep = patterns::sparsity_report(make_family(m, pats));
            return py::make_tuple(rep.is_sparse, rep.missing_colors);
        },
        py::arg("m"), py::arg("patterns"),
        "(is_sparse, missing_colors) for a forbidden family");

    mod.def(
        "big_l",
        [](int m, const std::vector<std::vector<int>>& pats) {
            return patterns::big_L(make_family(m, pats));
        },
        py::arg("m"), py::arg("patterns"),
        "smallest L such that no valid colored subset contains an L-chain");

    mod.def(
        "omega_crit",
        [](int m, const std::vector<std::vector<int>>& pats,
           const std::optional<std::vector<double>>& beta) {
            auto g = make_family(m, pats);
            auto res = critical::omega_crit(g, make_weights(m, beta));
            std::vector<std::vector<std::vector<int>>> profs;
            for (const auto& p : res.optimal_profiles) profs.push_back(profile_to_colors(p, m));
            return py::make_tuple(res.omega_crit, profs, res.truncated);
        },
        py::arg("m"), py::arg("patterns"), py::arg("beta") = std::nullopt,
        "(omega_crit, optimal_profiles, truncated)");

    mod.def(
        "expectation_exponent",
        [](int m, const std::vector<std::vector<int>>& pats, const std::vector<double>& p) {
            return critical::expectation_exponent(make_family(m, pats),
                                                  templates::WeightVector::create(p));
        },
        py::arg("m"), py::arg("patterns"), py::arg("p"));

    mod.def(
        "mu_valid",
        [](int n, int m, const std::vector<std::vector<int>>& pats,
           const std::optional<std::vector<double>>& beta,
           const std::optional<std::pair<int, int>>& band) -> py::object {
            auto g = make_family(m, pats);
            std::optional<enumeration::Band> b;
            if (band) b = enumeration::Band{band->first, band->second};
            auto res = enumeration::mu_valid(n, g, make_weights(m, beta), b);
            if (res.is_exact) return py::int_(py::str(res.exact.str()));
            return py::float_(res.mu);
        },
        py::arg("n"), py::arg("m"), py::arg("patterns"), py::arg("beta") = std::nullopt,
        py::arg("band") = std::nullopt,
        "exact int for unit weights, weighted measure otherwise");

    mod.def(
        "best_anchor",
        [](const std::vector<std::vector<int>>& profile, int n,
           const std::optional<std::vector<double>>& beta, int m) {
            auto res = templates::best_anchor(profile_from_colors(profile), n,
                                              make_weights(m, beta));
            return py::make_tuple(res.anchor, res.omega_value);
        },
        py::arg("profile"), py::arg("n"), py::arg("beta") = std::nullopt, py::arg("m") = 1,
        "(anchor, omega) of the heaviest layered placement");

    mod.def(
        "layered_omega",
        [](const std::vector<std::vector<int>>& profile, int n, int anchor,
           const std::optional<std::vector<double>>& beta, int m) {
            auto t = templates::layered_template(profile_from_colors(profile), n, anchor);
            return templates::omega(t, make_weights(m, beta));
        },
        py::arg("profile"), py::arg("n"), py::arg("anchor"), py::arg("beta") = std::nullopt,
        py::arg("m") = 1);

    mod.def(
        "supersat_constants",
        [](int m, const std::vector<std::vector<int>>& pats,
           const std::optional<std::vector<double>>& beta, int n) {
            auto c = supersat::constants(make_family(m, pats), make_weights(m, beta), n);
            py::dict d;
            d["C1"] = c.C1;
            d["C2"] = c.C2;
            d["C3"] = c.C3;
            d["C4"] = c.C4;
            d["Q"] = c.Q;
            return d;
        },
        py::arg("m"), py::arg("patterns"), py::arg("beta") = std::nullopt, py::arg("n") = 0);

    mod.def(
        "containers_union_bound",
        [](int n, int m, const std::vector<std::vector<int>>& pats, double alpha, double delta,
           double tau, const std::optional<std::vector<double>>& beta) {
            auto g = make_family(m, pats);
            auto run = containers::branching_run(n, g, make_weights(m, beta), alpha, delta, tau);
            bool covered = containers::verify_coverage(run.final_containers, n, g);
            return py::make_tuple(run.union_bound, run.final_containers.size(), covered);
        },
        py::arg("n"), py::arg("m"), py::arg("patterns"), py::arg("alpha"), py::arg("delta"),
        py::arg("tau"), py::arg("beta") = std::nullopt,
        "(union_bound, container_count, covered) for the branching process");
}
