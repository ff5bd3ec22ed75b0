#pragma once

#include <optional>

#include "chainavoid/enumeration.hpp"
#include "chainavoid/supersat.hpp"

namespace chainavoid::containers {

using enumeration::Band;
using lattice::Mask;
using patterns::ForbiddenFamily;
using supersat::ColoredVertex;
using supersat::Edge;
using supersat::LeveledHypergraph;
using templates::Template;
using templates::WeightVector;

// All colored chains realizing patterns of g with support ranks in the band.
LeveledHypergraph ambient_hypergraph(int n, const ForbiddenFamily& g,
                                     std::optional<Band> band = std::nullopt,
                                     std::uint64_t edge_cap = 100'000'000);

struct ContainerStepResult {
    std::vector<ColoredVertex> fingerprint; // F, in selection order
    std::vector<ColoredVertex> container;   // C = A united with F, sorted
};

// Deterministic max-degree fingerprint algorithm for one uniformity.
// Throws when `independent` contains an edge of `edges`.
ContainerStepResult container_step(const std::vector<Edge>& edges,
                                   const std::vector<ColoredVertex>& vertices, double tau,
                                   const std::vector<ColoredVertex>& independent);

// All (F, C) pairs reachable by branching the selection on membership in the
// independent set; every independent set follows exactly one branch.
std::vector<ContainerStepResult> enumerate_containers(const std::vector<Edge>& edges,
                                                      const std::vector<ColoredVertex>& vertices,
                                                      double tau);

struct RoundLog {
    int round = 0;
    std::size_t frontier_size = 0;
    double max_omega = 0.0;
    std::size_t container_count = 0;
    std::size_t forced_splits = 0;
};

struct BranchingRun {
    std::vector<Template> final_containers; // extended to all of P([n])
    std::vector<double> final_band_omegas;  // omega of each band restriction
    std::vector<RoundLog> rounds;
    double threshold = 0.0;                 // (omega_crit + alpha) * binom(n, n/2)
    double union_bound = 0.0;               // sum over finals of e^omega(extended)
    double slack = 0.0;                     // max band omega excess over threshold
    Band band{};
    double alpha = 0.0, delta = 0.0, tau = 0.0;
};

// Iterative container process: start from the full band template, split every
// frontier template above the omega threshold via balanced supersaturation
// plus the container step, fall back to an edge split when a round does not
// shrink. Final containers are extended with every color outside the band.
BranchingRun branching_run(int n, const ForbiddenFamily& g, const WeightVector& beta,
                           double alpha, double delta, double tau);

// True iff every validly colored subset of the checked elements (band if
// given, else all of P([n])) is contained in some container.
bool verify_coverage(const std::vector<Template>& containers, int n, const ForbiddenFamily& g,
                     std::optional<Band> band = std::nullopt,
                     std::uint64_t budget = 1'000'000);

} // namespace chainavoid::containers
