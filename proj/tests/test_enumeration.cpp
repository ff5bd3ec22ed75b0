#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "chainavoid/enumeration.hpp"

using namespace chainavoid;
using namespace chainavoid::enumeration;
using patterns::ChainPattern;
using patterns::singleton;
using templates::WeightVector;

namespace {

// Unpruned reference count: enumerate every coloring of P([n]) directly and
// filter with the subsequence oracle.
double brute_mu(int n, const ForbiddenFamily& g, const WeightVector& beta) {
    auto elems = lattice::canonical_elements(n);
    std::vector<int> colors(elems.size(), 0);
    double total = 0.0;
    for (;;) {
        // validity via every chain inside the colored support
        Template t = Template::empty(n);
        double w = 1.0;
        for (std::size_t i = 0; i < elems.size(); ++i)
            if (colors[i] != 0) {
                t.sets[elems[i]] = singleton(colors[i]);
                w *= beta.beta[std::size_t(colors[i] - 1)];
            }
        if (templates::template_is_valid(t, g)) total += w;
        std::size_t i = 0;
        while (i < elems.size() && colors[i] == g.m) colors[i++] = 0;
        if (i == elems.size()) break;
        ++colors[i];
    }
    return total;
}

} // namespace

TEST_CASE("antichain counts of the Boolean lattice") {
    auto g = patterns::mono_chain_family(2);
    auto ones = WeightVector::ones(1);
    const char* expect[] = {"2", "3", "6", "20", "168"};
    for (int n = 0; n <= 4; ++n) {
        auto res = mu_valid(n, g, ones);
        REQUIRE(res.is_exact);
        CHECK(res.exact.str() == expect[n]);
        CHECK(res.mu == doctest::Approx(std::stod(expect[n])).epsilon(1e-12));
    }
}

TEST_CASE("n=0 counts one empty subset plus each color") {
    auto g4 = patterns::four_color_example();
    auto beta = WeightVector::create({0.5, 1.0, 2.0, 0.25});
    auto res = mu_valid(0, g4, beta);
    CHECK(res.mu == doctest::Approx(1.0 + beta.sum()).epsilon(1e-12));
}

TEST_CASE("pruned search equals unpruned enumeration") {
    std::mt19937_64 rng(23);
    auto all_pairs = ForbiddenFamily::create(
        2, {ChainPattern{{1, 1}}, ChainPattern{{2, 2}}, ChainPattern{{1, 2}},
            ChainPattern{{2, 1}}});
    auto ones2 = WeightVector::ones(2);
    CHECK(mu_valid(2, all_pairs, ones2).mu == doctest::Approx(brute_mu(2, all_pairs, ones2)));

    auto g2 = patterns::mono_chain_family(2);
    auto g3 = patterns::mono_chain_family(3);
    for (int n = 0; n <= 3; ++n) {
        auto ones = WeightVector::ones(1);
        CHECK(mu_valid(n, g2, ones).mu == doctest::Approx(brute_mu(n, g2, ones)));
        CHECK(mu_valid(n, g3, ones).mu == doctest::Approx(brute_mu(n, g3, ones)));
    }
    auto beta = WeightVector::create({0.5});
    CHECK(mu_valid(2, g2, beta).mu == doctest::Approx(brute_mu(2, g2, beta)).epsilon(1e-12));
    CHECK(mu_valid(2, g2, beta).mu == doctest::Approx(3.25).epsilon(1e-12));
}

TEST_CASE("node cap raises a budget error") {
    auto g = patterns::mono_chain_family(2);
    CHECK_THROWS_AS(mu_valid(4, g, WeightVector::ones(1), std::nullopt, 100), budget_error);
}

TEST_CASE("band restriction bounds the full count") {
    auto g = patterns::mono_chain_family(2);
    auto ones = WeightVector::ones(1);
    for (int n = 2; n <= 4; ++n) {
        int lo = n / 3 + 1, hi = (2 * n - 1) / 3;
        if (lo > hi) { lo = n / 2; hi = n / 2; }
        auto banded = mu_valid(n, g, ones, Band{lo, hi});
        double outside = 0.0;
        for (auto x : lattice::canonical_elements(n)) {
            int r = lattice::rank(x);
            if (r < lo || r > hi) outside += std::log1p(ones.sum());
        }
        auto full = mu_valid(n, g, ones);
        CHECK(banded.mu * std::exp(outside) >= full.mu - 1e-9);
    }
}

TEST_CASE("contained-measure enumeration") {
    auto ones = WeightVector::ones(2);
    CHECK(mu_contained_enumerated(Template::empty(3), ones) == doctest::Approx(1.0));

    Template t = Template::empty(2);
    t.sets[1] = singleton(1) | singleton(2);
    CHECK(mu_contained_enumerated(t, WeightVector::create({2.0, 3.0})) == doctest::Approx(6.0));

    std::mt19937_64 rng(29);
    auto beta = WeightVector::create({0.3, 0.7});
    for (int trial = 0; trial < 20; ++trial) {
        Template r = Template::empty(3);
        for (int i = 0; i < 4; ++i)
            r.sets[rng() % 8] = patterns::ColorSet(1 + rng() % 3);
        CHECK(mu_contained_enumerated(r, beta) ==
              doctest::Approx(templates::mu_contained_closed_form(r, beta)).epsilon(1e-9));
    }
}

TEST_CASE("expected count identity at tiny n") {
    auto g = patterns::mono_chain_family(2);
    auto p = WeightVector::create({0.5});
    CHECK(expected_valid_count(1, g, p).mu == doctest::Approx(2.0).epsilon(1e-12));

    auto tiny = expected_valid_count(2, g, WeightVector::create({1e-6}));
    CHECK(tiny.mu == doctest::Approx(1.0).epsilon(1e-4));

    CHECK_THROWS_AS(expected_valid_count(1, g, WeightVector::create({1.5})),
                    precondition_error);
}

TEST_CASE("monte carlo agrees with the exact expectation") {
    auto g = patterns::mono_chain_family(2);
    auto p = WeightVector::create({0.5});
    lattice::Rng rng(4242);
    auto mc = expected_valid_count_monte_carlo(2, g, p, 20000, rng);
    double exact = expected_valid_count(2, g, p).mu;
    CHECK(std::fabs(mc.mean - exact) <= 3.0 * mc.std_error);
}

TEST_CASE("exponent estimate stays above the critical value") {
    auto g = patterns::mono_chain_family(2);
    auto ones = WeightVector::ones(1);
    double last = 0.0;
    for (int n = 2; n <= 4; ++n) {
        double est = std::log(mu_valid(n, g, ones).mu) / lattice::binomial(n, n / 2);
        CHECK(est > std::log(2));
        last = est;
        MESSAGE("n=", n, " exponent estimate ", est);
    }
    CHECK(last == doctest::Approx(std::log(168.0) / 6.0).epsilon(1e-12));
}
