#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "chainavoid/enumeration.hpp"
#include "chainavoid/templates.hpp"

using namespace chainavoid;
using namespace chainavoid::templates;
using patterns::ChainPattern;
using patterns::ForbiddenFamily;
using patterns::singleton;

namespace {

ForbiddenFamily random_sparse_family(std::mt19937_64& rng, int m) {
    std::vector<ChainPattern> pats;
    for (int c = 1; c <= m; ++c) {
        int len = 2 + int(rng() % 2);
        pats.push_back(ChainPattern{std::vector<int>(std::size_t(len), c)});
    }
    return ForbiddenFamily::create(m, std::move(pats));
}

Template random_template(std::mt19937_64& rng, int n, int m, int support_target) {
    Template t = Template::empty(n);
    for (int i = 0; i < support_target; ++i) {
        lattice::Mask x = lattice::Mask(rng() % (std::uint64_t(1) << n));
        t.sets[x] = patterns::ColorSet(1 + rng() % ((std::uint64_t(1) << m) - 1));
    }
    return t;
}

} // namespace

TEST_CASE("weighted sizes") {
    auto b1 = WeightVector::ones(2);
    CHECK(weighted_size(0, b1) == 0.0);
    CHECK(weighted_size(singleton(1) | singleton(2), b1) == 2.0);
    auto b2 = WeightVector::create({0.5, 0.5, 0.25, 0.25});
    CHECK(weighted_size(singleton(3) | singleton(4), b2) == doctest::Approx(0.5));
    CHECK_THROWS_WITH(WeightVector::create({1.0, 0.0}), "weights must be positive");
}

TEST_CASE("omega of simple templates") {
    auto ones1 = WeightVector::ones(1);
    CHECK(omega(Template::empty(2), ones1) == 0.0);

    Template t = Template::empty(2);
    t.sets[1] = singleton(1);
    t.sets[2] = singleton(1);
    CHECK(omega(t, ones1) == doctest::Approx(2 * std::log(2)).epsilon(1e-12));

    auto ones4 = WeightVector::ones(4);
    Template u = Template::empty(2);
    u.sets[1] = singleton(1);
    u.sets[2] = singleton(1);
    u.sets[0] = singleton(3) | singleton(4);
    CHECK(omega(u, ones4) == doctest::Approx(2 * std::log(2) + std::log(3)).epsilon(1e-12));
}

TEST_CASE("template validity: antichain vs chain") {
    auto g = patterns::mono_chain_family(2);
    Template anti = Template::empty(2);
    anti.sets[1] = singleton(1);
    anti.sets[2] = singleton(1);
    CHECK(template_is_valid(anti, g));

    Template chain = Template::empty(2);
    chain.sets[0] = singleton(1);
    chain.sets[1] = singleton(1);
    CHECK_FALSE(template_is_valid(chain, g));

    Template single = Template::empty(2);
    single.sets[3] = singleton(1);
    CHECK(template_is_valid(single, g));
}

TEST_CASE("template validity: 4-color layered example") {
    auto g = patterns::four_color_example();
    Template t = Template::empty(3);
    for (auto x : lattice::layer(3, 1)) t.sets[x] = singleton(3) | singleton(4);
    for (auto x : lattice::layer(3, 2)) t.sets[x] = singleton(1);
    CHECK(template_is_valid(t, g));
    for (auto x : lattice::layer(3, 2)) t.sets[x] |= singleton(2);
    CHECK_FALSE(template_is_valid(t, g)); // pattern (3,2) now realizable
}

TEST_CASE("validity DP matches the brute-force oracle") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + int(rng() % 4);
        int m = 1 + int(rng() % 3);
        auto g = random_sparse_family(rng, m);
        Template t = random_template(rng, n, m, 1 + int(rng() % 6));
        CHECK(template_is_valid(t, g) == template_validity_oracle(t, g));
    }
}

TEST_CASE("oracle rejects oversized inputs") {
    auto g = patterns::mono_chain_family(2);
    Template t = Template::full_band(4, 1, 0, 4);
    CHECK_THROWS_AS(template_validity_oracle(t, g), budget_error);
}

TEST_CASE("contained-measure closed form") {
    auto ones = WeightVector::ones(4);
    CHECK(mu_contained_closed_form(Template::empty(2), ones) == 1.0);
    Template t = Template::empty(2);
    t.sets[1] = singleton(1);
    t.sets[2] = singleton(3) | singleton(4);
    CHECK(mu_contained_closed_form(t, ones) == doctest::Approx(6.0));

    std::mt19937_64 rng(3);
    auto beta = WeightVector::create({0.3, 0.7});
    for (int trial = 0; trial < 20; ++trial) {
        Template r = random_template(rng, 3, 2, 4);
        double closed = mu_contained_closed_form(r, beta);
        double enumerated = enumeration::mu_contained_enumerated(r, beta);
        CHECK(closed == doctest::Approx(enumerated).epsilon(1e-9));
    }
}

TEST_CASE("color removal keeps validity and never raises omega") {
    std::mt19937_64 rng(31);
    auto beta = WeightVector::create({1.3, 0.8});
    auto g = random_sparse_family(rng, 2);
    for (int trial = 0; trial < 50; ++trial) {
        Template t = random_template(rng, 3, 2, 5);
        Template reduced = t;
        auto supp = t.support();
        if (supp.empty()) continue;
        lattice::Mask x = supp[rng() % supp.size()];
        int c = patterns::has_color(t.sets[x], 1) ? 1 : 2;
        reduced.sets[x] &= ~singleton(c);
        if (template_is_valid(t, g)) CHECK(template_is_valid(reduced, g));
        CHECK(omega(reduced, beta) <= omega(t, beta) + 1e-12);
    }
}

TEST_CASE("layered templates") {
    ChainProfile p1{{singleton(1)}};
    Template t = layered_template(p1, 2, 1);
    CHECK(t.sets[1] == singleton(1));
    CHECK(t.sets[2] == singleton(1));
    CHECK(t.sets[0] == 0);
    CHECK(t.sets[3] == 0);

    auto g4 = patterns::four_color_example();
    ChainProfile p4{{singleton(3) | singleton(4), singleton(1)}};
    Template t4 = layered_template(p4, 3, 1);
    CHECK(template_is_valid(t4, g4));
    for (auto x : lattice::layer(3, 1)) CHECK(t4.sets[x] == (singleton(3) | singleton(4)));
    for (auto x : lattice::layer(3, 2)) CHECK(t4.sets[x] == singleton(1));

    CHECK_THROWS_AS(layered_template(p4, 3, 3), precondition_error);

    // valid profiles stay valid at every anchor
    auto gm = patterns::mono_chain_family(3);
    ChainProfile pm{{singleton(1), singleton(1)}};
    for (int a = 0; a + 1 <= 4; ++a) CHECK(template_is_valid(layered_template(pm, 4, a), gm));
}

TEST_CASE("best anchor") {
    auto ones = WeightVector::ones(1);
    ChainProfile single{{singleton(1)}};
    for (int n = 1; n <= 8; ++n) CHECK(best_anchor(single, n, ones).anchor == n / 2);

    ChainProfile two{{singleton(1), singleton(1)}};
    auto r = best_anchor(two, 4, ones);
    CHECK(r.anchor == 1); // ties toward the smaller anchor
    CHECK(r.omega_value == doctest::Approx((4 + 6) * std::log(2)).epsilon(1e-12));

    auto r6 = best_anchor(two, 6, ones);
    CHECK(r6.anchor == 2);
    CHECK(r6.omega_value == doctest::Approx(35 * std::log(2)).epsilon(1e-12));

    // exhaustive scan oracle
    std::mt19937_64 rng(17);
    auto beta = WeightVector::create({0.4, 1.7});
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + int(rng() % 5);
        int len = 1 + int(rng() % 3);
        ChainProfile prof;
        for (int i = 0; i < len; ++i)
            prof.sets.push_back(patterns::ColorSet(1 + rng() % 3));
        if (len > n + 1) continue;
        auto best = best_anchor(prof, n, beta);
        double scan = -1.0;
        for (int a = 0; a + len - 1 <= n; ++a)
            scan = std::max(scan, omega(layered_template(prof, n, a), beta));
        CHECK(best.omega_value == doctest::Approx(scan).epsilon(1e-12));
    }
}
