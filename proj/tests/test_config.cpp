#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chainavoid/config.hpp"

using namespace chainavoid;
using namespace chainavoid::config;

namespace {

Json base_doc() {
    Json doc;
    doc["schema"] = kConfigSchema;
    doc["m"] = 4;
    doc["patterns"] = Json::array();
    for (int a = 1; a <= 4; ++a)
        for (int b = 1; b <= 4; ++b) {
            bool allowed = (a == 3 && b == 1) || (a == 4 && b == 1) || (a == 4 && b == 2);
            if (!allowed) doc["patterns"].push_back(std::vector<int>{a, b});
        }
    return doc;
}

} // namespace

TEST_CASE("well-formed config parses and validates") {
    auto cfg = parse_config(base_doc());
    CHECK(cfg.m == 4);
    CHECK(cfg.pattern_list.size() == 13);
    CHECK(patterns::sparsity_report(cfg.family()).is_sparse);
    CHECK(cfg.weights().beta == std::vector<double>(4, 1.0)); // default all ones
}

TEST_CASE("round trip through emit") {
    auto doc = base_doc();
    doc["beta"] = std::vector<double>{0.5, 1.0, 2.0, 0.25};
    doc["n"] = 4;
    doc["seed"] = 99;
    doc["alpha"] = 0.5;
    doc["band"] = std::vector<int>{1, 3};
    doc["template"] = Json{{"profile", Json::array({std::vector<int>{3, 4},
                                                    std::vector<int>{1}})},
                           {"anchor", 1}};
    auto cfg = parse_config(doc);
    auto cfg2 = parse_config(emit_config(cfg));
    CHECK(cfg == cfg2);
    CHECK(cfg.template_spec->profile ==
          std::vector<patterns::ColorSet>{patterns::singleton(3) | patterns::singleton(4),
                                          patterns::singleton(1)});
    CHECK(cfg.band->lo == 1);
    CHECK(cfg.band->hi == 3);
}

TEST_CASE("diagnostics name the offending field") {
    auto doc = base_doc();
    doc["patterns"].push_back(std::vector<int>{1});
    CHECK_THROWS_WITH(parse_config(doc), "patterns: pattern length < 2");

    doc = base_doc();
    doc["beta"] = std::vector<double>{1.0, 0.0, 1.0, 1.0};
    CHECK_THROWS_WITH(parse_config(doc), "beta: weights must be positive");

    doc = base_doc();
    doc["patterns"].push_back(std::vector<int>{1, 5});
    CHECK_THROWS_WITH(parse_config(doc), "patterns: color out of range 1..m");

    doc = base_doc();
    doc["frobnicate"] = 1;
    CHECK_THROWS_WITH(parse_config(doc), "config: unknown field 'frobnicate'");

    doc = base_doc();
    doc["m"] = "four";
    CHECK_THROWS_AS(parse_config(doc), precondition_error);

    doc = base_doc();
    doc["schema"] = "something-else";
    CHECK_THROWS_AS(parse_config(doc), precondition_error);

    CHECK_THROWS_AS(parse_config_text("{nope"), precondition_error);
    CHECK_THROWS_AS(load_config("/nonexistent/path.json"), precondition_error);
}

TEST_CASE("report helpers") {
    CHECK(report_real(1.0) == 1.0);
    double v = 0.12345678901234567;
    CHECK(report_real(v) == doctest::Approx(v).epsilon(1e-11));
    CHECK(report_real(report_real(v)) == report_real(v)); // idempotent

    auto cfg = parse_config(base_doc());
    Json results;
    results["answer"] = 42;
    auto rep = make_report("check", cfg, results);
    CHECK(rep["schema"] == kReportSchema);
    CHECK(rep["command"] == "check");
    CHECK(rep["results"]["answer"] == 42);
    CHECK(parse_config(rep["config"]) == cfg);
}
