#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "chainavoid/enumeration.hpp"
#include "chainavoid/templates.hpp"

namespace chainavoid::config {

using Json = nlohmann::ordered_json;

inline constexpr const char* kConfigSchema = "chainavoid-config-v1";
inline constexpr const char* kReportSchema = "chainavoid-report-v1";

struct TemplateSpec {
    std::vector<patterns::ColorSet> profile; // bottom-to-top layer color sets
    std::optional<int> anchor;               // defaults to the best anchor

    bool operator==(const TemplateSpec&) const = default;
};

struct ProblemConfig {
    int m = 0;
    std::vector<patterns::ChainPattern> pattern_list;
    std::optional<std::vector<double>> beta;
    std::optional<std::vector<double>> p;
    std::optional<int> n;
    std::uint64_t seed = 0;
    std::optional<double> alpha;
    std::optional<double> delta;
    std::optional<double> tau;
    std::optional<std::uint64_t> samples;
    std::optional<enumeration::Band> band;
    std::optional<TemplateSpec> template_spec;

    bool operator==(const ProblemConfig&) const = default;

    patterns::ForbiddenFamily family() const;
    // beta if present, else all ones.
    templates::WeightVector weights() const;
    // p if present, else error.
    templates::WeightVector probabilities() const;
};

// Parses and validates; throws precondition_error with a diagnostic naming
// the offending field.
ProblemConfig parse_config(const Json& doc);
ProblemConfig parse_config_text(const std::string& text);
ProblemConfig load_config(const std::string& path);

Json emit_config(const ProblemConfig& cfg);

// Rounds to 12 significant digits so reports are stable to the printed
// precision.
double report_real(double v);

Json make_report(const std::string& command, const ProblemConfig& cfg, Json results);
void write_report(const Json& report, const std::string& path);

} // namespace chainavoid::config
