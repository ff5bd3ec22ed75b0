#include "chainavoid/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

namespace chainavoid::config {

patterns::ForbiddenFamily ProblemConfig::family() const {
    return patterns::ForbiddenFamily::create(m, pattern_list);
}

templates::WeightVector ProblemConfig::weights() const {
    if (beta) {
        if (static_cast<int>(beta->size()) != m)
            throw precondition_error("beta: length must equal m");
        return templates::WeightVector::create(*beta);
    }
    return templates::WeightVector::ones(m);
}

templates::WeightVector ProblemConfig::probabilities() const {
    if (!p) throw precondition_error("p: missing probability vector");
    if (static_cast<int>(p->size()) != m) throw precondition_error("p: length must equal m");
    return templates::WeightVector::create(*p);
}

namespace {

const std::set<std::string> kKnownFields = {
    "schema", "m",     "patterns", "beta",    "p",    "n",
    "seed",   "alpha", "delta",    "tau",     "samples", "band",
    "template"};

void require_positive(const std::vector<double>& v, const char* field) {
    for (double x : v)
        if (!(x > 0.0)) throw precondition_error(std::string(field) + ": weights must be positive");
}

} // namespace

ProblemConfig parse_config(const Json& doc) {
    if (!doc.is_object()) throw precondition_error("config: document must be an object");
    for (const auto& [key, _] : doc.items())
        if (!kKnownFields.count(key))
            throw precondition_error("config: unknown field '" + key + "'");
    if (doc.contains("schema") && doc["schema"] != kConfigSchema)
        throw precondition_error("schema: expected " + std::string(kConfigSchema));

    ProblemConfig cfg;
    if (!doc.contains("m") || !doc["m"].is_number_integer())
        throw precondition_error("m: missing or not an integer");
    cfg.m = doc["m"].get<int>();
    if (cfg.m < 1 || cfg.m > 31) throw precondition_error("m: must be in 1..31");

    if (!doc.contains("patterns") || !doc["patterns"].is_array())
        throw precondition_error("patterns: missing or not an array");
    for (const auto& pat : doc["patterns"]) {
        if (!pat.is_array()) throw precondition_error("patterns: each pattern must be an array");
        patterns::ChainPattern cp;
        for (const auto& c : pat) {
            if (!c.is_number_integer()) throw precondition_error("patterns: colors must be integers");
            int color = c.get<int>();
            if (color < 1 || color > cfg.m)
                throw precondition_error("patterns: color out of range 1..m");
            cp.colors.push_back(color);
        }
        if (cp.length() < 2) throw precondition_error("patterns: pattern length < 2");
        cfg.pattern_list.push_back(std::move(cp));
    }

    if (doc.contains("beta")) {
        cfg.beta = doc["beta"].get<std::vector<double>>();
        require_positive(*cfg.beta, "beta");
    }
    if (doc.contains("p")) {
        cfg.p = doc["p"].get<std::vector<double>>();
        require_positive(*cfg.p, "p");
    }
    if (doc.contains("n")) {
        cfg.n = doc["n"].get<int>();
        if (*cfg.n < 0 || *cfg.n > lattice::kMaxGroundSet)
            throw precondition_error("n: must be in 0..24");
    }
    if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("alpha")) cfg.alpha = doc["alpha"].get<double>();
    if (doc.contains("delta")) cfg.delta = doc["delta"].get<double>();
    if (doc.contains("tau")) cfg.tau = doc["tau"].get<double>();
    if (doc.contains("samples")) cfg.samples = doc["samples"].get<std::uint64_t>();
    if (doc.contains("band")) {
        auto v = doc["band"].get<std::vector<int>>();
        if (v.size() != 2) throw precondition_error("band: expected [lo, hi]");
        cfg.band = enumeration::Band{v[0], v[1]};
    }
    if (doc.contains("template")) {
        const auto& t = doc["template"];
        if (!t.is_object() || !t.contains("profile"))
            throw precondition_error("template: expected object with 'profile'");
        for (const auto& [key, _] : t.items())
            if (key != "profile" && key != "anchor")
                throw precondition_error("template: unknown field '" + key + "'");
        TemplateSpec spec;
        for (const auto& layer : t["profile"]) {
            patterns::ColorSet s = 0;
            for (const auto& c : layer) {
                int color = c.get<int>();
                if (color < 1 || color > cfg.m)
                    throw precondition_error("template: color out of range 1..m");
                s |= patterns::singleton(color);
            }
            if (s == 0) throw precondition_error("template: profile layers must be nonempty");
            spec.profile.push_back(s);
        }
        if (t.contains("anchor")) spec.anchor = t["anchor"].get<int>();
        cfg.template_spec = spec;
    }

    cfg.family(); // validate the pattern family as a whole
    return cfg;
}

ProblemConfig parse_config_text(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw precondition_error(std::string("config: malformed document: ") + e.what());
    }
    return parse_config(doc);
}

ProblemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw precondition_error("config: cannot open file " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_config_text(text);
}

Json emit_config(const ProblemConfig& cfg) {
    Json doc;
    doc["schema"] = kConfigSchema;
    doc["m"] = cfg.m;
    Json pats = Json::array();
    for (const auto& p : cfg.pattern_list) pats.push_back(p.colors);
    doc["patterns"] = pats;
    if (cfg.beta) doc["beta"] = *cfg.beta;
    if (cfg.p) doc["p"] = *cfg.p;
    if (cfg.n) doc["n"] = *cfg.n;
    doc["seed"] = cfg.seed;
    if (cfg.alpha) doc["alpha"] = *cfg.alpha;
    if (cfg.delta) doc["delta"] = *cfg.delta;
    if (cfg.tau) doc["tau"] = *cfg.tau;
    if (cfg.samples) doc["samples"] = *cfg.samples;
    if (cfg.band) doc["band"] = std::vector<int>{cfg.band->lo, cfg.band->hi};
    if (cfg.template_spec) {
        Json t;
        Json profile = Json::array();
        for (patterns::ColorSet s : cfg.template_spec->profile) {
            std::vector<int> colors;
            for (int c = 1; c <= cfg.m; ++c)
                if (patterns::has_color(s, c)) colors.push_back(c);
            profile.push_back(colors);
        }
        t["profile"] = profile;
        if (cfg.template_spec->anchor) t["anchor"] = *cfg.template_spec->anchor;
        doc["template"] = t;
    }
    return doc;
}

double report_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

Json make_report(const std::string& command, const ProblemConfig& cfg, Json results) {
    Json rep;
    rep["schema"] = kReportSchema;
    rep["command"] = command;
    rep["config"] = emit_config(cfg);
    rep["results"] = std::move(results);
    return rep;
}

void write_report(const Json& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw precondition_error("report: cannot open output path " + path);
    out << report.dump(2) << "\n";
}

} // namespace chainavoid::config
