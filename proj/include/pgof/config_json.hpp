#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "pgof/errors.hpp"
#include "pgof/harness.hpp"

namespace pgof {

/// Parse an ExperimentConfig from JSON text. Field names mirror the struct;
/// `alternatives` entries are {"family": <name or code>, "lambda": <num>}.
inline ExperimentConfig parse_config_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    ExperimentConfig cfg;
    try {
        for (const auto& n : j.at("sample_sizes")) cfg.sample_sizes.push_back(n.get<std::size_t>());
        for (const auto& a : j.at("alternatives")) {
            Family fam;
            const std::string name = a.at("family").get<std::string>();
            if (!parse_family(name, fam)) throw ConfigError("unknown family: " + name);
            cfg.alternatives.emplace_back(fam, a.at("lambda").get<double>());
        }
        for (const auto& t : j.at("tests")) cfg.tests.push_back(t.get<std::string>());
        cfg.level = j.value("level", 0.05);
        cfg.replications = j.value("replications", std::size_t{1000});
        if (j.contains("censoring"))
            for (const auto& f : j.at("censoring").at("fractions"))
                cfg.censoring_fractions.push_back(f.get<double>());
        cfg.seed = j.value("seed", std::uint64_t{1});
        cfg.parallelism = j.value("parallelism", std::size_t{0});
        cfg.critval_reps = j.value("critval_reps", std::size_t{10000});
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    validate_config(cfg);
    return cfg;
}

inline ExperimentConfig load_config_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_config_json(text);
}

}  // namespace pgof
