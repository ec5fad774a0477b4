#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pgof/competitors.hpp"
#include "pgof/stein.hpp"

namespace pgof {

/// One named complete-data test statistic. `two_sided` fixes both the
/// critical-value kind and the decision rule; integral-type (signed)
/// statistics are two-sided, discrepancy-type ones reject upper.
struct StatisticDef {
    std::string_view name;
    bool two_sided;
    std::size_t min_n;
    double (*fn)(std::span<const double>, ParetoShape);
};

inline const std::vector<StatisticDef>& statistic_registry() {
    static const std::vector<StatisticDef> defs = {
        {"delta_I", true, 2, [](std::span<const double> x, ParetoShape a) { return delta_I_fast(x, a).value; }},
        {"delta_M", false, 3, [](std::span<const double> x, ParetoShape a) { return delta_M_fast(x, a).value; }},
        {"T1", false, 1, [](std::span<const double> x, ParetoShape a) { return stat_T(x, a, WeightKind::Laplace); }},
        {"T2", false, 1, [](std::span<const double> x, ParetoShape a) { return stat_T(x, a, WeightKind::Normal); }},
        {"ZA", false, 1, [](std::span<const double> x, ParetoShape a) { return stat_zhang(x, a, ZhangKind::ZA); }},
        {"ZB", false, 1, [](std::span<const double> x, ParetoShape a) { return stat_zhang(x, a, ZhangKind::ZB); }},
        {"ME", false, 1, [](std::span<const double> x, ParetoShape a) { return stat_me(x, a); }},
        {"OJ", true, 2, [](std::span<const double> x, ParetoShape) { return stat_oj(x); }},
        {"Inm", true, 2, [](std::span<const double> x, ParetoShape) { return stat_allison(x, AllisonKind::Integral); }},
        {"Mnm", false, 2, [](std::span<const double> x, ParetoShape) { return stat_allison(x, AllisonKind::CvM); }},
        {"CvM", false, 1, [](std::span<const double> x, ParetoShape a) { return stat_edf(x, a, EdfKind::CvM); }},
        {"AD", false, 1, [](std::span<const double> x, ParetoShape a) { return stat_edf(x, a, EdfKind::AD); }},
        {"KS", false, 1, [](std::span<const double> x, ParetoShape a) { return stat_edf(x, a, EdfKind::KS); }},
    };
    return defs;
}

inline const StatisticDef* find_statistic(std::string_view name) {
    for (const auto& d : statistic_registry())
        if (d.name == name) return &d;
    return nullptr;
}

}  // namespace pgof
