#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pgof/distributions.hpp"
#include "pgof/errors.hpp"
#include "pgof/estimation.hpp"
#include "pgof/rng.hpp"

namespace pgof {

/// Type-7 empirical quantile (linear interpolation between order statistics);
/// stated explicitly so ports agree to 1e-12.
inline double quantile_type7(std::vector<double> v, double p) {
    if (v.empty()) throw DomainError("quantile_type7: empty sample");
    std::sort(v.begin(), v.end());
    const double h = static_cast<double>(v.size() - 1) * p;
    const std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= v.size()) return v.back();
    return v[lo] + (h - static_cast<double>(lo)) * (v[lo + 1] - v[lo]);
}

enum class CritvalKind { TwoSidedC1C2, OneSidedC3 };
enum class CritvalMethod { DataBootstrap, ParametricBootstrap, FixedNullMonteCarlo };

inline std::string critval_method_name(CritvalMethod m) {
    switch (m) {
        case CritvalMethod::DataBootstrap: return "DataBootstrap";
        case CritvalMethod::ParametricBootstrap: return "ParametricBootstrap";
        case CritvalMethod::FixedNullMonteCarlo: return "FixedNullMonteCarlo";
    }
    return "?";
}

/// Empirical critical values with their provenance.
struct CriticalValues {
    CritvalKind kind;
    std::optional<double> lower;  // C1; absent for one-sided
    double upper;                 // C2 or C3
    double level;
    std::size_t replications;
    CritvalMethod method;
    std::uint64_t seed;

    bool rejects(double stat) const {
        if (kind == CritvalKind::TwoSidedC1C2) return stat < *lower || stat > upper;
        return stat > upper;
    }
};

using StatisticFn = std::function<double(std::span<const double>, ParetoShape)>;

namespace detail {

inline CriticalValues quantiles_to_critvals(std::vector<double> values, bool two_sided,
                                            double level, std::size_t reps,
                                            CritvalMethod method, std::uint64_t seed) {
    CriticalValues cv{two_sided ? CritvalKind::TwoSidedC1C2 : CritvalKind::OneSidedC3,
                      std::nullopt, 0.0, level, reps, method, seed};
    if (two_sided) {
        cv.lower = quantile_type7(values, level / 2.0);
        cv.upper = quantile_type7(std::move(values), 1.0 - level / 2.0);
    } else {
        cv.upper = quantile_type7(std::move(values), 1.0 - level);
    }
    return cv;
}

}  // namespace detail

/// Bootstrap critical values on a given sample.
///
/// DataBootstrap resamples observation indices with replacement and
/// recomputes the statistic with alpha held at the original estimate;
/// ParametricBootstrap draws fresh Pareto(alpha_hat) samples and re-estimates
/// the shape each replicate.
inline CriticalValues bootstrap_critvals(std::span<const double> sample, const StatisticFn& stat,
                                         bool two_sided, double level, std::size_t B,
                                         CritvalMethod method, std::uint64_t seed) {
    if (B < 100) throw ResamplingError("bootstrap_critvals: need B >= 100");
    if (!(level > 0.0 && level < 1.0)) throw DomainError("bootstrap_critvals: bad level");
    if (method != CritvalMethod::DataBootstrap && method != CritvalMethod::ParametricBootstrap)
        throw DomainError("bootstrap_critvals: method must be a bootstrap");
    const std::size_t n = sample.size();
    const ParetoShape alpha0 = moment_alpha(sample);
    std::vector<double> values;
    values.reserve(B);
    std::size_t failures = 0;
    std::vector<double> y(n);
    for (std::size_t b = 0; b < B; ++b) {
        Rng rng = Rng::stream(seed, b);
        try {
            if (method == CritvalMethod::DataBootstrap) {
                for (std::size_t i = 0; i < n; ++i)
                    y[i] = sample[rng.next_u64() % n];
                values.push_back(stat(y, alpha0));
            } else {
                for (std::size_t i = 0; i < n; ++i) y[i] = pareto_sample(rng, alpha0);
                values.push_back(stat(y, moment_alpha(y)));
            }
        } catch (const std::exception&) {
            ++failures;
        }
    }
    if (failures * 100 > B)
        throw ResamplingError("bootstrap_critvals: statistic failed in more than 1% of replicates");
    return detail::quantiles_to_critvals(std::move(values), two_sided, level, B, method, seed);
}

/// Fixed-null Monte Carlo critical values: `reps` Pareto(null_alpha) samples
/// of size n, shape re-estimated per sample, empirical quantiles of the
/// plug-in statistic.
inline CriticalValues fixed_null_critvals(std::size_t n, const StatisticFn& stat, bool two_sided,
                                          double level, std::size_t reps, std::uint64_t seed,
                                          double null_alpha = 1.0) {
    if (reps < 1000) throw ResamplingError("fixed_null_critvals: need reps >= 1000");
    if (!(level > 0.0 && level < 1.0)) throw DomainError("fixed_null_critvals: bad level");
    const ParetoShape gen(null_alpha);
    std::vector<double> values;
    values.reserve(reps);
    std::size_t failures = 0;
    std::vector<double> y(n);
    for (std::size_t r = 0; r < reps; ++r) {
        Rng rng = Rng::stream(seed, r);
        for (std::size_t i = 0; i < n; ++i) y[i] = pareto_sample(rng, gen);
        try {
            bool clamped = false;
            values.push_back(stat(y, moment_alpha_clamped(y, clamped)));
        } catch (const std::exception&) {
            ++failures;
        }
    }
    if (failures * 100 > reps)
        throw ResamplingError("fixed_null_critvals: statistic failed in more than 1% of replicates");
    return detail::quantiles_to_critvals(std::move(values), two_sided, level, reps,
                                         CritvalMethod::FixedNullMonteCarlo, seed);
}

}  // namespace pgof
