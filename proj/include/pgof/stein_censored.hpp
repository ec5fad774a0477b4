#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "pgof/estimation.hpp"
#include "pgof/normal.hpp"
#include "pgof/stein.hpp"

namespace pgof {

/// Outcome of a censored-data test under the asymptotic normal rule.
struct CensoredTestOutcome {
    double statistic;
    double sigma_hat;    // sqrt of the printed variance estimator (scale factor inside)
    double z_value;      // sqrt(n) * statistic / sigma_hat
    ParetoShape alpha_hat_c;
    bool reject;
    double level;
    bool clamped;        // censored mean was <= 1 and got clamped
};

namespace detail {

struct CensoredContext {
    CensoringSurvival sc;
    std::vector<double> weights;  // delta_i / S_c(Y_i-)
    ParetoShape alpha;
    bool clamped;
};

inline CensoredContext make_context(const CensoredSample& s) {
    CensoredContext ctx{censoring_km(s), {}, ParetoShape(1.0), false};
    ctx.weights = ipcw_weights(s, ctx.sc);
    ctx.alpha = moment_alpha_censored_clamped(s, ctx.sc, ctx.clamped);
    return ctx;
}

/// Full pair kernel including the shape scaling and shift.
inline double h_full_pair(double x, double y, double alpha) {
    return 0.5 * (alpha + 1.0) * pair_bracket(x, y) + 0.5 * alpha;
}

/// Full degree-3 kernel including scaling, the 1/x corrections and the shift.
inline double h_full_triple(double x, double y, double z, double alpha) {
    const double a1 = alpha + 1.0;
    const double mins = triple_min_kernel(x, y, z);
    const double maxs = triple_max_kernel(x, y, z) - (1.0 / x + 1.0 / y + 1.0 / z);
    return (a1 * a1 / 3.0) * mins - (a1 / 3.0) * maxs - (2.0 * alpha + 1.0) / 3.0;
}

/// Shared tail of both variance estimators: given the per-subject epsilons,
/// build the censoring corrections and return sum (V_i - Vbar)^2.
/// `corrections` is the number of identical risk-set correction sums
/// subtracted in V_i (one for the pair statistic, two for the triple one).
inline double v_centered_square_sum(const CensoredSample& s, std::span<const double> eps,
                                    bool squared_risk_mean, int corrections) {
    const std::size_t n = s.size();
    std::vector<double> beta(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (s.events[i]) continue;  // beta_i = w(Y_i)(1 - delta_i)
        double num = 0.0;
        std::size_t cnt = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (s.times[j] > s.times[i]) {
                num += eps[j];
                ++cnt;
            }
        }
        if (cnt == 0) continue;  // empty risk set: w(Y_i) = 0
        const double mean = num / static_cast<double>(cnt);
        beta[i] = squared_risk_mean ? mean * mean : mean;
    }

    // D(Y_j) = #{Y_l >= Y_j}
    std::vector<double> atrisk(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t c = 0;
        for (std::size_t l = 0; l < n; ++l)
            if (s.times[l] >= s.times[j]) ++c;
        atrisk[j] = static_cast<double>(c);
    }

    std::vector<double> v(n);
    double vbar = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double corr = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (s.times[i] > s.times[j]) corr += beta[j] / atrisk[j];
        v[i] = eps[i] + beta[i] - static_cast<double>(corrections) * corr;
        vbar += v[i];
    }
    vbar /= static_cast<double>(n);
    double ss = 0.0;
    for (double vi : v) ss += (vi - vbar) * (vi - vbar);
    return ss;
}

inline double variance_I_impl(const CensoredSample& s, const CensoredContext& ctx) {
    const std::size_t n = s.size();
    const double a = ctx.alpha.alpha;
    std::vector<double> eps(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (ctx.weights[i] == 0.0) continue;
        double h1hat = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (ctx.weights[j] == 0.0) continue;
            h1hat += h_full_pair(s.times[i], s.times[j], a) * ctx.weights[j];
        }
        eps[i] = h1hat / static_cast<double>(n) * ctx.weights[i];
    }
    const double ss = v_centered_square_sum(s, eps, /*squared_risk_mean=*/false, 1);
    return 4.0 / static_cast<double>(n - 1) * ss;
}

inline double variance_M_impl(const CensoredSample& s, const CensoredContext& ctx) {
    const std::size_t n = s.size();
    const double a = ctx.alpha.alpha;
    const auto& w = ctx.weights;
    std::vector<double> eps(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (w[i] == 0.0) continue;
        // (1/n^2) sum_{j,k} h(Y_i, Y_j, Y_k) w_j w_k, diagonal included;
        // the kernel is symmetric in (j, k) so the strict upper triangle is doubled
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (w[j] == 0.0) continue;
            acc += h_full_triple(s.times[i], s.times[j], s.times[j], a) * w[j] * w[j];
            for (std::size_t k = j + 1; k < n; ++k) {
                if (w[k] == 0.0) continue;
                acc += 2.0 * h_full_triple(s.times[i], s.times[j], s.times[k], a) * w[j] * w[k];
            }
        }
        eps[i] = acc / (static_cast<double>(n) * static_cast<double>(n)) * w[i];
    }
    const double ss = v_centered_square_sum(s, eps, /*squared_risk_mean=*/true, 2);
    return 9.0 / static_cast<double>(n - 1) * ss;
}

}  // namespace detail

/// Variance estimator for the censored integral-type statistic
/// (the reweighted epsilon/w/beta/V construction; factor 4 included).
inline double variance_I_censored(const CensoredSample& s) {
    s.validate();
    if (s.size() < 3) throw DomainError("variance_I_censored: need n >= 3");
    const auto ctx = detail::make_context(s);
    return detail::variance_I_impl(s, ctx);
}

/// Variance estimator for the censored CvM-type statistic (factor 9 included).
inline double variance_M_censored(const CensoredSample& s) {
    s.validate();
    if (s.size() < 3) throw DomainError("variance_M_censored: need n >= 3");
    const auto ctx = detail::make_context(s);
    return detail::variance_M_impl(s, ctx);
}

/// IPCW integral-type test. With all delta = 1 the statistic equals the
/// complete-data delta_I exactly (same kernels, same summation order).
inline CensoredTestOutcome delta_I_censored(const CensoredSample& s, double level = 0.05) {
    s.validate();
    const std::size_t n = s.size();
    if (s.event_count() < 2) throw DomainError("delta_I_censored: need at least 2 events");
    const auto ctx = detail::make_context(s);
    const double nn = static_cast<double>(n) * static_cast<double>(n - 1);
    const double ustar = detail::weighted_pair_sum(s.times, ctx.weights) / nn;
    const double a = ctx.alpha.alpha;
    const double stat = (a + 1.0) * ustar + a / 2.0;
    const double sigma = std::sqrt(detail::variance_I_impl(s, ctx));
    const double z = std::sqrt(static_cast<double>(n)) * stat / sigma;
    const bool reject = std::abs(z) > normal_quantile(1.0 - level / 2.0);
    return {stat, sigma, z, ctx.alpha, reject, level, ctx.clamped};
}

/// IPCW CvM-type test; one-sided upper rejection. Degenerates exactly to the
/// complete-data delta_M when nothing is censored.
inline CensoredTestOutcome delta_M_censored(const CensoredSample& s, double level = 0.05) {
    s.validate();
    const std::size_t n = s.size();
    if (n < 3) throw DomainError("delta_M_censored: need n >= 3");
    if (s.event_count() < 3) throw DomainError("delta_M_censored: need at least 3 events");
    const auto ctx = detail::make_context(s);
    const auto sums = detail::weighted_triple_sums(s.times, ctx.weights);
    const double norm = static_cast<double>(n) * static_cast<double>(n - 1) * static_cast<double>(n - 2);
    const double u1 = 2.0 * sums.min_sum / norm;
    const double u2 = 2.0 * sums.max_sum / norm;
    double invsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) invsum += (1.0 / s.times[i]) * ctx.weights[i];
    const double u3 = invsum / static_cast<double>(n);
    const double a = ctx.alpha.alpha;
    const double stat = (a + 1.0) * (a + 1.0) * u1 - (a + 1.0) * (u2 - u3) - (2.0 * a + 1.0) / 3.0;
    const double sigma = std::sqrt(detail::variance_M_impl(s, ctx));
    const double z = std::sqrt(static_cast<double>(n)) * stat / sigma;
    const bool reject = z > normal_quantile(1.0 - level);
    return {stat, sigma, z, ctx.alpha, reject, level, ctx.clamped};
}

}  // namespace pgof
