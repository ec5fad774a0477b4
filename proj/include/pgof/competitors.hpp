#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "pgof/distributions.hpp"
#include "pgof/errors.hpp"

namespace pgof {

enum class WeightKind { Laplace, Normal };

namespace detail {

constexpr double kCdfClamp = 1e-12;

/// Fitted Pareto CDF clamped into [1e-12, 1-1e-12]; governs every log/ratio
/// expression below (data below the support gets F = 0 before clamping).
inline double fitted_cdf(double x, ParetoShape alpha) {
    const double f = pareto_cdf(x, alpha);
    return std::min(std::max(f, kCdfClamp), 1.0 - kCdfClamp);
}

inline std::vector<double> sorted_fitted_cdf(std::span<const double> x, ParetoShape alpha) {
    std::vector<double> f(x.size());
    std::vector<double> s(x.begin(), x.end());
    std::sort(s.begin(), s.end());
    for (std::size_t i = 0; i < s.size(); ++i) f[i] = fitted_cdf(s[i], alpha);
    return f;
}

inline void require_positive(std::span<const double> x, const char* who) {
    for (double v : x)
        if (!(v > 0.0)) throw DomainError(std::string(who) + ": requires positive observations");
}

}  // namespace detail

/// Characteristic-function test of the X^(1/m) ~ min characterization,
/// evaluated in closed form. With u_j = X_j^(1/m), c_j = X_j^(-alpha(m-1))
/// and I_w(b) = int e^(-itb) w(t) dt,
///   T = (1/n) sum_jk [ I_w(u_j-u_k)/m^2 - (c_k/m) I_w(u_j-x_k)
///                      - (c_j/m) I_w(x_j-u_k) + c_j c_k I_w(x_j-x_k) ],
/// with I_w(b) = 2a/(a^2+b^2) for the Laplace weight and
/// sqrt(pi/a) e^(-b^2/(4a)) for the normal weight.
inline double stat_T(std::span<const double> x, ParetoShape alpha, WeightKind weight,
                     std::size_t m = 3, double a = 0.5) {
    if (x.empty()) throw DomainError("stat_T: empty sample");
    if (m < 2) throw DomainError("stat_T: m must be >= 2");
    if (!(a > 0.0)) throw DomainError("stat_T: a must be positive");
    detail::require_positive(x, "stat_T");
    const std::size_t n = x.size();
    const double md = static_cast<double>(m);
    std::vector<double> u(n), c(n);
    for (std::size_t j = 0; j < n; ++j) {
        u[j] = std::pow(x[j], 1.0 / md);
        c[j] = std::pow(x[j], -alpha.alpha * (md - 1.0));
    }
    const auto iw = [&](double b) {
        if (weight == WeightKind::Laplace) return 2.0 * a / (a * a + b * b);
        return std::sqrt(3.14159265358979323846 / a) * std::exp(-b * b / (4.0 * a));
    };
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            total += iw(u[j] - u[k]) / (md * md);
            total -= c[k] / md * iw(u[j] - x[k]);
            total -= c[j] / md * iw(x[j] - u[k]);
            total += c[j] * c[k] * iw(x[j] - x[k]);
        }
    return total / static_cast<double>(n);
}

enum class ZhangKind { ZA, ZB };

/// Zhang (2002) likelihood-ratio statistics on the fitted CDF.
inline double stat_zhang(std::span<const double> x, ParetoShape alpha, ZhangKind kind) {
    if (x.empty()) throw DomainError("stat_zhang: empty sample");
    const auto f = detail::sorted_fitted_cdf(x, alpha);
    const std::size_t n = x.size();
    const double nd = static_cast<double>(n);
    double s = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
        const double fj = f[j - 1];
        const double jd = static_cast<double>(j);
        if (kind == ZhangKind::ZA) {
            s -= std::log(fj) / (nd - jd + 0.5) + std::log(1.0 - fj) / (jd - 0.5);
        } else {
            const double t = std::log((1.0 / fj - 1.0) / ((nd - 0.5) / (jd - 0.75) - 1.0));
            s += t * t;
        }
    }
    return s;
}

/// Meintanis (2009) statistic on U_j = F(X_j); the double sum keeps its
/// diagonal (each j = k term contributes 2/a).
inline double stat_me(std::span<const double> x, ParetoShape alpha, double a = 0.5) {
    if (x.empty()) throw DomainError("stat_me: empty sample");
    if (!(a > 0.0)) throw DomainError("stat_me: a must be positive");
    const std::size_t n = x.size();
    const double nd = static_cast<double>(n);
    std::vector<double> u(n);
    for (std::size_t j = 0; j < n; ++j) u[j] = detail::fitted_cdf(x[j], alpha);
    double term1 = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            const double d = u[j] - u[k];
            term1 += 2.0 * a / (d * d + a * a);
        }
    term1 /= nd;
    double term2 = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        term2 += std::atan(u[j] / a) + std::atan((1.0 - u[j]) / a);
    term2 *= 4.0;
    const double term3 = 2.0 * nd * (2.0 * std::atan(1.0 / a) - a * std::log(1.0 + 1.0 / (a * a)));
    return term1 - term2 + term3;
}

/// Obradovic-Jovanovic pair-ratio statistic; distribution free, no fitted
/// shape. Evaluated over order statistics with F_n(X_(i)) = i/n.
inline double stat_oj(std::span<const double> x) {
    if (x.size() < 2) throw DomainError("stat_oj: need n >= 2");
    detail::require_positive(x, "stat_oj");
    const std::size_t n = x.size();
    std::vector<double> s(x.begin(), x.end());
    std::sort(s.begin(), s.end());
    std::vector<double> ratios;
    ratios.reserve(n * (n - 1) / 2);
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            ratios.push_back(std::max(s[i] / s[j], s[j] / s[i]));
    std::sort(ratios.begin(), ratios.end());
    const double pairs = static_cast<double>(ratios.size());
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto it = std::upper_bound(ratios.begin(), ratios.end(), s[i]);
        const double mn = static_cast<double>(it - ratios.begin()) / pairs;
        const double fn = static_cast<double>(i + 1) / static_cast<double>(n);
        total += mn - fn;
    }
    return total / static_cast<double>(n);
}

enum class AllisonKind { Integral, CvM };

/// Allison et al. (2022) discrepancy between the ecdf of X^(1/m) and the ecdf
/// of m-fold minima, integrated (or square-integrated) against F_n. The
/// m-fold minimum count collapses to n^m - #{X_j > x}^m by rank counting.
inline double stat_allison(std::span<const double> x, AllisonKind kind, std::size_t m = 2) {
    if (x.size() < 2) throw DomainError("stat_allison: need n >= 2");
    if (m < 2) throw DomainError("stat_allison: m must be >= 2");
    detail::require_positive(x, "stat_allison");
    const std::size_t n = x.size();
    const double nd = static_cast<double>(n);
    std::vector<double> s(x.begin(), x.end());
    std::sort(s.begin(), s.end());
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = s[i];
        const double tm = std::pow(t, static_cast<double>(m));
        const auto count_root = std::upper_bound(s.begin(), s.end(), tm) - s.begin();
        const double term1 = static_cast<double>(count_root) / nd;
        const auto gt = s.end() - std::upper_bound(s.begin(), s.end(), t);
        const double frac_gt = static_cast<double>(gt) / nd;
        const double term2 = 1.0 - std::pow(frac_gt, static_cast<double>(m));
        const double d = term1 - term2;
        total += (kind == AllisonKind::Integral) ? d : d * d;
    }
    return total / nd;
}

enum class EdfKind { CvM, AD, KS };

/// Classical EDF statistics on the fitted CDF (order-statistic forms).
inline double stat_edf(std::span<const double> x, ParetoShape alpha, EdfKind kind) {
    if (x.empty()) throw DomainError("stat_edf: empty sample");
    const auto f = detail::sorted_fitted_cdf(x, alpha);
    const std::size_t n = x.size();
    const double nd = static_cast<double>(n);
    switch (kind) {
        case EdfKind::CvM: {
            double s = 0.0;
            for (std::size_t i = 1; i <= n; ++i) {
                const double d = f[i - 1] - (2.0 * static_cast<double>(i) - 1.0) / (2.0 * nd);
                s += d * d;
            }
            return s + 1.0 / (12.0 * nd);
        }
        case EdfKind::AD: {
            double s = 0.0;
            for (std::size_t i = 1; i <= n; ++i)
                s += (2.0 * static_cast<double>(i) - 1.0) *
                     (std::log(f[i - 1]) + std::log(1.0 - f[n - i]));
            return -nd - s / nd;
        }
        case EdfKind::KS: {
            double s = 0.0;
            for (std::size_t i = 1; i <= n; ++i) {
                const double id = static_cast<double>(i);
                s = std::max(s, std::max(id / nd - f[i - 1], f[i - 1] - (id - 1.0) / nd));
            }
            return s;
        }
    }
    throw DomainError("stat_edf: unknown kind");
}

}  // namespace pgof
