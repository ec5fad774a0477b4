// Test-only oracles: independent brute-force and quadrature implementations
// that the production paths are checked against. Everything here follows the
// printed formulas directly, with no shared code with the fast paths.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "pgof/distributions.hpp"
#include "pgof/rng.hpp"

namespace oracle {

// ---- complete-data statistics, literal forms ------------------------------

inline double h1_pair(double a, double b) {
    double s = 0.0;
    if (b < a) s += b / a;
    if (a < b) s += a / b;
    return 0.5 * (s - 1.0 / a - 1.0 / b);
}

inline double delta_I_naive(std::span<const double> x, double alpha) {
    const std::size_t n = x.size();
    double u = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) u += h1_pair(x[i], x[j]);
    u *= 2.0 / (static_cast<double>(n) * static_cast<double>(n - 1));
    return (alpha + 1.0) * u + alpha / 2.0;
}

inline double h1_triple(double x1, double x2, double x3) {
    const auto m = [](double a, double b) { return std::min(a, b) - 1.0; };
    return (m(x1, x3) * m(x2, x3) / (x1 * x2) + m(x1, x2) * m(x2, x3) / (x1 * x3) +
            m(x1, x2) * m(x1, x3) / (x2 * x3)) / 3.0;
}

inline double h2_triple(double x1, double x2, double x3) {
    double s = 0.0;
    if (std::max(x1, x2) <= x3) s += std::max(x1, x2) / x3;
    if (std::max(x1, x3) <= x2) s += std::max(x1, x3) / x2;
    if (std::max(x2, x3) <= x1) s += std::max(x2, x3) / x1;
    return s / 3.0;
}

inline double delta_M_naive(std::span<const double> x, double alpha) {
    const std::size_t n = x.size();
    double u1 = 0.0, u2 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            for (std::size_t k = 0; k < j; ++k) {
                u1 += h1_triple(x[i], x[j], x[k]);
                u2 += h2_triple(x[i], x[j], x[k]);
            }
    const double binom = static_cast<double>(n) * (n - 1.0) * (n - 2.0) / 6.0;
    u1 /= binom;
    u2 /= binom;
    double u3 = 0.0;
    for (double v : x) u3 += 1.0 / v;
    u3 /= static_cast<double>(n);
    return (alpha + 1.0) * (alpha + 1.0) * u1 - (alpha + 1.0) * (u2 - u3) -
           (2.0 * alpha + 1.0) / 3.0;
}

// ---- censored statistics with explicit weights ----------------------------

inline double delta_I_censored_star(std::span<const double> y, std::span<const double> w) {
    const std::size_t n = y.size();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            double bracket = -1.0 / y[i] - 1.0 / y[j];
            if (y[j] < y[i]) bracket += y[j] / y[i];
            if (y[i] < y[j]) bracket += y[i] / y[j];
            s += bracket * w[i] * w[j];
        }
    return s / (static_cast<double>(n) * static_cast<double>(n - 1));
}

inline void delta_M_censored_stars(std::span<const double> y, std::span<const double> w,
                                   double& star1, double& star2, double& star3) {
    const std::size_t n = y.size();
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            for (std::size_t k = 0; k < j; ++k) {
                s1 += 3.0 * h1_triple(y[i], y[j], y[k]) * w[i] * w[j] * w[k];
                s2 += 3.0 * h2_triple(y[i], y[j], y[k]) * w[i] * w[j] * w[k];
            }
    const double norm = static_cast<double>(n) * (n - 1.0) * (n - 2.0);
    star1 = 2.0 * s1 / norm;
    star2 = 2.0 * s2 / norm;
    star3 = 0.0;
    for (std::size_t i = 0; i < n; ++i) star3 += (1.0 / y[i]) * w[i];
    star3 /= static_cast<double>(n);
}

// ---- T statistic by quadrature of the printed integral --------------------

inline double stat_T_quadrature(std::span<const double> x, double alpha, bool laplace,
                                std::size_t m, double a) {
    const std::size_t n = x.size();
    const double md = static_cast<double>(m);
    const auto S_abs2 = [&](double t) {
        std::complex<double> s{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) {
            const double u = std::pow(x[j], 1.0 / md);
            const double c = std::pow(x[j], -alpha * (md - 1.0));
            s += std::polar(1.0 / md, -t * u) - c * std::polar(1.0, -t * x[j]);
        }
        s /= std::sqrt(static_cast<double>(n));
        return std::norm(s);
    };
    const auto w = [&](double t) { return laplace ? std::exp(-a * std::abs(t)) : std::exp(-a * t * t); };
    // |S(-t)| = |S(t)| (real coefficients), so integrate [0, L] and double.
    const double L = laplace ? 120.0 : 40.0;
    const auto f = [&](double t) { return S_abs2(t) * w(t); };
    // trapezoid with Richardson refinement, independent of the library quadrature
    double prev = 0.0;
    std::size_t steps = 512;
    double current = 0.0;
    for (int round = 0; round < 12; ++round) {
        const double h = L / static_cast<double>(steps);
        double acc = 0.5 * (f(0.0) + f(L));
        for (std::size_t i = 1; i < steps; ++i) acc += f(h * static_cast<double>(i));
        current = acc * h;
        if (round > 2 && std::abs(current - prev) <= 1e-9 * std::max(1.0, std::abs(current))) break;
        prev = current;
        steps *= 2;
    }
    return 2.0 * current;
}

// ---- Allison statistic by literal n^m enumeration -------------------------

inline double allison_delta_enum(std::span<const double> x, double t, std::size_t m) {
    const std::size_t n = x.size();
    double first = 0.0;
    for (double v : x)
        if (std::pow(v, 1.0 / static_cast<double>(m)) <= t) first += 1.0;
    first /= static_cast<double>(n);
    // all m-tuples (j1..jm) of indices, minimum compared to t
    std::vector<std::size_t> idx(m, 0);
    double count = 0.0, total = 0.0;
    for (;;) {
        double mn = x[idx[0]];
        for (std::size_t q = 1; q < m; ++q) mn = std::min(mn, x[idx[q]]);
        if (mn <= t) count += 1.0;
        total += 1.0;
        std::size_t q = 0;
        while (q < m && ++idx[q] == n) {
            idx[q] = 0;
            ++q;
        }
        if (q == m) break;
    }
    return first - count / total;
}

inline double allison_enum(std::span<const double> x, bool integral, std::size_t m) {
    double s = 0.0;
    for (double t : x) {
        const double d = allison_delta_enum(x, t, m);
        s += integral ? d : d * d;
    }
    return s / static_cast<double>(x.size());
}

// ---- OJ statistic via the literal pair-ratio ecdf -------------------------

inline double oj_brute(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<double> s(x.begin(), x.end());
    std::sort(s.begin(), s.end());
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double mn = 0.0;
        for (std::size_t p = 1; p < n; ++p)
            for (std::size_t q = 0; q < p; ++q)
                if (std::max(s[p] / s[q], s[q] / s[p]) <= s[i]) mn += 1.0;
        mn /= static_cast<double>(n) * (n - 1.0) / 2.0;
        total += mn - static_cast<double>(i + 1) / static_cast<double>(n);
    }
    return total / static_cast<double>(n);
}

// ---- sampler checks --------------------------------------------------------

/// Kolmogorov distance between a sample and an analytic CDF.
inline double ks_distance(std::vector<double> x, double (*cdf)(double, double), double lambda) {
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = cdf(x[i], lambda);
        d = std::max(d, std::max((i + 1.0) / n - f, f - i / n));
    }
    return d;
}

// analytic CDFs derived by integrating the printed densities
inline double cdf_gamma_shifted(double x, double lam) {
    if (x <= 1.0) return 0.0;
    // regularized lower incomplete gamma at (lam, x-1), series/cont. fraction
    const double a = lam, z = x - 1.0;
    if (z <= 0.0) return 0.0;
    const double lg = std::lgamma(a);
    if (z < a + 1.0) {
        double term = 1.0 / a, sum = term;
        for (int k = 1; k < 500; ++k) {
            term *= z / (a + k);
            sum += term;
            if (term < sum * 1e-16) break;
        }
        return sum * std::exp(-z + a * std::log(z) - lg);
    }
    double b = z + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
    for (int k = 1; k < 500; ++k) {
        const double an = -k * (k - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::abs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return 1.0 - h * std::exp(-z + a * std::log(z) - lg);
}

inline double cdf_lf_shifted(double x, double lam) {
    if (x <= 1.0) return 0.0;
    const double w = x - 1.0;
    return 1.0 - std::exp(-w - lam * w * w / 2.0);
}

inline double cdf_be_shifted(double x, double lam) {
    if (x <= 1.0) return 0.0;
    return std::pow(1.0 - std::exp(-(x - 1.0)), lam);
}

inline double cdf_tp(double x, double lam) {
    if (x <= 1.0) return 0.0;
    return 1.0 - (1.0 + lam) / (x + lam);
}

inline double cdf_ib(double x, double lam) {
    if (x <= 1.0) return 0.0;
    return std::pow(1.0 - 1.0 / x, lam + 1.0);
}

inline double cdf_benini(double x, double lam) {
    if (x <= 1.0) return 0.0;
    const double s = std::log(x);
    return 1.0 - std::exp(-s - lam * s * s);  // 1 - x^{-1} e^{-lam ln^2 x}
}

inline double cdf_ev(double x, double lam) { return std::exp(-std::exp(-x / lam)); }

inline double cdf_pareto(double x, double lam) {
    if (x <= 1.0) return 0.0;
    return 1.0 - std::pow(x, -lam);
}

// ---- misc ------------------------------------------------------------------

inline std::vector<double> random_positive_sample(pgof::Rng& rng, std::size_t n,
                                                  bool with_ties = true) {
    std::vector<double> x(n);
    for (auto& v : x) v = 0.5 + 4.5 * rng.uniform();
    if (with_ties && n >= 3 && rng.uniform() < 0.5) {
        x[1] = x[0];
        if (rng.uniform() < 0.5) x[2] = x[0];
    }
    return x;
}

inline double mean(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double variance(std::span<const double> v) {
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

}  // namespace oracle
