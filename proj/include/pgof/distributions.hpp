#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "pgof/errors.hpp"
#include "pgof/quadrature.hpp"
#include "pgof/rng.hpp"

namespace pgof {

/// Shape parameter of the Pareto type-I law F(x) = 1 - x^{-alpha} on [1, inf).
struct ParetoShape {
    double alpha;

    explicit ParetoShape(double a) : alpha(a) {
        if (!(a > 0.0) || !std::isfinite(a))
            throw DomainError("ParetoShape: alpha must be a positive finite real");
    }

    /// True when the distribution has a finite mean (needed by the moment estimator).
    bool has_finite_mean() const { return alpha > 1.0; }
};

inline double pareto_pdf(double x, ParetoShape shape) {
    if (x < 1.0) return 0.0;
    return shape.alpha * std::pow(x, -(shape.alpha + 1.0));
}

inline double pareto_cdf(double x, ParetoShape shape) {
    if (x <= 1.0) return 0.0;
    return 1.0 - std::pow(x, -shape.alpha);
}

/// Inverse of pareto_cdf; u in [0, 1).
inline double pareto_quantile(double u, ParetoShape shape) {
    if (!(u >= 0.0 && u < 1.0))
        throw DomainError("pareto_quantile: u must lie in [0, 1)");
    return std::pow(1.0 - u, -1.0 / shape.alpha);
}

inline double pareto_sample(Rng& rng, ParetoShape shape) {
    return pareto_quantile(rng.uniform(), shape);
}

inline std::vector<double> pareto_sample_n(Rng& rng, ParetoShape shape, std::size_t n) {
    std::vector<double> out(n);
    for (auto& v : out) v = pareto_sample(rng, shape);
    return out;
}

// ---------------------------------------------------------------------------
// Alternative lifetime families used by the power studies.
//
// Gamma, LinearFailureRate and BetaExponential are the standard laws of
// W = X - 1, so X lives on [1, inf) like the null. TiltedPareto, InverseBeta
// and Benini are [1, inf) families as written; ExtremeValue is a Gumbel on
// the whole real line and is passed through unshifted.
// ---------------------------------------------------------------------------

enum class Family {
    Pareto,
    Gamma,
    LinearFailureRate,
    BetaExponential,
    TiltedPareto,
    InverseBeta,
    Benini,
    ExtremeValue,
};

inline std::string family_name(Family f) {
    switch (f) {
        case Family::Pareto: return "Pareto";
        case Family::Gamma: return "Gamma";
        case Family::LinearFailureRate: return "LinearFailureRate";
        case Family::BetaExponential: return "BetaExponential";
        case Family::TiltedPareto: return "TiltedPareto";
        case Family::InverseBeta: return "InverseBeta";
        case Family::Benini: return "Benini";
        case Family::ExtremeValue: return "ExtremeValue";
    }
    return "?";
}

/// Short code used in table headers and CSV output (P, G, LF, BE, TP, IB, B, EV).
inline std::string family_code(Family f) {
    switch (f) {
        case Family::Pareto: return "P";
        case Family::Gamma: return "G";
        case Family::LinearFailureRate: return "LF";
        case Family::BetaExponential: return "BE";
        case Family::TiltedPareto: return "TP";
        case Family::InverseBeta: return "IB";
        case Family::Benini: return "B";
        case Family::ExtremeValue: return "EV";
    }
    return "?";
}

inline bool parse_family(std::string_view s, Family& out) {
    struct Entry { std::string_view key; Family f; };
    static constexpr Entry table[] = {
        {"Pareto", Family::Pareto}, {"P", Family::Pareto},
        {"Gamma", Family::Gamma}, {"G", Family::Gamma},
        {"LinearFailureRate", Family::LinearFailureRate}, {"LF", Family::LinearFailureRate},
        {"BetaExponential", Family::BetaExponential}, {"BE", Family::BetaExponential},
        {"TiltedPareto", Family::TiltedPareto}, {"TP", Family::TiltedPareto},
        {"InverseBeta", Family::InverseBeta}, {"IB", Family::InverseBeta},
        {"Benini", Family::Benini}, {"B", Family::Benini},
        {"ExtremeValue", Family::ExtremeValue}, {"EV", Family::ExtremeValue},
    };
    for (const auto& e : table)
        if (e.key == s) { out = e.f; return true; }
    return false;
}

/// One alternative of the comparison battery: family plus its parameter.
struct AlternativeSpec {
    Family family;
    double lambda;

    AlternativeSpec(Family f, double lam) : family(f), lambda(lam) {
        if (!(lam > 0.0) || !std::isfinite(lam))
            throw DomainError("AlternativeSpec: lambda must be a positive finite real");
    }

    std::string label() const {
        char buf[48];
        std::snprintf(buf, sizeof(buf), "%s(%g)", family_code(family).c_str(), lambda);
        return buf;
    }
};

/// One draw from the alternative. All inversions were derived from the
/// printed densities and are cross-checked against numerical CDF inversion
/// in the test suite.
inline double sample_alternative_one(const AlternativeSpec& spec, Rng& rng) {
    const double lam = spec.lambda;
    switch (spec.family) {
        case Family::Pareto:
            return pareto_sample(rng, ParetoShape(lam));
        case Family::Gamma:
            return 1.0 + rng.gamma(lam);
        case Family::LinearFailureRate: {
            // hazard 1 + lam*w; integrated hazard w + lam*w^2/2 = E ~ Exp(1)
            const double e = -std::log(rng.uniform_open());
            return 1.0 + (std::sqrt(1.0 + 2.0 * lam * e) - 1.0) / lam;
        }
        case Family::BetaExponential: {
            // F_W(w) = (1 - e^{-w})^lam
            const double u = rng.uniform_open();
            return 1.0 - std::log(1.0 - std::pow(u, 1.0 / lam));
        }
        case Family::TiltedPareto: {
            // F(x) = 1 - (1+lam)/(x+lam)
            const double u = rng.uniform();
            return (1.0 + lam) / (1.0 - u) - lam;
        }
        case Family::InverseBeta: {
            // X = 1/Y with Y ~ Beta(1, lam+1); F(x) = (1 - 1/x)^{lam+1}
            const double u = rng.uniform_open();
            return 1.0 / (1.0 - std::pow(u, 1.0 / (lam + 1.0)));
        }
        case Family::Benini: {
            // survival x^{-1} e^{-lam ln^2 x}; quadratic in s = ln x
            const double u = rng.uniform();
            const double s = (-1.0 + std::sqrt(1.0 - 4.0 * lam * std::log1p(-u))) / (2.0 * lam);
            return std::exp(s);
        }
        case Family::ExtremeValue: {
            // Gumbel(0, lam) on all of R; exact zeros are redrawn so the
            // 1/x kernels stay finite.
            for (;;) {
                const double u = rng.uniform_open();
                const double x = -lam * std::log(-std::log(u));
                if (x != 0.0) return x;
            }
        }
    }
    throw DomainError("sample_alternative_one: unknown family");
}

inline std::vector<double> sample_alternative(const AlternativeSpec& spec, std::size_t n, Rng& rng) {
    if (n < 1) throw DomainError("sample_alternative: n must be >= 1");
    std::vector<double> out(n);
    for (auto& v : out) v = sample_alternative_one(spec, rng);
    return out;
}

/// Quantile function of the alternative, where closed form exists.
/// Gamma has none; callers needing it must branch (calibration does).
inline double alternative_quantile(const AlternativeSpec& spec, double u) {
    const double lam = spec.lambda;
    switch (spec.family) {
        case Family::Pareto: return pareto_quantile(u, ParetoShape(lam));
        case Family::LinearFailureRate: {
            const double e = -std::log1p(-u);
            return 1.0 + (std::sqrt(1.0 + 2.0 * lam * e) - 1.0) / lam;
        }
        case Family::BetaExponential:
            return 1.0 - std::log(1.0 - std::pow(u, 1.0 / lam));
        case Family::TiltedPareto: return (1.0 + lam) / (1.0 - u) - lam;
        case Family::InverseBeta: return 1.0 / (1.0 - std::pow(u, 1.0 / (lam + 1.0)));
        case Family::Benini:
            return std::exp((-1.0 + std::sqrt(1.0 - 4.0 * lam * std::log1p(-u))) / (2.0 * lam));
        case Family::ExtremeValue: return -lam * std::log(-std::log(u));
        case Family::Gamma:
            throw DomainError("alternative_quantile: no closed form for Gamma");
    }
    throw DomainError("alternative_quantile: unknown family");
}

// ---------------------------------------------------------------------------
// Censoring calibration
// ---------------------------------------------------------------------------

/// Exponential censoring plan: C ~ Exp(rate_b), calibrated so that
/// P(X > C) = target_fraction under the stated lifetime law.
struct CensoringPlan {
    double rate_b;
    double target_fraction;

    double sample_censoring_time(Rng& rng) const {
        return -std::log(rng.uniform_open()) / rate_b;
    }
};

namespace detail {

/// P(X > C) for C ~ Exp(b) equals E[1 - e^{-b max(X,0)}] (C >= 0 never censors
/// a nonpositive lifetime). Evaluated by quadrature in quantile space, or in
/// closed form for Gamma where E e^{-bX} = e^{-b} (1+b)^{-lam}.
inline double censored_fraction(const AlternativeSpec& spec, double b) {
    if (spec.family == Family::Gamma)
        return 1.0 - std::exp(-b) * std::pow(1.0 + b, -spec.lambda);
    const auto integrand = [&](double u) {
        const double q = alternative_quantile(spec, u);
        return 1.0 - std::exp(-b * std::max(q, 0.0));
    };
    // endpoints: u->1 is flat (integrand -> 1); u=0 maps to the support edge.
    const double eps = 1e-12;
    return integrate(integrand, eps, 1.0 - eps, 1e-11);
}

}  // namespace detail

/// Solve for the exponential rate b with P(X > C) = target. Bracket by
/// doubling, then bisection to 1e-8 in b.
inline CensoringPlan calibrate_censoring(const AlternativeSpec& spec, double target) {
    if (!(target > 0.0 && target < 1.0))
        throw CalibrationError("calibrate_censoring: target must lie in (0, 1)");
    double lo = 1e-10, hi = 1.0;
    const auto excess = [&](double b) { return detail::censored_fraction(spec, b) - target; };
    if (excess(lo) > 0.0)
        throw CalibrationError("calibrate_censoring: target unattainable (lower bracket)");
    int doublings = 0;
    while (excess(hi) < 0.0) {
        hi *= 2.0;
        if (++doublings > 60)
            throw CalibrationError("calibrate_censoring: target unattainable (no upper bracket)");
    }
    const double b = bisect(excess, lo, hi, 1e-8);
    return CensoringPlan{b, target};
}

}  // namespace pgof
