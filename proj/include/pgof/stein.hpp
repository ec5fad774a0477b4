#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "pgof/distributions.hpp"
#include "pgof/errors.hpp"

namespace pgof {

enum class SteinKind { IntegralType, CvMType };

/// Value of one of the two test statistics together with the shape estimate
/// it was computed under.
struct SteinStatistic {
    double value;
    ParetoShape alpha_hat;
    std::size_t n;
    SteinKind kind;
};

namespace detail {

/// Compensated (Kahan) accumulator; fast paths sum in sorted order with it.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double v) {
        const double y = v - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }

    double value() const { return sum; }
};

/// Unhalved pair kernel: (b/a)I(b<a) + (a/b)I(a<b) - 1/a - 1/b.
/// Strict inequalities as printed; a tie contributes only the -1/x terms.
inline double pair_bracket(double a, double b) {
    double r = -1.0 / a - 1.0 / b;
    if (b < a)
        r += b / a;
    else if (a < b)
        r += a / b;
    return r;
}

/// sum_{j<i} bracket(x_i, x_j) * w_i * w_j; empty weights mean w == 1.
inline double weighted_pair_sum(std::span<const double> x, std::span<const double> w) {
    const std::size_t n = x.size();
    double s = 0.0;
    if (w.empty()) {
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) s += pair_bracket(x[i], x[j]);
    } else {
        for (std::size_t i = 1; i < n; ++i) {
            if (w[i] == 0.0) continue;
            for (std::size_t j = 0; j < i; ++j)
                if (w[j] != 0.0) s += pair_bracket(x[i], x[j]) * w[i] * w[j];
        }
    }
    return s;
}

/// Unhalved degree-3 kernels of the CvM-type statistic.
inline double triple_min_kernel(double a, double b, double c) {
    const double mab = std::min(a, b) - 1.0;
    const double mac = std::min(a, c) - 1.0;
    const double mbc = std::min(b, c) - 1.0;
    return mac * mbc / (a * b) + mab * mbc / (a * c) + mab * mac / (b * c);
}

inline double triple_max_kernel(double a, double b, double c) {
    double r = 0.0;
    const double mab = std::max(a, b);
    const double mac = std::max(a, c);
    const double mbc = std::max(b, c);
    if (mab <= c) r += mab / c;  // non-strict as printed
    if (mac <= b) r += mac / b;
    if (mbc <= a) r += mbc / a;
    return r;
}

struct TripleSums {
    double min_sum;  // sum_{k<j<i} triple_min_kernel * weights
    double max_sum;  // sum_{k<j<i} triple_max_kernel * weights
};

inline TripleSums weighted_triple_sums(std::span<const double> x, std::span<const double> w) {
    const std::size_t n = x.size();
    TripleSums out{0.0, 0.0};
    if (w.empty()) {
        for (std::size_t i = 2; i < n; ++i)
            for (std::size_t j = 1; j < i; ++j)
                for (std::size_t k = 0; k < j; ++k) {
                    out.min_sum += triple_min_kernel(x[i], x[j], x[k]);
                    out.max_sum += triple_max_kernel(x[i], x[j], x[k]);
                }
    } else {
        for (std::size_t i = 2; i < n; ++i) {
            if (w[i] == 0.0) continue;
            for (std::size_t j = 1; j < i; ++j) {
                if (w[j] == 0.0) continue;
                const double wij = w[i] * w[j];
                for (std::size_t k = 0; k < j; ++k) {
                    if (w[k] == 0.0) continue;
                    out.min_sum += triple_min_kernel(x[i], x[j], x[k]) * wij * w[k];
                    out.max_sum += triple_max_kernel(x[i], x[j], x[k]) * wij * w[k];
                }
            }
        }
    }
    return out;
}

inline void require_nonzero(std::span<const double> x) {
    for (double v : x)
        if (v == 0.0) throw DomainError("stein kernel: zero-valued observation");
}

}  // namespace detail

/// Symmetric pair kernel h1; h1(x, x) = -1/x.
inline double kernel_h1_pair(double x1, double x2) {
    if (x1 == 0.0 || x2 == 0.0) throw DomainError("kernel_h1_pair: zero argument");
    return 0.5 * detail::pair_bracket(x1, x2);
}

/// Integral-type statistic (alpha+1) U + alpha/2 with the naive O(n^2) sum.
inline SteinStatistic delta_I(std::span<const double> x, ParetoShape alpha) {
    const std::size_t n = x.size();
    if (n < 2) throw DomainError("delta_I: need n >= 2");
    detail::require_nonzero(x);
    const double nn = static_cast<double>(n) * static_cast<double>(n - 1);
    const double ustar = detail::weighted_pair_sum(x, {}) / nn;
    return {(alpha.alpha + 1.0) * ustar + alpha.alpha / 2.0, alpha, n, SteinKind::IntegralType};
}

/// CvM-type statistic, naive O(n^3) triple enumeration.
inline SteinStatistic delta_M(std::span<const double> x, ParetoShape alpha) {
    const std::size_t n = x.size();
    if (n < 3) throw DomainError("delta_M: need n >= 3");
    detail::require_nonzero(x);
    const auto sums = detail::weighted_triple_sums(x, {});
    const double norm = static_cast<double>(n) * static_cast<double>(n - 1) * static_cast<double>(n - 2);
    const double u1 = 2.0 * sums.min_sum / norm;
    const double u2 = 2.0 * sums.max_sum / norm;
    double inv = 0.0;
    for (double v : x) inv += 1.0 / v;
    const double u3 = inv / static_cast<double>(n);
    const double a = alpha.alpha;
    const double value = (a + 1.0) * (a + 1.0) * u1 - (a + 1.0) * (u2 - u3) - (2.0 * a + 1.0) / 3.0;
    return {value, alpha, n, SteinKind::CvMType};
}

/// O(n log n) evaluation of delta_I. Sorting makes the strict-inequality
/// ratio term a prefix sum: each sorted x_(j) pairs with the strictly
/// smaller prefix, and ties contribute nothing to the ratio.
inline SteinStatistic delta_I_fast(std::span<const double> x, ParetoShape alpha) {
    const std::size_t n = x.size();
    if (n < 2) throw DomainError("delta_I_fast: need n >= 2");
    detail::require_nonzero(x);
    std::vector<double> s(x.begin(), x.end());
    std::sort(s.begin(), s.end());

    detail::KahanSum ratio, invsum;
    double prefix = 0.0;          // sum of values in completed tie groups
    double group_start_prefix = 0.0;
    std::size_t group_begin = 0;
    detail::KahanSum running;     // full prefix sum including current group
    for (std::size_t j = 0; j < n; ++j) {
        if (s[j] != s[group_begin]) {
            group_begin = j;
            group_start_prefix = running.value();
        }
        prefix = group_start_prefix;
        ratio.add(prefix / s[j]);
        invsum.add(1.0 / s[j]);
        running.add(s[j]);
    }
    const double total = ratio.value() - static_cast<double>(n - 1) * invsum.value();
    const double nn = static_cast<double>(n) * static_cast<double>(n - 1);
    const double ustar = total / nn;
    return {(alpha.alpha + 1.0) * ustar + alpha.alpha / 2.0, alpha, n, SteinKind::IntegralType};
}

/// O(n log n) evaluation of delta_M via sorted prefix aggregates.
///
/// U1: conditioning on the pivot p that appears inside both min() factors,
///     the other two indices contribute g_p(x) = (min(x, x_p) - 1)/x, and the
///     pair sum over them is (S1^2 - S2)/2 with S1, S2 the first two power
///     sums of g_p over the rest of the sample.
/// U2: max(x_i, x_j) <= x_k means both lie in the sorted prefix of x_k, so
///     the inner sum of maxima is the rank-weighted prefix sum W(r) minus the
///     pairs that would use x_k itself.
inline SteinStatistic delta_M_fast(std::span<const double> x, ParetoShape alpha) {
    const std::size_t n = x.size();
    if (n < 3) throw DomainError("delta_M_fast: need n >= 3");
    detail::require_nonzero(x);
    std::vector<double> s(x.begin(), x.end());
    std::sort(s.begin(), s.end());

    std::vector<double> cuminv(n), cuminv2(n), rank_weighted(n);
    {
        detail::KahanSum a, b, c;
        for (std::size_t j = 0; j < n; ++j) {
            a.add(1.0 / s[j]);
            b.add(1.0 / (s[j] * s[j]));
            c.add(static_cast<double>(j) * s[j]);
            cuminv[j] = a.value();
            cuminv2[j] = b.value();
            rank_weighted[j] = c.value();
        }
    }
    const double total_inv = cuminv[n - 1];
    const double total_inv2 = cuminv2[n - 1];

    // ranks r_p = #{x_i <= x_p}: end of the tie group, 1-based
    std::vector<std::size_t> rank(n);
    for (std::size_t j = 0; j < n;) {
        std::size_t e = j;
        while (e < n && s[e] == s[j]) ++e;
        for (std::size_t t = j; t < e; ++t) rank[t] = e;
        j = e;
    }

    detail::KahanSum min_acc, max_acc;
    for (std::size_t p = 0; p < n; ++p) {
        const double v = s[p];
        const std::size_t r = rank[p];
        const double rd = static_cast<double>(r);
        const double ci = cuminv[r - 1], ci2 = cuminv2[r - 1];
        const double own = 1.0 - 1.0 / v;
        const double s1 = (rd - ci) - own + (v - 1.0) * (total_inv - ci);
        const double s2 = (rd - 2.0 * ci + ci2) - own * own +
                          (v - 1.0) * (v - 1.0) * (total_inv2 - ci2);
        min_acc.add(0.5 * (s1 * s1 - s2));
        // pairs {i, j} != p with max <= v, weighted by their max
        const double pair_max = rank_weighted[r - 1] - v * (rd - 1.0);
        max_acc.add(pair_max / v);
    }

    const double norm = static_cast<double>(n) * static_cast<double>(n - 1) * static_cast<double>(n - 2);
    const double u1 = 2.0 * min_acc.value() / norm;
    const double u2 = 2.0 * max_acc.value() / norm;
    const double u3 = total_inv / static_cast<double>(n);
    const double a = alpha.alpha;
    const double value = (a + 1.0) * (a + 1.0) * u1 - (a + 1.0) * (u2 - u3) - (2.0 * a + 1.0) / 3.0;
    return {value, alpha, n, SteinKind::CvMType};
}

}  // namespace pgof
