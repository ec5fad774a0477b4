#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "pgof/distributions.hpp"
#include "pgof/errors.hpp"

namespace pgof {

/// Right-censored sample: pairs (Y_i, delta_i) with delta_i = 1 for an
/// observed event and 0 for a censoring.
struct CensoredSample {
    std::vector<double> times;
    std::vector<char> events;

    std::size_t size() const { return times.size(); }

    std::size_t event_count() const {
        return static_cast<std::size_t>(std::count(events.begin(), events.end(), char(1)));
    }

    /// Structural checks only; the statistics enforce their own event-count
    /// preconditions (the product-limit estimator is defined without events).
    void validate() const {
        if (times.size() != events.size())
            throw DomainError("CensoredSample: times/events length mismatch");
        if (times.size() < 2)
            throw DomainError("CensoredSample: need at least 2 observations");
        for (double t : times)
            if (!(t > 0.0) || !std::isfinite(t))
                throw DomainError("CensoredSample: times must be positive finite reals");
    }
};

inline double sample_mean(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

/// Moment estimator alpha = mean/(mean - 1); requires mean > 1.
inline ParetoShape moment_alpha(std::span<const double> x) {
    if (x.size() < 2) throw DomainError("moment_alpha: need n >= 2");
    const double m = sample_mean(x);
    if (!(m > 1.0))
        throw EstimationError("moment_alpha: sample mean <= 1, estimator undefined");
    return ParetoShape(m / (m - 1.0));
}

/// Clamped variant used by simulation loops: a mean <= 1 is clamped to
/// 1 + 1e-9 and the replication flagged instead of aborting the study.
inline ParetoShape moment_alpha_clamped(std::span<const double> x, bool& flagged) {
    const double m = sample_mean(x);
    flagged = !(m > 1.0);
    const double mc = flagged ? 1.0 + 1e-9 : m;
    return ParetoShape(mc / (mc - 1.0));
}

// ---------------------------------------------------------------------------
// Product-limit estimator of the censoring survival function.
//
// Censorings (delta = 0) are the deaths of this process:
//   S_c(t) = prod_{t_i <= t} (1 - Nc(t_i)/R(t_i)),  R(t) = #{Y_j >= t}.
// Both the right-continuous value and the left limit are exposed; weights use
// the left limit S_c(Y-), which excludes an observation's own jump under the
// events-before-censorings tie order.
// ---------------------------------------------------------------------------

class CensoringSurvival {
  public:
    CensoringSurvival() = default;

    CensoringSurvival(std::vector<double> jump_times, std::vector<double> survival_values)
        : jump_times_(std::move(jump_times)), survival_values_(std::move(survival_values)) {}

    /// S_c(t), right-continuous (jump at t included).
    double value_at(double t) const {
        const auto it = std::upper_bound(jump_times_.begin(), jump_times_.end(), t);
        if (it == jump_times_.begin()) return 1.0;
        return survival_values_[static_cast<std::size_t>(it - jump_times_.begin()) - 1];
    }

    /// S_c(t-), the left limit (jumps strictly before t).
    double left_limit(double t) const {
        const auto it = std::lower_bound(jump_times_.begin(), jump_times_.end(), t);
        if (it == jump_times_.begin()) return 1.0;
        return survival_values_[static_cast<std::size_t>(it - jump_times_.begin()) - 1];
    }

    const std::vector<double>& jump_times() const { return jump_times_; }
    const std::vector<double>& survival_values() const { return survival_values_; }

  private:
    std::vector<double> jump_times_;      // distinct censoring times, ascending
    std::vector<double> survival_values_; // value at and after each jump
};

inline CensoringSurvival censoring_km(const CensoredSample& s) {
    s.validate();
    const std::size_t n = s.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (s.times[a] != s.times[b]) return s.times[a] < s.times[b];
        return s.events[a] > s.events[b];  // events before censorings
    });

    std::vector<double> jt, jv;
    double surv = 1.0;
    std::size_t k = 0;
    while (k < n) {
        const double t = s.times[idx[k]];
        std::size_t ncens = 0, group = 0;
        while (k + group < n && s.times[idx[k + group]] == t) {
            if (!s.events[idx[k + group]]) ++ncens;
            ++group;
        }
        if (ncens > 0) {
            const double at_risk = static_cast<double>(n - k);  // #{Y >= t}
            surv *= 1.0 - static_cast<double>(ncens) / at_risk;
            jt.push_back(t);
            jv.push_back(surv);
        }
        k += group;
    }
    return CensoringSurvival(std::move(jt), std::move(jv));
}

/// IPCW weights delta_i / S_c(Y_i-); a censored term contributes 0 regardless
/// of the survival value.
inline std::vector<double> ipcw_weights(const CensoredSample& s, const CensoringSurvival& sc) {
    const std::size_t n = s.size();
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!s.events[i]) continue;
        const double denom = sc.left_limit(s.times[i]);
        if (denom <= 0.0)
            throw EstimationError("ipcw_weights: event with zero censoring-survival weight");
        w[i] = 1.0 / denom;
    }
    return w;
}

/// Censored mean X_c = (1/n) sum Y_i delta_i / S_c(Y_i-). Reduces exactly to
/// the arithmetic mean when every delta is 1.
inline double ipcw_mean(const CensoredSample& s, const CensoringSurvival& sc) {
    const auto w = ipcw_weights(s, sc);
    double total = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (w[i] != 0.0) any = true;
        total += s.times[i] * w[i];
    }
    if (!any) throw EstimationError("ipcw_mean: all weights zero");
    return total / static_cast<double>(s.size());
}

inline ParetoShape moment_alpha_censored(const CensoredSample& s) {
    const auto sc = censoring_km(s);
    const double m = ipcw_mean(s, sc);
    if (!(m > 1.0))
        throw EstimationError("moment_alpha_censored: censored mean <= 1, estimator undefined");
    return ParetoShape(m / (m - 1.0));
}

inline ParetoShape moment_alpha_censored_clamped(const CensoredSample& s,
                                                 const CensoringSurvival& sc, bool& flagged) {
    const double m = ipcw_mean(s, sc);
    flagged = !(m > 1.0);
    const double mc = flagged ? 1.0 + 1e-9 : m;
    return ParetoShape(mc / (mc - 1.0));
}

}  // namespace pgof
