#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "pgof/distributions.hpp"
#include "pgof/errors.hpp"
#include "pgof/registry.hpp"
#include "pgof/resampling.hpp"
#include "pgof/stein_censored.hpp"

namespace pgof {

/// Declarative description of a size/power study.
struct ExperimentConfig {
    std::vector<std::size_t> sample_sizes;
    std::vector<AlternativeSpec> alternatives;
    std::vector<std::string> tests;
    double level = 0.05;
    std::size_t replications = 1000;
    std::vector<double> censoring_fractions;  // empty = complete-data study
    std::uint64_t seed = 1;
    std::size_t parallelism = 0;              // 0 = auto
    std::size_t critval_reps = 10000;

    bool censored() const { return !censoring_fractions.empty(); }
};

struct PowerCell {
    Family family;
    double lambda;
    std::size_t n;
    std::string test;
    std::optional<double> censoring;
    double rejection_rate;
    std::size_t flagged;
    std::size_t reps;
    bool failed = false;  // calibration failure; rate meaningless
};

struct PowerTable {
    std::vector<PowerCell> cells;
    ExperimentConfig config;
    double wall_seconds = 0.0;
};

namespace detail {

// Replicate streams are keyed by (alt, n, rep) so results do not depend on
// the scheduling of work units.
inline std::uint64_t rep_stream_key(std::size_t alt_idx, std::size_t n_idx, std::size_t rep) {
    return (static_cast<std::uint64_t>(alt_idx) << 42) ^
           (static_cast<std::uint64_t>(n_idx) << 32) ^ static_cast<std::uint64_t>(rep);
}

inline std::uint64_t critval_stream_key(std::size_t test_idx, std::size_t n_idx) {
    return 0x4352495456ULL ^ (static_cast<std::uint64_t>(test_idx) << 20) ^
           static_cast<std::uint64_t>(n_idx);
}

template <typename Work>
void run_parallel(std::size_t units, std::size_t threads, const Work& work) {
    if (threads <= 1 || units <= 1) {
        for (std::size_t u = 0; u < units; ++u) work(u);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t u = next.fetch_add(1);
                if (u >= units) return;
                work(u);
            }
        });
    for (auto& th : pool) th.join();
}

constexpr std::size_t kRepBlock = 64;

}  // namespace detail

/// Collect every config violation into one error message; nothing runs
/// unless the config is fully valid.
inline void validate_config(const ExperimentConfig& cfg) {
    std::vector<std::string> problems;
    if (cfg.sample_sizes.empty()) problems.push_back("sample_sizes is empty");
    for (std::size_t n : cfg.sample_sizes)
        if (n < 3) problems.push_back("sample size " + std::to_string(n) + " is below 3");
    if (cfg.alternatives.empty()) problems.push_back("alternatives is empty");
    if (cfg.tests.empty()) problems.push_back("tests is empty");
    for (const auto& t : cfg.tests) {
        if (cfg.censored()) {
            if (t != "delta_I" && t != "delta_M")
                problems.push_back("censored study supports only delta_I/delta_M, got " + t);
        } else if (!find_statistic(t)) {
            problems.push_back("unknown test " + t);
        }
    }
    if (!(cfg.level > 0.0 && cfg.level < 1.0)) problems.push_back("level must lie in (0,1)");
    if (cfg.replications < 100) problems.push_back("replications must be >= 100");
    if (cfg.critval_reps < 1000) problems.push_back("critval_reps must be >= 1000");
    for (double f : cfg.censoring_fractions)
        if (!(f > 0.0 && f < 1.0)) problems.push_back("censoring fraction must lie in (0,1)");
    if (!problems.empty()) {
        std::string msg = "invalid experiment config:";
        for (const auto& p : problems) msg += "\n  - " + p;
        throw ConfigError(msg);
    }
}

/// Complete-data size/power study. Decisions use fixed-null Monte Carlo
/// critical values; the null generator shape is matched to the alternative
/// when the alternative itself is Pareto (size rows are then nominal by
/// construction), and is 1 otherwise.
inline PowerTable run_power_study(const ExperimentConfig& cfg) {
    validate_config(cfg);
    if (cfg.censored()) throw ConfigError("run_power_study: config has censoring fractions");
    const auto t0 = std::chrono::steady_clock::now();

    std::vector<const StatisticDef*> defs;
    for (const auto& t : cfg.tests) defs.push_back(find_statistic(t));

    // critical values per (test, n, null alpha)
    std::vector<double> null_alphas{1.0};
    for (const auto& alt : cfg.alternatives)
        if (alt.family == Family::Pareto) null_alphas.push_back(alt.lambda);
    std::map<std::tuple<std::size_t, std::size_t, double>, CriticalValues> critvals;
    for (std::size_t ti = 0; ti < defs.size(); ++ti)
        for (std::size_t ni = 0; ni < cfg.sample_sizes.size(); ++ni)
            for (double a : null_alphas) {
                const auto key = std::make_tuple(ti, ni, a);
                if (critvals.count(key)) continue;
                const std::uint64_t sd =
                    splitmix64(cfg.seed) ^ detail::critval_stream_key(ti, ni) ^
                    std::hash<double>{}(a);
                critvals.emplace(key, fixed_null_critvals(
                                          cfg.sample_sizes[ni],
                                          [&, ti](std::span<const double> x, ParetoShape al) {
                                              return defs[ti]->fn(x, al);
                                          },
                                          defs[ti]->two_sided, cfg.level, cfg.critval_reps, sd, a));
            }

    const std::size_t n_alt = cfg.alternatives.size();
    const std::size_t n_sizes = cfg.sample_sizes.size();
    const std::size_t blocks =
        (cfg.replications + detail::kRepBlock - 1) / detail::kRepBlock;
    const std::size_t units = n_alt * n_sizes * blocks;

    struct BlockResult {
        std::vector<std::size_t> rejections;  // per test
        std::size_t flagged = 0;
    };
    std::vector<BlockResult> results(units);
    for (auto& r : results) r.rejections.assign(defs.size(), 0);

    const std::size_t threads =
        cfg.parallelism ? cfg.parallelism : std::max(1u, std::thread::hardware_concurrency());

    detail::run_parallel(units, threads, [&](std::size_t u) {
        const std::size_t ai = u / (n_sizes * blocks);
        const std::size_t ni = (u / blocks) % n_sizes;
        const std::size_t block = u % blocks;
        const auto& alt = cfg.alternatives[ai];
        const std::size_t n = cfg.sample_sizes[ni];
        const double null_alpha = alt.family == Family::Pareto ? alt.lambda : 1.0;
        auto& out = results[u];
        const std::size_t rep_lo = block * detail::kRepBlock;
        const std::size_t rep_hi = std::min(rep_lo + detail::kRepBlock, cfg.replications);
        for (std::size_t rep = rep_lo; rep < rep_hi; ++rep) {
            Rng rng = Rng::stream(cfg.seed, detail::rep_stream_key(ai, ni, rep));
            const auto x = sample_alternative(alt, n, rng);
            bool rep_flagged = false;
            const ParetoShape alpha = moment_alpha_clamped(x, rep_flagged);
            for (std::size_t ti = 0; ti < defs.size(); ++ti) {
                const auto& cv = critvals.at(std::make_tuple(ti, ni, null_alpha));
                bool reject;
                try {
                    reject = cv.rejects(defs[ti]->fn(x, alpha));
                } catch (const DomainError&) {
                    // sample outside the null support (e.g. nonpositive EV
                    // draws): incompatible with H0, counted as a rejection
                    reject = true;
                    rep_flagged = true;
                }
                if (reject) ++out.rejections[ti];
            }
            if (rep_flagged) ++out.flagged;
        }
    });

    PowerTable table;
    table.config = cfg;
    for (std::size_t ai = 0; ai < n_alt; ++ai)
        for (std::size_t ni = 0; ni < n_sizes; ++ni)
            for (std::size_t ti = 0; ti < defs.size(); ++ti) {
                std::size_t rej = 0, flagged = 0;
                for (std::size_t b = 0; b < blocks; ++b) {
                    const auto& r = results[(ai * n_sizes + ni) * blocks + b];
                    rej += r.rejections[ti];
                    if (ti == 0) flagged += r.flagged;
                }
                PowerCell cell{cfg.alternatives[ai].family,
                               cfg.alternatives[ai].lambda,
                               cfg.sample_sizes[ni],
                               std::string(defs[ti]->name),
                               std::nullopt,
                               static_cast<double>(rej) / static_cast<double>(cfg.replications),
                               flagged,
                               cfg.replications};
                table.cells.push_back(std::move(cell));
            }
    table.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return table;
}

/// Censored-data study: lifetimes from the alternative, censoring times
/// exponential with the rate calibrated per (alternative, fraction), and the
/// asymptotic normal decision rules.
inline PowerTable run_censored_power_study(const ExperimentConfig& cfg) {
    validate_config(cfg);
    if (!cfg.censored())
        throw ConfigError("run_censored_power_study: config lacks censoring fractions");
    const auto t0 = std::chrono::steady_clock::now();

    const std::size_t n_alt = cfg.alternatives.size();
    const std::size_t n_sizes = cfg.sample_sizes.size();
    const std::size_t n_frac = cfg.censoring_fractions.size();

    // calibrate upfront; a failure marks the alternative/fraction pair failed
    std::vector<std::optional<CensoringPlan>> plans(n_alt * n_frac);
    for (std::size_t ai = 0; ai < n_alt; ++ai)
        for (std::size_t fi = 0; fi < n_frac; ++fi) {
            try {
                plans[ai * n_frac + fi] =
                    calibrate_censoring(cfg.alternatives[ai], cfg.censoring_fractions[fi]);
            } catch (const CalibrationError&) {
                plans[ai * n_frac + fi] = std::nullopt;
            }
        }

    const std::size_t blocks =
        (cfg.replications + detail::kRepBlock - 1) / detail::kRepBlock;
    const std::size_t units = n_alt * n_frac * n_sizes * blocks;

    struct BlockResult {
        std::vector<std::size_t> rejections;
        std::size_t flagged = 0;
    };
    std::vector<BlockResult> results(units);
    for (auto& r : results) r.rejections.assign(cfg.tests.size(), 0);

    const std::size_t threads =
        cfg.parallelism ? cfg.parallelism : std::max(1u, std::thread::hardware_concurrency());

    detail::run_parallel(units, threads, [&](std::size_t u) {
        std::size_t rest = u;
        const std::size_t ai = rest / (n_frac * n_sizes * blocks);
        rest %= n_frac * n_sizes * blocks;
        const std::size_t fi = rest / (n_sizes * blocks);
        rest %= n_sizes * blocks;
        const std::size_t ni = rest / blocks;
        const std::size_t block = rest % blocks;
        const auto& plan = plans[ai * n_frac + fi];
        if (!plan) return;
        const auto& alt = cfg.alternatives[ai];
        const std::size_t n = cfg.sample_sizes[ni];
        auto& out = results[u];
        const std::size_t rep_lo = block * detail::kRepBlock;
        const std::size_t rep_hi = std::min(rep_lo + detail::kRepBlock, cfg.replications);
        for (std::size_t rep = rep_lo; rep < rep_hi; ++rep) {
            Rng rng = Rng::stream(cfg.seed, detail::rep_stream_key(ai * n_frac + fi, ni, rep));
            CensoredSample s;
            s.times.resize(n);
            s.events.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                const double x = sample_alternative_one(alt, rng);
                const double c = plan->sample_censoring_time(rng);
                s.times[i] = std::min(x, c);
                s.events[i] = x <= c ? 1 : 0;
            }
            for (std::size_t ti = 0; ti < cfg.tests.size(); ++ti) {
                bool reject;
                bool clamped = false;
                try {
                    const auto outc = cfg.tests[ti] == "delta_I"
                                          ? delta_I_censored(s, cfg.level)
                                          : delta_M_censored(s, cfg.level);
                    reject = outc.reject;
                    clamped = outc.clamped;
                } catch (const std::exception&) {
                    // nonpositive observed times or too few events
                    reject = true;
                    clamped = true;
                }
                if (reject) ++out.rejections[ti];
                if (clamped && ti == 0) ++out.flagged;
            }
        }
    });

    PowerTable table;
    table.config = cfg;
    for (std::size_t ai = 0; ai < n_alt; ++ai)
        for (std::size_t fi = 0; fi < n_frac; ++fi)
            for (std::size_t ni = 0; ni < n_sizes; ++ni)
                for (std::size_t ti = 0; ti < cfg.tests.size(); ++ti) {
                    std::size_t rej = 0, flagged = 0;
                    for (std::size_t b = 0; b < blocks; ++b) {
                        const auto& r =
                            results[((ai * n_frac + fi) * n_sizes + ni) * blocks + b];
                        rej += r.rejections[ti];
                        if (ti == 0) flagged += r.flagged;
                    }
                    PowerCell cell{cfg.alternatives[ai].family,
                                   cfg.alternatives[ai].lambda,
                                   cfg.sample_sizes[ni],
                                   cfg.tests[ti],
                                   cfg.censoring_fractions[fi],
                                   static_cast<double>(rej) /
                                       static_cast<double>(cfg.replications),
                                   flagged,
                                   cfg.replications,
                                   !plans[ai * n_frac + fi].has_value()};
                    table.cells.push_back(std::move(cell));
                }
    table.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return table;
}

inline PowerTable run_study(const ExperimentConfig& cfg) {
    return cfg.censored() ? run_censored_power_study(cfg) : run_power_study(cfg);
}

// ---------------------------------------------------------------------------
// Report writers
// ---------------------------------------------------------------------------

inline void write_power_csv(const PowerTable& table, std::ostream& os) {
    os << "alternative,lambda,n,test,censoring,rejection_rate,flagged,reps,seed\n";
    char buf[64];
    for (const auto& c : table.cells) {
        os << family_code(c.family) << ',';
        std::snprintf(buf, sizeof(buf), "%.17g", c.lambda);
        os << buf << ',' << c.n << ',' << c.test << ',';
        if (c.censoring) {
            std::snprintf(buf, sizeof(buf), "%.17g", *c.censoring);
            os << buf;
        }
        os << ',';
        if (c.failed) {
            os << "failed";
        } else {
            std::snprintf(buf, sizeof(buf), "%.17g", c.rejection_rate);
            os << buf;
        }
        os << ',' << c.flagged << ',' << c.reps << ',' << table.config.seed << '\n';
    }
}

/// Aligned text report, one row per (alternative, n[, censoring]), one column
/// per test; 6 significant digits.
inline void write_power_text(const PowerTable& table, std::ostream& os) {
    std::vector<std::string> tests = table.config.tests;
    os << "rejection rates (level " << table.config.level << ", " << table.config.replications
       << " replications, seed " << table.config.seed << ")\n\n";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%-12s %-5s %-6s", "alternative", "n", "cens");
    os << buf;
    for (const auto& t : tests) {
        std::snprintf(buf, sizeof(buf), " %10s", t.c_str());
        os << buf;
    }
    os << '\n';
    for (std::size_t i = 0; i < table.cells.size(); i += tests.size()) {
        const auto& first = table.cells[i];
        const AlternativeSpec spec(first.family, first.lambda);
        std::snprintf(buf, sizeof(buf), "%-12s %-5zu", spec.label().c_str(), first.n);
        os << buf;
        if (first.censoring)
            std::snprintf(buf, sizeof(buf), " %-5.2f", *first.censoring);
        else
            std::snprintf(buf, sizeof(buf), " %-5s", "-");
        os << buf;
        for (std::size_t t = 0; t < tests.size(); ++t) {
            const auto& c = table.cells[i + t];
            if (c.failed)
                std::snprintf(buf, sizeof(buf), " %10s", "failed");
            else
                std::snprintf(buf, sizeof(buf), " %10.6g", c.rejection_rate);
            os << buf;
        }
        os << '\n';
    }
    std::snprintf(buf, sizeof(buf), "\nwall time: %.6g s\n", table.wall_seconds);
    os << buf;
}

}  // namespace pgof
