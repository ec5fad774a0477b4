#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>

#include "pgof/resampling.hpp"

namespace pgof {

/// Disk-backed table of fixed-null critical values, keyed by
/// (statistic, n, level, reps, seed). Plain CSV so entries survive across
/// runs and can be inspected by hand.
class CritvalCache {
  public:
    explicit CritvalCache(std::filesystem::path file) : file_(std::move(file)) { load(); }

    std::optional<CriticalValues> find(const std::string& statistic, std::size_t n, double level,
                                       std::size_t reps, std::uint64_t seed, bool two_sided) const {
        const auto it = entries_.find(key(statistic, n, level, reps, seed));
        if (it == entries_.end()) return std::nullopt;
        CriticalValues cv{two_sided ? CritvalKind::TwoSidedC1C2 : CritvalKind::OneSidedC3,
                          std::nullopt, it->second.upper, level, reps,
                          CritvalMethod::FixedNullMonteCarlo, seed};
        if (two_sided) cv.lower = it->second.lower;
        return cv;
    }

    void insert(const std::string& statistic, std::size_t n, const CriticalValues& cv) {
        Row row{cv.lower.value_or(std::numeric_limits<double>::quiet_NaN()), cv.upper,
                cv.kind == CritvalKind::TwoSidedC1C2};
        entries_[key(statistic, n, cv.level, cv.replications, cv.seed)] = row;
        save();
    }

    const std::filesystem::path& path() const { return file_; }

  private:
    struct Row {
        double lower;
        double upper;
        bool has_lower;
    };

    static std::string key(const std::string& statistic, std::size_t n, double level,
                           std::size_t reps, std::uint64_t seed) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%s,%zu,%.17g,%zu,%llu", statistic.c_str(), n, level, reps,
                      static_cast<unsigned long long>(seed));
        return buf;
    }

    void load() {
        std::ifstream in(file_);
        if (!in) return;
        std::string line;
        std::getline(in, line);  // header
        while (std::getline(in, line)) {
            std::stringstream ss(line);
            std::string statistic, n_s, level_s, reps_s, seed_s, lower_s, upper_s;
            if (!std::getline(ss, statistic, ',') || !std::getline(ss, n_s, ',') ||
                !std::getline(ss, level_s, ',') || !std::getline(ss, reps_s, ',') ||
                !std::getline(ss, seed_s, ',') || !std::getline(ss, lower_s, ',') ||
                !std::getline(ss, upper_s, ','))
                continue;
            Row row{};
            row.has_lower = !lower_s.empty();
            row.lower = row.has_lower ? std::stod(lower_s) : std::numeric_limits<double>::quiet_NaN();
            row.upper = std::stod(upper_s);
            char buf[160];
            std::snprintf(buf, sizeof(buf), "%s,%zu,%.17g,%zu,%llu", statistic.c_str(),
                          static_cast<std::size_t>(std::stoull(n_s)), std::stod(level_s),
                          static_cast<std::size_t>(std::stoull(reps_s)),
                          static_cast<unsigned long long>(std::stoull(seed_s)));
            entries_[buf] = row;
        }
    }

    void save() const {
        if (file_.has_parent_path()) std::filesystem::create_directories(file_.parent_path());
        std::ofstream out(file_, std::ios::trunc);
        out << "statistic,n,level,reps,seed,lower,upper\n";
        for (const auto& [k, row] : entries_) {
            char lower[40] = "";
            if (row.has_lower) std::snprintf(lower, sizeof(lower), "%.17g", row.lower);
            char upper[40];
            std::snprintf(upper, sizeof(upper), "%.17g", row.upper);
            out << k << ',' << lower << ',' << upper << '\n';
        }
    }

    std::filesystem::path file_;
    std::map<std::string, Row> entries_;
};

}  // namespace pgof
