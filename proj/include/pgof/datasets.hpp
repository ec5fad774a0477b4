#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "pgof/errors.hpp"
#include "pgof/estimation.hpp"

namespace pgof {

/// Exceedances of Wheaton River flood maxima, 72 values (m^3/s).
inline const std::vector<double>& wheaton_data() {
    static const std::vector<double> data = {
        1.7,  2.2,  14.4, 1.1,  0.4,  20.6, 5.3,  0.7,  13.0, 12.0, 9.3,  1.4,
        18.7, 8.5,  25.5, 11.6, 14.1, 22.1, 1.1,  2.5,  14.4, 1.7,  37.6, 0.6,
        2.2,  39.0, 0.3,  15.0, 11.0, 7.3,  22.9, 1.7,  0.1,  1.1,  0.6,  9.0,
        1.7,  7.0,  20.1, 0.4,  14.1, 9.9,  10.4, 10.7, 30.0, 3.6,  5.6,  30.8,
        13.3, 4.2,  25.5, 3.4,  11.9, 21.5, 27.6, 36.4, 2.7,  64.0, 1.5,  2.5,
        27.4, 1.0,  27.1, 20.2, 16.8, 5.3,  9.7,  27.5, 2.5,  27.0, 1.9,  2.8};
    return data;
}

/// De-grouped wind-catastrophe costs, 40 values (million USD).
inline const std::vector<double>& wind_data() {
    static const std::vector<double> data = {
        1.58, 1.65, 1.73, 1.81, 1.88,  1.96,  2.04,  2.12,  2.19,  2.27,
        2.35, 2.42, 2.70, 2.90, 3.10,  3.30,  3.75,  4.00,  4.25,  4.70,
        4.90, 5.10, 5.30, 5.70, 5.90,  6.10,  6.30,  7.83,  8.17,  9.00,
        15.00, 17.00, 22.00, 23.00, 23.83, 24.17, 25.00, 27.00, 32.00, 43.00};
    return data;
}

/// Canonical text form used both for export and for checksumming: one value
/// per line, shortest round-trip representation.
inline std::string dataset_text(const std::vector<double>& values) {
    std::string out;
    char buf[40];
    for (double v : values) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out += buf;
        out += '\n';
    }
    return out;
}

/// FNV-1a over the canonical text; drift in the embedded data fails tests.
inline std::uint64_t dataset_checksum(const std::vector<double>& values) {
    const std::string text = dataset_text(values);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Complete-data file: one value per line (single-column CSV); an optional
/// non-numeric header line is skipped.
inline std::vector<double> parse_complete_file(std::istream& in) {
    std::vector<double> out;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        char* end = nullptr;
        const double v = std::strtod(line.c_str(), &end);
        if (end == line.c_str()) {
            if (first) {
                first = false;
                continue;  // header
            }
            throw DomainError("complete-data file: unparseable line: " + line);
        }
        first = false;
        out.push_back(v);
    }
    if (out.size() < 2) throw DomainError("complete-data file: need at least 2 values");
    return out;
}

/// Censored-data file: CSV with header `time,event`, event in {0,1}.
inline CensoredSample parse_censored_file(std::istream& in) {
    CensoredSample s;
    std::string line;
    if (!std::getline(in, line)) throw DomainError("censored-data file: empty");
    // header required but tolerated with whitespace/CR
    if (line.find("time") == std::string::npos || line.find("event") == std::string::npos)
        throw DomainError("censored-data file: expected header `time,event`");
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        std::stringstream ss(line);
        std::string t, e;
        if (!std::getline(ss, t, ',') || !std::getline(ss, e, ','))
            throw DomainError("censored-data file: bad row: " + line);
        const double tv = std::stod(t);
        const int ev = std::stoi(e);
        if (ev != 0 && ev != 1)
            throw DomainError("censored-data file: event must be 0 or 1: " + line);
        s.times.push_back(tv);
        s.events.push_back(static_cast<char>(ev));
    }
    s.validate();
    return s;
}

}  // namespace pgof
