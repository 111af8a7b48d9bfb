#pragma once

#include <array>
#include <charconv>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "fkdem/process.hpp"

namespace fkdem {

// Raised for malformed tabular input; the message names the offending row.
class csv_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Shortest round-trip decimal form, locale independent ('.' always).
inline std::string format_double(double v) {
    std::array<char, 32> buf;
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                   std::chars_format::general, 17);
    if (ec != std::errc()) {
        throw std::runtime_error("format_double: conversion failed");
    }
    return std::string(buf.data(), ptr);
}

namespace detail {

inline double parse_double_field(std::string_view field, std::size_t row,
                                 const std::string& what) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
        throw csv_error("row " + std::to_string(row) + ": cannot parse " + what
                        + " from '" + std::string(field) + "'");
    }
    return v;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

inline std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

}  // namespace detail

// (time, burden) rows of a univariate trajectory's sample grid.
inline void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << "time,burden\n";
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        os << format_double(traj.times[k]) << ',' << format_double(traj.burdens[k]) << '\n';
    }
}

// (time, burden1..burden3) rows of three trajectories on a shared grid.
inline void write_trajectory_csv(std::ostream& os, const std::array<Trajectory, 3>& trajs) {
    os << "time,burden1,burden2,burden3\n";
    for (std::size_t k = 0; k < trajs[0].times.size(); ++k) {
        os << format_double(trajs[0].times[k]);
        for (int j = 0; j < 3; ++j) {
            os << ',' << format_double(trajs[j].burdens[k]);
        }
        os << '\n';
    }
}

inline void write_mc_summary_csv(std::ostream& os, const MonteCarloSummary& s) {
    os << "time,mean,p05,p50,p95\n";
    for (std::size_t k = 0; k < s.times.size(); ++k) {
        os << format_double(s.times[k]) << ',' << format_double(s.mean[k]) << ','
           << format_double(s.p05[k]) << ',' << format_double(s.p50[k]) << ','
           << format_double(s.p95[k]) << '\n';
    }
}

// Parsed back form of a written univariate trajectory file.
struct TrajectoryFile {
    std::vector<double> times;
    std::vector<double> burdens;
};

inline TrajectoryFile read_trajectory_csv(std::istream& is) {
    TrajectoryFile tf;
    std::string line;
    if (!std::getline(is, line) || detail::strip_cr(line) != "time,burden") {
        throw csv_error("row 1: expected header 'time,burden'");
    }
    std::size_t row = 1;
    while (std::getline(is, line)) {
        ++row;
        line = detail::strip_cr(std::move(line));
        if (line.empty()) continue;
        const auto fields = detail::split_fields(line);
        if (fields.size() != 2) {
            throw csv_error("row " + std::to_string(row) + ": expected 2 fields");
        }
        const double t = detail::parse_double_field(fields[0], row, "time");
        const double b = detail::parse_double_field(fields[1], row, "burden");
        if (!tf.times.empty() && t < tf.times.back()) {
            throw csv_error("row " + std::to_string(row) + ": times must be non-decreasing");
        }
        tf.times.push_back(t);
        tf.burdens.push_back(b);
    }
    return tf;
}

// Food survey rows: product,contamination_q,consumption_c.
inline std::vector<FoodRecord> read_food_records(std::istream& is) {
    std::vector<FoodRecord> out;
    std::string line;
    if (!std::getline(is, line)
        || detail::strip_cr(line) != "product,contamination_q,consumption_c") {
        throw csv_error("row 1: expected header 'product,contamination_q,consumption_c'");
    }
    std::size_t row = 1;
    while (std::getline(is, line)) {
        ++row;
        line = detail::strip_cr(std::move(line));
        if (line.empty()) continue;
        const auto fields = detail::split_fields(line);
        if (fields.size() != 3) {
            throw csv_error("row " + std::to_string(row) + ": expected 3 fields");
        }
        FoodRecord r;
        r.product = std::string(fields[0]);
        r.contamination_q = detail::parse_double_field(fields[1], row, "contamination_q");
        r.consumption_c = detail::parse_double_field(fields[2], row, "consumption_c");
        if (r.contamination_q < 0.0 || r.consumption_c < 0.0) {
            throw csv_error("row " + std::to_string(row) + ": negative value");
        }
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<FoodRecord> read_food_records_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw csv_error("cannot open '" + path + "'");
    }
    return read_food_records(in);
}

}  // namespace fkdem
