// Copyright 2026 The qnetsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

/// @file
/// Comma-separated numeric tables with a header row, 17 significant digits.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qnetsim/config.hpp"
#include "qnetsim/spectral.hpp"

namespace qnetsim {

inline void write_csv(const std::filesystem::path &path, const std::vector<std::string> &header,
                      const std::vector<std::vector<double>> &rows) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
        out << (i ? "," : "") << header[i];
    }
    out << '\n';
    for (const auto &row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << detail::fmt17(row[i]);
        }
        out << '\n';
    }
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

inline void write_timeseries(const std::filesystem::path &path, const TimeSeries &s) {
    std::vector<std::vector<double>> rows;
    rows.reserve(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) {
        rows.push_back({s.time(j), s.values[j].real(), s.values[j].imag()});
    }
    write_csv(path, {"t", "re", "im"}, rows);
}

/// Reads (t, re, im) rows; the header is optional, t must be uniform from 0.
inline TimeSeries read_timeseries(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::vector<double> t;
    std::vector<cplx> v;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.find_first_not_of(" \t") == std::string::npos) {
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            cells.push_back(cell);
        }
        auto where = path.string() + ":" + std::to_string(line_no);
        if (line_no == 1 && !cells.empty() && cells[0].find_first_of("0123456789.-+") != 0) {
            continue;
        }
        if (cells.size() != 3) {
            throw IoError(where + ": expected 3 columns (t,re,im), found " + std::to_string(cells.size()));
        }
        double vals[3];
        for (int k = 0; k < 3; ++k) {
            try {
                std::size_t used = 0;
                vals[k] = std::stod(cells[static_cast<std::size_t>(k)], &used);
                if (used != cells[static_cast<std::size_t>(k)].size()) {
                    throw std::invalid_argument("trailing");
                }
            } catch (const std::exception &) {
                throw IoError(where + ": cannot parse '" + cells[static_cast<std::size_t>(k)] + "'");
            }
        }
        t.push_back(vals[0]);
        v.emplace_back(vals[1], vals[2]);
    }
    if (t.size() < 2) {
        throw IoError(path.string() + ": need at least two samples");
    }
    const double dt = t[1] - t[0];
    for (std::size_t j = 0; j < t.size(); ++j) {
        if (std::abs(t[j] - static_cast<double>(j) * dt) > 1e-9 * std::max(1.0, std::abs(t[j]))) {
            throw IoError(path.string() + ": times are not uniform from 0 at sample " + std::to_string(j));
        }
    }
    TimeSeries s{dt, std::move(v)};
    try {
        s.validate();
    } catch (const std::domain_error &e) {
        throw IoError(path.string() + ": " + e.what());
    }
    return s;
}

} // namespace qnetsim
