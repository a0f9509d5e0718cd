// Copyright 2026 The fwm-modes Authors
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

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

namespace fwm::cli {

/// A table cell keeps its rendered text; numeric cells become JSON numbers.
struct Cell {
    std::string text;
    bool numeric = false;
};

/// Floats at 12 significant digits; negative zero prints as 0.
inline Cell num(double v) {
    if (v == 0.0) {
        v = 0.0;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return {buf, std::isfinite(v)};
}

inline Cell num(std::size_t v) {
    return {std::to_string(v), true};
}

inline Cell num(int v) {
    return {std::to_string(v), true};
}

inline Cell str(std::string s) {
    return {std::move(s), false};
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row) {
        rows.push_back(std::move(row));
    }
};

inline std::string to_csv(const Table &t) {
    std::string out;
    auto emit_field = [&](const std::string &s) {
        if (s.find_first_of(",\"\n") == std::string::npos) {
            out += s;
            return;
        }
        out += '"';
        for (char c : s) {
            if (c == '"') {
                out += '"';
            }
            out += c;
        }
        out += '"';
    };
    for (std::size_t k = 0; k < t.header.size(); ++k) {
        if (k) {
            out += ',';
        }
        emit_field(t.header[k]);
    }
    out += '\n';
    for (const auto &row : t.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) {
                out += ',';
            }
            emit_field(row[k].text);
        }
        out += '\n';
    }
    return out;
}

/// Array of row objects keyed by column name.
inline std::string to_json(const Table &t) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto &row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t k = 0; k < row.size() && k < t.header.size(); ++k) {
            if (row[k].numeric) {
                obj[t.header[k]] = std::stod(row[k].text);
            } else {
                obj[t.header[k]] = row[k].text;
            }
        }
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

}  // namespace fwm::cli
