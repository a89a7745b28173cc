// Copyright 2026 The rqcm Authors
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

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "rqcm/errors.hpp"

// Run records and their CSV/JSON renderings. Column order is frozen per
// (command, schema version); see docs/schema.md. Nothing time-dependent is
// written, so identical inputs give identical bytes.

namespace rqcm {

inline constexpr const char* kArtifactVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

using ojson = nlohmann::ordered_json;

enum class Provenance { Exact, MonteCarlo, Formula };

inline const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::Exact: return "exact";
        case Provenance::MonteCarlo: return "monte-carlo";
        case Provenance::Formula: return "formula";
    }
    return "?";
}

enum class OutputFormat { Csv, Json };

inline OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw InputError("unknown output format '" + s + "' (expected csv or json)");
}

/// One CSV field. Numbers use the JSON shortest round-trip rendering.
inline std::string csv_field(const ojson& v) {
    if (v.is_null()) return "";
    if (v.is_string()) {
        const auto& s = v.get_ref<const std::string&>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) {
            if (c == '"') q += '"';
            q += c;
        }
        return q + "\"";
    }
    if (v.is_structured()) return csv_field(ojson(v.dump()));
    return v.dump();
}

class RunRecord {
  public:
    /// `columns` excludes the two leading columns every row carries:
    /// provenance and seed.
    RunRecord(std::string command, ojson config, std::uint64_t seed, std::vector<std::string> columns)
        : command_(std::move(command)), config_(std::move(config)), seed_(seed), columns_(std::move(columns)) {}

    void add_row(Provenance p, std::vector<ojson> values) {
        if (values.size() != columns_.size()) {
            throw InputError("RunRecord: row has " + std::to_string(values.size()) + " values for " +
                             std::to_string(columns_.size()) + " columns");
        }
        rows_.push_back({p, std::move(values)});
    }

    /// Free-form summary entries (JSON output only).
    ojson& summary() { return summary_; }

    const std::string& command() const { return command_; }
    const std::vector<std::string>& columns() const { return columns_; }
    std::size_t size() const { return rows_.size(); }

    std::vector<std::string> header() const {
        std::vector<std::string> h{"provenance", "seed"};
        h.insert(h.end(), columns_.begin(), columns_.end());
        return h;
    }

    std::string csv() const {
        std::ostringstream os;
        os << "# rqcm " << kArtifactVersion << " schema " << kSchemaVersion << " command " << command_
           << " config " << config_.dump() << "\n";
        const auto h = header();
        for (std::size_t i = 0; i < h.size(); ++i) os << (i ? "," : "") << h[i];
        os << "\n";
        for (const auto& r : rows_) {
            os << provenance_name(r.provenance) << "," << seed_;
            for (const auto& v : r.values) os << "," << csv_field(v);
            os << "\n";
        }
        return os.str();
    }

    ojson to_json() const {
        ojson j;
        j["artifact"] = "rqcm";
        j["version"] = kArtifactVersion;
        j["schema"] = kSchemaVersion;
        j["command"] = command_;
        j["config"] = config_;
        j["columns"] = header();
        ojson rows = ojson::array();
        for (const auto& r : rows_) {
            ojson row;
            row["provenance"] = provenance_name(r.provenance);
            row["seed"] = seed_;
            for (std::size_t i = 0; i < columns_.size(); ++i) row[columns_[i]] = r.values[i];
            rows.push_back(std::move(row));
        }
        j["rows"] = std::move(rows);
        if (!summary_.is_null()) j["summary"] = summary_;
        return j;
    }

    std::string render(OutputFormat f) const { return f == OutputFormat::Csv ? csv() : to_json().dump(2) + "\n"; }

    /// Writes to `path`, or returns the text when path is empty or "-".
    std::string write(const std::string& path, OutputFormat f) const {
        const std::string text = render(f);
        if (path.empty() || path == "-") return text;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw InputError("cannot open output file '" + path + "'");
        out << text;
        if (!out) throw InputError("write failed for '" + path + "'");
        return {};
    }

  private:
    struct Row {
        Provenance provenance;
        std::vector<ojson> values;
    };

    std::string command_;
    ojson config_;
    std::uint64_t seed_;
    std::vector<std::string> columns_;
    std::vector<Row> rows_;
    ojson summary_;
};

}  // namespace rqcm
