// Copyright 2026 The relphase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "relphase/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "relphase/error.hpp"

namespace relphase {

namespace {

std::string csv_field(const Value &v) {
    struct Visitor {
        std::string operator()(const std::string &s) const {
            if (s.find_first_of(",\"\n") == std::string::npos) {
                return s;
            }
            std::string out = "\"";
            for (char c : s) {
                if (c == '"') {
                    out += '"';
                }
                out += c;
            }
            return out + "\"";
        }
        std::string operator()(double d) const { return format_double(d); }
        std::string operator()(long long i) const { return std::to_string(i); }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
    };
    return std::visit(Visitor{}, v);
}

nlohmann::ordered_json json_value(const Value &v) {
    struct Visitor {
        nlohmann::ordered_json operator()(const std::string &s) const { return s; }
        nlohmann::ordered_json operator()(double d) const {
            if (!std::isfinite(d)) {
                return format_double(d);
            }
            return d;
        }
        nlohmann::ordered_json operator()(long long i) const { return i; }
        nlohmann::ordered_json operator()(bool b) const { return b; }
    };
    return std::visit(Visitor{}, v);
}

nlohmann::ordered_json json_rows(const Table &t) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto &row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            obj[t.columns[i]] = json_value(row[i]);
        }
        rows.push_back(std::move(obj));
    }
    return rows;
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void add_tolerances(Report &report, const Tolerances &tol) {
    report.add_meta("tol.norm", tol.norm);
    report.add_meta("tol.herm", tol.herm);
    report.add_meta("tol.psd", tol.psd);
    report.add_meta("tol.trace", tol.trace);
    report.add_meta("tol.tail", tol.tail);
    report.add_meta("tol.max_dim", static_cast<long long>(tol.max_dim));
}

void Table::add_row(std::vector<Value> row) {
    if (row.size() != columns.size()) {
        throw std::logic_error("table '" + name + "': row width does not match header");
    }
    rows.push_back(std::move(row));
}

Format parse_format(std::string_view s) {
    if (s == "csv") {
        return Format::Csv;
    }
    if (s == "json") {
        return Format::Json;
    }
    throw ConfigError("unknown output format '" + std::string(s) + "' (csv | json)");
}

void Report::add_meta(std::string key, Value v) { meta_.emplace_back(std::move(key), std::move(v)); }

Table &Report::add_table(std::string name, std::vector<std::string> columns) {
    tables_.push_back(Table{std::move(name), std::move(columns), {}});
    return tables_.back();
}

std::string Report::to_csv() const {
    std::ostringstream os;
    for (const auto &[k, v] : meta_) {
        os << "# " << k << '=' << csv_field(v) << '\n';
    }
    for (std::size_t t = 0; t < tables_.size(); ++t) {
        const Table &tab = tables_[t];
        if (t > 0) {
            os << '\n';
        }
        os << "# table=" << tab.name << '\n';
        for (std::size_t i = 0; i < tab.columns.size(); ++i) {
            os << (i ? "," : "") << tab.columns[i];
        }
        os << '\n';
        for (const auto &row : tab.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                os << (i ? "," : "") << csv_field(row[i]);
            }
            os << '\n';
        }
    }
    return os.str();
}

std::string Report::to_json() const {
    nlohmann::ordered_json doc;
    doc["meta"] = nlohmann::ordered_json::object();
    for (const auto &[k, v] : meta_) {
        doc["meta"][k] = json_value(v);
    }
    doc["rows"] = tables_.empty() ? nlohmann::ordered_json::array() : json_rows(tables_.front());
    doc["tables"] = nlohmann::ordered_json::object();
    for (std::size_t t = 1; t < tables_.size(); ++t) {
        doc["tables"][tables_[t].name] = json_rows(tables_[t]);
    }
    return doc.dump(2) + "\n";
}

void Report::write(const std::string &path, Format f) const {
    std::string text = render(f);
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot open output file '" + path + "'");
    }
    out << text;
    if (!out) {
        throw ConfigError("failed writing output file '" + path + "'");
    }
}

}  // namespace relphase
