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

// Machine-readable result files.
//
// CSV layout:
//   # key=value            one line per metadata entry, in insertion order
//   # table=<name>         before each table
//   col1,col2,...          header row
//   v1,v2,...              data rows
// Tables are separated by a blank line; the first table is the primary one.
// Floating-point values are printed with 17 significant digits.
//
// JSON layout: {"meta": {...}, "rows": [primary rows], "tables": {other tables}},
// each row an object keyed by column name.

#pragma once

#include <deque>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "relphase/tolerances.hpp"

namespace relphase {

using Value = std::variant<std::string, double, long long, bool>;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Value>> rows;

    void add_row(std::vector<Value> row);
};

enum class Format { Csv, Json };

Format parse_format(std::string_view s);

class Report {
   public:
    void add_meta(std::string key, Value v);
    Table &add_table(std::string name, std::vector<std::string> columns);

    const std::vector<std::pair<std::string, Value>> &meta() const { return meta_; }
    const std::deque<Table> &tables() const { return tables_; }

    std::string to_csv() const;
    std::string to_json() const;
    std::string render(Format f) const { return f == Format::Csv ? to_csv() : to_json(); }

    /// Writes to `path`, or to stdout when path is empty or "-".
    void write(const std::string &path, Format f) const;

   private:
    std::vector<std::pair<std::string, Value>> meta_;
    std::deque<Table> tables_;
};

/// Echo a tolerance set as `tol.*` metadata entries.
void add_tolerances(Report &report, const Tolerances &tol = kTol);

/// %.17g; non-finite values print as inf, -inf or nan.
std::string format_double(double v);

}  // namespace relphase
