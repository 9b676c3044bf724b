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

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "gtest/gtest.h"
#include "json.hpp"
#include "relphase/error.hpp"
#include "relphase/report.hpp"

using namespace relphase;

namespace {

Report sample() {
    Report rep;
    rep.add_meta("name", std::string("demo"));
    rep.add_meta("count", 3LL);
    Table &first = rep.add_table("main", {"x", "y", "ok"});
    Table &second = rep.add_table("extra", {"label", "v"});
    first.add_row({1LL, 0.1, true});
    first.add_row({2LL, 1.0 / 3.0, false});
    second.add_row({std::string("a,b"), std::numeric_limits<double>::infinity()});
    return rep;
}

}  // namespace

TEST(report, csv_layout) {
    EXPECT_EQ(sample().to_csv(),
              "# name=demo\n"
              "# count=3\n"
              "# table=main\n"
              "x,y,ok\n"
              "1,0.10000000000000001,true\n"
              "2,0.33333333333333331,false\n"
              "\n"
              "# table=extra\n"
              "label,v\n"
              "\"a,b\",inf\n");
}

TEST(report, json_layout) {
    auto doc = nlohmann::json::parse(sample().to_json());
    EXPECT_EQ(doc["meta"]["name"], "demo");
    EXPECT_EQ(doc["meta"]["count"], 3);
    ASSERT_EQ(doc["rows"].size(), 2u);
    EXPECT_EQ(doc["rows"][1]["x"], 2);
    EXPECT_EQ(doc["rows"][1]["y"].get<double>(), 1.0 / 3.0);
    EXPECT_EQ(doc["rows"][0]["ok"], true);
    EXPECT_EQ(doc["tables"]["extra"][0]["v"], "inf");
}

TEST(report, rows_must_match_columns) {
    Report rep;
    Table &t = rep.add_table("t", {"a", "b"});
    EXPECT_THROW(t.add_row({1LL}), std::logic_error);
}

TEST(report, format_double) {
    EXPECT_EQ(format_double(0.5), "0.5");
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
    EXPECT_EQ(format_double(std::nan("")), "nan");
    EXPECT_EQ(parse_format("json"), Format::Json);
    EXPECT_THROW(parse_format("xml"), ConfigError);
}

TEST(report, tolerances_are_echoed) {
    Report rep;
    add_tolerances(rep);
    std::string csv = rep.to_csv();
    for (const char *key : {"tol.norm", "tol.herm", "tol.psd", "tol.trace", "tol.tail", "tol.max_dim"}) {
        EXPECT_NE(csv.find(std::string("# ") + key + "="), std::string::npos) << key;
    }
}
