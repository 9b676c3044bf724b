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
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "gtest/gtest.h"
#include "json.hpp"
#include "relphase/error.hpp"

using namespace relphase;
using namespace relphase::cli;

namespace {

RunConfig config(std::string subcommand) {
    RunConfig c;
    c.subcommand = std::move(subcommand);
    return c;
}

const Table &table(const Report &rep, const std::string &name) {
    for (const auto &t : rep.tables()) {
        if (t.name == name) {
            return t;
        }
    }
    throw std::out_of_range("no table " + name);
}

double number(const Value &v) {
    if (const auto *d = std::get_if<double>(&v)) {
        return *d;
    }
    return static_cast<double>(std::get<long long>(v));
}

double column(const Table &t, std::size_t row, const std::string &col) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (t.columns[i] == col) {
            return number(t.rows.at(row)[i]);
        }
    }
    throw std::out_of_range("no column " + col);
}

std::size_t row_of(const Table &t, const std::string &label) {
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        if (std::get<std::string>(t.rows[r][0]) == label) {
            return r;
        }
    }
    throw std::out_of_range("no row " + label);
}

double meta(const Report &rep, const std::string &key) {
    for (const auto &[k, v] : rep.meta()) {
        if (k == key) {
            return number(v);
        }
    }
    throw std::out_of_range("no meta " + key);
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST(cli, parse_amplitude) {
    EXPECT_EQ(parse_amplitude("1.5"), cplx(1.5, 0.0));
    EXPECT_EQ(parse_amplitude("-2"), cplx(-2.0, 0.0));
    EXPECT_LT(std::abs(parse_amplitude("2@0.5") - std::polar(2.0, 0.5)), 1e-16);
    EXPECT_THROW(parse_amplitude("abc"), ConfigError);
    EXPECT_THROW(parse_amplitude("1@"), ConfigError);
    EXPECT_THROW(parse_amplitude("-1@0.3"), ConfigError);
}

TEST(cli, parse_range) {
    EXPECT_EQ(parse_range("2:16:x2"), (std::vector<double>{2, 4, 8, 16}));
    EXPECT_EQ(parse_range("1:2:+0.5"), (std::vector<double>{1, 1.5, 2}));
    EXPECT_EQ(parse_range("3:3:x2"), (std::vector<double>{3}));
    EXPECT_THROW(parse_range("2:16"), ConfigError);
    EXPECT_THROW(parse_range("2:16:x1"), ConfigError);
    EXPECT_THROW(parse_range("16:2:x2"), ConfigError);
    EXPECT_THROW(parse_range("0:2:x2"), ConfigError);
}

TEST(cli, phase_average_flat) {
    RunConfig c = config("phase-average");
    c.priors = {"flat"};
    c.cutoff = 32;
    Report rep = phase_average_report(c);
    const Table &w = table(rep, "weights");
    ASSERT_EQ(w.rows.size(), 33u);
    EXPECT_NEAR(column(w, 0, "p_n"), 0.3678794, 1e-7);
    EXPECT_EQ(meta(rep, "result.offdiag_norm"), 0.0);
    EXPECT_EQ(meta(rep, "cutoff"), 32.0);

    const Table &dev = table(rep, "prior_deviation");
    EXPECT_LT(column(dev, row_of(dev, "number"), "deviation"), 1e-12);
    EXPECT_GT(column(dev, row_of(dev, "position_quadrature"), "commutator_residual"), 0.1);
}

TEST(cli, phase_average_delta_is_pure) {
    RunConfig c = config("phase-average");
    c.priors = {"delta:0.0"};
    EXPECT_NEAR(meta(phase_average_report(c), "result.purity"), 1.0, 1e-12);
}

TEST(cli, phase_average_zero_kappa_matches_flat) {
    RunConfig vm = config("phase-average");
    vm.priors = {"vonmises:0,0"};
    RunConfig flat = config("phase-average");
    flat.priors = {"flat"};
    Report ra = phase_average_report(vm);
    Report rb = phase_average_report(flat);
    const Table &a = table(ra, "weights");
    const Table &b = table(rb, "weights");
    ASSERT_EQ(a.rows.size(), b.rows.size());
    for (std::size_t n = 0; n < a.rows.size(); ++n) {
        EXPECT_NEAR(column(a, n, "p_n"), column(b, n, "p_n"), 1e-10);
    }
}

TEST(cli, way_demo) {
    RunConfig c = config("way-demo");
    Report rep = way_demo_report(c);
    const Table &inv = table(rep, "invariance");
    EXPECT_LT(column(inv, row_of(inv, "x_r"), "deviation"), 1e-10);
    EXPECT_EQ(column(inv, row_of(inv, "x_1"), "deviation"), 5.0);
    std::size_t x1 = row_of(inv, "x_1");
    EXPECT_EQ(column(inv, x1, "E[delta:5]") - column(inv, x1, "E[delta:0]"), 5.0);
    EXPECT_LT(meta(rep, "result.site_average_max_diag_dev"), 1e-12);
    EXPECT_LT(meta(rep, "result.sum_gate_commutator"), 1e-12);
    EXPECT_NEAR(meta(rep, "result.sum_gate_entropy_bits"), 1.0, 1e-12);

    c.d = 30;
    EXPECT_THROW(way_demo_report(c), ConfigError);
    EXPECT_EQ(cmd_way_demo(c), kConfigError);
}

TEST(cli, relphase_fidelity) {
    RunConfig c = config("relphase-fidelity");
    c.alpha = "1";
    c.beta = "8";
    Report rep = relphase_report(c);
    double f = column(table(rep, "relphase"), 0, "fidelity");
    EXPECT_GT(f, 0.9);
    EXPECT_LE(f, 1.0);

    c.alpha = "0";
    c.beta = "3";
    Report vacuum = relphase_report(c);
    EXPECT_NEAR(column(table(vacuum, "relphase"), 0, "fidelity"), 1.0, 1e-10);

    c.alpha = "1";
    c.beta = "8";
    c.rel_cutoff = 2;
    EXPECT_EQ(cmd_relphase(c), kToleranceBreach);
}

TEST(cli, sweep_rows_are_ordered_and_job_independent) {
    RunConfig c = config("sweep");
    c.alpha = "1";
    c.beta_range = "2:16:x2";
    Report serial = sweep_report(c);
    const Table &t = table(serial, "sweep");
    ASSERT_EQ(t.rows.size(), 4u);
    for (std::size_t i = 1; i < 4; ++i) {
        EXPECT_GT(column(t, i, "fidelity"), column(t, i - 1, "fidelity"));
        EXPECT_GT(column(t, i, "beta_abs"), column(t, i - 1, "beta_abs"));
    }
    c.jobs = 3;
    Report parallel = sweep_report(c);
    // The jobs count is echoed in the metadata; the rows must agree.
    EXPECT_EQ(serial.tables().front().rows, parallel.tables().front().rows);
}

TEST(cli, output_file_and_exit_codes) {
    auto dir = std::filesystem::temp_directory_path();
    RunConfig c = config("relphase-fidelity");
    c.format = "json";
    c.out = (dir / "relphase_cli_test.json").string();
    ASSERT_EQ(dispatch(c), kOk);
    auto doc = nlohmann::json::parse(slurp(c.out));
    EXPECT_EQ(doc["meta"]["subcommand"], "relphase-fidelity");
    EXPECT_EQ(doc["meta"]["tol.tail"], 1e-12);
    EXPECT_EQ(doc["rows"].size(), 1u);
    std::filesystem::remove(c.out);

    c.format = "xml";
    EXPECT_EQ(dispatch(c), kConfigError);
    RunConfig bad = config("phase-average");
    bad.priors = {"vonmises:0,1"};
    bad.resolution = 10;
    EXPECT_EQ(dispatch(bad), kConfigError);
    EXPECT_EQ(dispatch(config("nope")), kConfigError);
}
