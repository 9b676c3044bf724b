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

#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

using relphase::cli::RunConfig;

namespace {

void add_output_options(CLI::App *app, RunConfig &c) {
    app->add_option("--out", c.out, "Output path (stdout when omitted or -)");
    app->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--seed", c.seed, "Random seed");
}

void add_cutoff_options(CLI::App *app, RunConfig &c) {
    app->add_option("--cutoff", c.cutoff, "Per-mode Fock cutoff (auto when omitted)")->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char **argv) {
    RunConfig c;
    CLI::App app{"Reference-frame and relative-phase numerics"};
    app.require_subcommand(1);

    auto *pa = app.add_subcommand("phase-average", "Average a coherent state over an unknown phase");
    pa->add_option("--alpha", c.alpha, "Coherent amplitude: <re> or <modulus>@<phase>");
    add_cutoff_options(pa, c);
    pa->add_option("--prior", c.priors, "flat | delta:<phi> | vonmises:<mu>,<kappa> | grid:<csv> (repeatable)");
    pa->add_option("--resolution", c.resolution, "Quadrature points for continuous priors")
        ->check(CLI::PositiveNumber);
    add_output_options(pa, c);

    auto *wd = app.add_subcommand("way-demo", "Translation averaging on a periodic lattice");
    wd->add_option("--d", c.d, "Lattice size (odd)");
    wd->add_option("--priors", c.lattice_priors, "Comma-separated flat | delta:<X>");
    add_output_options(wd, c);

    auto *rf = app.add_subcommand("relphase-fidelity", "Relative-phase state of two coherent modes");
    rf->add_option("--alpha", c.alpha, "Mode A amplitude: <re> or <modulus>@<phase>");
    rf->add_option("--beta", c.beta, "Mode B amplitude: <re> or <modulus>@<phase>");
    add_cutoff_options(rf, c);
    rf->add_option("--rel-cutoff", c.rel_cutoff, "Relative-mode cutoff (auto when omitted)")
        ->check(CLI::NonNegativeNumber);
    add_output_options(rf, c);

    auto *sw = app.add_subcommand("sweep", "relphase-fidelity over a range of |beta|");
    sw->add_option("--alpha", c.alpha, "Mode A amplitude: <re> or <modulus>@<phase>");
    sw->add_option("--beta,--beta-range", c.beta_range, "<start>:<stop>:x<factor> or <start>:<stop>:+<step>");
    sw->add_option("--beta-phase", c.beta_phase, "Phase of beta in radians");
    add_cutoff_options(sw, c);
    sw->add_option("--rel-cutoff", c.rel_cutoff, "Relative-mode cutoff (auto when omitted)")
        ->check(CLI::NonNegativeNumber);
    sw->add_option("--jobs", c.jobs, "Concurrent sweep points")->check(CLI::PositiveNumber);
    add_output_options(sw, c);

    auto *st = app.add_subcommand("selftest", "Run the acceptance suite");
    add_output_options(st, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return relphase::cli::kConfigError;
    }

    c.subcommand = app.get_subcommands().front()->get_name();
    return relphase::cli::dispatch(c);
}
