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

#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <iostream>
#include <optional>
#include <thread>

#include "relphase/error.hpp"
#include "relphase/phase_channel.hpp"
#include "relphase/priors.hpp"
#include "relphase/relative_phase.hpp"
#include "relphase/way_lattice.hpp"

namespace relphase::cli {

namespace {

constexpr const char *kToolVersion = "relphase 1.0.0";

double parse_number(std::string_view s, std::string_view what) {
    std::string str(s);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(str, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != str.size() || !std::isfinite(v)) {
        throw ConfigError("cannot parse " + std::string(what) + " from '" + str + "'");
    }
    return v;
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto pos = text.find(sep, start);
        out.emplace_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

void add_common_meta(Report &rep, const RunConfig &c) {
    rep.add_meta("tool", std::string(kToolVersion));
    rep.add_meta("subcommand", c.subcommand);
    rep.add_meta("format", c.format);
    rep.add_meta("seed", static_cast<long long>(c.seed));
    rep.add_meta("jobs", static_cast<long long>(c.jobs));
}

void add_amplitude_meta(Report &rep, const std::string &key, cplx z) {
    rep.add_meta(key + ".re", z.real());
    rep.add_meta(key + ".im", z.imag());
    rep.add_meta(key + ".abs", std::abs(z));
    rep.add_meta(key + ".arg", std::arg(z));
}

const std::vector<std::string> kFactorizationColumns = {
    "alpha_re", "alpha_im",  "beta_re",   "beta_im",   "beta_abs",        "condition_ratio", "cutoff",
    "rel_cutoff", "fidelity", "purity", "target_re", "target_im", "truncation_tail", "embedding_loss"};

std::vector<Value> factorization_row(const FactorizationReport &r) {
    return {r.alpha.real(),
            r.alpha.imag(),
            r.beta.real(),
            r.beta.imag(),
            std::abs(r.beta),
            r.condition_ratio,
            static_cast<long long>(r.cutoff),
            static_cast<long long>(r.rel_cutoff),
            r.fidelity_to_target,
            r.rel_state_purity,
            r.target_amplitude.real(),
            r.target_amplitude.imag(),
            r.truncation_tail,
            r.embedding_loss};
}

FactorizationReport run_point(cplx alpha, cplx beta, const RunConfig &c) {
    int cutoff = c.cutoff >= 0 ? c.cutoff : default_two_mode_cutoff(alpha, beta);
    int rel_cutoff = c.rel_cutoff >= 0 ? c.rel_cutoff : default_rel_cutoff(alpha);
    return factorization_fidelity(alpha, beta, cutoff, rel_cutoff);
}

int guarded(const RunConfig &config, const std::function<Report(const RunConfig &)> &build) {
    try {
        Format fmt = parse_format(config.format);
        build(config).write(config.out, fmt);
        return kOk;
    } catch (const ConfigError &e) {
        std::cerr << "relphase: config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const ToleranceError &e) {
        std::cerr << "relphase: tolerance breach: " << e.what() << '\n';
        return kToleranceBreach;
    }
}

}  // namespace

cplx parse_amplitude(std::string_view text) {
    auto at = text.find('@');
    if (at == std::string_view::npos) {
        return {parse_number(text, "amplitude"), 0.0};
    }
    double modulus = parse_number(text.substr(0, at), "amplitude modulus");
    double phase = parse_number(text.substr(at + 1), "amplitude phase");
    if (modulus < 0) {
        throw ConfigError("amplitude modulus must be non-negative");
    }
    return std::polar(modulus, phase);
}

std::vector<double> parse_range(std::string_view text) {
    auto parts = split(text, ':');
    if (parts.size() != 3 || parts[2].size() < 2 || (parts[2][0] != 'x' && parts[2][0] != '+')) {
        throw ConfigError("range must look like <start>:<stop>:x<factor> or <start>:<stop>:+<step>");
    }
    double start = parse_number(parts[0], "range start");
    double stop = parse_number(parts[1], "range stop");
    double step = parse_number(std::string_view(parts[2]).substr(1), "range step");
    bool geometric = parts[2][0] == 'x';
    if (stop < start || (geometric && (step <= 1.0 || start <= 0.0)) || (!geometric && step <= 0.0)) {
        throw ConfigError("range does not advance from start to stop");
    }
    std::vector<double> out;
    for (int i = 0; i < 100000; ++i) {
        double v = geometric ? start * std::pow(step, i) : start + step * i;
        if (v > stop * (1.0 + 1e-9)) {
            break;
        }
        out.push_back(v);
    }
    return out;
}

Report phase_average_report(const RunConfig &c) {
    cplx alpha = parse_amplitude(c.alpha);
    int cutoff = c.cutoff >= 0 ? c.cutoff : default_cutoff(std::norm(alpha));
    std::vector<CircularPrior> priors;
    for (const auto &text : c.priors.empty() ? std::vector<std::string>{"flat"} : c.priors) {
        priors.push_back(CircularPrior::parse(text));
    }
    // A single prior is compared against the flat one (or delta:0 when it is flat).
    if (priors.size() == 1) {
        priors.push_back(priors.front().is_flat() ? CircularPrior::delta(0.0) : CircularPrior::flat());
    }

    FockVector coherent = coherent_amplitudes(alpha, cutoff);
    DensityMatrix state = DensityMatrix::pure(coherent.amplitudes());
    PhaseAverageReport avg = phase_average(state, priors.front(), c.resolution, "coherent");

    Report rep;
    add_common_meta(rep, c);
    rep.add_meta("alpha", c.alpha);
    add_amplitude_meta(rep, "alpha", alpha);
    rep.add_meta("cutoff", static_cast<long long>(cutoff));
    rep.add_meta("resolution", static_cast<long long>(c.resolution));
    rep.add_meta("prior", priors.front().describe());
    std::string compared;
    for (const auto &p : priors) {
        compared += (compared.empty() ? "" : ";") + p.describe();
    }
    rep.add_meta("compared_priors", compared);
    add_tolerances(rep);
    rep.add_meta("result.tail_mass", coherent.tail_mass());
    rep.add_meta("result.trace", avg.output.trace());
    rep.add_meta("result.offdiag_norm", avg.offdiag_norm);
    rep.add_meta("result.purity", avg.purity);

    Table &weights = rep.add_table("weights", {"n", "p_n"});
    for (int n = 0; n < avg.output.dim(); ++n) {
        weights.add_row({static_cast<long long>(n), avg.output(n, n).real()});
    }

    std::vector<std::string> cols = {"observable", "commutator_residual", "phase_insensitive", "deviation"};
    for (const auto &p : priors) {
        cols.push_back("E[" + p.describe() + "]");
    }
    Table &dev = rep.add_table("prior_deviation", cols);
    const int dim = state.dim();
    Matrix number = number_operator(dim);
    const std::pair<std::string, Matrix> observables[] = {
        {"number", number},
        {"number_squared", number * number},
        {"position_quadrature", position_quadrature(dim)},
        {"identity", Matrix::Identity(dim, dim)},
    };
    for (const auto &[label, obs] : observables) {
        PhaseInsensitivity pi = is_phase_insensitive(obs);
        std::vector<double> e = prior_expectations(state, obs, priors, c.resolution);
        auto [lo, hi] = std::minmax_element(e.begin(), e.end());
        std::vector<Value> row = {label, pi.residual, pi.insensitive, *hi - *lo};
        row.insert(row.end(), e.begin(), e.end());
        dev.add_row(std::move(row));
    }
    return rep;
}

Report way_demo_report(const RunConfig &c) {
    LatticeSpace space(c.d);
    const int d = space.d();
    std::vector<LatticePrior> priors;
    std::vector<std::string> labels = split(c.lattice_priors, ',');
    for (const auto &text : labels) {
        priors.push_back(LatticePrior::parse(text, d));
    }

    Report rep;
    add_common_meta(rep, c);
    rep.add_meta("d", static_cast<long long>(d));
    rep.add_meta("priors", c.lattice_priors);
    rep.add_meta("state", std::string("|x1=-2,x2=0>"));
    add_tolerances(rep);

    // Site eigenstate averaged over every translation.
    DensityMatrix site_avg = displacement_average(LatticeState::site(space, 0), LatticePrior::flat(d));
    Matrix id = Matrix::Identity(d, d) / static_cast<double>(d);
    double diag_dev = (site_avg.entries().diagonal() - id.diagonal()).cwiseAbs().maxCoeff();
    rep.add_meta("result.site_average_max_diag_dev", diag_dev);
    rep.add_meta("result.site_average_max_dev", max_abs(site_avg.entries() - id));

    // SUM gate.
    Matrix sum = sum_gate(space);
    Ket rel = Ket::Zero(d);
    rel(0) = rel(3 % d) = 1.0 / std::sqrt(2.0);
    if (d == 1) {
        rel(0) = 1.0;
    }
    Ket center = Ket::Zero(d);
    center(0) = 1.0;
    LatticeState before = to_lattice(RelCenterState::product(space, rel, center));
    LatticeState after(space, 2, sum * before.amplitudes());
    rep.add_meta("result.sum_gate_commutator", total_momentum_commutator(space, sum));
    rep.add_meta("result.sum_gate_entropy_bits", entanglement_entropy_bits(to_rel_center(after).amplitudes(), d, d));

    // The flat mean of x_1 (zero) lies between its delta:0 and delta:5 values.
    LatticeState state = LatticeState::sites(space, space.wrap(-2), 0);
    std::vector<std::string> cols = {"observable", "commutator_norm", "deviation"};
    for (const auto &l : labels) {
        cols.push_back("E[" + l + "]");
    }
    Table &inv = rep.add_table("invariance", cols);
    const std::pair<std::string, Matrix> observables[] = {
        {"x_r", relative_position(space)},
        {"x_1", absolute_position(space, 0)},
        {"x_2", absolute_position(space, 1)},
        {"total_momentum", total_momentum(space)},
        {"identity", Matrix::Identity(d * d, d * d)},
    };
    for (const auto &[label, obs] : observables) {
        InvarianceResult r = expectation_invariance(state, obs, priors);
        std::vector<Value> row = {label, r.commutator_norm, r.deviation};
        row.insert(row.end(), r.expectations.begin(), r.expectations.end());
        inv.add_row(std::move(row));
    }

    // Relative factor of a product state vs an entangled state.
    Table &fact = rep.add_table("factorization", {"case", "prior", "residual", "rel_purity", "is_factorized"});
    Ket psi_r(d), psi_a(d);
    for (int x = 0; x < d; ++x) {
        double c_x = space.centered(x);
        psi_r(x) = std::polar(std::exp(-c_x * c_x / 8.0), 0.3 * x);
        psi_a(x) = std::exp(-c_x * c_x / 18.0);
    }
    LatticeState product = to_lattice(RelCenterState::product(space, psi_r.normalized(), psi_a.normalized()));
    for (std::size_t i = 0; i < priors.size(); ++i) {
        FactorizationCheck fc = factorization_check(to_rel_center(displacement_average(product, priors[i]), space), space);
        fact.add_row({std::string("product"), labels[i], fc.residual, fc.rel_purity, fc.is_factorized});
    }
    if (d > 1) {
        Ket ent = Ket::Zero(d * d);
        ent(0) = ent(1 * d + (5 % d)) = 1.0 / std::sqrt(2.0);
        LatticeState entangled = to_lattice(RelCenterState(space, ent));
        FactorizationCheck fc =
            factorization_check(to_rel_center(displacement_average(entangled, LatticePrior::flat(d)), space), space);
        fact.add_row({std::string("entangled"), std::string("flat"), fc.residual, fc.rel_purity, fc.is_factorized});
    }
    return rep;
}

Report relphase_report(const RunConfig &c) {
    cplx alpha = parse_amplitude(c.alpha);
    cplx beta = parse_amplitude(c.beta);
    FactorizationReport r = run_point(alpha, beta, c);

    Report rep;
    add_common_meta(rep, c);
    rep.add_meta("alpha", c.alpha);
    rep.add_meta("beta", c.beta);
    rep.add_meta("cutoff", static_cast<long long>(r.cutoff));
    rep.add_meta("rel_cutoff", static_cast<long long>(r.rel_cutoff));
    add_tolerances(rep);
    Table &t = rep.add_table("relphase", kFactorizationColumns);
    t.add_row(factorization_row(r));
    Table &w = rep.add_table("total_number_weights", {"N", "p_N"});
    for (std::size_t n = 0; n < r.total_number_weights.size(); ++n) {
        w.add_row({static_cast<long long>(n), r.total_number_weights[n]});
    }
    return rep;
}

Report sweep_report(const RunConfig &c) {
    cplx alpha = parse_amplitude(c.alpha);
    std::vector<double> moduli = parse_range(c.beta_range);
    if (c.jobs < 1) {
        throw ConfigError("--jobs must be >= 1");
    }

    std::vector<std::optional<FactorizationReport>> results(moduli.size());
    std::vector<std::exception_ptr> errors(moduli.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < moduli.size(); i = next++) {
            try {
                results[i] = run_point(alpha, std::polar(moduli[i], c.beta_phase), c);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(c.jobs), moduli.size());
    for (std::size_t t = 1; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &th : pool) {
        th.join();
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    Report rep;
    add_common_meta(rep, c);
    rep.add_meta("alpha", c.alpha);
    rep.add_meta("beta_range", c.beta_range);
    rep.add_meta("beta_phase", c.beta_phase);
    rep.add_meta("cutoff", c.cutoff >= 0 ? Value(static_cast<long long>(c.cutoff)) : Value(std::string("auto")));
    rep.add_meta("rel_cutoff",
                 c.rel_cutoff >= 0 ? Value(static_cast<long long>(c.rel_cutoff)) : Value(std::string("auto")));
    add_tolerances(rep);
    Table &t = rep.add_table("sweep", kFactorizationColumns);
    for (const auto &r : results) {
        t.add_row(factorization_row(*r));
    }
    return rep;
}

int cmd_phase_average(const RunConfig &config) { return guarded(config, phase_average_report); }
int cmd_way_demo(const RunConfig &config) { return guarded(config, way_demo_report); }
int cmd_relphase(const RunConfig &config) { return guarded(config, relphase_report); }
int cmd_sweep(const RunConfig &config) { return guarded(config, sweep_report); }

int cmd_selftest(const RunConfig &config) {
    bool all = true;
    int code = guarded(config, [&all](const RunConfig &c) {
        std::vector<CriterionResult> results = run_acceptance(c.seed);
        for (const auto &r : results) {
            all = all && r.passed;
            std::cerr << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.name << ": "
                      << format_double(r.measured) << " (" << r.threshold << ") " << r.detail << '\n';
        }
        Report rep = acceptance_report(results, c.seed);
        rep.add_meta("subcommand", c.subcommand);
        return rep;
    });
    if (code != kOk) {
        return code;
    }
    return all ? kOk : kToleranceBreach;
}

int dispatch(const RunConfig &config) {
    const std::string &s = config.subcommand;
    if (s == "phase-average") {
        return cmd_phase_average(config);
    }
    if (s == "way-demo") {
        return cmd_way_demo(config);
    }
    if (s == "relphase-fidelity") {
        return cmd_relphase(config);
    }
    if (s == "sweep") {
        return cmd_sweep(config);
    }
    if (s == "selftest") {
        return cmd_selftest(config);
    }
    std::cerr << "relphase: unknown subcommand '" << s << "'\n";
    return kConfigError;
}

}  // namespace relphase::cli
