// Copyright 2026 The twotime Authors
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

// Batch command-line front end. run_cli is kept in a header so tests can drive it
// with in-memory streams; tools/twotime_cli.cpp is a thin main around it.
//
// Exit codes: 0 success, 2 validation/usage error, 3 domain error. Diagnostics go
// to stderr as {"error": "<code>", "message": "..."}.

#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "twotime/bipartite.hpp"
#include "twotime/core.hpp"
#include "twotime/io.hpp"
#include "twotime/measurements.hpp"
#include "twotime/probability.hpp"
#include "twotime/simulate.hpp"
#include "twotime/states.hpp"
#include "twotime/tomography.hpp"
#include "twotime/weak.hpp"

namespace twotime::cli {

using io::json;

inline constexpr const char* kSeedEnv = "TWOTIME_SEED";

enum class Format { kJson, kCsv };

struct Options {
    Format format = Format::kJson;
    std::string state, ensemble, eta, measurement, observable, policy, probs, bipartite, povm;
    bool coarse = false;
    bool allow_non_hermitian = false;
    std::optional<std::uint64_t> shots;
    std::optional<std::uint64_t> seed;
    std::optional<long long> dim;
    unsigned workers = 1;
    std::string demo;
};

namespace detail {

[[noreturn]] inline void usage(const std::string& what) { throw Error(ErrorCode::kUsage, what); }

inline std::string num(double x) {
    if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
    if (x == 0.0) return "0";  // same folding of -0 as the JSON writer
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::uint64_t resolve_seed(const Options& o) {
    if (o.seed) return *o.seed;
    if (const char* env = std::getenv(kSeedEnv); env != nullptr && *env != '\0') {
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(env, &used);
            if (used == std::string(env).size()) return v;
        } catch (const std::exception&) {
        }
        usage(std::string(kSeedEnv) + " is not an unsigned integer");
    }
    usage("no seed: pass --seed or set " + std::string(kSeedEnv));
}

inline int count_set(std::initializer_list<const std::string*> opts) {
    int n = 0;
    for (const auto* s : opts) n += s->empty() ? 0 : 1;
    return n;
}

inline json doubles(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(x);
    return a;
}

inline void write_matrix_csv(std::ostream& out, const Matrix& m, const std::string& prefix = {}) {
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            out << prefix << i << ',' << j << ',' << num(m(i, j).real()) << ',' << num(m(i, j).imag()) << '\n';
        }
    }
}

inline void write_probabilities(std::ostream& out, Format f, const std::vector<double>& p) {
    if (f == Format::kCsv) {
        out << "outcome_index,probability\n";
        for (std::size_t mu = 0; mu < p.size(); ++mu) out << mu << ',' << num(p[mu]) << '\n';
        return;
    }
    io::write_json(out, json{{"probabilities", doubles(p)}});
}

// ---------------------------------------------------------------------------
// Subcommands

inline void cmd_prob(const Options& o, std::ostream& out) {
    if (count_set({&o.state, &o.ensemble, &o.eta}) != 1) usage("prob: pass exactly one of --state, --ensemble, --eta");
    if (o.measurement.empty()) usage("prob: --measurement is required");
    const Measurement m = io::load_file_as<Measurement>(o.measurement);
    std::vector<double> p;
    if (!o.state.empty()) {
        const auto psi = io::load_file_as<TwoTimeState>(o.state);
        p = o.coarse ? prob_coarse(density_from_state(psi), m) : prob_pure(psi, m);
    } else if (!o.ensemble.empty()) {
        const auto e = io::load_file_as<Ensemble>(o.ensemble);
        p = o.coarse ? prob_coarse(density_from_ensemble(e), m) : prob_ensemble(e, m);
    } else {
        const auto eta = io::load_file_as<DensityVector>(o.eta);
        p = o.coarse ? prob_coarse(eta, m) : prob_density(eta, m);
    }
    write_probabilities(out, o.format, p);
}

inline std::vector<double> load_probability_list(const std::string& path) {
    const json j = io::parse_json_text(io::read_file(path));
    if (!j.is_array()) throw Error(ErrorCode::kMalformedData, path + ": expected a JSON array of probabilities");
    std::vector<double> p;
    for (std::size_t k = 0; k < j.size(); ++k) {
        if (!j[k].is_number()) {
            throw Error(ErrorCode::kMalformedData, path + ": entry [" + std::to_string(k) + "] is not a number");
        }
        p.push_back(j[k].get<double>());
    }
    return p;
}

inline void cmd_tomography(const Options& o, std::ostream& out) {
    if (!o.dim) usage("tomography: --dim is required");
    if (count_set({&o.eta, &o.probs}) != 1) usage("tomography: pass exactly one of --eta, --probs");
    const Dim dim(static_cast<Index>(*o.dim));
    const TomographySet ts = build_tomography_set(dim);

    json report = json::object();
    report["dim"] = dim.value();
    report["outcome_count"] = ts.size();
    report["completeness_defect"] = ts.measurement.completeness_defect();

    std::optional<DensityVector> truth;
    std::vector<double> probs;
    DensityVector estimate = DensityVector::normalized(Matrix::Identity(1, 1));
    if (!o.probs.empty()) {
        if (o.shots) usage("tomography: --shots requires --eta");
        probs = load_probability_list(o.probs);
        estimate = reconstruct(probs, dim);
        report["method"] = "polarization";
    } else {
        truth = io::load_file_as<DensityVector>(o.eta);
        require_same_dim(truth->dim(), dim.value(), "tomography --eta");
        if (o.shots) {
            const std::uint64_t seed = resolve_seed(o);
            const SimResult sim = simulate_tomography(*truth, ts, *o.shots, seed, o.workers);
            probs = sim.frequencies();
            probs.resize(ts.size(), 0.0);
            if (sim.successes == 0) throw Error(ErrorCode::kAllDiscarded, "tomography: no successful post-selections");
            estimate = reconstruct_least_squares(probs, dim);
            report["method"] = "least_squares";
            report["shots"] = *o.shots;
            report["seed"] = seed;
            report["successes"] = sim.successes;
        } else {
            probs = predict_probabilities(*truth, ts);
            estimate = reconstruct(probs, dim);
            report["method"] = "polarization";
        }
        report["round_trip_error"] = (estimate.matrix() - truth->matrix()).norm();
    }

    if (o.format == Format::kCsv) {
        out << "row,col,re,im\n";
        write_matrix_csv(out, estimate.matrix());
        return;
    }
    report["probabilities"] = doubles(probs);
    report["reconstruction"] = io::to_json(estimate);
    io::write_json(out, report);
}

inline json outcome_rows(const SimResult& r, const std::vector<double>& analytic, const Measurement& names) {
    const Counts n = r.outcome_counts();
    json rows = json::array();
    for (std::size_t mu = 0; mu < analytic.size(); ++mu) {
        const std::uint64_t count = mu < n.size() ? n[mu] : 0;
        const double f = r.successes == 0 ? 0.0 : double(count) / double(r.successes);
        rows.push_back({{"outcome_index", mu},
                        {"name", mu < names.size() ? names[mu].name : std::to_string(mu)},
                        {"count", count},
                        {"frequency", f},
                        {"analytic", analytic[mu]},
                        {"z", z_score(f, analytic[mu], r.successes)}});
    }
    return rows;
}

/// P(mu | S) under a random choice of measurement: sum_c q_c K_c^mu . eta, normalized.
inline std::vector<double> policy_analytic(const Ensemble& e, const ObserverPolicy& policy) {
    const DensityVector eta = density_from_ensemble(e);
    std::vector<double> w;
    for (const auto& c : policy.choices()) {
        const auto ks = kraus_density_vectors(c.measurement);
        if (w.size() < ks.size()) w.resize(ks.size(), 0.0);
        for (std::size_t mu = 0; mu < ks.size(); ++mu) w[mu] += c.probability * pair(ks[mu], eta);
    }
    return twotime::detail::normalize_weights(std::move(w), ErrorCode::kPostSelectionImpossible, "simulate");
}

inline ObserverPolicy load_policy(const std::string& path) {
    const json j = io::parse_json_text(io::read_file(path));
    if (!j.is_object() || !j.contains("choices") || !j["choices"].is_array() || j["choices"].empty()) {
        io::schema_error(path + ": choices", "expected a nonempty array");
    }
    std::vector<ObserverChoice> choices;
    for (std::size_t c = 0; c < j["choices"].size(); ++c) {
        const std::string field = path + ": choices[" + std::to_string(c) + "]";
        const json& entry = j["choices"][c];
        if (!entry.is_object() || !entry.contains("probability") || !entry["probability"].is_number()) {
            io::schema_error(field + ".probability", "must be a number");
        }
        if (!entry.contains("measurement")) io::schema_error(field, "missing field 'measurement'");
        const auto env = io::at_field(field + ".measurement", [&] { return io::parse_envelope(entry["measurement"]); });
        if (env.kind != io::DocumentKind::kMeasurement) io::schema_error(field + ".measurement", "must be a measurement");
        choices.push_back({entry["probability"].get<double>(),
                           io::at_field(field + ".measurement", [&] { return io::load_measurement(env); })});
    }
    return ObserverPolicy::random_choice(std::move(choices));
}

inline void cmd_simulate(const Options& o, std::ostream& out) {
    if (o.ensemble.empty()) usage("simulate: --ensemble is required");
    if (count_set({&o.measurement, &o.policy}) != 1) usage("simulate: pass exactly one of --measurement, --policy");
    if (!o.shots) usage("simulate: --shots is required");
    const std::uint64_t seed = resolve_seed(o);
    const Ensemble e = io::load_file_as<Ensemble>(o.ensemble);
    ObserverPolicy policy = o.measurement.empty() ? load_policy(o.policy)
                                                  : ObserverPolicy::fixed(io::load_file_as<Measurement>(o.measurement));
    for (const auto& c : policy.choices()) require_same_dim(c.measurement.dim(), e.dim(), "simulate");

    const SimResult r = simulate({*o.shots, seed, e, policy, o.workers});
    const std::vector<double> analytic = policy.size() == 1
                                             ? analytic_probabilities(e, policy.choices().front().measurement)
                                             : policy_analytic(e, policy);
    const json rows = outcome_rows(r, analytic, policy.choices().front().measurement);

    if (o.format == Format::kCsv) {
        out << "outcome_index,count,frequency,analytic,z\n";
        for (const auto& row : rows) {
            out << row["outcome_index"].get<std::size_t>() << ',' << row["count"].get<std::uint64_t>() << ','
                << num(row["frequency"].get<double>()) << ',' << num(row["analytic"].get<double>()) << ','
                << num(row["z"].get<double>()) << '\n';
        }
        return;
    }
    json report = {{"shots", *o.shots}, {"seed", seed}, {"attempts", r.attempts}, {"successes", r.successes},
                   {"outcomes", rows}};
    if (policy.size() > 1) {
        json per = json::array();
        for (std::size_t c = 0; c < policy.size(); ++c) {
            SimResult sub;
            sub.counts = {r.counts[c]};
            for (auto n : r.counts[c]) sub.successes += n;
            const Measurement& m = policy.choices()[c].measurement;
            per.push_back({{"choice", c},
                           {"probability", policy.choices()[c].probability},
                           {"attempts", r.choice_attempts[c]},
                           {"successes", sub.successes},
                           {"outcomes", outcome_rows(sub, analytic_probabilities(e, m), m)}});
        }
        report["per_choice"] = std::move(per);
    }
    io::write_json(out, report);
}

inline void cmd_weak(const Options& o, std::ostream& out) {
    if (count_set({&o.state, &o.eta}) != 1) usage("weak: pass exactly one of --state, --eta");
    if (o.observable.empty()) usage("weak: --observable is required");
    const auto obs = io::load_file_as<io::Observable>(o.observable);
    const WeakValueOptions opts{o.allow_non_hermitian};
    json report = json::object();
    Complex value;
    if (!o.state.empty()) {
        value = weak_value_pure(obs.op, io::load_file_as<TwoTimeState>(o.state), opts);
    } else {
        const auto eta = io::load_file_as<DensityVector>(o.eta);
        value = weak_value_ensemble(obs.op, eta, opts);
        report["weak_value_vector"] = io::matrix_to_json(weak_value_vector(eta).coeffs);
        report["equivalent_state"] = io::to_json(weak_equivalent_pure(eta));
    }
    if (o.format == Format::kCsv) {
        out << "re,im\n" << num(value.real()) << ',' << num(value.imag()) << '\n';
        return;
    }
    report["weak_value"] = io::complex_to_json(value);
    io::write_json(out, report);
}

inline void write_fields_csv(std::ostream& out, const json& report) {
    out << "field,value\n";
    for (auto it = report.begin(); it != report.end(); ++it) {
        out << it.key() << ',';
        if (it.value().is_number_float()) {
            out << num(it.value().get<double>());
        } else {
            out << it.value().dump();
        }
        out << '\n';
    }
}

inline void cmd_check(const Options& o, std::ostream& out) {
    if (count_set({&o.eta, &o.measurement}) != 1) usage("check: pass exactly one of --eta, --measurement");
    json report = json::object();
    if (!o.eta.empty()) {
        const auto eta = io::load_file_as<DensityVector>(o.eta);
        const PositivityReport pos = positivity_check(eta);
        report["kind"] = "density_vector";
        report["dim"] = eta.dim();
        report["positive"] = pos.is_positive;
        report["min_eigenvalue"] = pos.min_eigenvalue;
        report["hermitian_defect"] = hermitian_defect(eta.matrix());
        report["trace"] = eta.matrix().trace().real();
    } else {
        const auto m = io::load_file_as<Measurement>(o.measurement);
        report["kind"] = "measurement";
        report["dim"] = m.dim();
        report["outcomes"] = m.size();
        report["detailed"] = m.is_detailed();
        report["complete"] = m.is_complete();
        report["completeness_defect"] = m.completeness_defect();
        report["partial_normalization_defect"] = partial_normalization_defect(m);
    }
    if (o.format == Format::kCsv) {
        write_fields_csv(out, report);
        return;
    }
    io::write_json(out, report);
}

inline void cmd_iso(const Options& o, std::ostream& out) {
    if (count_set({&o.eta, &o.measurement, &o.state, &o.bipartite, &o.povm}) != 1) {
        usage("iso: pass exactly one of --eta, --measurement, --state, --bipartite, --povm");
    }
    if (!o.bipartite.empty()) {
        const auto rho = io::load_file_as<BipartiteDensity>(o.bipartite);
        const DensityVector eta = bipartite_to_density(rho);
        if (o.format == Format::kCsv) {
            out << "row,col,re,im\n";
            write_matrix_csv(out, eta.matrix());
            return;
        }
        io::write_json(out, json{{"density_vector", io::to_json(eta)}});
        return;
    }
    if (!o.povm.empty()) {
        const auto set = io::load_file_as<io::OperatorSet>(o.povm);
        const PovmPullback p = povm_to_twotime(set.ops);
        if (o.format == Format::kCsv) {
            out << "operator,row,col,re,im\n";
            for (std::size_t mu = 0; mu < p.subnormalized.size(); ++mu) {
                write_matrix_csv(out, p.subnormalized[mu].matrix(), std::to_string(mu) + ",");
            }
            return;
        }
        io::write_json(out, json{{"measurement", io::to_json(p.measurement)},
                                 {"supernormalization", p.supernormalization},
                                 {"supernormalization_defect", p.supernormalization_defect},
                                 {"completeness_defect", p.measurement.completeness_defect()}});
        return;
    }
    if (!o.state.empty()) {
        const Vector v = state_to_bipartite(io::load_file_as<TwoTimeState>(o.state));
        if (o.format == Format::kCsv) {
            out << "index,re,im\n";
            for (Index k = 0; k < v.size(); ++k) out << k << ',' << num(v(k).real()) << ',' << num(v(k).imag()) << '\n';
            return;
        }
        io::write_json(out, json{{"bipartite_state", io::vector_to_json(v)}});
        return;
    }
    if (!o.eta.empty()) {
        const auto eta = io::load_file_as<DensityVector>(o.eta);
        const BipartiteDensity rho = density_to_bipartite(eta);
        const double defect = max_abs(bipartite_to_density(rho).matrix() - eta.matrix());
        if (o.format == Format::kCsv) {
            out << "row,col,re,im\n";
            write_matrix_csv(out, rho.matrix());
            return;
        }
        io::write_json(out, json{{"bipartite_density", io::to_json(rho)}, {"round_trip_defect", defect}});
        return;
    }
    const auto m = io::load_file_as<Measurement>(o.measurement);
    io::OperatorSet set{measurement_to_bipartite(m)};
    const double defect = measurement_partial_trace_defect(set.ops);
    if (o.format == Format::kCsv) {
        out << "operator,row,col,re,im\n";
        for (std::size_t mu = 0; mu < set.ops.size(); ++mu) {
            write_matrix_csv(out, set.ops[mu].matrix(), std::to_string(mu) + ",");
        }
        return;
    }
    io::write_json(out, json{{"operator_set", io::to_json(set)},
                             {"partial_trace_sum", io::matrix_to_json(measurement_partial_trace_sum(set.ops))},
                             {"partial_trace_defect", defect},
                             {"complete", defect <= tol::kPsd}});
}

inline json proportion_json(const ChoiceProportion& p) {
    return {{"measurement", p.measurement},
            {"successes_state0", p.successes_state0},
            {"successes_state1", p.successes_state1},
            {"fraction_state0", p.fraction_state0},
            {"expected_fraction_state0", p.expected_fraction_state0},
            {"z", p.z}};
}

inline void cmd_demo(const Options& o, std::ostream& out) {
    if (o.demo != "appendix-b") usage("demo: unknown scenario '" + o.demo + "' (available: appendix-b)");
    const std::uint64_t shots = o.shots.value_or(100000);
    const std::uint64_t seed = resolve_seed(o);
    const SelectionBiasReport rep = post_selection_bias_scenario(shots, seed, o.workers);
    std::vector<ChoiceProportion> rows = rep.per_measurement;
    rows.push_back(rep.overall);
    rows.push_back(rep.m1_only_before_discard);
    rows.push_back(rep.m1_only_after_discard);
    if (o.format == Format::kCsv) {
        out << "group,successes_state0,successes_state1,fraction_state0,expected_fraction_state0,z\n";
        for (const auto& p : rows) {
            out << p.measurement << ',' << p.successes_state0 << ',' << p.successes_state1 << ','
                << num(p.fraction_state0) << ',' << num(p.expected_fraction_state0) << ',' << num(p.z) << '\n';
        }
        return;
    }
    json groups = json::array();
    for (const auto& p : rows) groups.push_back(proportion_json(p));
    io::write_json(out, json{{"scenario", "appendix-b"},
                             {"shots", shots},
                             {"seed", seed},
                             {"groups", groups},
                             {"overall_equal", rep.overall_equal},
                             {"conditional_match", rep.conditional_match},
                             {"conditional_differ", rep.conditional_differ},
                             {"discard_equalizes", rep.discard_equalizes}});
}

inline void report_error(std::ostream& err, std::string_view code, const std::string& message) {
    io::write_json(err, json{{"error", code}, {"message", message}});
}

}  // namespace detail

/// Runs one command. `args` excludes the program name.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Pre- and post-selected quantum states: probabilities, tomography, weak values, simulation",
                 "twotime"};
    app.require_subcommand(1);
    app.allow_windows_style_options(false);

    std::string format = "json";
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    };
    auto add_seed = [&](CLI::App* sub) {
        sub->add_option("--seed", o.seed, std::string("RNG seed (falls back to ") + kSeedEnv + ")");
        sub->add_option("--workers", o.workers, "Worker threads")->check(CLI::Range(1u, 1024u));
    };

    CLI::App* prob = app.add_subcommand("prob", "Outcome probabilities conditioned on post-selection");
    prob->add_option("--state", o.state, "Two-time state document");
    prob->add_option("--ensemble", o.ensemble, "Ensemble document");
    prob->add_option("--eta", o.eta, "Density vector document");
    prob->add_option("--measurement", o.measurement, "Measurement document");
    prob->add_flag("--coarse", o.coarse, "Use the coarse-grained rule (Kraus density vectors)");
    add_format(prob);

    CLI::App* tomo = app.add_subcommand("tomography", "Tomographically complete measurement and reconstruction");
    tomo->add_option("--dim", o.dim, "Hilbert space dimension")->check(CLI::Range(1LL, 6LL));
    tomo->add_option("--eta", o.eta, "Density vector to measure");
    tomo->add_option("--probs", o.probs, "JSON array of outcome probabilities");
    tomo->add_option("--shots", o.shots, "Simulate this many attempts instead of exact probabilities");
    add_seed(tomo);
    add_format(tomo);

    CLI::App* sim = app.add_subcommand("simulate", "Monte Carlo preparation, measurement and post-selection");
    sim->add_option("--ensemble", o.ensemble, "Ensemble document");
    sim->add_option("--measurement", o.measurement, "Measurement document");
    sim->add_option("--policy", o.policy, "Random choice among measurements");
    sim->add_option("--shots", o.shots, "Number of attempted preparations");
    add_seed(sim);
    add_format(sim);

    CLI::App* weak = app.add_subcommand("weak", "Weak values");
    weak->add_option("--state", o.state, "Two-time state document");
    weak->add_option("--eta", o.eta, "Density vector document");
    weak->add_option("--observable", o.observable, "Observable document");
    weak->add_flag("--allow-non-hermitian", o.allow_non_hermitian, "Accept non-Hermitian operators");
    add_format(weak);

    CLI::App* check = app.add_subcommand("check", "Positivity and completeness report");
    check->add_option("--eta", o.eta, "Density vector document");
    check->add_option("--measurement", o.measurement, "Measurement document");
    add_format(check);

    CLI::App* iso = app.add_subcommand("iso", "Bipartite images and normalization defects");
    iso->add_option("--state", o.state, "Two-time state document");
    iso->add_option("--eta", o.eta, "Density vector document");
    iso->add_option("--measurement", o.measurement, "Measurement document");
    iso->add_option("--bipartite", o.bipartite, "Bipartite density document (mapped back to a density vector)");
    iso->add_option("--povm", o.povm, "Operator set forming a POVM (pulled back to a 2-time measurement)");
    add_format(iso);

    CLI::App* demo = app.add_subcommand("demo", "Built-in scenarios");
    demo->add_option("scenario", o.demo, "Scenario name (appendix-b)")->required();
    demo->add_option("--shots", o.shots, "Number of attempted preparations per run");
    add_seed(demo);
    add_format(demo);

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        detail::report_error(err, error_code_name(ErrorCode::kUsage), e.what());
        return 2;
    }
    o.format = format == "csv" ? Format::kCsv : Format::kJson;

    try {
        if (prob->parsed()) detail::cmd_prob(o, out);
        else if (tomo->parsed()) detail::cmd_tomography(o, out);
        else if (sim->parsed()) detail::cmd_simulate(o, out);
        else if (weak->parsed()) detail::cmd_weak(o, out);
        else if (check->parsed()) detail::cmd_check(o, out);
        else if (iso->parsed()) detail::cmd_iso(o, out);
        else if (demo->parsed()) detail::cmd_demo(o, out);
        return 0;
    } catch (const Error& e) {
        detail::report_error(err, error_code_name(e.code()), e.what());
        return is_domain_error(e.code()) ? 3 : 2;
    } catch (const std::exception& e) {
        detail::report_error(err, "internal_error", e.what());
        return 2;
    }
}

}  // namespace twotime::cli
