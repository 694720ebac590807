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

// Shot-based simulation of the preparation / measurement / post-selection protocol.
//
// Each attempt:
//   1. the observer picks a measurement (random-choice policy only);
//   2. Alice picks branch r with probability p_r and prepares
//      |Psi_r>_SA = sum_ij alpha_ij |j>_S |i>_A;
//   3. the observer's instrument fires (mu, chi) with probability
//      ||(A (x) I)|Psi_r>||^2 and the state collapses to (A (x) I)|Psi_r> / norm;
//   4. Alice post-selects on |Psi+> = d^{-1/2} sum_k |k>_S |k>_A, succeeding with
//      probability |<Psi+|state>|^2.
// Only the success bit of step 4 is sampled (not the full Bell measurement).
// Coarse outcomes are sampled as (mu, chi) and reported as mu.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "twotime/core.hpp"
#include "twotime/measurements.hpp"
#include "twotime/probability.hpp"
#include "twotime/rng.hpp"
#include "twotime/states.hpp"
#include "twotime/tomography.hpp"

namespace twotime {

struct ObserverChoice {
    double probability;
    Measurement measurement;
};

class ObserverPolicy {
   public:
    static ObserverPolicy fixed(Measurement m) { return ObserverPolicy({{1.0, std::move(m)}}); }

    static ObserverPolicy random_choice(std::vector<ObserverChoice> choices) {
        return ObserverPolicy(std::move(choices));
    }

    const std::vector<ObserverChoice>& choices() const noexcept { return choices_; }
    std::size_t size() const noexcept { return choices_.size(); }

   private:
    explicit ObserverPolicy(std::vector<ObserverChoice> choices) : choices_(std::move(choices)) {
        if (choices_.empty()) throw Error(ErrorCode::kInvalidInput, "observer policy has no measurements");
        double total = 0.0;
        for (const auto& c : choices_) {
            if (!(c.probability > 0.0)) {
                throw Error(ErrorCode::kInvalidInput, "observer policy: choice probabilities must be positive");
            }
            require_complete(c.measurement, "observer policy");
            total += c.probability;
        }
        if (std::abs(total - 1.0) > tol::kEqual) {
            throw Error(ErrorCode::kNotNormalized,
                        "observer policy: choice probabilities sum to " + std::to_string(total));
        }
    }

    std::vector<ObserverChoice> choices_;
};

struct SimConfig {
    std::uint64_t shots;  // attempted preparations
    std::uint64_t seed;
    Ensemble ensemble;
    ObserverPolicy policy;
    unsigned workers = 1;
};

using Counts = std::vector<std::uint64_t>;

struct SimResult {
    std::uint64_t attempts = 0;
    std::uint64_t successes = 0;
    Counts choice_attempts;                // [choice]
    std::vector<Counts> counts;            // [choice][mu], successful attempts only
    std::vector<Counts> state_attempts;    // [choice][r]
    std::vector<Counts> state_successes;   // [choice][r]

    /// Successful counts per outcome summed over measurement choices.
    Counts outcome_counts() const {
        Counts total;
        for (const auto& c : counts) {
            if (total.size() < c.size()) total.resize(c.size(), 0);
            for (std::size_t mu = 0; mu < c.size(); ++mu) total[mu] += c[mu];
        }
        return total;
    }

    /// f_mu = n_mu / successes
    std::vector<double> frequencies() const {
        const Counts n = outcome_counts();
        std::vector<double> f(n.size(), 0.0);
        if (successes == 0) return f;
        for (std::size_t mu = 0; mu < n.size(); ++mu) f[mu] = double(n[mu]) / double(successes);
        return f;
    }

    friend bool operator==(const SimResult&, const SimResult&) = default;
};

namespace detail {

struct BranchTable {
    std::vector<double> cumulative;  // over flattened (mu, chi)
    std::vector<double> success;     // conditional post-selection probability per (mu, chi)
    std::vector<std::size_t> outcome;
};

/// Born and post-selection probabilities for one (branch, measurement) pair, from
/// the explicit system-ancilla state.
inline BranchTable branch_table(const TwoTimeState& psi, const Measurement& m) {
    const Index d = psi.dim();
    // |Psi>_SA with S the outer index: amplitude of |s>_S |a>_A is alpha_{a s}.
    const Matrix sa = psi.coeffs().transpose();
    BranchTable t;
    double acc = 0.0;
    for (std::size_t mu = 0; mu < m.size(); ++mu) {
        for (const auto& a : m[mu].kraus) {
            const Matrix after = a.matrix() * sa;  // (A (x) I)|Psi>
            const double born = after.squaredNorm();
            const double overlap = std::norm(after.trace()) / static_cast<double>(d);
            acc += born;
            t.cumulative.push_back(acc);
            t.success.push_back(born > 0.0 ? std::min(1.0, overlap / born) : 0.0);
            t.outcome.push_back(mu);
        }
    }
    return t;
}

struct SimTables {
    std::vector<double> choice_cumulative;
    std::vector<double> branch_cumulative;
    std::vector<std::vector<BranchTable>> branches;  // [choice][r]
};

inline std::size_t sample_index(const std::vector<double>& cumulative, double u) {
    const double target = u * cumulative.back();
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
}

inline SimResult empty_result(const SimConfig& cfg) {
    SimResult r;
    r.choice_attempts.assign(cfg.policy.size(), 0);
    for (const auto& c : cfg.policy.choices()) {
        r.counts.emplace_back(c.measurement.size(), 0);
        r.state_attempts.emplace_back(cfg.ensemble.size(), 0);
        r.state_successes.emplace_back(cfg.ensemble.size(), 0);
    }
    return r;
}

inline void run_range(const SimTables& tables, const SimConfig& cfg, std::uint64_t begin, std::uint64_t end,
                      SimResult& out) {
    for (std::uint64_t n = begin; n < end; ++n) {
        CounterStream rng(cfg.seed, n);
        const double u_choice = rng.uniform();
        const double u_branch = rng.uniform();
        const double u_outcome = rng.uniform();
        const double u_success = rng.uniform();

        const std::size_t c = sample_index(tables.choice_cumulative, u_choice);
        const std::size_t r = sample_index(tables.branch_cumulative, u_branch);
        const BranchTable& t = tables.branches[c][r];
        const std::size_t k = sample_index(t.cumulative, u_outcome);

        ++out.attempts;
        ++out.choice_attempts[c];
        ++out.state_attempts[c][r];
        if (u_success < t.success[k]) {
            ++out.successes;
            ++out.counts[c][t.outcome[k]];
            ++out.state_successes[c][r];
        }
    }
}

inline void accumulate(SimResult& into, const SimResult& part) {
    into.attempts += part.attempts;
    into.successes += part.successes;
    for (std::size_t c = 0; c < into.counts.size(); ++c) {
        into.choice_attempts[c] += part.choice_attempts[c];
        for (std::size_t mu = 0; mu < into.counts[c].size(); ++mu) into.counts[c][mu] += part.counts[c][mu];
        for (std::size_t r = 0; r < into.state_attempts[c].size(); ++r) {
            into.state_attempts[c][r] += part.state_attempts[c][r];
            into.state_successes[c][r] += part.state_successes[c][r];
        }
    }
}

}  // namespace detail

inline SimResult simulate(const SimConfig& cfg) {
    if (cfg.shots < 1) throw Error(ErrorCode::kInvalidInput, "simulate: shots must be >= 1");
    detail::SimTables tables;
    double acc = 0.0;
    for (const auto& c : cfg.policy.choices()) {
        require_same_dim(cfg.ensemble.dim(), c.measurement.dim(), "simulate");
        acc += c.probability;
        tables.choice_cumulative.push_back(acc);
    }
    acc = 0.0;
    for (const auto& m : cfg.ensemble.members()) {
        acc += m.weight;
        tables.branch_cumulative.push_back(acc);
    }
    double success_probability = 0.0;
    for (const auto& c : cfg.policy.choices()) {
        auto& row = tables.branches.emplace_back();
        for (const auto& member : cfg.ensemble.members()) {
            row.push_back(detail::branch_table(member.state, c.measurement));
            const auto& t = row.back();
            double prev = 0.0;
            for (std::size_t k = 0; k < t.cumulative.size(); ++k) {
                success_probability += c.probability * member.weight * (t.cumulative[k] - prev) * t.success[k];
                prev = t.cumulative[k];
            }
        }
    }
    if (!(success_probability > tol::kDenominator)) {
        throw Error(ErrorCode::kPostSelectionImpossible, "simulate: post-selection never succeeds");
    }

    const unsigned workers = std::max(1u, cfg.workers);
    std::vector<SimResult> parts(workers, detail::empty_result(cfg));
    std::vector<std::thread> threads;
    const std::uint64_t chunk = (cfg.shots + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t begin = std::min<std::uint64_t>(cfg.shots, w * chunk);
        const std::uint64_t end = std::min<std::uint64_t>(cfg.shots, begin + chunk);
        if (workers == 1) {
            detail::run_range(tables, cfg, begin, end, parts[w]);
        } else {
            threads.emplace_back([&, w, begin, end] { detail::run_range(tables, cfg, begin, end, parts[w]); });
        }
    }
    for (auto& t : threads) t.join();

    SimResult result = detail::empty_result(cfg);
    for (const auto& p : parts) detail::accumulate(result, p);
    return result;
}

/// Analytic outcome distribution the simulation should converge to.
inline std::vector<double> analytic_probabilities(const Ensemble& e, const Measurement& m) {
    return prob_coarse(density_from_ensemble(e), m);
}

/// Binomial standard error of an empirical frequency of an event with probability p.
inline double binomial_standard_error(double p, std::uint64_t n) {
    return n == 0 ? std::numeric_limits<double>::infinity() : std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

/// (f - p) / se; 0 when both the deviation and the standard error vanish.
inline double z_score(double observed, double expected, std::uint64_t n) {
    const double se = binomial_standard_error(expected, n);
    const double diff = observed - expected;
    if (se == 0.0) return diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
    return diff / se;
}

// ---------------------------------------------------------------------------
// Tomography from simulated counts

/// Runs the tomography measurement on the eigen-ensemble of eta.
inline SimResult simulate_tomography(const DensityVector& eta, const TomographySet& ts, std::uint64_t shots,
                                     std::uint64_t seed, unsigned workers = 1) {
    return simulate({shots, seed, eigen_ensemble(eta), ObserverPolicy::fixed(ts.measurement), workers});
}

// ---------------------------------------------------------------------------
// Post-selected proportions depend on the observer's measurement

struct ChoiceProportion {
    std::string measurement;
    std::uint64_t successes_state0 = 0;
    std::uint64_t successes_state1 = 0;
    double fraction_state0 = 0.0;  // among successes under this measurement
    double expected_fraction_state0 = 0.0;
    double z = 0.0;
};

struct SelectionBiasReport {
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    std::vector<ChoiceProportion> per_measurement;  // M1, M2
    ChoiceProportion overall;
    // Fixed-M1 run in which half of the state-0 successes are thrown away.
    ChoiceProportion m1_only_before_discard;
    ChoiceProportion m1_only_after_discard;
    bool overall_equal = false;         // |z| <= 4 against 1/2
    bool conditional_differ = false;    // M1 and M2 fractions differ by more than 4 standard errors
    bool conditional_match = false;     // each per-measurement fraction within 4 SE of 2/3 and 1/3
    bool discard_equalizes = false;     // after discarding, |z| <= 4 against 1/2
};

inline constexpr double kStatisticalBand = 4.0;

/// The two-state ensemble {1/2 <0|(x)|0>, 1/2 <0|(x)|1>} with the observer choosing
/// M1 = {|0><0|, |+><1|} or M2 = {|+><0|, |0><1|} at random. Each state succeeds
/// equally often overall, yet the post-selected proportions are 2:1 under M1 and
/// 1:2 under M2, so "proportions after post-selection" cannot define an ensemble.
inline Ensemble selection_bias_ensemble() {
    const Vector k0 = basis_ket(2, 0);
    const Vector k1 = basis_ket(2, 1);
    return Ensemble({{0.5, pure_product(k0, k0)}, {0.5, pure_product(k0, k1)}});
}

inline Measurement selection_bias_m1() {
    const double s = 1.0 / std::sqrt(2.0);
    Matrix a1 = Matrix::Zero(2, 2);
    a1(0, 0) = 1.0;
    Matrix a2 = Matrix::Zero(2, 2);  // |+><1|
    a2(0, 1) = s;
    a2(1, 1) = s;
    return Measurement::detailed({a1, a2});
}

inline Measurement selection_bias_m2() {
    const double s = 1.0 / std::sqrt(2.0);
    Matrix b1 = Matrix::Zero(2, 2);  // |+><0|
    b1(0, 0) = s;
    b1(1, 0) = s;
    Matrix b2 = Matrix::Zero(2, 2);  // |0><1|
    b2(0, 1) = 1.0;
    return Measurement::detailed({b1, b2});
}

namespace detail {

inline ChoiceProportion proportion(std::string name, std::uint64_t s0, std::uint64_t s1, double expected) {
    ChoiceProportion p;
    p.measurement = std::move(name);
    p.successes_state0 = s0;
    p.successes_state1 = s1;
    const std::uint64_t n = s0 + s1;
    p.fraction_state0 = n == 0 ? 0.0 : double(s0) / double(n);
    p.expected_fraction_state0 = expected;
    p.z = z_score(p.fraction_state0, expected, n);
    return p;
}

}  // namespace detail

inline SelectionBiasReport post_selection_bias_scenario(std::uint64_t shots, std::uint64_t seed,
                                                        unsigned workers = 1) {
    SelectionBiasReport rep;
    rep.shots = shots;
    rep.seed = seed;
    const Ensemble ensemble = selection_bias_ensemble();

    const SimResult mixed = simulate({shots, seed, ensemble,
                                      ObserverPolicy::random_choice({{0.5, selection_bias_m1()}, {0.5, selection_bias_m2()}}),
                                      workers});
    // Per-branch success: M1 gives 1 and 1/2, M2 gives 1/2 and 1 (before the common 1/d).
    const double expected[2] = {2.0 / 3.0, 1.0 / 3.0};
    const char* names[2] = {"M1", "M2"};
    for (std::size_t c = 0; c < 2; ++c) {
        rep.per_measurement.push_back(detail::proportion(names[c], mixed.state_successes[c][0],
                                                         mixed.state_successes[c][1], expected[c]));
    }
    rep.overall = detail::proportion("overall", mixed.state_successes[0][0] + mixed.state_successes[1][0],
                                     mixed.state_successes[0][1] + mixed.state_successes[1][1], 0.5);

    const auto& m1 = rep.per_measurement[0];
    const auto& m2 = rep.per_measurement[1];
    const double n1 = double(m1.successes_state0 + m1.successes_state1);
    const double n2 = double(m2.successes_state0 + m2.successes_state1);
    const double se_diff = std::sqrt(m1.fraction_state0 * (1 - m1.fraction_state0) / std::max(1.0, n1) +
                                     m2.fraction_state0 * (1 - m2.fraction_state0) / std::max(1.0, n2));
    rep.overall_equal = std::abs(rep.overall.z) <= kStatisticalBand;
    rep.conditional_match = std::abs(m1.z) <= kStatisticalBand && std::abs(m2.z) <= kStatisticalBand;
    rep.conditional_differ = se_diff > 0.0 && (m1.fraction_state0 - m2.fraction_state0) / se_diff > kStatisticalBand;

    // M1 only: discard each state-0 success with probability 1/2.
    const std::uint64_t m1_seed = mix64(seed ^ 0x6d31u);
    const SimResult fixed = simulate({shots, m1_seed, ensemble, ObserverPolicy::fixed(selection_bias_m1()), workers});
    const std::uint64_t s0 = fixed.state_successes[0][0];
    const std::uint64_t s1 = fixed.state_successes[0][1];
    rep.m1_only_before_discard = detail::proportion("M1 only", s0, s1, 2.0 / 3.0);
    std::uint64_t kept = 0;
    for (std::uint64_t k = 0; k < s0; ++k) {
        CounterStream coin(m1_seed ^ 0x646973636172ULL, k);
        if (coin.uniform() < 0.5) ++kept;
    }
    rep.m1_only_after_discard = detail::proportion("M1 only, half of state 0 discarded", kept, s1, 0.5);
    rep.discard_equalizes = std::abs(rep.m1_only_after_discard.z) <= kStatisticalBand;
    return rep;
}

}  // namespace twotime
