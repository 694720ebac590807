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

// JSON documents for every domain object. See docs/schema.md.
//
//   {"format_version": "1", "kind": "<kind>", "dim": d, "payload": {...}}
//
// Complex numbers are [re, im] pairs; matrices are row-major nested arrays of them.

#pragma once

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "twotime/bipartite.hpp"
#include "twotime/core.hpp"
#include "twotime/measurements.hpp"
#include "twotime/states.hpp"

namespace twotime::io {

using json = nlohmann::json;

inline constexpr const char* kFormatVersion = "1";

enum class DocumentKind {
    kTwoTimeState,
    kEnsemble,
    kDensityVector,
    kMeasurement,
    kObservable,
    kBipartiteDensity,
    kOperatorSet,
};

inline std::string_view kind_name(DocumentKind k) {
    switch (k) {
        case DocumentKind::kTwoTimeState: return "two_time_state";
        case DocumentKind::kEnsemble: return "ensemble";
        case DocumentKind::kDensityVector: return "density_vector";
        case DocumentKind::kMeasurement: return "measurement";
        case DocumentKind::kObservable: return "observable";
        case DocumentKind::kBipartiteDensity: return "bipartite_density";
        case DocumentKind::kOperatorSet: return "operator_set";
    }
    return "unknown";
}

struct Observable {
    KrausOperator op;
};

struct OperatorSet {
    std::vector<BipartiteOperator> ops;
};

using DomainObject =
    std::variant<TwoTimeState, Ensemble, DensityVector, Measurement, Observable, BipartiteDensity, OperatorSet>;

// ---------------------------------------------------------------------------
// Low-level encoding

[[noreturn]] inline void schema_error(const std::string& path, const std::string& what) {
    throw Error(ErrorCode::kSchemaViolation, path + ": " + what);
}

/// Re-raises a domain validation error with the offending field prepended.
template <typename F>
auto at_field(const std::string& path, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error& e) {
        throw Error(e.code(), path + ": " + e.what());
    }
}

inline json complex_to_json(Complex z) {
    return json::array({z.real(), z.imag()});
}

inline Complex complex_from_json(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        schema_error(path, "expected a complex number [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

inline json vector_to_json(const Vector& v) {
    json out = json::array();
    for (Index k = 0; k < v.size(); ++k) out.push_back(complex_to_json(v(k)));
    return out;
}

inline json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const json& j, Index n, const std::string& path) {
    if (!j.is_array() || static_cast<Index>(j.size()) != n) {
        schema_error(path, "expected " + std::to_string(n) + " rows");
    }
    Matrix m(n, n);
    for (Index i = 0; i < n; ++i) {
        const json& row = j[static_cast<std::size_t>(i)];
        const std::string row_path = path + "[" + std::to_string(i) + "]";
        if (!row.is_array() || static_cast<Index>(row.size()) != n) {
            schema_error(row_path, "expected " + std::to_string(n) + " entries");
        }
        for (Index k = 0; k < n; ++k) {
            m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)], row_path + "[" + std::to_string(k) + "]");
        }
    }
    return m;
}

inline const json& require_field(const json& obj, const char* key, const std::string& path) {
    if (!obj.is_object() || !obj.contains(key)) schema_error(path, std::string("missing field '") + key + "'");
    return obj.at(key);
}

inline const json& require_array(const json& obj, const char* key, const std::string& path) {
    const json& a = require_field(obj, key, path);
    if (!a.is_array() || a.empty()) schema_error(path + "." + key, "expected a nonempty array");
    return a;
}

// ---------------------------------------------------------------------------
// Envelope

struct Envelope {
    DocumentKind kind;
    Index dim;
    json payload;
};

inline Envelope parse_envelope(const json& doc) {
    if (!doc.is_object()) schema_error("$", "document must be a JSON object");
    const json& version = require_field(doc, "format_version", "$");
    if (!version.is_string()) schema_error("format_version", "must be a string");
    if (version.get<std::string>() != kFormatVersion) {
        throw Error(ErrorCode::kVersionMismatch, "format_version: unsupported version '" +
                                                     version.get<std::string>() + "', expected '" + kFormatVersion + "'");
    }
    const json& kind = require_field(doc, "kind", "$");
    if (!kind.is_string()) schema_error("kind", "must be a string");
    const std::string k = kind.get<std::string>();
    static constexpr DocumentKind kAll[] = {DocumentKind::kTwoTimeState,     DocumentKind::kEnsemble,
                                            DocumentKind::kDensityVector,    DocumentKind::kMeasurement,
                                            DocumentKind::kObservable,       DocumentKind::kBipartiteDensity,
                                            DocumentKind::kOperatorSet};
    const DocumentKind* found = nullptr;
    for (const auto& candidate : kAll) {
        if (kind_name(candidate) == k) found = &candidate;
    }
    if (found == nullptr) schema_error("kind", "unknown kind '" + k + "'");
    const json& dim = require_field(doc, "dim", "$");
    if (!dim.is_number_integer() || dim.get<long long>() < 1) schema_error("dim", "must be a positive integer");
    const json& payload = require_field(doc, "payload", "$");
    if (!payload.is_object()) schema_error("payload", "must be an object");
    return {*found, static_cast<Index>(dim.get<long long>()), payload};
}

inline json envelope(DocumentKind kind, Index dim, json payload) {
    json doc = json::object();
    doc["format_version"] = kFormatVersion;
    doc["kind"] = kind_name(kind);
    doc["dim"] = dim;
    doc["payload"] = std::move(payload);
    return doc;
}

// ---------------------------------------------------------------------------
// Typed loaders

inline TwoTimeState load_two_time_state(const Envelope& env) {
    const Matrix c = matrix_from_json(require_field(env.payload, "coeffs", "payload"), env.dim, "payload.coeffs");
    if (double n = c.norm(); std::abs(n - 1.0) > 1e-9) {
        throw Error(ErrorCode::kNotNormalized,
                    "payload.coeffs: Frobenius norm is " + std::to_string(n) + ", expected 1");
    }
    return at_field("payload.coeffs", [&] { return TwoTimeState::from_coeffs(c); });
}

inline Ensemble load_ensemble(const Envelope& env) {
    const json& members = require_array(env.payload, "members", "payload");
    std::vector<EnsembleMember> out;
    double total = 0.0;
    for (std::size_t r = 0; r < members.size(); ++r) {
        const std::string path = "payload.members[" + std::to_string(r) + "]";
        const json& w = require_field(members[r], "weight", path);
        if (!w.is_number()) schema_error(path + ".weight", "must be a number");
        const Matrix c = matrix_from_json(require_field(members[r], "coeffs", path), env.dim, path + ".coeffs");
        if (double n = c.norm(); std::abs(n - 1.0) > 1e-9) {
            throw Error(ErrorCode::kNotNormalized,
                        path + ".coeffs: Frobenius norm is " + std::to_string(n) + ", expected 1");
        }
        total += w.get<double>();
        out.push_back({w.get<double>(), at_field(path + ".coeffs", [&] { return TwoTimeState::from_coeffs(c); })});
    }
    if (std::abs(total - 1.0) > tol::kEqual) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "payload.members[*].weight: weights sum to " << total << ", expected 1";
        throw Error(ErrorCode::kNotNormalized, msg.str());
    }
    return at_field("payload.members", [&] { return Ensemble(std::move(out)); });
}

inline DensityVector load_density_vector(const Envelope& env) {
    Matrix m = matrix_from_json(require_field(env.payload, "matrix", "payload"), env.dim * env.dim, "payload.matrix");
    return at_field("payload.matrix", [&] { return DensityVector::from_matrix(std::move(m)); });
}

inline Measurement load_measurement(const Envelope& env) {
    const json& outcomes = require_array(env.payload, "outcomes", "payload");
    std::vector<Outcome> out;
    for (std::size_t mu = 0; mu < outcomes.size(); ++mu) {
        const std::string path = "payload.outcomes[" + std::to_string(mu) + "]";
        Outcome o;
        if (outcomes[mu].contains("name")) {
            if (!outcomes[mu]["name"].is_string()) schema_error(path + ".name", "must be a string");
            o.name = outcomes[mu]["name"].get<std::string>();
        } else {
            o.name = std::to_string(mu);
        }
        const json& kraus = require_array(outcomes[mu], "kraus", path);
        for (std::size_t chi = 0; chi < kraus.size(); ++chi) {
            o.kraus.emplace_back(
                matrix_from_json(kraus[chi], env.dim, path + ".kraus[" + std::to_string(chi) + "]"));
        }
        out.push_back(std::move(o));
    }
    return at_field("payload.outcomes", [&] { return Measurement(std::move(out)); });
}

inline Observable load_observable(const Envelope& env) {
    return {KrausOperator(matrix_from_json(require_field(env.payload, "matrix", "payload"), env.dim, "payload.matrix"))};
}

inline BipartiteDensity load_bipartite_density(const Envelope& env) {
    Matrix m = matrix_from_json(require_field(env.payload, "matrix", "payload"), env.dim * env.dim, "payload.matrix");
    return at_field("payload.matrix", [&] { return BipartiteDensity::from_matrix(std::move(m)); });
}

inline OperatorSet load_operator_set(const Envelope& env) {
    const json& ops = require_array(env.payload, "operators", "payload");
    OperatorSet out;
    for (std::size_t mu = 0; mu < ops.size(); ++mu) {
        const std::string path = "payload.operators[" + std::to_string(mu) + "]";
        Matrix m = matrix_from_json(ops[mu], env.dim * env.dim, path);
        out.ops.push_back(at_field(path, [&] { return BipartiteOperator::from_matrix(std::move(m)); }));
    }
    return out;
}

inline DomainObject load(const Envelope& env) {
    switch (env.kind) {
        case DocumentKind::kTwoTimeState: return load_two_time_state(env);
        case DocumentKind::kEnsemble: return load_ensemble(env);
        case DocumentKind::kDensityVector: return load_density_vector(env);
        case DocumentKind::kMeasurement: return load_measurement(env);
        case DocumentKind::kObservable: return load_observable(env);
        case DocumentKind::kBipartiteDensity: return load_bipartite_density(env);
        case DocumentKind::kOperatorSet: return load_operator_set(env);
    }
    schema_error("kind", "unsupported");
}

inline json parse_json_text(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::kSchemaViolation, std::string("malformed JSON: ") + e.what());
    }
}

inline DomainObject parse_document(std::string_view text) {
    return load(parse_envelope(parse_json_text(text)));
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// Loads a document of the expected kind from a file.
template <typename T>
T load_file_as(const std::string& path) {
    DomainObject obj = at_field(path, [&] { return parse_document(read_file(path)); });
    if (auto* p = std::get_if<T>(&obj)) return std::move(*p);
    throw Error(ErrorCode::kSchemaViolation, path + ": document has the wrong kind for this option");
}

// ---------------------------------------------------------------------------
// Serialization

inline json to_json(const TwoTimeState& s) {
    return envelope(DocumentKind::kTwoTimeState, s.dim(), {{"coeffs", matrix_to_json(s.coeffs())}});
}

inline json to_json(const Ensemble& e) {
    json members = json::array();
    for (const auto& m : e.members()) {
        members.push_back({{"weight", m.weight}, {"coeffs", matrix_to_json(m.state.coeffs())}});
    }
    return envelope(DocumentKind::kEnsemble, e.dim(), {{"members", std::move(members)}});
}

inline json to_json(const DensityVector& eta) {
    return envelope(DocumentKind::kDensityVector, eta.dim(), {{"matrix", matrix_to_json(eta.matrix())}});
}

inline json to_json(const Measurement& m) {
    json outcomes = json::array();
    for (const auto& o : m.outcomes()) {
        json kraus = json::array();
        for (const auto& a : o.kraus) kraus.push_back(matrix_to_json(a.matrix()));
        outcomes.push_back({{"name", o.name}, {"kraus", std::move(kraus)}});
    }
    return envelope(DocumentKind::kMeasurement, m.dim(), {{"outcomes", std::move(outcomes)}});
}

inline json to_json(const Observable& o) {
    return envelope(DocumentKind::kObservable, o.op.dim(), {{"matrix", matrix_to_json(o.op.matrix())}});
}

inline json to_json(const BipartiteDensity& rho) {
    return envelope(DocumentKind::kBipartiteDensity, rho.dim(), {{"matrix", matrix_to_json(rho.matrix())}});
}

inline json to_json(const OperatorSet& set) {
    json ops = json::array();
    for (const auto& e : set.ops) ops.push_back(matrix_to_json(e.matrix()));
    const Index d = set.ops.empty() ? 1 : set.ops.front().dim();
    return envelope(DocumentKind::kOperatorSet, d, {{"operators", std::move(ops)}});
}

inline json to_json(const DomainObject& obj) {
    return std::visit([](const auto& x) { return to_json(x); }, obj);
}

// ---------------------------------------------------------------------------
// Output. Floats are printed with 17 significant digits; objects are indented,
// arrays are kept on one line.

namespace detail {

inline void write_number(std::ostream& out, double x) {
    if (!std::isfinite(x)) {
        out << "null";
        return;
    }
    if (x == 0.0) {
        out << '0';  // also folds -0, which JSON readers may not preserve
        return;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    out << buf;
}

inline void write(std::ostream& out, const json& j, int indent, bool inline_mode) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out << "{}";
                return;
            }
            out << '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out << ',';
                first = false;
                if (!inline_mode) out << '\n' << pad << "  ";
                out << json(it.key()).dump() << (inline_mode ? ":" : ": ");
                write(out, it.value(), indent + 1, inline_mode);
            }
            if (!inline_mode) out << '\n' << pad;
            out << '}';
            return;
        }
        case json::value_t::array: {
            out << '[';
            bool first = true;
            for (const auto& v : j) {
                if (!first) out << ',';
                first = false;
                write(out, v, indent + 1, true);
            }
            out << ']';
            return;
        }
        case json::value_t::number_float:
            write_number(out, j.get<double>());
            return;
        default:
            out << j.dump();
    }
}

}  // namespace detail

inline void write_json(std::ostream& out, const json& j) {
    detail::write(out, j, 0, false);
    out << '\n';
}

inline std::string to_string(const json& j) {
    std::ostringstream out;
    write_json(out, j);
    return out.str();
}

}  // namespace twotime::io
