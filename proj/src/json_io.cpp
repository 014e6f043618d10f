#include "toepqr/json_io.hpp"

#include <cmath>
#include <fstream>
#include <iostream>

#include "toepqr/errors.hpp"

namespace toepqr::io {

namespace {

const nlohmann::json& require_field(const nlohmann::json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) {
        throw IoError(std::string("missing field \"") + name + "\"");
    }
    return j.at(name);
}

std::vector<double> to_doubles(const nlohmann::json& j, const char* what) {
    if (!j.is_array()) throw IoError(std::string(what) + " must be an array");
    std::vector<double> v;
    v.reserve(j.size());
    for (const auto& e : j) {
        if (!e.is_number()) {
            throw IoError(std::string(what) + " must contain only numbers");
        }
        v.push_back(e.get<double>());
    }
    return v;
}

void require_finite_vector(const std::vector<double>& v, const char* what) {
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw NonFiniteInput(std::string(what) + " contains a non-finite value");
        }
    }
}

std::string kind_name(RotationKind k) {
    return k == RotationKind::PlaneUpdate ? "update" : "downdate";
}

RotationKind kind_from_name(const std::string& s) {
    if (s == "update") return RotationKind::PlaneUpdate;
    if (s == "downdate") return RotationKind::MixedDowndate;
    throw IoError("rotation kind must be \"update\" or \"downdate\"");
}

}  // namespace

MatrixVariant parse_matrix(const nlohmann::json& j) {
    const nlohmann::json& kind = require_field(j, "kind");
    if (!kind.is_string()) throw IoError("\"kind\" must be a string");
    std::vector<double> col = to_doubles(require_field(j, "col"), "\"col\"");
    std::vector<double> row = to_doubles(require_field(j, "row"), "\"row\"");
    const std::string k = kind.get<std::string>();
    if (k == "toeplitz") return build_toeplitz(std::move(col), std::move(row));
    if (k == "hankel") return build_hankel(std::move(col), std::move(row));
    throw IoError("\"kind\" must be \"toeplitz\" or \"hankel\"");
}

std::vector<double> parse_vector(const nlohmann::json& j) {
    std::vector<double> v = to_doubles(j, "vector");
    if (v.empty()) throw ShapeError("vector must be non-empty");
    require_finite_vector(v, "vector");
    return v;
}

RFactor rfactor_from_json(const nlohmann::json& j) {
    RFactor rf;
    const nlohmann::json& nj = require_field(j, "n");
    if (!nj.is_number_integer()) throw IoError("\"n\" must be an integer");
    rf.n = nj.get<int>();
    if (rf.n < 1) throw ShapeError("factor: n must be >= 1");
    const nlohmann::json& rows = require_field(j, "rows");
    if (!rows.is_array() || static_cast<int>(rows.size()) != rf.n) {
        throw ShapeError("factor: expected n packed rows");
    }
    rf.rows.resize(rf.n);
    for (int i = 0; i < rf.n; ++i) {
        rf.rows[i] = to_doubles(rows.at(i), "factor row");
        if (static_cast<int>(rf.rows[i].size()) != rf.n - i) {
            throw ShapeError("factor: row " + std::to_string(i + 1) +
                             " must have length n - " + std::to_string(i));
        }
        require_finite_vector(rf.rows[i], "factor row");
    }
    return rf;
}

RotationLog rotation_log_from_json(const nlohmann::json& j) {
    RotationLog log;
    const nlohmann::json& nj = require_field(j, "n");
    if (!nj.is_number_integer()) throw IoError("\"n\" must be an integer");
    log.n = nj.get<int>();
    if (log.n < 1) throw ShapeError("rotation log: n must be >= 1");
    log.last_column = to_doubles(require_field(j, "last_column"), "\"last_column\"");
    if (static_cast<int>(log.last_column.size()) != log.n) {
        throw ShapeError("rotation log: last_column must have length n");
    }
    require_finite_vector(log.last_column, "\"last_column\"");
    const nlohmann::json& rots = require_field(j, "rotations");
    if (!rots.is_array() || rots.size() != static_cast<std::size_t>(3 * (log.n - 1))) {
        throw ShapeError("rotation log: expected 3(n-1) rotations");
    }
    log.rotations.reserve(rots.size());
    for (const auto& e : rots) {
        if (!e.is_array() || e.size() != 3 || !e.at(0).is_number() ||
            !e.at(1).is_number() || !e.at(2).is_string()) {
            throw IoError("each rotation must be [c, s, kind]");
        }
        Rotation r;
        r.kind = kind_from_name(e.at(2).get<std::string>());
        r.c = e.at(0).get<double>();
        r.s = e.at(1).get<double>();
        if (!std::isfinite(r.c) || !std::isfinite(r.s)) {
            throw NonFiniteInput("rotation coefficients must be finite");
        }
        log.rotations.push_back(r);
    }
    return log;
}

MatrixVariant read_matrix_file(const std::string& path) {
    return parse_matrix(read_json_file(path));
}

std::vector<double> read_vector_file(const std::string& path) {
    return parse_vector(read_json_file(path));
}

nlohmann::ordered_json rfactor_to_json(const RFactor& rf, bool include_tally) {
    nlohmann::ordered_json j;
    j["n"] = rf.n;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : rf.rows) rows.push_back(row);
    j["rows"] = std::move(rows);
    if (include_tally) j["tally"] = rf.tally.mults;
    return j;
}

nlohmann::ordered_json rotation_log_to_json(const RotationLog& log) {
    nlohmann::ordered_json j;
    j["n"] = log.n;
    nlohmann::ordered_json rots = nlohmann::ordered_json::array();
    for (const Rotation& r : log.rotations) {
        rots.push_back(nlohmann::ordered_json::array({r.c, r.s, kind_name(r.kind)}));
    }
    j["rotations"] = std::move(rots);
    j["last_column"] = log.last_column;
    return j;
}

nlohmann::ordered_json solve_report_to_json(const SolveReport& report) {
    nlohmann::ordered_json j;
    j["x"] = report.x;
    j["residual"] = report.residual_2norm;
    j["normal_residual"] = report.normal_residual_2norm;
    j["tally"] = report.tally;
    if (report.cond1.has_value()) j["cond1"] = *report.cond1;
    if (report.metrics.has_value()) {
        nlohmann::ordered_json m;
        if (report.metrics->e1.has_value()) m["e1"] = *report.metrics->e1;
        if (report.metrics->e2.has_value()) m["e2"] = *report.metrics->e2;
        if (report.metrics->e3.has_value()) m["e3"] = *report.metrics->e3;
        j["metrics"] = std::move(m);
    }
    return j;
}

nlohmann::ordered_json vector_to_json(std::span<const double> v) {
    return nlohmann::ordered_json(std::vector<double>(v.begin(), v.end()));
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open \"" + path + "\" for reading");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError("malformed JSON in \"" + path + "\": " + e.what());
    }
}

void write_json_output(const std::string& path, const nlohmann::ordered_json& j) {
    if (path == "-" || path.empty()) {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot open \"" + path + "\" for writing");
    out << j.dump(2) << '\n';
    if (!out) throw IoError("failed writing \"" + path + "\"");
}

}  // namespace toepqr::io
