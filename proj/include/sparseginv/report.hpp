#pragma once

#include <cstddef>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ginv.hpp"
#include "matrix.hpp"

namespace sparseginv::report {

/// Round to 12 significant digits, the printed precision of every report.
inline double round12(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::stod(buf);
}

struct CertificateSummary {
    double objective = 0.0;
    double feasibility_scale = 0.0;
    double certified_ratio = 0.0;
};

struct RunReport {
    std::size_t m = 0;
    std::size_t n = 0;
    std::size_t rank = 0;
    double a_one_norm = 0.0;
    std::string method;
    Matrix H;
    double one_norm = 0.0;
    std::size_t nnz = 0;
    PenroseFlags flags;
    bool reflexive = false;
    std::optional<SubmatrixSelection> selection;
    std::optional<CertificateSummary> certificate;
    nlohmann::json details = nlohmann::json::object();
    double ms = 0.0;
};

inline nlohmann::json matrix_to_json(const Matrix& m)
{
    auto rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back(round12(m(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const nlohmann::json& j)
{
    const std::size_t rows = j.size();
    const std::size_t cols = rows == 0 ? 0 : j.at(0).size();
    std::vector<double> data;
    data.reserve(rows * cols);
    for (const auto& row : j) {
        if (row.size() != cols) {
            throw Error(ErrorCode::DimensionError, "ragged matrix in JSON");
        }
        for (const auto& v : row) {
            data.push_back(v.get<double>());
        }
    }
    return Matrix(rows, cols, std::move(data));
}

/// Fixed top-level fields, plus H, selection (1-based), certificate and
/// method-specific details.
inline nlohmann::json to_json(const RunReport& r)
{
    nlohmann::json j;
    j["m"] = r.m;
    j["n"] = r.n;
    j["rank"] = r.rank;
    j["method"] = r.method;
    j["one_norm"] = round12(r.one_norm);
    j["nnz"] = r.nnz;
    j["p1"] = r.flags.p1;
    j["p2"] = r.flags.p2;
    j["p3"] = r.flags.p3;
    j["p4"] = r.flags.p4;
    j["reflexive"] = r.reflexive;
    j["certified_ratio"] = r.certificate ? nlohmann::json(round12(r.certificate->certified_ratio)) : nlohmann::json();
    j["ms"] = round12(r.ms);
    j["a_one_norm"] = round12(r.a_one_norm);
    j["H"] = matrix_to_json(r.H);
    if (r.selection) {
        std::vector<std::size_t> sigma;
        std::vector<std::size_t> tau;
        for (auto i : r.selection->rows) {
            sigma.push_back(i + 1);
        }
        for (auto i : r.selection->cols) {
            tau.push_back(i + 1);
        }
        j["selection"] = {{"sigma", sigma}, {"tau", tau}};
    }
    if (r.certificate) {
        j["certificate"] = {{"objective", round12(r.certificate->objective)},
                            {"feasibility_scale", round12(r.certificate->feasibility_scale)},
                            {"certified_ratio", round12(r.certificate->certified_ratio)}};
    }
    if (!r.details.empty()) {
        j["details"] = r.details;
    }
    return j;
}

} // namespace sparseginv::report
