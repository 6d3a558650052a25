#include "crcep/io.hpp"

#include <cstdio>
#include <fstream>

namespace crcep {

using nlohmann::json;

Vec CovarianceInput::scalar_lags() const {
    if (m != 1)
        throw DataError("covariance data is m > 1 where scalar was expected");
    Vec c(n + 1);
    for (int k = 0; k <= n; ++k) c[k] = lags[k](0, 0);
    return c;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open input file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw DataError("malformed JSON in " + path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open output file: " + path);
    out << doc.dump(2) << "\n";
}

namespace {

Mat lag_entry_to_matrix(const json& entry, int m) {
    if (entry.is_number()) {
        if (m != 1)
            throw DataError("covariance lag is scalar but m > 1 declared");
        return Mat::Constant(1, 1, entry.get<double>());
    }
    Mat M = matrix_from_json(entry);
    if (M.rows() != m || M.cols() != m)
        throw DataError("covariance lag block does not match declared m");
    return M;
}

}  // namespace

CovarianceInput parse_covariance(const json& doc) {
    if (!doc.contains("lags") || !doc["lags"].is_array() ||
        doc["lags"].empty())
        throw DataError("covariance document needs a non-empty \"lags\" array");
    CovarianceInput out;
    out.m = doc.value("m", 1);
    out.n = doc.value("n", static_cast<int>(doc["lags"].size()) - 1);
    if (out.n + 1 != static_cast<int>(doc["lags"].size()))
        throw DataError("covariance \"n\" inconsistent with lag count");
    if (out.m < 1) throw DataError("covariance \"m\" must be positive");
    for (const json& entry : doc["lags"])
        out.lags.push_back(lag_entry_to_matrix(entry, out.m));
    return out;
}

Vec parse_polynomial(const json& doc) {
    if (!doc.contains("coeffs") || !doc["coeffs"].is_array() ||
        doc["coeffs"].empty())
        throw DataError("polynomial document needs a \"coeffs\" array");
    Vec c(doc["coeffs"].size());
    int i = 0;
    for (const json& v : doc["coeffs"]) {
        if (!v.is_number()) throw DataError("polynomial coefficients must be numbers");
        c[i++] = v.get<double>();
    }
    return c;
}

StateSpaceModel parse_state_model(const json& doc) {
    for (const char* key : {"A", "C", "W", "R"})
        if (!doc.contains(key))
            throw DataError(std::string("state model document needs \"") +
                            key + "\"");
    StateSpaceModel ss;
    ss.A_ss = matrix_from_json(doc["A"]);
    ss.C = matrix_from_json(doc["C"]);
    ss.W = matrix_from_json(doc["W"]);
    ss.R = matrix_from_json(doc["R"]);
    return ss;
}

VectorPeriodicArmaModel parse_vector_model(const json& doc) {
    for (const char* key : {"A", "b", "D", "N"})
        if (!doc.contains(key))
            throw DataError(std::string("model document needs \"") + key +
                            "\"");
    VectorPeriodicArmaModel model;
    for (const json& blk : doc["A"]) model.A.push_back(matrix_from_json(blk));
    if (model.A.empty()) throw DataError("model \"A\" must be non-empty");
    model.b = parse_polynomial(json{{"coeffs", doc["b"]}});
    model.D = matrix_from_json(doc["D"]);
    model.N = doc["N"].get<int>();
    model.m = static_cast<int>(model.A[0].rows());
    return model;
}

ObservationChannel parse_channel(const json& doc) {
    for (const char* key : {"C", "R"})
        if (!doc.contains(key))
            throw DataError(std::string("channel document needs \"") + key +
                            "\"");
    return {matrix_from_json(doc["C"]), matrix_from_json(doc["R"])};
}

json to_json(const Mat& M) {
    json rows = json::array();
    for (int i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const Vec& v) {
    json arr = json::array();
    for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

Mat matrix_from_json(const json& doc) {
    if (!doc.is_array() || doc.empty() || !doc[0].is_array() ||
        doc[0].empty())
        throw DataError("expected a non-empty nested array for a matrix");
    const int rows = static_cast<int>(doc.size());
    const int cols = static_cast<int>(doc[0].size());
    Mat M(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(doc[i].size()) != cols)
            throw DataError("ragged matrix rows in JSON document");
        for (int j = 0; j < cols; ++j) {
            if (!doc[i][j].is_number())
                throw DataError("matrix entries must be numbers");
            M(i, j) = doc[i][j].get<double>();
        }
    }
    return M;
}

json model_to_json(const LineArmaModel& model) {
    return {{"a", to_json(model.a)},
            {"b", to_json(model.b)},
            {"sigma2", model.sigma2}};
}

json model_to_json(const PeriodicArmaModel& model) {
    return {{"a", to_json(model.a)},
            {"b", to_json(model.b)},
            {"sigma2", model.sigma2},
            {"N", model.N}};
}

json model_to_json(const VectorPeriodicArmaModel& model) {
    json blocks = json::array();
    for (const Mat& Ak : model.A) blocks.push_back(to_json(Ak));
    return {{"A", std::move(blocks)},
            {"b", to_json(model.b)},
            {"D", to_json(model.D)},
            {"N", model.N},
            {"m", model.m}};
}

json report_to_json(const SolveReport& report) {
    const char* status = "max_iterations";
    switch (report.status) {
        case SolveStatus::converged: status = "converged"; break;
        case SolveStatus::infeasible: status = "infeasible"; break;
        case SolveStatus::max_iterations: break;
    }
    return {{"iterations", report.iterations},
            {"gradient_norm", report.gradient_norm},
            {"moment_residual", to_json(report.moment_residual)},
            {"status", status}};
}

void write_csv(const std::string& path,
               const std::vector<std::string>& header, const Mat& rows) {
    if (header.size() != static_cast<std::size_t>(rows.cols()))
        throw DimensionError("write_csv: header does not match column count");
    std::ofstream out(path);
    if (!out) throw DataError("cannot open output file: " + path);
    for (std::size_t i = 0; i < header.size(); ++i)
        out << (i ? "," : "") << header[i];
    out << "\r\n";
    char buf[32];
    for (int r = 0; r < rows.rows(); ++r) {
        for (int c = 0; c < rows.cols(); ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", rows(r, c));
            out << (c ? "," : "") << buf;
        }
        out << "\r\n";
    }
}

}  // namespace crcep
