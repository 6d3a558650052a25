#ifndef CRCEP_IO_HPP
#define CRCEP_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "crcep/line.hpp"
#include "crcep/smoother.hpp"
#include "crcep/vector_model.hpp"

namespace crcep {

/// Covariance document {"m": .., "n": .., "lags": [..]}.  Scalar lags may be
/// plain numbers; matrix lags are m x m nested arrays.
struct CovarianceInput {
    int m = 1;
    int n = 0;
    std::vector<Mat> lags;

    Vec scalar_lags() const;  ///< requires m == 1
};

nlohmann::json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& doc);

CovarianceInput parse_covariance(const nlohmann::json& doc);
Vec parse_polynomial(const nlohmann::json& doc);        // {"coeffs": [..]}
StateSpaceModel parse_state_model(const nlohmann::json& doc);
VectorPeriodicArmaModel parse_vector_model(const nlohmann::json& doc);
ObservationChannel parse_channel(const nlohmann::json& doc);

nlohmann::json to_json(const Mat& M);
nlohmann::json to_json(const Vec& v);
Mat matrix_from_json(const nlohmann::json& doc);

nlohmann::json model_to_json(const LineArmaModel& model);
nlohmann::json model_to_json(const PeriodicArmaModel& model);
nlohmann::json model_to_json(const VectorPeriodicArmaModel& model);
nlohmann::json report_to_json(const SolveReport& report);

/// RFC-4180 CSV with a header row; one trajectory row per time index.
void write_csv(const std::string& path,
               const std::vector<std::string>& header, const Mat& rows);

}  // namespace crcep

#endif  // CRCEP_IO_HPP
