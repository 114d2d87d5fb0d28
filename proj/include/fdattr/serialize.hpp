#pragma once

#include <Eigen/Dense>
#include <json.hpp>
#include <string>

#include "fdattr/auerbach.hpp"
#include "fdattr/covering.hpp"
#include "fdattr/dimension.hpp"
#include "fdattr/norms.hpp"
#include "fdattr/operators.hpp"
#include "fdattr/systems.hpp"

namespace fdattr {

using json = nlohmann::ordered_json;

// Matrices are written row-major as arrays of rows.
json matrix_to_json(const Eigen::MatrixXd& A);
Eigen::MatrixXd matrix_from_json(const json& j);
json vector_to_json(const Eigen::VectorXd& v);
Eigen::VectorXd vector_from_json(const json& j);

json norm_to_json(const NormDescriptor& nd);
NormDescriptor norm_from_json(const json& j);

json auerbach_to_json(const AuerbachBasis& basis);
json cover_to_json(const CoverResult& cover);
std::string cover_to_csv(const CoverResult& cover);

json split_to_json(const OperatorSplit& split);
OperatorSplit split_from_json(const json& j);
json nu_lambda_to_json(const NuLambdaResult& result);

json report_to_json(const DimBoundReport& report);
std::string report_to_csv(const DimBoundReport& report);

json curve_to_json(const BoxCountCurve& curve);
std::string curve_to_csv(const BoxCountCurve& curve);

std::string trajectory_to_csv(const Trajectory& traj);
std::string cloud_to_csv(const PointCloud& cloud);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

}  // namespace fdattr
