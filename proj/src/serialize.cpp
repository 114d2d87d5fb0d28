#include "fdattr/serialize.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "fdattr/error.hpp"

namespace fdattr {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json matrix_to_json(const Eigen::MatrixXd& A) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < A.cols(); ++j) row.push_back(A(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  require(j.is_array(), "matrix must be an array of rows");
  if (j.empty()) return Eigen::MatrixXd(0, 0);
  const auto rows = static_cast<Eigen::Index>(j.size());
  require(j[0].is_array(), "matrix rows must be arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXd A(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    require(j[i].is_array() && static_cast<Eigen::Index>(j[i].size()) == cols, "matrix rows differ in length");
    for (Eigen::Index c = 0; c < cols; ++c) {
      require(j[i][c].is_number(), "matrix entries must be numbers");
      A(i, c) = j[i][c].get<double>();
    }
  }
  return A;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Eigen::VectorXd vector_from_json(const json& j) {
  require(j.is_array(), "vector must be an array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    require(j[i].is_number(), "vector entries must be numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

json norm_to_json(const NormDescriptor& nd) {
  json j;
  j["kind"] = to_string(nd.kind());
  j["dimension"] = nd.dimension();
  switch (nd.kind()) {
    case NormKind::weighted_p:
      j["p"] = nd.p();
      j["weights"] = vector_to_json(nd.weights());
      break;
    case NormKind::induced: j["matrix"] = matrix_to_json(nd.matrix()); break;
    default: break;
  }
  return j;
}

NormDescriptor norm_from_json(const json& j) {
  require(j.is_object() && j.contains("kind"), "norm must be an object with a 'kind'");
  const NormKind kind = norm_kind_from_string(j.at("kind").get<std::string>());
  switch (kind) {
    case NormKind::weighted_p: {
      require(j.contains("p") && j.contains("weights"), "weighted norm needs 'p' and 'weights'");
      return NormDescriptor::weighted(j.at("p").get<double>(), vector_from_json(j.at("weights")));
    }
    case NormKind::induced:
      require(j.contains("matrix"), "induced norm needs 'matrix'");
      return NormDescriptor::induced(matrix_from_json(j.at("matrix")));
    default: break;
  }
  require(j.contains("dimension") && j.at("dimension").is_number_integer(), "norm needs an integer 'dimension'");
  const int m = j.at("dimension").get<int>();
  if (kind == NormKind::l1) return NormDescriptor::l1(m);
  if (kind == NormKind::l2) return NormDescriptor::l2(m);
  return NormDescriptor::linf(m);
}

json auerbach_to_json(const AuerbachBasis& b) {
  json j;
  j["norm"] = norm_to_json(b.norm);
  j["subspace"] = matrix_to_json(b.subspace.basis());
  j["dimension"] = b.dim();
  j["vectors"] = matrix_to_json(b.vectors.transpose());
  j["functionals"] = matrix_to_json(b.functionals.transpose());
  j["functional_norms"] = vector_to_json(b.functional_norms);
  j["determinant"] = b.determinant;
  j["duality_residual"] = b.duality_residual;
  j["functional_norm_excess"] = b.functional_norm_excess;
  j["vector_norm_error"] = b.vector_norm_error;
  j["sweeps"] = b.sweeps;
  j["valid"] = b.valid();
  return j;
}

json cover_to_json(const CoverResult& c) {
  json j;
  j["method"] = to_string(c.method);
  j["radius"] = c.radius;
  j["count"] = c.count();
  j["bound"] = c.bound;
  j["centers"] = matrix_to_json(c.centers.transpose());
  return j;
}

std::string cover_to_csv(const CoverResult& c) {
  std::ostringstream os;
  for (Eigen::Index i = 0; i < c.centers.rows(); ++i) os << (i ? "," : "") << "x" << i;
  os << "\n";
  for (Eigen::Index k = 0; k < c.centers.cols(); ++k) {
    for (Eigen::Index i = 0; i < c.centers.rows(); ++i) os << (i ? "," : "") << format_double(c.centers(i, k));
    os << "\n";
  }
  return os.str();
}

json split_to_json(const OperatorSplit& s) {
  json j;
  j["norm"] = norm_to_json(s.nd);
  j["L"] = matrix_to_json(s.L);
  j["C"] = matrix_to_json(s.C);
  j["rank"] = s.rank;
  j["contraction_bound"] = s.contraction_bound;
  j["lambda_budget"] = s.lambda_budget();
  return j;
}

OperatorSplit split_from_json(const json& j) {
  require(j.is_object() && j.contains("L") && j.contains("C"), "split needs 'L' and 'C'");
  const Eigen::MatrixXd L = matrix_from_json(j.at("L"));
  const Eigen::MatrixXd C = matrix_from_json(j.at("C"));
  const NormDescriptor nd =
      j.contains("norm") ? norm_from_json(j.at("norm")) : NormDescriptor::l2(static_cast<int>(L.rows()));
  const double bound = j.value("contraction_bound", 0.0);
  return make_split(L, C, nd, bound);
}

json nu_lambda_to_json(const NuLambdaResult& r) {
  json j;
  j["nu"] = r.nu;
  j["candidate"] = r.candidate;
  j["certified_distance_bound"] = r.certified_distance_bound;
  j["contraction_norm"] = r.contraction_norm;
  j["compact_distance"] = r.compact_distance;
  j["Z"] = matrix_to_json(r.Z.transpose());
  return j;
}

json report_to_json(const DimBoundReport& r) {
  json j;
  j["formula"] = to_string(r.formula);
  j["bound"] = r.bound;
  j["n"] = r.n;
  j["D"] = r.D;
  j["lambda"] = r.lambda;
  j["field_factor"] = r.field_factor;
  if (r.formula == BoundFormula::lemma1) {
    j["M"] = r.M;
    j["contraction"] = r.contraction;
  }
  if (r.formula == BoundFormula::power_iterate) j["p"] = r.p;
  if (!r.lambda_sequence.empty()) {
    j["lambda_sequence"] = r.lambda_sequence;
    j["intermediate"] = r.intermediate;
  }
  json prov = json::object();
  for (const auto& [k, v] : r.provenance) prov[k] = v;
  j["constants_provenance"] = prov;
  return j;
}

std::string report_to_csv(const DimBoundReport& r) {
  std::ostringstream os;
  os << "key,value\n";
  os << "formula," << to_string(r.formula) << "\n";
  os << "bound," << format_double(r.bound) << "\n";
  os << "n," << r.n << "\n";
  os << "D," << format_double(r.D) << "\n";
  os << "lambda," << format_double(r.lambda) << "\n";
  os << "field_factor," << r.field_factor << "\n";
  if (r.formula == BoundFormula::lemma1) {
    os << "M," << format_double(r.M) << "\n";
    os << "contraction," << format_double(r.contraction) << "\n";
  }
  if (r.formula == BoundFormula::power_iterate) os << "p," << r.p << "\n";
  return os.str();
}

json curve_to_json(const BoxCountCurve& c) {
  json j;
  j["estimate"] = c.estimate;
  j["window"] = c.window;
  j["scales"] = c.scales;
  j["counts"] = c.counts;
  j["window_slopes"] = c.window_slopes;
  j["warnings"] = c.warnings;
  return j;
}

std::string curve_to_csv(const BoxCountCurve& c) {
  std::ostringstream os;
  os << "scale,count,neg_log_scale,log_count,slope\n";
  for (std::size_t k = 0; k < c.scales.size(); ++k) {
    os << format_double(c.scales[k]) << "," << c.counts[k] << "," << format_double(-std::log(c.scales[k])) << ","
       << format_double(std::log(static_cast<double>(c.counts[k]))) << ",";
    if (k < c.window_slopes.size()) os << format_double(c.window_slopes[k]);
    os << "\n";
  }
  return os.str();
}

std::string trajectory_to_csv(const Trajectory& traj) {
  std::ostringstream os;
  os << "t";
  for (Eigen::Index i = 0; i < traj.states.rows(); ++i) os << ",x" << i;
  os << "\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    os << format_double(traj.times[k]);
    for (Eigen::Index i = 0; i < traj.states.rows(); ++i) {
      os << "," << format_double(traj.states(i, static_cast<Eigen::Index>(k)));
    }
    os << "\n";
  }
  return os.str();
}

std::string cloud_to_csv(const PointCloud& cloud) {
  std::ostringstream os;
  for (int i = 0; i < cloud.ambient_dim(); ++i) os << (i ? "," : "") << "x" << i;
  os << "\n";
  for (int k = 0; k < cloud.size(); ++k) {
    for (int i = 0; i < cloud.ambient_dim(); ++i) os << (i ? "," : "") << format_double(cloud.points()(i, k));
    os << "\n";
  }
  return os.str();
}

}  // namespace fdattr
