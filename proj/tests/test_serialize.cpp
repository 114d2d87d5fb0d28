#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "fdattr/error.hpp"
#include "fdattr/serialize.hpp"

using namespace fdattr;

TEST_CASE("matrices are row-major and round-trip exactly") {
  Eigen::MatrixXd A(2, 3);
  A << 1, 2, 3, 4, 5, 6.25;
  const json j = matrix_to_json(A);
  CHECK(j.dump() == "[[1.0,2.0,3.0],[4.0,5.0,6.25]]");
  CHECK(matrix_from_json(j) == A);

  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  Eigen::MatrixXd R(4, 5);
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 5; ++k) R(i, k) = g(rng) * std::pow(10.0, i - 2);
  CHECK(matrix_from_json(json::parse(matrix_to_json(R).dump())) == R);

  const Eigen::VectorXd v = Eigen::Vector3d(0.1, -2.0, 1e-300);
  CHECK(vector_from_json(json::parse(vector_to_json(v).dump())) == v);
  CHECK_THROWS_AS(matrix_from_json(json::parse("[[1,2],[3]]")), InvalidInput);
  CHECK_THROWS_AS(matrix_from_json(json::parse("[[1,\"x\"]]")), InvalidInput);
}

TEST_CASE("norm descriptors round-trip") {
  Eigen::Matrix2d M;
  M << 2, 1, 0, 1;
  for (const auto& nd : {NormDescriptor::l1(3), NormDescriptor::l2(2), NormDescriptor::linf(4),
                         NormDescriptor::weighted(3.0, Eigen::Vector2d(1.0, 0.5)), NormDescriptor::induced(M)}) {
    const NormDescriptor back = norm_from_json(json::parse(norm_to_json(nd).dump()));
    CHECK(back.kind() == nd.kind());
    CHECK(back.dimension() == nd.dimension());
    const Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(nd.dimension(), -1.0, 2.0);
    CHECK(back.norm(v) == nd.norm(v));
  }
  CHECK_THROWS_AS(norm_from_json(json::parse(R"({"kind":"l7","dimension":2})")), InvalidInput);
  CHECK_THROWS_AS(norm_from_json(json::parse(R"({"kind":"l2"})")), InvalidInput);
}

TEST_CASE("splits round-trip") {
  Eigen::Matrix3d L = 0.1 * Eigen::Matrix3d::Identity();
  Eigen::Matrix3d C = Eigen::Matrix3d::Zero();
  C(0, 1) = 2.0;
  const auto s = make_split(L, C, NormDescriptor::linf(3), 0.2);
  const auto back = split_from_json(json::parse(split_to_json(s).dump()));
  CHECK(back.L == s.L);
  CHECK(back.C == s.C);
  CHECK(back.rank == 1);
  CHECK(back.contraction_bound == 0.2);
  CHECK(back.nd.kind() == NormKind::linf);
}

TEST_CASE("doubles print in shortest round-trip form") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.5e-7) == "-2.5e-07");
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    CHECK(std::stod(format_double(x)) == x);
  }
}

TEST_CASE("cover csv has one center per row") {
  const auto c = cover_linf_ball(2, 1.0, 0.5);
  const std::string csv = cover_to_csv(c);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "x0,x1");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 4);
  const json j = cover_to_json(c);
  CHECK(j.at("count") == 4);
  CHECK(j.at("centers").size() == 4);
}

TEST_CASE("reports and curves serialize deterministically") {
  const auto r = mane_bound(2, 1.0, 0.125);
  const json j = report_to_json(r);
  CHECK(j.at("formula") == "mane");
  CHECK(j.at("bound").get<double>() == r.bound);
  CHECK(j.contains("constants_provenance"));
  CHECK(report_to_json(r).dump() == j.dump());
  CHECK(report_to_csv(r).rfind("key,value\n", 0) == 0);

  const auto curve = boxcount_estimate(PointCloud(Eigen::MatrixXd::Random(2, 500)), NormDescriptor::linf(2), 0.5, 4);
  const std::string csv = curve_to_csv(curve);
  CHECK(csv.rfind("scale,count,neg_log_scale,log_count,slope\n", 0) == 0);
  CHECK(csv == curve_to_csv(curve));
  CHECK(curve_to_json(curve).at("estimate").get<double>() == curve.estimate);
}

TEST_CASE("trajectories and clouds export to csv") {
  Trajectory t;
  t.times = {0.0, 0.5};
  t.states.resize(2, 2);
  t.states << 1, 2, 3, 4;
  CHECK(trajectory_to_csv(t) == "t,x0,x1\n0,1,3\n0.5,2,4\n");
  CHECK(cloud_to_csv(PointCloud(t.states)) == "x0,x1\n1,3\n2,4\n");
}
