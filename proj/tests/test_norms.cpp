#include <doctest.h>

#include <cmath>
#include <random>

#include "fdattr/error.hpp"
#include "fdattr/halton.hpp"
#include "fdattr/norms.hpp"

using namespace fdattr;

namespace {

Eigen::VectorXd random_vector(std::mt19937_64& rng, int m) {
  std::normal_distribution<double> g;
  Eigen::VectorXd v(m);
  for (int i = 0; i < m; ++i) v(i) = g(rng);
  return v;
}

std::vector<NormDescriptor> norm_zoo(int m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.5, 2.0);
  Eigen::VectorXd w(m);
  for (int i = 0; i < m; ++i) w(i) = u(rng);
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) M(i, j) += 0.3 * (u(rng) - 1.25);
  return {NormDescriptor::l1(m),          NormDescriptor::l2(m),          NormDescriptor::linf(m),
          NormDescriptor::weighted(1.0, w), NormDescriptor::weighted(2.0, w), NormDescriptor::weighted(3.0, w),
          NormDescriptor::induced(M)};
}

// Sup of |f . v| over dense samples of the unit sphere.
double sampled_dual(const Eigen::VectorXd& f, const NormDescriptor& nd, int samples) {
  const int m = nd.dimension();
  double best = 0.0;
  Eigen::VectorXd v(m);
  for (int i = 0; i < samples; ++i) {
    for (int j = 0; j < m; ++j) v(j) = 2.0 * halton(i, j) - 1.0;
    const double n = nd.norm(v);
    if (n > 0) best = std::max(best, std::abs(f.dot(v)) / n);
  }
  return best;
}

}  // namespace

TEST_CASE("norm examples") {
  const Eigen::Vector2d v(3, -4);
  CHECK(norm_eval(v, NormDescriptor::l2(2)) == doctest::Approx(5.0));
  CHECK(norm_eval(v, NormDescriptor::linf(2)) == doctest::Approx(4.0));
  CHECK(norm_eval(v, NormDescriptor::l1(2)) == doctest::Approx(7.0));
  CHECK(norm_eval(Eigen::VectorXd::Zero(3), NormDescriptor::l1(3)) == 0.0);
  CHECK_THROWS_AS(norm_eval(v, NormDescriptor::l2(3)), InvalidInput);
}

TEST_CASE("weighted and induced norms match their definitions") {
  const Eigen::Vector3d w(1.0, 4.0, 9.0);
  const Eigen::Vector3d v(1.0, -1.0, 2.0);
  const double direct = std::pow(1.0 * 1 + 4.0 * 1 + 9.0 * 8, 1.0 / 3.0);
  CHECK(NormDescriptor::weighted(3.0, w).norm(v) == doctest::Approx(direct));
  Eigen::Matrix3d M;
  M << 2, 1, 0, 0, 1, 0, 1, 0, 3;
  CHECK(NormDescriptor::induced(M).norm(v) == doctest::Approx((M * v).norm()));
  CHECK_THROWS_AS(NormDescriptor::weighted(2.0, Eigen::Vector3d(1, 0, 1)), InvalidInput);
  CHECK_THROWS_AS(NormDescriptor::weighted(0.5, w), InvalidInput);
  CHECK_THROWS_AS(NormDescriptor::induced(Eigen::Matrix3d::Zero()), InvalidInput);
}

TEST_CASE("dual norm examples") {
  CHECK(dual_norm_eval(Eigen::Vector2d(1, 0), NormDescriptor::linf(2)) == doctest::Approx(1.0));
  CHECK(dual_norm_eval(Eigen::Vector2d(1, 1), NormDescriptor::linf(2)) == doctest::Approx(2.0));
  CHECK(dual_norm_eval(Eigen::Vector2d(1, 1), NormDescriptor::l2(2)) == doctest::Approx(std::sqrt(2.0)));
  CHECK(dual_norm_eval(Eigen::Vector2d(1, -3), NormDescriptor::l1(2)) == doctest::Approx(3.0));
}

TEST_CASE("dual norms agree with sampled suprema") {
  std::mt19937_64 rng(3);
  for (const auto& nd : norm_zoo(2, rng)) {
    const Eigen::VectorXd f = random_vector(rng, 2);
    const double exact = nd.dual(f);
    const double sampled = sampled_dual(f, nd, 20000);
    CHECK(sampled <= exact * (1 + 1e-9));
    CHECK(sampled >= exact * (1 - 2e-3));
  }
}

TEST_CASE("norm axioms and Holder inequality on random inputs") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int m : {1, 2, 3, 5, 8}) {
    for (const auto& nd : norm_zoo(m, rng)) {
      for (int trial = 0; trial < 200; ++trial) {
        const Eigen::VectorXd u = random_vector(rng, m);
        const Eigen::VectorXd v = random_vector(rng, m);
        const double a = g(rng);
        CHECK(nd.norm(u) > 0.0);
        CHECK(nd.norm(a * u) == doctest::Approx(std::abs(a) * nd.norm(u)).epsilon(1e-12));
        CHECK(nd.norm(u + v) <= nd.norm(u) + nd.norm(v) + 1e-12);
        CHECK(std::abs(u.dot(v)) <= nd.dual(u) * nd.norm(v) * (1 + 1e-9));
      }
    }
  }
}

TEST_CASE("standard comparisons between l1, l2 and linf") {
  std::mt19937_64 rng(9);
  for (int m : {1, 2, 4, 7}) {
    for (int trial = 0; trial < 200; ++trial) {
      const Eigen::VectorXd v = random_vector(rng, m);
      const double n1 = NormDescriptor::l1(m).norm(v);
      const double n2 = NormDescriptor::l2(m).norm(v);
      const double ni = NormDescriptor::linf(m).norm(v);
      CHECK(ni <= n2 * (1 + 1e-15));
      CHECK(n2 <= n1 * (1 + 1e-15));
      CHECK(n1 <= m * ni * (1 + 1e-15));
    }
  }
}

TEST_CASE("operator norms are exact where claimed") {
  std::mt19937_64 rng(21);
  for (const auto& nd : norm_zoo(3, rng)) {
    Eigen::MatrixXd A(3, 3);
    for (int i = 0; i < 3; ++i) A.col(i) = random_vector(rng, 3);
    double sampled = 0.0;
    Eigen::VectorXd v(3);
    for (int i = 0; i < 40000; ++i) {
      for (int j = 0; j < 3; ++j) v(j) = 2.0 * halton(i, j) - 1.0;
      sampled = std::max(sampled, nd.norm(A * v) / nd.norm(v));
    }
    const double bound = nd.operator_norm(A);
    CHECK(sampled <= bound * (1 + 1e-9));
    if (nd.operator_norm_exact()) CHECK(sampled >= bound * (1 - 2e-2));
  }
}

TEST_CASE("hausdorff semi-distance") {
  Eigen::MatrixXd a(2, 3);
  a << 0, 1, 2, 0, 0, 1;
  const PointCloud A(a);
  const auto nd = NormDescriptor::linf(2);
  CHECK(hausdorff_semidist(A, A, nd) == 0.0);
  Eigen::MatrixXd b(2, 4);
  b << 0, 1, 2, 5, 0, 0, 1, 5;
  CHECK(hausdorff_semidist(A, PointCloud(b), nd) == 0.0);
  CHECK(hausdorff_semidist(PointCloud(b), A, nd) == doctest::Approx(4.0));
  CHECK(hausdorff_semidist(PointCloud(Eigen::Vector2d(0, 0)), PointCloud(Eigen::Vector2d(1, 0)), nd) ==
        doctest::Approx(1.0));
  CHECK_THROWS_AS(PointCloud(Eigen::MatrixXd(2, 0)), InvalidInput);
}

TEST_CASE("subspace rejects dependent bases") {
  Eigen::MatrixXd B(3, 2);
  B << 1, 2, 0, 0, 1, 2;
  CHECK_THROWS_AS(Subspace{B}, InvalidInput);
  B(1, 1) = 1.0;
  const Subspace U(B);
  CHECK(U.dim() == 2);
  CHECK((U.orthonormal().transpose() * U.orthonormal() - Eigen::Matrix2d::Identity()).norm() < 1e-12);
}

TEST_CASE("maximize_on_unit_ball matches sampled maxima") {
  std::mt19937_64 rng(31);
  for (const auto& nd : norm_zoo(4, rng)) {
    Eigen::MatrixXd B(4, 2);
    B.col(0) = random_vector(rng, 4);
    B.col(1) = random_vector(rng, 4);
    const Eigen::VectorXd g = random_vector(rng, 2);
    const BallMaximum best = maximize_on_unit_ball(B, g, nd);
    CHECK(nd.norm(B * best.argmax) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(g.dot(best.argmax) == doctest::Approx(best.value).epsilon(1e-9));
    double sampled = 0.0;
    for (int i = 0; i < 200000; ++i) {
      const double t = 2.0 * M_PI * i / 200000.0;
      const Eigen::Vector2d c(std::cos(t), std::sin(t));
      sampled = std::max(sampled, g.dot(c) / nd.norm(B * c));
    }
    CHECK(sampled <= best.value * (1 + 1e-7));
    CHECK(sampled >= best.value * (1 - 1e-4));
  }
}

TEST_CASE("distance to the image of a ball") {
  // y = (2, 0), G = H = e1 in (R^2, l2): nearest point of the segment is (1, 0).
  Eigen::MatrixXd G(2, 1);
  G << 1, 0;
  for (const auto& nd : {NormDescriptor::l2(2), NormDescriptor::l1(2), NormDescriptor::linf(2)}) {
    CHECK(distance_to_ball_image(Eigen::Vector2d(2, 0), G, G, nd) == doctest::Approx(1.0));
    CHECK(distance_to_ball_image(Eigen::Vector2d(0.5, 0), G, G, nd) == doctest::Approx(0.0).epsilon(1e-9));
  }
  CHECK(distance_to_ball_image(Eigen::Vector2d(2, 3), G, G, NormDescriptor::l2(2)) ==
        doctest::Approx(std::sqrt(10.0)));
  CHECK(distance_to_ball_image(Eigen::Vector2d(2, 3), G, G, NormDescriptor::l1(2)) == doctest::Approx(4.0));
  CHECK(distance_to_ball_image(Eigen::Vector2d(2, 3), G, G, NormDescriptor::linf(2)) == doctest::Approx(3.0));
}

TEST_CASE("distance to the image of a ball agrees with a sampled minimum") {
  std::mt19937_64 rng(41);
  for (const auto& nd : {NormDescriptor::l2(3), NormDescriptor::l1(3), NormDescriptor::linf(3)}) {
    for (int trial = 0; trial < 10; ++trial) {
      Eigen::MatrixXd G(3, 2), H(3, 2);
      for (int j = 0; j < 2; ++j) {
        G.col(j) = random_vector(rng, 3);
        H.col(j) = random_vector(rng, 3);
      }
      const Eigen::VectorXd y = 2.0 * random_vector(rng, 3);
      const double d = distance_to_ball_image(y, G, H, nd);
      double sampled = std::numeric_limits<double>::infinity();
      // Polar grid over the whole constraint set ||H c|| <= 1.
      for (int i = 0; i < 2000; ++i) {
        const double t = 2.0 * M_PI * i / 2000.0;
        Eigen::Vector2d dir(std::cos(t), std::sin(t));
        dir /= nd.norm(H * dir);
        for (int k = 0; k <= 200; ++k) sampled = std::min(sampled, nd.norm(y - G * (dir * (k / 200.0))));
      }
      CHECK(d <= sampled + 1e-9);
      CHECK(d >= sampled - 5e-2);
    }
  }
}

TEST_CASE("numerical rank") {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(4, 4);
  CHECK(numerical_rank(A) == 0);
  A(0, 0) = 1.0;
  A(1, 1) = 1e-3;
  CHECK(numerical_rank(A) == 2);
  A(2, 2) = 1e-14;
  CHECK(numerical_rank(A) == 2);
}
