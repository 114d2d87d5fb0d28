#include <doctest.h>

#include <cmath>
#include <random>

#include "fdattr/error.hpp"
#include "fdattr/operators.hpp"

using namespace fdattr;

namespace {

Eigen::MatrixXd gaussian(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd M(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) M(i, j) = g(rng);
  return M;
}

NormDescriptor pick_norm(int which, int m) {
  switch (which % 3) {
    case 0: return NormDescriptor::l1(m);
    case 1: return NormDescriptor::l2(m);
    default: return NormDescriptor::linf(m);
  }
}

// Random split with ||L|| = contraction and C of rank k.
OperatorSplit random_split(std::mt19937_64& rng, int m, int k, const NormDescriptor& nd, double contraction) {
  Eigen::MatrixXd L = gaussian(rng, m, m);
  L *= contraction / nd.operator_norm(L);
  const Eigen::MatrixXd C = k == 0 ? Eigen::MatrixXd::Zero(m, m) : Eigen::MatrixXd(gaussian(rng, m, k) * gaussian(rng, k, m) / m);
  return make_split(L, C, nd);
}

int singular_rank(const Eigen::MatrixXd& A) {
  const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXd>(A).singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > 1e-10 * std::max(1.0, s(0))) ++r;
  return r;
}

}  // namespace

TEST_CASE("composition examples") {
  const auto nd = NormDescriptor::l2(3);
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(3, 3);
  const auto a = make_split(0.3 * Eigen::MatrixXd::Identity(3, 3), zero, nd);
  const auto b = make_split(0.4 * Eigen::MatrixXd::Identity(3, 3), zero, nd);
  const auto ab = split_compose(a, b);
  CHECK(ab.contraction_bound == doctest::Approx(0.12).epsilon(1e-12));
  CHECK(ab.C.cwiseAbs().maxCoeff() == 0.0);
  CHECK(ab.rank == 0);
  CHECK(ab.valid());

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto nd4 = pick_norm(trial, 4);
    const auto s1 = random_split(rng, 4, 1, nd4, 0.1);
    const auto s2 = random_split(rng, 4, 1, nd4, 0.2);
    const auto s = split_compose(s1, s2);
    CHECK(s.rank <= 2);
    CHECK(singular_rank(s.C) <= 2);
    CHECK((s.T() - s1.T() * s2.T()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(nd4.operator_norm(s.L) <= s.contraction_bound * (1 + 1e-12));
  }
  CHECK_THROWS_AS(split_compose(a, make_split(Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Zero(2, 2), NormDescriptor::l2(2))),
                  InvalidInput);
}

TEST_CASE("iterated composition multiplies contraction bounds") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto nd = pick_norm(trial, 3);
    const double alpha = 0.2 + 0.03 * trial;
    const auto s = random_split(rng, 3, 1, nd, alpha);
    OperatorSplit acc = s;
    for (int p = 2; p <= 6; ++p) {
      acc = split_compose(s, acc);
      CHECK(std::abs(acc.contraction_bound - std::pow(s.contraction_bound, p)) <=
            1e-12 * std::pow(s.contraction_bound, p));
      CHECK(acc.rank <= p);
    }
  }
}

TEST_CASE("make_split rejects bounds below the true norm") {
  const auto nd = NormDescriptor::linf(2);
  Eigen::Matrix2d L;
  L << 0.2, 0.2, 0, 0.1;
  CHECK(make_split(L, Eigen::Matrix2d::Zero(), nd).contraction_bound == doctest::Approx(0.4));
  CHECK_THROWS_AS(make_split(L, Eigen::Matrix2d::Zero(), nd, 0.3), InvalidInput);
  CHECK(make_split(L, Eigen::Matrix2d::Zero(), nd, 0.5).contraction_bound == 0.5);
}

TEST_CASE("nu_lambda examples") {
  const auto nd = NormDescriptor::l2(3);
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(3, 3);
  const auto trivial = nu_lambda(make_split(zero, zero, nd), 0.3);
  CHECK(trivial.nu == 0);
  CHECK(trivial.Z.cols() == 0);

  const Eigen::Vector3d diag(3.0, 1.0, 0.1);
  const auto s = make_split(zero, Eigen::MatrixXd(diag.asDiagonal()), nd);
  const auto r = nu_lambda(s, 0.5);
  CHECK(r.nu == 2);
  CHECK(r.certified_distance_bound < 0.5);
  CHECK(r.certified_distance_bound == doctest::Approx(0.1));
  // Z is span(e1, e2): the third coordinate is orthogonal to it.
  CHECK(r.Z.row(2).norm() < 1e-12);

  // Exhaustive oracle over coordinate subspaces: the image distance of a
  // coordinate projection in l2 is the largest dropped diagonal entry.
  int best = 4;
  for (int mask = 0; mask < 8; ++mask) {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
      if (!((mask >> i) & 1)) worst = std::max(worst, diag(i));
    if (worst < 0.5) best = std::min(best, __builtin_popcount(mask));
  }
  CHECK(best == 2);

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 12; ++trial) {
    const int k = 1 + trial % 3;
    const auto split = random_split(rng, 5, k, NormDescriptor::l2(5), 0.0);
    for (double lambda : {1e-3, 0.05, 0.4}) CHECK(nu_lambda(split, lambda).nu <= k);
    const auto rank_one = random_split(rng, 5, 1, pick_norm(trial, 5), 0.0);
    for (double lambda : {1e-3, 0.05, 0.4}) CHECK(nu_lambda(rank_one, lambda).nu <= 1);
  }
  CHECK_THROWS_AS(nu_lambda(make_split(0.3 * Eigen::MatrixXd::Identity(3, 3), zero, nd), 0.5), InvalidInput);
}

TEST_CASE("finite rank does not bound nu_lambda in l1") {
  // C has rank 2 with kernel spanned by w = (1, 1, -1). Reaching C e_i from
  // the unit ball forces z = e_i, since ||e_i + t w||_1 > 1 for t != 0, so
  // no plane Z makes C[B_Z] contain all of C[B_X].
  Eigen::Matrix3d C;
  C << 1, 0, 1, 0, 1, 1, 0, 0, 0;
  const auto nd = NormDescriptor::l1(3);
  const auto s = make_split(Eigen::Matrix3d::Zero(), C, nd);
  CHECK(s.rank == 2);
  CHECK(nu_lambda(s, 1e-3).nu == 3);
  for (double t : {-0.5, -0.1, 0.1, 0.5}) CHECK(nd.norm(Eigen::Vector3d(1 + t, t, -t)) > 1.0);
}

TEST_CASE("nu_lambda agrees with the exhaustive coordinate oracle on diagonal maps") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 2 + trial % 5;
    Eigen::VectorXd d(m);
    for (int i = 0; i < m; ++i) d(i) = u(rng);
    const double lambda = 0.1 + 0.05 * (trial % 8);
    const auto nd = NormDescriptor::l2(m);
    const auto r = nu_lambda(make_split(Eigen::MatrixXd::Zero(m, m), Eigen::MatrixXd(d.asDiagonal()), nd), lambda);
    int oracle = m + 1;
    for (int mask = 0; mask < (1 << m); ++mask) {
      double worst = 0.0;
      for (int i = 0; i < m; ++i)
        if (!((mask >> i) & 1)) worst = std::max(worst, d(i));
      if (worst < lambda) oracle = std::min(oracle, __builtin_popcount(mask));
    }
    CHECK(r.nu == oracle);
  }
}

TEST_CASE("nu_lambda is monotone in lambda") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 15; ++trial) {
    const int m = 3 + trial % 3;
    const auto nd = pick_norm(trial, m);
    const auto s = random_split(rng, m, 1 + trial % 3, nd, 0.02);
    int previous = m + 1;
    for (double lambda : {0.05, 0.1, 0.2, 0.4, 0.8}) {
      const int nu = nu_lambda(s, lambda).nu;
      CHECK(nu <= previous);
      previous = nu;
    }
  }
}

TEST_CASE("certified distance dominates the sampled image distance") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 15; ++trial) {
    const int m = 3 + trial % 3;
    const auto nd = pick_norm(trial, m);
    const double lambda = 0.4;
    const auto s = random_split(rng, m, 1 + trial % 3, nd, 0.15);
    const auto r = nu_lambda(s, lambda);
    const double sampled = sampled_image_distance(s.T(), r.Z, nd, 2048);
    CHECK(sampled <= r.certified_distance_bound + 1e-9);
    CHECK(r.certified_distance_bound < lambda);
  }
}

TEST_CASE("compact image distance in l2 is the tail singular value") {
  std::mt19937_64 rng(19);
  const Eigen::MatrixXd C = gaussian(rng, 5, 5);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(C, Eigen::ComputeFullV);
  const auto nd = NormDescriptor::l2(5);
  for (int k = 0; k <= 5; ++k) {
    const double d = compact_image_distance(C, svd.matrixV().leftCols(k), nd);
    const double expected = k < 5 ? svd.singularValues()(k) : 0.0;
    CHECK(d == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("image cover examples") {
  const auto nd = NormDescriptor::linf(2);
  const auto zero = make_split(Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Zero(2, 2), nd);
  const auto z = cover_image_ball(zero, 0.2);
  CHECK(z.cover.count() == 1);
  CHECK(z.cover.centers.norm() == 0.0);

  Eigen::Matrix2d T;
  T << 1, 0, 0, 0;
  const auto ic = cover_image_ball(make_split(Eigen::Matrix2d::Zero(), T, nd), 0.125);
  CHECK(ic.nu.nu == 1);
  CHECK(ic.bound == doctest::Approx(16.0));
  CHECK(ic.cover.count() <= 16);
  CHECK(ic.cover.radius == doctest::Approx(0.25));
  const Eigen::MatrixXd image = T * sample_unit_ball(nd, 4096);
  CHECK(certify_coverage(ic.cover, image, nd).passed());
  // The image is the segment [-1, 1] x {0}; four intervals of half-length
  // 1/4 are needed and suffice.
  CHECK(greedy_cover(PointCloud(image), 0.25, nd).count() >= 4);

  CHECK_THROWS_AS(cover_image_ball(zero, 0.5), InvalidInput);
}

TEST_CASE("image covers are sound and respect the bound on random splits") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 24; ++trial) {
    const int m = 2 + trial % 4;
    const auto nd = pick_norm(trial, m);
    const double lambda = std::array<double, 3>{0.1, 0.2, 0.4}[trial % 3];
    const auto s = random_split(rng, m, 1 + trial % 2, nd, 0.4 * lambda);
    const auto ic = cover_image_ball(s, lambda);
    const int n = ic.nu.nu;
    CAPTURE(trial);
    CHECK(ic.cover.count() <= std::pow((n + 1) * ic.D / lambda, n) * (1 + 1e-12));
    const Eigen::MatrixXd image = s.T() * sample_unit_ball(nd, 2048);
    CHECK(certify_coverage(ic.cover, image, nd).passed());
  }
}

TEST_CASE("polyhedral certificates are exact image distances") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 3 + trial % 3;
    const auto nd = trial % 2 ? NormDescriptor::l1(m) : NormDescriptor::linf(m);
    const double lambda = 0.2;
    Eigen::MatrixXd L = gaussian(rng, m, m);
    L *= 0.45 * lambda / nd.operator_norm(L);
    const auto s = make_split(L, gaussian(rng, m, 1) * gaussian(rng, 1, m), nd);
    const auto r = nu_lambda(s, lambda);
    CHECK(r.certified_distance_bound < lambda);
    CHECK(r.certified_distance_bound <= 2.0 * r.contraction_norm + r.compact_distance + 1e-12);
    // The sample contains every vertex of the ball, where the exact value is attained.
    const double sampled = sampled_image_distance(s.T(), r.Z, nd);
    CHECK(sampled <= r.certified_distance_bound + 1e-9);
    if (r.certified_distance_bound < 2.0 * r.contraction_norm + r.compact_distance - 1e-12)
      CHECK(sampled == doctest::Approx(r.certified_distance_bound).epsilon(1e-7));
  }
}
