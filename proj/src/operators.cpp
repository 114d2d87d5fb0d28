#include "fdattr/operators.hpp"

#include <cmath>
#include <limits>

#include "fdattr/error.hpp"

namespace fdattr {

namespace {

// Vertices of the unit ball for polyhedral norms, one of each +-pair.
Eigen::MatrixXd ball_vertices(const NormDescriptor& nd) {
  const int m = nd.dimension();
  const Eigen::MatrixXd Dinv = nd.inverse_transform();
  if (nd.base_exponent() == 1.0) return Dinv;
  require(m <= 14, "vertex enumeration of the linf ball is limited to m <= 14");
  const std::uint64_t count = std::uint64_t{1} << (m - 1);
  Eigen::MatrixXd V(m, count);
  Eigen::VectorXd s(m);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    s(0) = 1.0;
    for (int j = 1; j < m; ++j) s(j) = (mask >> (j - 1)) & 1U ? -1.0 : 1.0;
    V.col(mask) = Dinv * s;
  }
  return V;
}

Eigen::MatrixXd orthonormal_range(const Eigen::MatrixXd& A) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU);
  const int r = numerical_rank(A);
  return svd.matrixU().leftCols(r);
}

}  // namespace

bool OperatorSplit::valid() const {
  return nd.operator_norm(L) <= contraction_bound * (1.0 + 1e-12) && numerical_rank(C) == rank;
}

OperatorSplit make_split(const Eigen::MatrixXd& L, const Eigen::MatrixXd& C, const NormDescriptor& nd,
                         double contraction_bound) {
  const int m = nd.dimension();
  require(L.rows() == m && L.cols() == m && C.rows() == m && C.cols() == m,
          "make_split: matrices must be m x m for the norm dimension");
  require(L.allFinite() && C.allFinite(), "make_split: matrices must be finite");
  const double lnorm = nd.operator_norm(L);
  if (contraction_bound <= 0.0) contraction_bound = lnorm;
  require(lnorm <= contraction_bound * (1.0 + 1e-12),
          "make_split: ||L|| exceeds the declared contraction bound");
  return OperatorSplit{L, C, numerical_rank(C), nd, contraction_bound};
}

OperatorSplit split_by_svd(const Eigen::MatrixXd& T, const NormDescriptor& nd, double contraction_target) {
  const int m = nd.dimension();
  require(T.rows() == m && T.cols() == m, "split_by_svd: size mismatch");
  require(contraction_target > 0.0, "split_by_svd: target must be positive");
  const Eigen::MatrixXd D = nd.transform();
  const Eigen::MatrixXd Dinv = nd.inverse_transform();
  const Eigen::MatrixXd Tt = D * T * Dinv;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Tt, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  for (int r = 0; r <= m; ++r) {
    Eigen::MatrixXd Ct = svd.matrixU().leftCols(r) * s.head(r).asDiagonal() * svd.matrixV().leftCols(r).transpose();
    Eigen::MatrixXd C = Dinv * Ct * D;
    Eigen::MatrixXd L = T - C;
    if (r == m) L.setZero();
    if (nd.operator_norm(L) < contraction_target || r == m) {
      if (r == m) C = T;
      return make_split(L, C, nd);
    }
  }
  throw NumericalFailure("split_by_svd: unreachable");
}

OperatorSplit split_compose(const OperatorSplit& first, const OperatorSplit& second) {
  require(first.dim() == second.dim(), "split_compose: dimension mismatch");
  require(first.nd == second.nd, "split_compose: splits use different norms");
  OperatorSplit out{first.L * second.L,
                    first.C * second.C + first.C * second.L + first.L * second.C,
                    0,
                    first.nd,
                    first.contraction_bound * second.contraction_bound};
  out.rank = numerical_rank(out.C);
  return out;
}

double compact_image_distance(const Eigen::MatrixXd& C, const Eigen::MatrixXd& Z, const NormDescriptor& nd,
                              Eigen::VectorXd* farthest) {
  const int m = nd.dimension();
  require(C.rows() == m && C.cols() == m && Z.rows() == m, "compact_image_distance: size mismatch");
  const double q = nd.base_exponent();
  if (q == 2.0) {
    const Eigen::MatrixXd D = nd.transform();
    const Eigen::MatrixXd Dinv = nd.inverse_transform();
    Eigen::MatrixXd rest = Eigen::MatrixXd::Identity(m, m);
    if (Z.cols() > 0) {
      const Eigen::MatrixXd Qz = orthonormal_range(D * Z);
      rest -= Qz * Qz.transpose();
    }
    const Eigen::MatrixXd Ct = D * C * Dinv * rest;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Ct, Eigen::ComputeFullV);
    if (farthest) *farthest = Dinv * svd.matrixV().col(0);
    return svd.singularValues()(0);
  }
  require(nd.polyhedral(), "compact_image_distance: norms with q outside {1, 2, inf} are not supported");
  const Eigen::MatrixXd V = ball_vertices(nd);
  const Eigen::MatrixXd CZ = C * Z;
  double worst = -1.0;
  for (Eigen::Index v = 0; v < V.cols(); ++v) {
    const double d = distance_to_ball_image(C * V.col(v), CZ, Z, nd);
    if (d > worst) {
      worst = d;
      if (farthest) *farthest = V.col(v);
    }
  }
  return worst;
}

NuLambdaResult nu_lambda(const OperatorSplit& split, double lambda) {
  require(lambda > 0.0, "nu_lambda: lambda must be positive");
  const NormDescriptor& nd = split.nd;
  const double q = nd.base_exponent();
  require(q == 2.0 || nd.polyhedral(), "nu_lambda: norms with q outside {1, 2, inf} are not supported");
  const double lnorm = nd.operator_norm(split.L);
  if (!(lnorm < lambda / 2.0)) {
    throw InvalidInput("nu_lambda: split is not in L_{lambda/2} (||L|| = " + std::to_string(lnorm) +
                       ", lambda/2 = " + std::to_string(lambda / 2.0) + ")");
  }
  const int m = split.dim();
  const Eigen::MatrixXd D = nd.transform();
  const Eigen::MatrixXd Dinv = nd.inverse_transform();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(D * split.C * Dinv, Eigen::ComputeFullV);
  const Eigen::MatrixXd right = Dinv * svd.matrixV();

  // For polyhedral norms dist(T[B_X], T[B_Z]) is convex in x and attains its
  // maximum at a vertex of B_X, so it is computed exactly alongside the
  // analytic bound. Greedy sequences are grown from both C and T.
  const Eigen::MatrixXd T = split.T();
  auto exact = [&](const Eigen::MatrixXd& Z) { return compact_image_distance(T, Z, nd); };
  auto extend = [&](Eigen::MatrixXd& seq, const Eigen::MatrixXd& A) {
    Eigen::VectorXd far;
    compact_image_distance(A, seq, nd, &far);
    seq.conservativeResize(Eigen::NoChange, seq.cols() + 1);
    seq.col(seq.cols() - 1) = far / nd.norm(far);
    if (numerical_rank(seq) < seq.cols()) seq.conservativeResize(Eigen::NoChange, seq.cols() - 1);
  };

  Eigen::MatrixXd greedy(m, 0);
  Eigen::MatrixXd greedy_t(m, 0);
  for (int n = 0; n <= m; ++n) {
    NuLambdaResult best;
    best.nu = n;
    best.contraction_norm = lnorm;
    best.certified_distance_bound = std::numeric_limits<double>::infinity();
    auto consider = [&](const Eigen::MatrixXd& Z, const char* name) {
      if (Z.cols() != n) return;
      const double dc = compact_image_distance(split.C, Z, nd);
      double bound = 2.0 * lnorm + dc;
      if (nd.polyhedral()) bound = std::min(bound, exact(Z));
      if (bound < best.certified_distance_bound) {
        best.certified_distance_bound = bound;
        best.compact_distance = dc;
        best.Z = Z;
        best.candidate = n == 0 ? "trivial" : name;
      }
    };
    consider(right.leftCols(n), "svd");
    if (nd.polyhedral() && n > 0) {
      consider(greedy, "greedy");
      consider(greedy_t, "greedy_image");
    }
    if (best.certified_distance_bound < lambda) return best;

    if (nd.polyhedral() && n < m) {
      extend(greedy, split.C);
      extend(greedy_t, T);
    }
  }
  throw NumericalFailure("nu_lambda: no subspace up to the ambient dimension certifies the distance bound");
}

Eigen::MatrixXd sample_unit_ball(const NormDescriptor& nd, int count) {
  Eigen::MatrixXd probes = sample_subspace_ball(Subspace::full(nd.dimension()), nd, 1.0, count);
  if (nd.polyhedral() && nd.dimension() <= 12) {
    const Eigen::MatrixXd V = ball_vertices(nd);
    Eigen::MatrixXd all(probes.rows(), probes.cols() + 2 * V.cols());
    all << probes, V, -V;
    return all;
  }
  return probes;
}

double sampled_image_distance(const Eigen::MatrixXd& T, const Eigen::MatrixXd& Z, const NormDescriptor& nd,
                              int samples) {
  const Eigen::MatrixXd X = sample_unit_ball(nd, samples);
  const Eigen::MatrixXd TZ = T * Z;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < X.cols(); ++i) {
    worst = std::max(worst, distance_to_ball_image(T * X.col(i), TZ, Z, nd));
  }
  return worst;
}

ImageCover cover_image_ball(const OperatorSplit& split, double lambda, const CoveringOptions& options) {
  require(lambda > 0.0 && lambda < 0.5, "cover_image_ball: need 0 < lambda < 1/2");
  ImageCover out;
  out.nu = nu_lambda(split, lambda);
  const Eigen::MatrixXd T = split.T();
  const NormDescriptor& nd = split.nd;
  out.D = nd.operator_norm(T);
  const int n = out.nu.nu;
  out.bound = std::pow((n + 1) * out.D / lambda, n);

  const int m = split.dim();
  Eigen::MatrixXd TZ = T * out.nu.Z;
  const int r = TZ.cols() > 0 ? numerical_rank(TZ) : 0;
  if (r == 0 || out.D <= lambda) {
    // T[B_X] sits inside B(0, D) with D <= lambda, or T[B_Z] = {0} and
    // every image point is within lambda of the origin.
    out.cover.centers = Eigen::MatrixXd::Zero(m, 1);
  } else {
    if (r < TZ.cols()) TZ = orthonormal_range(TZ);
    const CoverResult inner = cover_subspace_ball(Subspace(TZ), nd, out.D, lambda, options);
    out.cover = inner;
  }
  out.cover.radius = 2.0 * lambda;
  out.cover.method = CoverMethod::isomorphism;
  out.cover.bound = out.bound;
  return out;
}

}  // namespace fdattr
