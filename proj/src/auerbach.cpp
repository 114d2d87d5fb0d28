#include "fdattr/auerbach.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace fdattr {

namespace {

// Fills functionals and residuals for a configuration in subspace
// coordinates.
AuerbachBasis complete(const Subspace& U, const NormDescriptor& nd, const Eigen::MatrixXd& C) {
  const int n = U.dim();
  const Eigen::MatrixXd& Q = U.orthonormal();
  AuerbachBasis out{U, nd, C, Q * C, Eigen::MatrixXd(n, n), Eigen::MatrixXd(), Eigen::VectorXd(n)};
  const double det = C.determinant();
  if (det == 0.0 || !std::isfinite(det)) {
    throw AuerbachFailure("Auerbach configuration is singular", INFINITY, INFINITY);
  }
  out.determinant = std::abs(det);
  for (int i = 0; i < n; ++i) {
    out.functional_coords.row(i) = cofactor_functional(C, i).transpose() / det;
  }
  out.functionals = Q * out.functional_coords.transpose();

  const Eigen::MatrixXd duality = out.functional_coords * C - Eigen::MatrixXd::Identity(n, n);
  out.duality_residual = duality.cwiseAbs().maxCoeff();
  double excess = 0.0;
  double norm_err = 0.0;
  for (int i = 0; i < n; ++i) {
    out.functional_norms(i) = maximize_on_unit_ball(Q, out.functional_coords.row(i).transpose(), nd).value;
    excess = std::max(excess, out.functional_norms(i) - 1.0);
    norm_err = std::max(norm_err, std::abs(nd.norm(out.vectors.col(i)) - 1.0));
  }
  out.functional_norm_excess = excess;
  out.vector_norm_error = norm_err;
  return out;
}

}  // namespace

bool AuerbachBasis::valid() const {
  return vector_norm_error <= 1e-9 && duality_residual <= 1e-8 && functional_norm_excess <= 1e-6;
}

Eigen::VectorXd cofactor_functional(const Eigen::MatrixXd& C, int i) {
  const Eigen::Index n = C.rows();
  Eigen::VectorXd a(n);
  Eigen::MatrixXd work = C;
  for (Eigen::Index j = 0; j < n; ++j) {
    work.col(i) = Eigen::VectorXd::Unit(n, j);
    a(j) = work.determinant();
  }
  return a;
}

AuerbachBasis auerbach_basis(const Subspace& U, const NormDescriptor& nd, const AuerbachOptions& options) {
  require(U.ambient_dim() == nd.dimension(), "auerbach_basis: subspace and norm dimensions differ");
  const int n = U.dim();
  require(n <= options.max_dim, "auerbach_basis: subspace dimension above the supported cap of " +
                                    std::to_string(options.max_dim));
  require(options.restarts >= 1, "auerbach_basis: need at least one restart");
  const Eigen::MatrixXd& Q = U.orthonormal();

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  Eigen::MatrixXd best;
  double best_det = -1.0;
  int best_sweeps = 0;
  bool any_converged = false;
  for (int r = 0; r < options.restarts; ++r) {
    Eigen::MatrixXd C(n, n);
    double det = 0.0;
    for (int attempt = 0; attempt < 100 && det <= 1e-8; ++attempt) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) C(j, i) = gauss(rng);
        C.col(i) /= nd.norm(Q * C.col(i));
      }
      det = std::abs(C.determinant());
    }
    if (det <= 1e-8) continue;

    bool converged = false;
    int sweep = 0;
    for (; sweep < options.max_sweeps && !converged; ++sweep) {
      double worst_ratio = 1.0;
      for (int i = 0; i < n; ++i) {
        const Eigen::VectorXd a = cofactor_functional(C, i);
        const double current = std::abs(a.dot(C.col(i)));
        const BallMaximum bm = maximize_on_unit_ball(Q, a, nd);
        const double ratio = bm.value / current;
        if (ratio > 1.0 + options.tolerance) {
          C.col(i) = bm.argmax;
          worst_ratio = std::max(worst_ratio, ratio);
        }
      }
      converged = worst_ratio <= 1.0 + options.tolerance;
    }
    det = std::abs(C.determinant());
    if (converged && (!any_converged || det > best_det)) {
      best = C;
      best_det = det;
      best_sweeps = sweep;
      any_converged = true;
    } else if (!any_converged && det > best_det) {
      best = C;
      best_det = det;
      best_sweeps = sweep;
    }
  }
  if (best_det <= 0.0) {
    throw AuerbachFailure("auerbach_basis: no nondegenerate starting configuration found", INFINITY, INFINITY);
  }

  AuerbachBasis out = complete(U, nd, best);
  out.sweeps = best_sweeps;
  if (!any_converged || !out.valid()) {
    std::ostringstream msg;
    msg << "auerbach_basis: tolerances not met after " << options.restarts
        << " restarts (duality residual " << out.duality_residual << ", functional norm excess "
        << out.functional_norm_excess << ", vector norm error " << out.vector_norm_error << ")";
    throw AuerbachFailure(msg.str(), out.duality_residual, out.functional_norm_excess);
  }
  return out;
}

AuerbachBasis auerbach_from_vectors(const Subspace& U, const NormDescriptor& nd,
                                    const Eigen::MatrixXd& vectors) {
  require(vectors.rows() == U.ambient_dim() && vectors.cols() == U.dim(),
          "auerbach_from_vectors: expected one ambient vector per subspace dimension");
  const Eigen::MatrixXd& Q = U.orthonormal();
  const Eigen::MatrixXd C = Q.transpose() * vectors;
  require((Q * C - vectors).cwiseAbs().maxCoeff() <= 1e-10 * (1.0 + vectors.cwiseAbs().maxCoeff()),
          "auerbach_from_vectors: vectors do not lie in the subspace");
  return complete(U, nd, C);
}

IsomorphismCertificate bm_certificate(const AuerbachBasis& basis) {
  const int n = basis.dim();
  IsomorphismCertificate cert;
  cert.J = basis.vectors;
  // ||J z|| is convex in z, so its max over the cube sits at a vertex;
  // z and -z give the same value.
  double jnorm = 0.0;
  Eigen::VectorXd z(n);
  const std::uint64_t count = std::uint64_t{1} << (n - 1);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    z(0) = 1.0;
    for (int j = 1; j < n; ++j) z(j) = (mask >> (j - 1)) & 1U ? -1.0 : 1.0;
    jnorm = std::max(jnorm, basis.norm.norm(cert.J * z));
  }
  cert.J_norm_bound = jnorm;
  cert.Jinv_norm_bound = basis.functional_norms.maxCoeff();
  return cert;
}

}  // namespace fdattr
