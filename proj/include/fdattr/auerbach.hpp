#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "fdattr/error.hpp"
#include "fdattr/norms.hpp"

namespace fdattr {

struct AuerbachOptions {
  int restarts = 20;
  std::uint64_t seed = 20240607;
  /// Relative |det| improvement below which coordinate ascent stops.
  double tolerance = 1e-12;
  int max_sweeps = 20000;
  int max_dim = 8;
};

/// Unit vectors x_1..x_n spanning U together with functionals f_1..f_n on U
/// satisfying f_i(x_j) = delta_ij and ||f_i||_{U*} <= 1 (up to the recorded
/// excess).
///
/// Vectors and functionals are stored twice: in coordinates relative to the
/// orthonormal basis Q of U (x_i = Q * coords.col(i), f_i(Q c) =
/// functional_coords.row(i) . c) and as ambient m-vectors. The ambient
/// functional is the minimum-Euclidean-norm extension Q f_i, which agrees
/// with f_i on U.
struct AuerbachBasis {
  Subspace subspace;
  NormDescriptor norm;
  Eigen::MatrixXd coords;
  Eigen::MatrixXd vectors;
  Eigen::MatrixXd functional_coords;
  Eigen::MatrixXd functionals;
  Eigen::VectorXd functional_norms;
  double determinant = 0.0;
  double duality_residual = 0.0;
  double functional_norm_excess = 0.0;
  double vector_norm_error = 0.0;
  int sweeps = 0;

  int dim() const { return subspace.dim(); }
  /// Checks the three defining invariants at the published tolerances.
  bool valid() const;
};

class AuerbachFailure : public NumericalFailure {
 public:
  AuerbachFailure(const std::string& what, double duality_residual, double functional_norm_excess)
      : NumericalFailure(what),
        duality_residual(duality_residual),
        functional_norm_excess(functional_norm_excess) {}
  double duality_residual;
  double functional_norm_excess;
};

/// Cofactor functional: the vector a with a . c = det(C with column i
/// replaced by c).
Eigen::VectorXd cofactor_functional(const Eigen::MatrixXd& C, int i);

/// Maximizes |det| over the product of unit spheres of U by coordinate
/// ascent with random restarts. Each coordinate step maximizes the cofactor
/// functional over the unit ball of U, so a converged configuration has
/// every cofactor functional of norm 1 relative to |det|.
AuerbachBasis auerbach_basis(const Subspace& U, const NormDescriptor& nd,
                             const AuerbachOptions& options = {});

/// Completes a given set of vectors (columns, lying in U) with cofactor
/// functionals and residuals, without any optimization.
AuerbachBasis auerbach_from_vectors(const Subspace& U, const NormDescriptor& nd,
                                    const Eigen::MatrixXd& vectors);

/// J : (R^n, linf) -> (U, ||.||), J z = sum z_j x_j.
struct IsomorphismCertificate {
  Eigen::MatrixXd J;
  double J_norm_bound = 0.0;
  double Jinv_norm_bound = 0.0;
  double product() const { return J_norm_bound * Jinv_norm_bound; }
};

/// ||J|| is evaluated exactly as the max of ||J z|| over the cube vertices;
/// ||J^{-1}|| is the largest functional norm.
IsomorphismCertificate bm_certificate(const AuerbachBasis& basis);

}  // namespace fdattr
