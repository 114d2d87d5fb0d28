#pragma once

#include <Eigen/Dense>
#include <string>

namespace fdattr {

enum class NormKind { l1, l2, linf, weighted_p, induced };

std::string to_string(NormKind kind);
NormKind norm_kind_from_string(const std::string& name);

/// A norm on R^m. Every supported norm is a linear change of variables
/// followed by an l^q norm, ||v|| = ||D v||_q:
///
///   l1, l2, linf   D = I, q = 1, 2, inf
///   weighted_p     (sum w_i |v_i|^p)^(1/p), D = diag(w^(1/p)), q = p
///   induced        ||M v||_2 for an invertible M, D = M, q = 2
///
/// Dual norms follow in closed form, ||f||_* = ||D^{-T} f||_{q*}.
class NormDescriptor {
 public:
  static NormDescriptor l1(int m);
  static NormDescriptor l2(int m);
  static NormDescriptor linf(int m);
  static NormDescriptor weighted(double p, const Eigen::VectorXd& weights);
  static NormDescriptor induced(const Eigen::MatrixXd& matrix);

  NormKind kind() const { return kind_; }
  int dimension() const { return dim_; }
  double p() const { return p_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  const Eigen::MatrixXd& matrix() const { return matrix_; }

  /// Exponent q of the underlying l^q norm (infinity for linf).
  double base_exponent() const { return q_; }
  bool polyhedral() const;
  /// D in ||v|| = ||D v||_q.
  Eigen::MatrixXd transform() const;
  Eigen::MatrixXd inverse_transform() const;

  double norm(const Eigen::Ref<const Eigen::VectorXd>& v) const;
  double dual(const Eigen::Ref<const Eigen::VectorXd>& f) const;

  /// Upper bound on the induced operator norm of A : (R^m, ||.||) -> itself.
  /// Exact unless q is outside {1, 2, inf}, where Riesz-Thorin
  /// interpolation between the 1- and inf-norms is used.
  double operator_norm(const Eigen::MatrixXd& A) const;
  bool operator_norm_exact() const;

  bool operator==(const NormDescriptor& other) const;

 private:
  NormDescriptor(NormKind kind, int dim, double q) : kind_(kind), dim_(dim), q_(q) {}
  void check_dim(Eigen::Index n) const;

  NormKind kind_;
  int dim_;
  double q_;
  double p_ = 0.0;
  Eigen::VectorXd weights_;
  Eigen::VectorXd diag_;  // weighted_p: w^(1/p)
  Eigen::MatrixXd matrix_;
  Eigen::MatrixXd matrix_inv_;
};

/// l^q norm of a plain vector, q in [1, inf].
double lq_norm(const Eigen::Ref<const Eigen::VectorXd>& v, double q);
/// Conjugate exponent q* with 1/q + 1/q* = 1.
double conjugate_exponent(double q);

double norm_eval(const Eigen::VectorXd& v, const NormDescriptor& nd);
double dual_norm_eval(const Eigen::VectorXd& f, const NormDescriptor& nd);

/// A linearly independent set of n vectors in R^m, stored as columns.
class Subspace {
 public:
  /// Rejects bases whose smallest singular value is <= 1e-10 x largest.
  explicit Subspace(Eigen::MatrixXd basis);

  int ambient_dim() const { return static_cast<int>(basis_.rows()); }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Eigen::MatrixXd& basis() const { return basis_; }
  /// Orthonormal (Euclidean) basis of the same span.
  const Eigen::MatrixXd& orthonormal() const { return orthonormal_; }

  static Subspace full(int m);

 private:
  Eigen::MatrixXd basis_;
  Eigen::MatrixXd orthonormal_;
};

/// Sampled representation of a compact set: one point per column.
class PointCloud {
 public:
  explicit PointCloud(Eigen::MatrixXd points);

  int ambient_dim() const { return static_cast<int>(points_.rows()); }
  int size() const { return static_cast<int>(points_.cols()); }
  const Eigen::MatrixXd& points() const { return points_; }
  auto point(int i) const { return points_.col(i); }

 private:
  Eigen::MatrixXd points_;
};

/// max over a in A of min over b in B of ||a - b||.
double hausdorff_semidist(const PointCloud& A, const PointCloud& B, const NormDescriptor& nd);

/// Solution of max { g . c : ||basis * c|| <= 1 }: the dual norm of the
/// functional c -> g . c on the span of `basis`, with a maximizer c on the
/// unit sphere.
struct BallMaximum {
  double value = 0.0;
  Eigen::VectorXd argmax;
};

BallMaximum maximize_on_unit_ball(const Eigen::MatrixXd& basis, const Eigen::VectorXd& g,
                                  const NormDescriptor& nd);

/// min { ||y - G c|| : ||H c|| <= 1 }, a linear program for polyhedral
/// norms (q = 1 or inf) and a secular equation for q = 2.
double distance_to_ball_image(const Eigen::VectorXd& y, const Eigen::MatrixXd& G,
                              const Eigen::MatrixXd& H, const NormDescriptor& nd);

/// Numerical rank: singular values above 1e-10 x the largest, and above
/// `abs_tol` absolutely.
int numerical_rank(const Eigen::MatrixXd& A, double abs_tol = 1e-13);

}  // namespace fdattr
