#pragma once

#include <Eigen/Dense>
#include <string>

#include "fdattr/covering.hpp"
#include "fdattr/norms.hpp"

namespace fdattr {

/// A linear map T = L + C on (R^m, nd) with a contraction part L and a
/// finite-rank ("compact") part C.
///
/// `contraction_bound` is a certified upper bound on ||L||; the split lies
/// in the class of maps with contraction part below lambda whenever
/// contraction_bound < lambda. `lambda_budget()` is twice the bound, the
/// lambda for which the split belongs to L_{lambda/2}.
struct OperatorSplit {
  Eigen::MatrixXd L;
  Eigen::MatrixXd C;
  int rank = 0;
  NormDescriptor nd;
  double contraction_bound = 0.0;

  int dim() const { return static_cast<int>(L.rows()); }
  Eigen::MatrixXd T() const { return L + C; }
  double lambda_budget() const { return 2.0 * contraction_bound; }
  /// ||L|| and rank(C) agree with the stored bound and declared rank.
  bool valid() const;
};

/// Builds a split, certifying ||L|| <= contraction_bound and recording the
/// numerical rank of C. Passing contraction_bound <= 0 uses ||L|| itself.
OperatorSplit make_split(const Eigen::MatrixXd& L, const Eigen::MatrixXd& C, const NormDescriptor& nd,
                         double contraction_bound = 0.0);

/// Splits T by truncating its singular value decomposition in the
/// coordinates where nd is an l^q norm: C keeps the leading singular
/// triplets until the operator norm of the remainder is below
/// `contraction_target`.
OperatorSplit split_by_svd(const Eigen::MatrixXd& T, const NormDescriptor& nd, double contraction_target);

/// (C1 + L1)(C2 + L2) = [C1 C2 + C1 L2 + L1 C2] + L1 L2, with contraction
/// bound the product of the two bounds.
OperatorSplit split_compose(const OperatorSplit& first, const OperatorSplit& second);

struct NuLambdaResult {
  int nu = 0;
  Eigen::MatrixXd Z;  // m x nu basis of the chosen subspace
  double certified_distance_bound = 0.0;
  double contraction_norm = 0.0;
  double compact_distance = 0.0;
  std::string candidate;  // "svd", "greedy", "greedy_image" or "trivial"
};

/// Certified upper bound on dist(C[B_X], C[B_Z]).
///
/// Hilbert-type norms (q = 2) use ||C (I - P_Z)|| with P_Z the projection
/// that is orthogonal in the norm's own inner product, exact when Z is
/// spanned by leading right singular vectors. Polyhedral norms (q = 1, inf)
/// maximize the convex function x -> dist(Cx, C[B_Z]) over the vertices of
/// B_X, each inner distance being a linear program. Returns the maximizing
/// vertex in `farthest` when requested.
double compact_image_distance(const Eigen::MatrixXd& C, const Eigen::MatrixXd& Z, const NormDescriptor& nd,
                              Eigen::VectorXd* farthest = nullptr);

/// Smallest n for which an n-dimensional Z is found with
/// 2 ||L|| + dist(C[B_X], C[B_Z]) < lambda, searching n = 0, 1, ... and trying
/// singular-subspace candidates and (for polyhedral norms) the greedy
/// farthest-vertex sequence.
NuLambdaResult nu_lambda(const OperatorSplit& split, double lambda);

/// Lower estimate of dist(T[B_X], T[B_Z]) from sampled x in B_X, each
/// inner minimum over B_Z solved exactly.
double sampled_image_distance(const Eigen::MatrixXd& T, const Eigen::MatrixXd& Z, const NormDescriptor& nd,
                              int samples = 8192);

/// Probe points on and inside the unit ball of (R^m, nd), including the
/// vertices for polyhedral norms of small dimension.
Eigen::MatrixXd sample_unit_ball(const NormDescriptor& nd, int count = 8192);

struct ImageCover {
  CoverResult cover;  // radius 2 lambda
  NuLambdaResult nu;
  double D = 0.0;        // certified ||T||
  double bound = 0.0;    // [(n+1) D / lambda]^n
};

/// Covers T[B_X(0,1)] by balls of radius 2 lambda: B_{T(Z)}(0, ||T||) is
/// covered by lambda-balls through cover_subspace_ball and the same
/// centers are returned with doubled radius.
ImageCover cover_image_ball(const OperatorSplit& split, double lambda, const CoveringOptions& options = {});

}  // namespace fdattr
