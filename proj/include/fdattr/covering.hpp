#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "fdattr/auerbach.hpp"
#include "fdattr/norms.hpp"

namespace fdattr {

enum class CoverMethod { grid, isomorphism, greedy, exact };

std::string to_string(CoverMethod method);

/// Centers of a cover laid out as the image J(G) of a uniform grid G in
/// [-half_extent, half_extent]^n with per_axis points per axis. Used to find
/// a nearby center for a probe point without scanning every center.
struct GridFrame {
  Eigen::MatrixXd J;
  Eigen::MatrixXd J_pinv;
  double half_extent = 0.0;
  int per_axis = 0;
};

/// A finite family of closed balls of one radius. The count of a cover is
/// an upper bound for the covering number N_X(K, radius) of the covered set.
struct CoverResult {
  Eigen::MatrixXd centers;  // one center per column
  double radius = 0.0;
  CoverMethod method = CoverMethod::grid;
  std::optional<GridFrame> frame;
  /// Theoretical bound on the count, when the construction has one
  /// (0 when not applicable).
  double bound = 0.0;

  int count() const { return static_cast<int>(centers.cols()); }
};

struct CoveringOptions {
  /// Report 7^n (r/rho)^n instead of (n+1)^n (r/rho)^n for l2 norms.
  bool hilbert_constant = false;
  AuerbachOptions auerbach;
};

/// Axis-aligned grid of ceil(r/rho)^n centers covering the linf ball of
/// radius r by linf balls of radius rho.
CoverResult cover_linf_ball(int n, double r, double rho);

/// Covers B_U(0, r) by ambient balls of radius rho centred in U, through an
/// Auerbach isomorphism J : (R^n, linf) -> U: the linf ball of radius
/// ||J^{-1}|| r is gridded at radius rho/||J|| and pushed forward by J.
/// The count is at most (n+1)^n (r/rho)^n.
CoverResult cover_subspace_ball(const Subspace& U, const NormDescriptor& nd, double r, double rho,
                                const CoveringOptions& options = {});

/// The bound (n+1)^n (r/rho)^n, or 7^n (r/rho)^n with the Hilbert constant.
double subspace_cover_bound(int n, double r, double rho, bool hilbert_constant);

/// Farthest-point greedy eps-net over the cloud, seeded at the
/// lexicographically smallest point. Every point ends within eps of a
/// center, and centers are pairwise more than eps apart.
CoverResult greedy_cover(const PointCloud& K, double eps, const NormDescriptor& nd);

/// Covering number with centers restricted to K. Exact for |K| <= 20 by
/// subset search, otherwise the greedy count. Arbitrary-center covering
/// numbers satisfy N_K(K, 2 eps) <= N(K, eps) <= N_K(K, eps); the
/// `lower_bound` field carries a certified lower bound on N(K, eps).
struct CoveringNumber {
  int count = 0;
  bool exact = false;
  int lower_bound = 0;
  CoverResult witness;
  std::string relation;
};

CoveringNumber covering_number(const PointCloud& K, double eps, const NormDescriptor& nd);

/// Result of checking that every probe point lies within
/// inflation * radius of some center.
struct CoverageCertificate {
  int probes = 0;
  int uncovered = 0;
  double worst_distance = 0.0;
  double inflation = 1.0;
  bool passed() const { return uncovered == 0; }
};

CoverageCertificate certify_coverage(const CoverResult& cover, const Eigen::MatrixXd& probes,
                                     const NormDescriptor& nd, double inflation = 1.01);

/// Deterministic probe points for B_U(0, r): half on the sphere, half
/// inside, from a Halton sequence, plus +-r along each orthonormal axis.
Eigen::MatrixXd sample_subspace_ball(const Subspace& U, const NormDescriptor& nd, double r,
                                     int count = 8192);

/// x -> A x + b.
struct AffineMap {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd operator()(const Eigen::VectorXd& x) const { return A * x + b; }
};

/// Applies every map to every center: if the maps cover K (K is inside the
/// union of the images of K) the result is a cover of K whose radius is the
/// old radius times the largest operator norm among the linear parts.
CoverResult push_cover(const CoverResult& cover, const std::vector<AffineMap>& maps,
                       const NormDescriptor& nd);

}  // namespace fdattr
