#include "fdattr/covering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fdattr/halton.hpp"

namespace fdattr {

namespace {

constexpr double kCeilSlack = 1e-12;

int grid_per_axis(double ratio) {
  return std::max(1, static_cast<int>(std::ceil(ratio - kCeilSlack)));
}

double grid_coordinate(int j, int k, double R) { return -R + (2.0 * j + 1.0) * R / k; }

// Grid centers (columns), axis 0 varying fastest.
Eigen::MatrixXd grid_points(int n, int k, double R) {
  long long total = 1;
  for (int i = 0; i < n; ++i) {
    total *= k;
    require(total <= 50'000'000, "cover too large to materialize");
  }
  Eigen::MatrixXd pts(n, total);
  std::vector<int> idx(n, 0);
  for (long long c = 0; c < total; ++c) {
    for (int i = 0; i < n; ++i) pts(i, c) = grid_coordinate(idx[i], k, R);
    for (int i = 0; i < n; ++i) {
      if (++idx[i] < k) break;
      idx[i] = 0;
    }
  }
  return pts;
}

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) != b(i)) return a(i) < b(i);
  }
  return false;
}

// Distance from p to the nearest center, using the grid frame to look at
// the 3^n cells around the probe's grid coordinates first.
double frame_distance(const CoverResult& cover, const GridFrame& frame, const Eigen::VectorXd& p,
                      const NormDescriptor& nd, double target) {
  const int n = static_cast<int>(frame.J.cols());
  const int k = frame.per_axis;
  const Eigen::VectorXd z = frame.J_pinv * p;
  const double cell = 2.0 * frame.half_extent / k;
  std::vector<int> base(n);
  for (int i = 0; i < n; ++i) {
    int j = static_cast<int>(std::floor((z(i) + frame.half_extent) / cell));
    base[i] = std::clamp(j, 0, k - 1);
  }
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> off(n, -1);
  Eigen::VectorXd diff(p.size());
  while (true) {
    long long index = 0;
    long long stride = 1;
    bool inside = true;
    for (int i = 0; i < n; ++i) {
      const int j = base[i] + off[i];
      if (j < 0 || j >= k) {
        inside = false;
        break;
      }
      index += stride * j;
      stride *= k;
    }
    if (inside) {
      diff = p - cover.centers.col(index);
      best = std::min(best, nd.norm(diff));
      if (best <= target) return best;
    }
    int i = 0;
    for (; i < n; ++i) {
      if (++off[i] <= 1) break;
      off[i] = -1;
    }
    if (i == n) break;
  }
  return best;
}

double brute_distance(const Eigen::MatrixXd& centers, const Eigen::VectorXd& p, const NormDescriptor& nd,
                      double target) {
  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXd diff(p.size());
  for (Eigen::Index c = 0; c < centers.cols(); ++c) {
    diff = p - centers.col(c);
    best = std::min(best, nd.norm(diff));
    if (best <= target) break;
  }
  return best;
}

}  // namespace

std::string to_string(CoverMethod method) {
  switch (method) {
    case CoverMethod::grid: return "grid";
    case CoverMethod::isomorphism: return "isomorphism";
    case CoverMethod::greedy: return "greedy";
    case CoverMethod::exact: return "exact";
  }
  return "unknown";
}

double subspace_cover_bound(int n, double r, double rho, bool hilbert_constant) {
  const double base = hilbert_constant ? 7.0 : static_cast<double>(n + 1);
  return std::pow(base * r / rho, n);
}

CoverResult cover_linf_ball(int n, double r, double rho) {
  require(n >= 1, "cover_linf_ball: dimension must be positive");
  require(rho > 0.0 && r > 0.0, "cover_linf_ball: radii must be positive");
  require(rho <= r, "cover_linf_ball: need rho <= r");
  const int k = grid_per_axis(r / rho);
  CoverResult out;
  out.centers = grid_points(n, k, r);
  out.radius = rho;
  out.method = CoverMethod::grid;
  out.bound = std::pow(static_cast<double>(k), n);
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  out.frame = GridFrame{I, I, r, k};
  return out;
}

CoverResult cover_subspace_ball(const Subspace& U, const NormDescriptor& nd, double r, double rho,
                                const CoveringOptions& options) {
  require(rho > 0.0 && r > 0.0, "cover_subspace_ball: radii must be positive");
  require(rho <= r, "cover_subspace_ball: need rho <= r");
  const int n = U.dim();
  const AuerbachBasis basis = auerbach_basis(U, nd, options.auerbach);
  const IsomorphismCertificate cert = bm_certificate(basis);

  const double R = cert.Jinv_norm_bound * r;
  const double inner = rho / cert.J_norm_bound;
  const int k = grid_per_axis(R / inner);
  const Eigen::MatrixXd grid = grid_points(n, k, R);

  CoverResult out;
  out.centers = cert.J * grid;
  out.radius = rho;
  out.method = CoverMethod::isomorphism;
  out.bound = subspace_cover_bound(n, r, rho, options.hilbert_constant && nd.kind() == NormKind::l2);
  out.frame = GridFrame{cert.J, cert.J.completeOrthogonalDecomposition().pseudoInverse(), R, k};
  return out;
}

CoverResult greedy_cover(const PointCloud& K, double eps, const NormDescriptor& nd) {
  require(K.ambient_dim() == nd.dimension(), "greedy_cover: cloud and norm dimensions differ");
  require(eps >= 0.0, "greedy_cover: radius must be nonnegative");
  const int N = K.size();
  int seed = 0;
  for (int i = 1; i < N; ++i) {
    if (lex_less(K.point(i), K.point(seed))) seed = i;
  }
  std::vector<int> chosen{seed};
  std::vector<double> dist(N);
  Eigen::VectorXd diff(K.ambient_dim());
  for (int i = 0; i < N; ++i) {
    diff = K.point(i) - K.point(seed);
    dist[i] = nd.norm(diff);
  }
  while (true) {
    int far = 0;
    for (int i = 1; i < N; ++i) {
      if (dist[i] > dist[far]) far = i;
    }
    if (dist[far] <= eps) break;
    chosen.push_back(far);
    for (int i = 0; i < N; ++i) {
      if (dist[i] == 0.0) continue;
      diff = K.point(i) - K.point(far);
      dist[i] = std::min(dist[i], nd.norm(diff));
    }
  }
  CoverResult out;
  out.centers.resize(K.ambient_dim(), static_cast<Eigen::Index>(chosen.size()));
  for (std::size_t c = 0; c < chosen.size(); ++c) out.centers.col(c) = K.point(chosen[c]);
  out.radius = eps;
  out.method = CoverMethod::greedy;
  return out;
}

namespace {

// Smallest number of masks whose union is `full`, trying sizes in order.
bool search_cover(const std::vector<std::uint32_t>& masks, std::uint32_t full, int size, std::uint32_t acc,
                  std::vector<int>& pick) {
  if (acc == full) return true;
  if (size == 0) return false;
  const int N = static_cast<int>(masks.size());
  // The lowest uncovered point must be covered by one of the picks.
  int first = 0;
  while ((acc >> first) & 1U) ++first;
  for (int c = 0; c < N; ++c) {
    if (!((masks[c] >> first) & 1U)) continue;
    pick.push_back(c);
    if (search_cover(masks, full, size - 1, acc | masks[c], pick)) return true;
    pick.pop_back();
  }
  return false;
}

int exact_min_cover(const PointCloud& K, double eps, const NormDescriptor& nd, std::vector<int>* pick_out) {
  const int N = K.size();
  std::vector<std::uint32_t> masks(N, 0);
  Eigen::VectorXd diff(K.ambient_dim());
  for (int c = 0; c < N; ++c) {
    for (int i = 0; i < N; ++i) {
      diff = K.point(i) - K.point(c);
      if (nd.norm(diff) <= eps) masks[c] |= (1U << i);
    }
  }
  const std::uint32_t full = N == 32 ? ~0U : ((1U << N) - 1U);
  for (int size = 1; size <= N; ++size) {
    std::vector<int> pick;
    if (search_cover(masks, full, size, 0U, pick)) {
      if (pick_out) *pick_out = pick;
      return size;
    }
  }
  return N;
}

}  // namespace

CoveringNumber covering_number(const PointCloud& K, double eps, const NormDescriptor& nd) {
  require(K.ambient_dim() == nd.dimension(), "covering_number: cloud and norm dimensions differ");
  require(eps >= 0.0, "covering_number: radius must be nonnegative");
  CoveringNumber out;
  if (K.size() <= 20) {
    std::vector<int> pick;
    out.count = exact_min_cover(K, eps, nd, &pick);
    out.lower_bound = exact_min_cover(K, 2.0 * eps, nd, nullptr);
    out.exact = true;
    out.witness.centers.resize(K.ambient_dim(), static_cast<Eigen::Index>(pick.size()));
    std::sort(pick.begin(), pick.end());
    for (std::size_t c = 0; c < pick.size(); ++c) out.witness.centers.col(c) = K.point(pick[c]);
    out.witness.radius = eps;
    out.witness.method = CoverMethod::exact;
    out.relation =
        "count is the exact minimum with centers in K; for arbitrary centers "
        "N_K(K,2eps) <= N(K,eps) <= N_K(K,eps)";
  } else {
    out.witness = greedy_cover(K, eps, nd);
    out.count = out.witness.count();
    // Greedy centers at radius 2 eps are pairwise > 2 eps apart, so no
    // closed eps-ball holds two of them.
    out.lower_bound = greedy_cover(K, 2.0 * eps, nd).count();
    out.exact = false;
    out.relation =
        "count is a greedy upper bound; lower_bound is a 2eps-separated set size, "
        "so lower_bound <= N(K,eps) <= count";
  }
  return out;
}

CoverageCertificate certify_coverage(const CoverResult& cover, const Eigen::MatrixXd& probes,
                                     const NormDescriptor& nd, double inflation) {
  require(probes.rows() == cover.centers.rows(), "certify_coverage: probe dimension mismatch");
  CoverageCertificate cert;
  cert.probes = static_cast<int>(probes.cols());
  cert.inflation = inflation;
  const double target = inflation * cover.radius;
  for (Eigen::Index i = 0; i < probes.cols(); ++i) {
    const Eigen::VectorXd p = probes.col(i);
    double d = std::numeric_limits<double>::infinity();
    if (cover.frame) d = frame_distance(cover, *cover.frame, p, nd, cover.radius);
    if (d > cover.radius) d = std::min(d, brute_distance(cover.centers, p, nd, cover.radius));
    if (d > target) ++cert.uncovered;
    cert.worst_distance = std::max(cert.worst_distance, d);
  }
  return cert;
}

Eigen::MatrixXd sample_subspace_ball(const Subspace& U, const NormDescriptor& nd, double r, int count) {
  require(count >= 0, "sample_subspace_ball: negative sample count");
  const int n = U.dim();
  const Eigen::MatrixXd& Q = U.orthonormal();
  Eigen::MatrixXd out(U.ambient_dim(), count + 2 * n);
  Eigen::VectorXd d(n);
  int filled = 0;
  for (std::uint64_t i = 0; filled < count; ++i) {
    for (int j = 0; j < n; ++j) d(j) = 2.0 * halton(i, j) - 1.0;
    if (d.norm() < 1e-12) continue;
    const Eigen::VectorXd x = Q * d;
    const double s = (filled % 2 == 0) ? 1.0 : std::pow(halton(i, n), 1.0 / n);
    out.col(filled++) = x * (r * s / nd.norm(x));
  }
  for (int j = 0; j < n; ++j) {
    const Eigen::VectorXd x = Q.col(j);
    out.col(count + 2 * j) = x * (r / nd.norm(x));
    out.col(count + 2 * j + 1) = -out.col(count + 2 * j);
  }
  return out;
}

CoverResult push_cover(const CoverResult& cover, const std::vector<AffineMap>& maps, const NormDescriptor& nd) {
  require(!maps.empty(), "push_cover: need at least one map");
  double factor = 0.0;
  for (const auto& f : maps) factor = std::max(factor, nd.operator_norm(f.A));
  CoverResult out;
  out.centers.resize(cover.centers.rows(), cover.centers.cols() * static_cast<Eigen::Index>(maps.size()));
  Eigen::Index col = 0;
  for (const auto& f : maps) {
    for (Eigen::Index c = 0; c < cover.centers.cols(); ++c) out.centers.col(col++) = f(cover.centers.col(c));
  }
  out.radius = cover.radius * factor;
  out.method = cover.method;
  return out;
}

}  // namespace fdattr
