#include "fdattr/norms.hpp"

#include <cmath>
#include <limits>

#include "fdattr/error.hpp"
#include "fdattr/lp.hpp"

namespace fdattr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_inf(double q) { return std::isinf(q); }

// Damped Newton for max { g.c : ||B c||_q <= 1 } with 1 < q < inf, q != 2.
// Minimizes F(c) = sum |(Bc)_j|^q on the hyperplane g.c = 1; the optimum
// value F* gives the dual norm F*^(-1/q).
BallMaximum smooth_ball_maximum(const Eigen::MatrixXd& B, const Eigen::VectorXd& g, double q) {
  const Eigen::Index n = g.size();
  const Eigen::VectorXd c0 = g / g.squaredNorm();
  Eigen::MatrixXd V(n, n - 1);
  if (n > 1) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
    V = Q.rightCols(n - 1);
  }
  auto objective = [&](const Eigen::VectorXd& c) {
    return (B * c).array().abs().pow(q).sum();
  };
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n - 1);
  Eigen::VectorXd c = c0;
  double f = objective(c);
  for (int it = 0; it < 200 && n > 1; ++it) {
    const Eigen::VectorXd v = B * c;
    const double vmax = v.cwiseAbs().maxCoeff();
    Eigen::VectorXd d1(v.size()), d2(v.size());
    for (Eigen::Index j = 0; j < v.size(); ++j) {
      const double a = std::abs(v(j));
      d1(j) = q * std::pow(a, q - 1.0) * (v(j) < 0 ? -1.0 : 1.0);
      d2(j) = q * (q - 1.0) * std::pow(std::max(a, 1e-9 * vmax), q - 2.0);
    }
    const Eigen::VectorXd gy = V.transpose() * (B.transpose() * d1);
    if (gy.norm() <= 1e-15 * std::max(1.0, f)) break;
    Eigen::MatrixXd H = V.transpose() * B.transpose() * d2.asDiagonal() * B * V;
    H.diagonal().array() += 1e-14 * H.diagonal().cwiseAbs().maxCoeff();
    Eigen::VectorXd step = -H.ldlt().solve(gy);
    double t = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 60; ++ls) {
      const Eigen::VectorXd y_try = y + t * step;
      const Eigen::VectorXd c_try = c0 + V * y_try;
      const double f_try = objective(c_try);
      if (f_try < f) {
        moved = (f - f_try) > 1e-16 * f;
        y = y_try;
        c = c_try;
        f = f_try;
        break;
      }
      t *= 0.5;
    }
    if (!moved) break;
  }
  const double scale = std::pow(f, 1.0 / q);
  return BallMaximum{1.0 / scale, c / scale};
}

// min ||y - G c||_2 subject to ||H c||_2 <= 1 (H of full column rank): a
// trust-region subproblem, solved through the SVD of G R^{-1} (H = Q R)
// and bisection on the secular equation.
double euclidean_ball_distance(const Eigen::VectorXd& y, const Eigen::MatrixXd& G, const Eigen::MatrixXd& H) {
  const Eigen::Index n = H.cols();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(H);
  const Eigen::MatrixXd R = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd A = G * R.inverse();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd s = svd.singularValues();
  const Eigen::VectorXd b = svd.matrixU().transpose() * y;
  const double smax = s.size() > 0 ? s(0) : 0.0;
  auto w_of = [&](double mu) {
    Eigen::VectorXd coef(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      const double den = s(i) * s(i) + mu;
      coef(i) = den > 1e-14 * (1.0 + smax * smax) ? s(i) * b(i) / den : 0.0;
    }
    return Eigen::VectorXd(svd.matrixV() * coef);
  };
  Eigen::VectorXd w = w_of(0.0);
  if (w.norm() > 1.0) {
    double lo = 0.0;
    double hi = std::max(1.0, smax * b.norm());
    while (w_of(hi).norm() > 1.0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (w_of(mid).norm() > 1.0) lo = mid; else hi = mid;
    }
    w = w_of(hi);
  }
  return (y - A * w).norm();
}

}  // namespace

std::string to_string(NormKind kind) {
  switch (kind) {
    case NormKind::l1: return "l1";
    case NormKind::l2: return "l2";
    case NormKind::linf: return "linf";
    case NormKind::weighted_p: return "weighted_p";
    case NormKind::induced: return "induced";
  }
  return "unknown";
}

NormKind norm_kind_from_string(const std::string& name) {
  if (name == "l1") return NormKind::l1;
  if (name == "l2") return NormKind::l2;
  if (name == "linf") return NormKind::linf;
  if (name == "weighted_p") return NormKind::weighted_p;
  if (name == "induced") return NormKind::induced;
  throw InvalidInput("unknown norm kind '" + name + "'");
}

double lq_norm(const Eigen::Ref<const Eigen::VectorXd>& v, double q) {
  if (v.size() == 0) return 0.0;
  if (q == 1.0) return v.cwiseAbs().sum();
  if (q == 2.0) return v.norm();
  if (is_inf(q)) return v.cwiseAbs().maxCoeff();
  // Scale first to keep |v_i|^q representable.
  const double vmax = v.cwiseAbs().maxCoeff();
  if (vmax == 0.0) return 0.0;
  return vmax * std::pow((v.cwiseAbs() / vmax).array().pow(q).sum(), 1.0 / q);
}

double conjugate_exponent(double q) {
  if (q == 1.0) return kInf;
  if (is_inf(q)) return 1.0;
  return q / (q - 1.0);
}

NormDescriptor NormDescriptor::l1(int m) {
  require(m > 0, "norm dimension must be positive");
  return NormDescriptor(NormKind::l1, m, 1.0);
}

NormDescriptor NormDescriptor::l2(int m) {
  require(m > 0, "norm dimension must be positive");
  return NormDescriptor(NormKind::l2, m, 2.0);
}

NormDescriptor NormDescriptor::linf(int m) {
  require(m > 0, "norm dimension must be positive");
  return NormDescriptor(NormKind::linf, m, kInf);
}

NormDescriptor NormDescriptor::weighted(double p, const Eigen::VectorXd& weights) {
  require(weights.size() > 0, "weighted norm needs at least one weight");
  require(std::isfinite(p) && p >= 1.0, "weighted norm exponent must be a finite p >= 1");
  require((weights.array() > 0.0).all() && weights.allFinite(),
          "weighted norm weights must be positive");
  NormDescriptor nd(NormKind::weighted_p, static_cast<int>(weights.size()), p);
  nd.p_ = p;
  nd.weights_ = weights;
  nd.diag_ = weights.array().pow(1.0 / p);
  return nd;
}

NormDescriptor NormDescriptor::induced(const Eigen::MatrixXd& matrix) {
  require(matrix.rows() > 0 && matrix.rows() == matrix.cols(), "induced norm needs a square matrix");
  require(matrix.allFinite(), "induced norm matrix must be finite");
  require(numerical_rank(matrix) == matrix.rows(), "induced norm matrix must be invertible");
  NormDescriptor nd(NormKind::induced, static_cast<int>(matrix.rows()), 2.0);
  nd.matrix_ = matrix;
  nd.matrix_inv_ = matrix.inverse();
  return nd;
}

bool NormDescriptor::polyhedral() const { return q_ == 1.0 || is_inf(q_); }

Eigen::MatrixXd NormDescriptor::transform() const {
  switch (kind_) {
    case NormKind::weighted_p: return diag_.asDiagonal();
    case NormKind::induced: return matrix_;
    default: return Eigen::MatrixXd::Identity(dim_, dim_);
  }
}

Eigen::MatrixXd NormDescriptor::inverse_transform() const {
  switch (kind_) {
    case NormKind::weighted_p: return diag_.cwiseInverse().asDiagonal();
    case NormKind::induced: return matrix_inv_;
    default: return Eigen::MatrixXd::Identity(dim_, dim_);
  }
}

void NormDescriptor::check_dim(Eigen::Index n) const {
  if (n != dim_) {
    throw InvalidInput("dimension mismatch: vector of size " + std::to_string(n) +
                       " for a norm on R^" + std::to_string(dim_));
  }
}

double NormDescriptor::norm(const Eigen::Ref<const Eigen::VectorXd>& v) const {
  check_dim(v.size());
  switch (kind_) {
    case NormKind::l1: return v.cwiseAbs().sum();
    case NormKind::l2: return v.norm();
    case NormKind::linf: return v.cwiseAbs().maxCoeff();
    case NormKind::weighted_p: return lq_norm(diag_.cwiseProduct(v), q_);
    case NormKind::induced: return (matrix_ * v).norm();
  }
  return 0.0;
}

double NormDescriptor::dual(const Eigen::Ref<const Eigen::VectorXd>& f) const {
  check_dim(f.size());
  const double qs = conjugate_exponent(q_);
  switch (kind_) {
    case NormKind::weighted_p: return lq_norm(f.cwiseQuotient(diag_), qs);
    case NormKind::induced: return (matrix_inv_.transpose() * f).norm();
    default: return lq_norm(f, qs);
  }
}

double NormDescriptor::operator_norm(const Eigen::MatrixXd& A) const {
  require(A.rows() == dim_ && A.cols() == dim_, "operator_norm: matrix size mismatch");
  Eigen::MatrixXd At = A;
  if (kind_ == NormKind::weighted_p) {
    At = diag_.asDiagonal() * A * diag_.cwiseInverse().asDiagonal();
  } else if (kind_ == NormKind::induced) {
    At = matrix_ * A * matrix_inv_;
  }
  const double n1 = At.cwiseAbs().colwise().sum().maxCoeff();
  const double ninf = At.cwiseAbs().rowwise().sum().maxCoeff();
  if (q_ == 1.0) return n1;
  if (is_inf(q_)) return ninf;
  if (q_ == 2.0) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(At);
    return svd.singularValues()(0);
  }
  return std::pow(n1, 1.0 / q_) * std::pow(ninf, 1.0 - 1.0 / q_);
}

bool NormDescriptor::operator_norm_exact() const {
  return q_ == 1.0 || q_ == 2.0 || is_inf(q_);
}

bool NormDescriptor::operator==(const NormDescriptor& other) const {
  if (kind_ != other.kind_ || dim_ != other.dim_) return false;
  if (kind_ == NormKind::weighted_p) return p_ == other.p_ && weights_ == other.weights_;
  if (kind_ == NormKind::induced) return matrix_ == other.matrix_;
  return true;
}

double norm_eval(const Eigen::VectorXd& v, const NormDescriptor& nd) { return nd.norm(v); }

double dual_norm_eval(const Eigen::VectorXd& f, const NormDescriptor& nd) { return nd.dual(f); }

int numerical_rank(const Eigen::MatrixXd& A, double abs_tol) {
  if (A.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) <= abs_tol) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > 1e-10 * s(0) && s(i) > abs_tol) ++r;
  }
  return r;
}

Subspace::Subspace(Eigen::MatrixXd basis) : basis_(std::move(basis)) {
  require(basis_.rows() > 0 && basis_.cols() > 0, "subspace needs a nonempty basis");
  require(basis_.cols() <= basis_.rows(), "subspace dimension exceeds ambient dimension");
  require(basis_.allFinite(), "subspace basis must be finite");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(basis_);
  const auto& s = svd.singularValues();
  require(s(s.size() - 1) > 1e-10 * s(0), "subspace basis is rank deficient");
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis_);
  orthonormal_ = qr.householderQ() * Eigen::MatrixXd::Identity(basis_.rows(), basis_.cols());
}

Subspace Subspace::full(int m) { return Subspace(Eigen::MatrixXd::Identity(m, m)); }

PointCloud::PointCloud(Eigen::MatrixXd points) : points_(std::move(points)) {
  require(points_.cols() > 0 && points_.rows() > 0, "point cloud must be nonempty");
}

double hausdorff_semidist(const PointCloud& A, const PointCloud& B, const NormDescriptor& nd) {
  require(A.ambient_dim() == B.ambient_dim(), "hausdorff_semidist: ambient dimension mismatch");
  double worst = 0.0;
  Eigen::VectorXd diff(A.ambient_dim());
  for (int i = 0; i < A.size(); ++i) {
    double best = kInf;
    for (int j = 0; j < B.size() && best > worst; ++j) {
      diff = A.point(i) - B.point(j);
      best = std::min(best, nd.norm(diff));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

BallMaximum maximize_on_unit_ball(const Eigen::MatrixXd& basis, const Eigen::VectorXd& g,
                                  const NormDescriptor& nd) {
  require(basis.rows() == nd.dimension(), "maximize_on_unit_ball: basis dimension mismatch");
  require(basis.cols() == g.size(), "maximize_on_unit_ball: functional size mismatch");
  const Eigen::Index n = g.size();
  const Eigen::Index m = basis.rows();
  if (g.cwiseAbs().maxCoeff() == 0.0) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
    c(0) = 1.0;
    return BallMaximum{0.0, c / nd.norm(basis * c)};
  }
  const Eigen::MatrixXd B = nd.transform() * basis;
  const double q = nd.base_exponent();

  BallMaximum out;
  if (q == 2.0) {
    const Eigen::MatrixXd gram = B.transpose() * B;
    const Eigen::VectorXd h = gram.ldlt().solve(g);
    out.value = std::sqrt(std::max(0.0, g.dot(h)));
    out.argmax = h / out.value;
  } else if (is_inf(q)) {
    lp::Problem prob;
    prob.objective = g;
    prob.A.resize(2 * m, n);
    prob.A << B, -B;
    prob.b = Eigen::VectorXd::Ones(2 * m);
    prob.free.assign(n, true);
    auto sol = lp::maximize(prob);
    if (sol.status != lp::Status::optimal) throw NumericalFailure("unit-ball LP failed (linf)");
    out.argmax = sol.x;
  } else if (q == 1.0) {
    lp::Problem prob;
    prob.objective = Eigen::VectorXd::Zero(n + m);
    prob.objective.head(n) = g;
    prob.A = Eigen::MatrixXd::Zero(2 * m + 1, n + m);
    prob.A.block(0, 0, m, n) = B;
    prob.A.block(0, n, m, m) = -Eigen::MatrixXd::Identity(m, m);
    prob.A.block(m, 0, m, n) = -B;
    prob.A.block(m, n, m, m) = -Eigen::MatrixXd::Identity(m, m);
    prob.A.block(2 * m, n, 1, m).setOnes();
    prob.b = Eigen::VectorXd::Zero(2 * m + 1);
    prob.b(2 * m) = 1.0;
    prob.free.assign(n + m, false);
    for (Eigen::Index j = 0; j < n; ++j) prob.free[j] = true;
    auto sol = lp::maximize(prob);
    if (sol.status != lp::Status::optimal) throw NumericalFailure("unit-ball LP failed (l1)");
    out.argmax = sol.x.head(n);
  } else {
    return smooth_ball_maximum(B, g, q);
  }
  if (out.argmax.size() != n) return out;
  if (!is_inf(q) && q != 1.0) return out;
  // Put the LP vertex exactly on the unit sphere.
  const double len = lq_norm(B * out.argmax, q);
  out.argmax /= len;
  out.value = g.dot(out.argmax);
  return out;
}

double distance_to_ball_image(const Eigen::VectorXd& y, const Eigen::MatrixXd& G,
                              const Eigen::MatrixXd& H, const NormDescriptor& nd) {
  require(nd.polyhedral() || nd.base_exponent() == 2.0,
          "distance_to_ball_image needs a polyhedral or Euclidean-type norm");
  require(G.cols() == H.cols() && G.rows() == y.size() && H.rows() == y.size(),
          "distance_to_ball_image: size mismatch");
  const Eigen::MatrixXd D = nd.transform();
  const Eigen::VectorXd yt = D * y;
  const Eigen::MatrixXd Gt = D * G;
  const Eigen::MatrixXd Ht = D * H;
  const Eigen::Index m = yt.size();
  const Eigen::Index n = G.cols();
  if (n == 0) return lq_norm(yt, nd.base_exponent());
  if (nd.base_exponent() == 2.0) return euclidean_ball_distance(yt, Gt, Ht);

  lp::Problem prob;
  if (is_inf(nd.base_exponent())) {
    // vars: c (free), s >= 0; maximize -s.
    prob.objective = Eigen::VectorXd::Zero(n + 1);
    prob.objective(n) = -1.0;
    prob.A = Eigen::MatrixXd::Zero(4 * m, n + 1);
    prob.b.resize(4 * m);
    prob.A.block(0, 0, m, n) = -Gt;
    prob.A.block(0, n, m, 1).setConstant(-1.0);
    prob.b.segment(0, m) = -yt;
    prob.A.block(m, 0, m, n) = Gt;
    prob.A.block(m, n, m, 1).setConstant(-1.0);
    prob.b.segment(m, m) = yt;
    prob.A.block(2 * m, 0, m, n) = Ht;
    prob.b.segment(2 * m, m).setOnes();
    prob.A.block(3 * m, 0, m, n) = -Ht;
    prob.b.segment(3 * m, m).setOnes();
    prob.free.assign(n + 1, false);
    for (Eigen::Index j = 0; j < n; ++j) prob.free[j] = true;
  } else {
    // vars: c (free), t >= 0 (residual), u >= 0 (constraint); maximize -sum t.
    const Eigen::Index nv = n + 2 * m;
    prob.objective = Eigen::VectorXd::Zero(nv);
    prob.objective.segment(n, m).setConstant(-1.0);
    prob.A = Eigen::MatrixXd::Zero(4 * m + 1, nv);
    prob.b = Eigen::VectorXd::Zero(4 * m + 1);
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(m, m);
    prob.A.block(0, 0, m, n) = -Gt;
    prob.A.block(0, n, m, m) = -I;
    prob.b.segment(0, m) = -yt;
    prob.A.block(m, 0, m, n) = Gt;
    prob.A.block(m, n, m, m) = -I;
    prob.b.segment(m, m) = yt;
    prob.A.block(2 * m, 0, m, n) = Ht;
    prob.A.block(2 * m, n + m, m, m) = -I;
    prob.A.block(3 * m, 0, m, n) = -Ht;
    prob.A.block(3 * m, n + m, m, m) = -I;
    prob.A.block(4 * m, n + m, 1, m).setOnes();
    prob.b(4 * m) = 1.0;
    prob.free.assign(nv, false);
    for (Eigen::Index j = 0; j < n; ++j) prob.free[j] = true;
  }
  auto sol = lp::maximize(prob);
  if (sol.status != lp::Status::optimal) throw NumericalFailure("distance LP failed");
  // Re-evaluate at the returned point, pulled back inside the ball if
  // rounding pushed it out; the result is an attained (upper-bound) value.
  Eigen::VectorXd c = sol.x.head(n);
  const double len = lq_norm(Ht * c, nd.base_exponent());
  if (len > 1.0) c /= len;
  return lq_norm(yt - Gt * c, nd.base_exponent());
}

}  // namespace fdattr
