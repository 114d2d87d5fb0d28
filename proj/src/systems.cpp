#include "fdattr/systems.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fdattr/error.hpp"
#include "fdattr/halton.hpp"

namespace fdattr {

namespace {

void check_finite(const Eigen::VectorXd& x, double t, const std::string& name) {
  if (!x.allFinite()) {
    std::ostringstream os;
    os << "simulate: non-finite state in system '" << name << "' at t = " << t;
    throw NumericalFailure(os.str());
  }
}

Eigen::VectorXd rk4_step(const DynamicalSystem& sys, const Eigen::VectorXd& x, double h) {
  const Eigen::VectorXd k1 = sys.vector_field(x);
  const Eigen::VectorXd k2 = sys.vector_field(x + 0.5 * h * k1);
  const Eigen::VectorXd k3 = sys.vector_field(x + 0.5 * h * k2);
  const Eigen::VectorXd k4 = sys.vector_field(x + h * k3);
  return x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

long long step_count(double T, double dt) {
  require(dt > 0.0 && std::isfinite(dt), "simulate: dt must be positive");
  require(T >= 0.0 && std::isfinite(T), "simulate: T must be nonnegative");
  return std::llround(std::ceil(T / dt - 1e-9));
}

}  // namespace

Trajectory simulate(const DynamicalSystem& sys, const Eigen::VectorXd& x0, double T, double dt, int record_every) {
  require(x0.size() == sys.state_dim, "simulate: initial state has the wrong dimension");
  require(record_every >= 1, "simulate: record_every must be positive");
  const long long steps = step_count(T, dt);
  const double h = steps > 0 ? T / static_cast<double>(steps) : 0.0;
  std::vector<Eigen::VectorXd> kept{x0};
  Trajectory traj;
  traj.times.push_back(0.0);
  Eigen::VectorXd x = x0;
  check_finite(x, 0.0, sys.name);
  for (long long s = 1; s <= steps; ++s) {
    x = rk4_step(sys, x, h);
    check_finite(x, s * h, sys.name);
    if (s % record_every == 0 || s == steps) {
      kept.push_back(x);
      traj.times.push_back(s * h);
    }
  }
  traj.states.resize(sys.state_dim, static_cast<Eigen::Index>(kept.size()));
  for (std::size_t i = 0; i < kept.size(); ++i) traj.states.col(i) = kept[i];
  return traj;
}

Eigen::VectorXd flow(const DynamicalSystem& sys, const Eigen::VectorXd& x0, double T, double dt) {
  require(x0.size() == sys.state_dim, "flow: initial state has the wrong dimension");
  const long long steps = step_count(T, dt);
  const double h = steps > 0 ? T / static_cast<double>(steps) : 0.0;
  Eigen::VectorXd x = x0;
  for (long long s = 1; s <= steps; ++s) {
    x = rk4_step(sys, x, h);
    check_finite(x, s * h, sys.name);
  }
  return x;
}

Eigen::MatrixXd time_T_derivative(const DynamicalSystem& sys, const Eigen::VectorXd& x0, double T, double dt) {
  require(x0.size() == sys.state_dim, "time_T_derivative: state has the wrong dimension");
  const long long steps = step_count(T, dt);
  const double h = steps > 0 ? T / static_cast<double>(steps) : 0.0;
  const int m = sys.state_dim;
  Eigen::VectorXd x = x0;
  Eigen::MatrixXd Y = Eigen::MatrixXd::Identity(m, m);
  for (long long s = 1; s <= steps; ++s) {
    const Eigen::VectorXd k1 = sys.vector_field(x);
    const Eigen::MatrixXd K1 = sys.jacobian(x) * Y;
    const Eigen::VectorXd x2 = x + 0.5 * h * k1;
    const Eigen::VectorXd k2 = sys.vector_field(x2);
    const Eigen::MatrixXd K2 = sys.jacobian(x2) * (Y + 0.5 * h * K1);
    const Eigen::VectorXd x3 = x + 0.5 * h * k2;
    const Eigen::VectorXd k3 = sys.vector_field(x3);
    const Eigen::MatrixXd K3 = sys.jacobian(x3) * (Y + 0.5 * h * K2);
    const Eigen::VectorXd x4 = x + h * k3;
    const Eigen::VectorXd k4 = sys.vector_field(x4);
    const Eigen::MatrixXd K4 = sys.jacobian(x4) * (Y + h * K3);
    x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    Y += h / 6.0 * (K1 + 2.0 * K2 + 2.0 * K3 + K4);
    check_finite(x, s * h, sys.name);
    if (!Y.allFinite()) throw NumericalFailure("time_T_derivative: non-finite derivative in '" + sys.name + "'");
  }
  return Y;
}

double jacobian_fd_error(const DynamicalSystem& sys, const Eigen::VectorXd& x, double h) {
  const int m = sys.state_dim;
  const Eigen::MatrixXd J = sys.jacobian(x);
  Eigen::MatrixXd fd(m, m);
  for (int j = 0; j < m; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
    e(j) = h;
    fd.col(j) = (sys.vector_field(x + e) - sys.vector_field(x - e)) / (2.0 * h);
  }
  return (J - fd).norm() / std::max(1.0, J.norm());
}

Forcing cubic_forcing() {
  Forcing f;
  f.name = "cubic";
  f.f = [](const Eigen::VectorXd& x) -> Eigen::VectorXd { return x - x.cwiseProduct(x).cwiseProduct(x); };
  f.df = [](const Eigen::VectorXd& x) -> Eigen::MatrixXd {
    return (Eigen::VectorXd::Ones(x.size()) - 3.0 * x.cwiseProduct(x)).asDiagonal();
  };
  return f;
}

Forcing linear_forcing(double c) {
  Forcing f;
  f.name = "linear";
  f.f = [c](const Eigen::VectorXd& x) -> Eigen::VectorXd { return -c * x; };
  f.df = [c](const Eigen::VectorXd& x) -> Eigen::MatrixXd {
    return -c * Eigen::MatrixXd::Identity(x.size(), x.size());
  };
  return f;
}

double dissipativity_radius(const Forcing& forcing, int k) {
  require(k >= 1, "dissipativity_radius: k must be positive");
  std::vector<Eigen::VectorXd> dirs;
  for (int i = 0; i < k; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(k);
    e(i) = 1.0;
    dirs.push_back(e);
    dirs.push_back(-e);
  }
  for (int i = 0; i < 64 && k > 1; ++i) {
    Eigen::VectorXd v(k);
    for (int j = 0; j < k; ++j) v(j) = 2.0 * halton(i, j) - 1.0;
    if (v.norm() > 1e-3) dirs.push_back(v.normalized());
  }
  double radius = -1.0;
  for (int s = 200; s >= 1; --s) {
    const double R = 0.5 * s;
    bool ok = true;
    for (const auto& d : dirs) {
      const Eigen::VectorXd x = R * d;
      if (!(forcing.f(x).dot(x) < 0.0)) {
        ok = false;
        break;
      }
    }
    if (!ok) break;
    radius = R;
  }
  return radius;
}

DynamicalSystem damped_coupled_system(int k, double beta, const Forcing& forcing) {
  require(k >= 1, "damped_coupled_system: k must be positive");
  require(beta > 0.0, "damped_coupled_system: beta must be positive");
  DynamicalSystem sys;
  sys.state_dim = 2 * k;
  sys.name = "damped_coupled";
  sys.parameters = {{"k", k}, {"beta", beta}};
  sys.vector_field = [k, beta, f = forcing.f](const Eigen::VectorXd& s) -> Eigen::VectorXd {
    Eigen::VectorXd out(2 * k);
    out.head(k) = s.tail(k);
    out.tail(k) = -beta * s.tail(k) + f(s.head(k));
    return out;
  };
  sys.jacobian = [k, beta, df = forcing.df](const Eigen::VectorXd& s) -> Eigen::MatrixXd {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * k, 2 * k);
    J.topRightCorner(k, k) = Eigen::MatrixXd::Identity(k, k);
    J.bottomLeftCorner(k, k) = df(s.head(k));
    J.bottomRightCorner(k, k) = -beta * Eigen::MatrixXd::Identity(k, k);
    return J;
  };
  if (dissipativity_radius(forcing, k) < 0.0) {
    sys.warnings.push_back("forcing '" + forcing.name +
                           "' fails f(x).x < 0 on sampled large states; the attractor guarantee is void");
  }
  return sys;
}

int damped_nonlinear_rank(const Forcing& forcing, int k, const Eigen::VectorXd& state) {
  require(state.size() == 2 * k, "damped_nonlinear_rank: state has the wrong dimension");
  Eigen::MatrixXd N = Eigen::MatrixXd::Zero(2 * k, 2 * k);
  N.bottomLeftCorner(k, k) = forcing.df(state.head(k));
  return numerical_rank(N);
}

Eigen::VectorXd GalerkinParabolic::shifted() const {
  return eigenvalues.array() - shift;
}

NormDescriptor GalerkinParabolic::phase_norm() const {
  return NormDescriptor::weighted(2.0, shifted().array().pow(2.0 * alpha).matrix());
}

double GalerkinParabolic::admissibility_constant() const {
  // sup over y >= 0, 0 <= d <= alpha of y^d e^{-(1 - theta) y}.
  const double c = (1.0 - theta) * std::numbers::e;
  return std::max(1.0, std::pow(alpha / c, alpha));
}

std::vector<double> GalerkinParabolic::tail_rates() const {
  const Eigen::VectorXd x = shifted();
  std::vector<double> rates;
  for (int n = 0; n < modes; ++n) rates.push_back(theta * x(n));
  return rates;
}

double GalerkinParabolic::semigroup_tail_norm(int n, double beta, double gamma, double t) const {
  require(n >= 0 && n < modes, "semigroup_tail_norm: n out of range");
  const Eigen::VectorXd x = shifted();
  double best = 0.0;
  for (int k = n; k < modes; ++k) best = std::max(best, std::pow(x(k), beta - gamma) * std::exp(-x(k) * t));
  return best;
}

Eigen::VectorXd GalerkinParabolic::evaluate(const Eigen::VectorXd& a) const {
  return basis_ * a;
}

Eigen::VectorXd GalerkinParabolic::nonlinearity(const Eigen::VectorXd& a) const {
  const Eigen::VectorXd u = basis_ * a;
  const Eigen::VectorXd g = (mu - shift) * u - u.cwiseProduct(u).cwiseProduct(u);
  return weight_ * (basis_.transpose() * g);
}

Eigen::MatrixXd GalerkinParabolic::nonlinearity_jacobian(const Eigen::VectorXd& a) const {
  const Eigen::VectorXd u = basis_ * a;
  const Eigen::VectorXd u2 = u.cwiseProduct(u);
  Eigen::MatrixXd J = -3.0 * weight_ * (basis_.transpose() * u2.asDiagonal() * basis_);
  J.diagonal().array() += mu - shift;
  return J;
}

double GalerkinParabolic::derivative_norm(const Eigen::VectorXd& a) const {
  const Eigen::VectorXd scale = shifted().array().pow(-alpha);
  const Eigen::MatrixXd M = nonlinearity_jacobian(a) * scale.asDiagonal();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  return svd.singularValues()(0);
}

DynamicalSystem GalerkinParabolic::system() const {
  DynamicalSystem sys;
  sys.state_dim = modes;
  sys.name = "chafee_infante";
  sys.parameters = {{"modes", modes}, {"mu", mu}, {"shift", shift}, {"alpha", alpha}, {"theta", theta}};
  const GalerkinParabolic self = *this;
  const Eigen::VectorXd x = shifted();
  sys.vector_field = [self, x](const Eigen::VectorXd& a) -> Eigen::VectorXd {
    return self.nonlinearity(a) - x.cwiseProduct(a);
  };
  sys.jacobian = [self, x](const Eigen::VectorXd& a) -> Eigen::MatrixXd {
    Eigen::MatrixXd J = self.nonlinearity_jacobian(a);
    J.diagonal() -= x;
    return J;
  };
  return sys;
}

GalerkinParabolic chafee_infante_galerkin(int modes, double mu, double shift, double alpha, double theta) {
  require(modes >= 4, "chafee_infante_galerkin: need at least 4 modes");
  require(alpha > 0.0 && alpha < 1.0, "chafee_infante_galerkin: alpha must lie in (0, 1)");
  require(theta > 0.0 && theta < 1.0, "chafee_infante_galerkin: theta must lie in (0, 1)");
  const double pi2 = std::numbers::pi * std::numbers::pi;
  require(shift < pi2, "chafee_infante_galerkin: shift must stay below the first eigenvalue");
  GalerkinParabolic g;
  g.modes = modes;
  g.mu = mu;
  g.shift = shift;
  g.alpha = alpha;
  g.theta = theta;
  g.eigenvalues.resize(modes);
  for (int n = 1; n <= modes; ++n) g.eigenvalues(n - 1) = n * n * pi2;
  // Nodes j / Q, j = 1..Q-1, integrate trigonometric polynomials of
  // frequency below 2Q exactly; u^3 sin(n pi x) has frequency at most 4N.
  const int Q = 4 * modes;
  g.quadrature = Q - 1;
  g.weight_ = 1.0 / Q;
  g.basis_.resize(Q - 1, modes);
  for (int j = 1; j < Q; ++j) {
    for (int n = 1; n <= modes; ++n) {
      g.basis_(j - 1, n - 1) = std::numbers::sqrt2 * std::sin(n * std::numbers::pi * j / Q);
    }
  }
  return g;
}

Eigen::VectorXd chafee_infante_first_equilibrium(const GalerkinParabolic& g) {
  const double pi2 = std::numbers::pi * std::numbers::pi;
  require(g.mu > pi2, "chafee_infante_first_equilibrium: needs mu > pi^2");
  const DynamicalSystem sys = g.system();
  Eigen::VectorXd a = Eigen::VectorXd::Zero(g.modes);
  a(0) = std::sqrt(2.0 * (g.mu - pi2) / 3.0);
  for (int it = 0; it < 100; ++it) {
    const Eigen::VectorXd F = sys.vector_field(a);
    if (F.norm() < 1e-14) break;
    a -= sys.jacobian(a).fullPivLu().solve(F);
  }
  if (!(sys.vector_field(a).norm() < 1e-10)) {
    throw NumericalFailure("chafee_infante_first_equilibrium: Newton iteration did not converge");
  }
  return a;
}

Eigen::MatrixXd initial_grid(int dim, int count, double radius) {
  Eigen::MatrixXd X(dim, count);
  for (int i = 0; i < count; ++i) {
    for (int j = 0; j < dim; ++j) X(j, i) = radius * (2.0 * halton(i, j) - 1.0);
  }
  return X;
}

PointCloud sample_attractor(const DynamicalSystem& sys, const SamplingOptions& o) {
  require(o.n_initial >= 1 && o.stride >= 1, "sample_attractor: counts must be positive");
  require(o.t_transient >= 0.0 && o.t_sample > 0.0 && o.dt > 0.0, "sample_attractor: durations must be positive");
  const Eigen::MatrixXd X0 = initial_grid(sys.state_dim, o.n_initial, o.initial_radius);
  std::vector<Eigen::MatrixXd> parts;
  Eigen::Index total = 0;
  for (int i = 0; i < o.n_initial; ++i) {
    const Eigen::VectorXd start = flow(sys, X0.col(i), o.t_transient, o.dt);
    Trajectory traj = simulate(sys, start, o.t_sample, o.dt, o.stride);
    if (!(traj.states.cwiseAbs().maxCoeff() < o.escape_radius)) {
      throw NumericalFailure("sample_attractor: trajectory left the ball of radius " +
                             std::to_string(o.escape_radius));
    }
    total += traj.states.cols();
    parts.push_back(std::move(traj.states));
  }
  Eigen::MatrixXd all(sys.state_dim, total);
  Eigen::Index at = 0;
  for (const auto& p : parts) {
    all.middleCols(at, p.cols()) = p;
    at += p.cols();
  }
  return PointCloud(all);
}

PointCloud cantor_cloud(int level) {
  require(level >= 0 && level <= 24, "cantor_cloud: level must lie in [0, 24]");
  const std::size_t count = std::size_t{1} << level;
  const double len = std::pow(3.0, -level);
  Eigen::MatrixXd P(1, 2 * count);
  for (std::size_t i = 0; i < count; ++i) {
    double left = 0.0;
    double scale = 1.0;
    for (int d = level - 1; d >= 0; --d) {
      scale /= 3.0;
      if ((i >> d) & 1U) left += 2.0 * scale;
    }
    P(0, 2 * i) = left;
    P(0, 2 * i + 1) = left + len;
  }
  return PointCloud(P);
}

PointCloud square_cloud(int count) {
  require(count >= 1, "square_cloud: count must be positive");
  Eigen::MatrixXd P(2, count);
  for (int i = 0; i < count; ++i) {
    P(0, i) = halton(i, 0);
    P(1, i) = halton(i, 1);
  }
  return PointCloud(P);
}

PointCloud segment_cloud(int count) {
  require(count >= 2, "segment_cloud: need at least two points");
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(2, count);
  for (int i = 0; i < count; ++i) P(0, i) = static_cast<double>(i) / (count - 1);
  return PointCloud(P);
}

PointCloud ifs_cloud(const std::vector<AffineMap>& maps, int level) {
  require(!maps.empty(), "ifs_cloud: no maps");
  require(level >= 0, "ifs_cloud: level must be nonnegative");
  const Eigen::Index dim = maps.front().b.size();
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(dim, 1);
  for (int l = 0; l < level; ++l) {
    Eigen::MatrixXd next(dim, P.cols() * static_cast<Eigen::Index>(maps.size()));
    for (std::size_t k = 0; k < maps.size(); ++k) {
      next.middleCols(k * P.cols(), P.cols()) = (maps[k].A * P).colwise() + maps[k].b;
    }
    P = std::move(next);
  }
  return PointCloud(P);
}

std::vector<AffineMap> sierpinski_maps() {
  const Eigen::MatrixXd A = 0.5 * Eigen::MatrixXd::Identity(2, 2);
  return {AffineMap{A, Eigen::Vector2d(0.0, 0.0)}, AffineMap{A, Eigen::Vector2d(0.5, 0.0)},
          AffineMap{A, Eigen::Vector2d(0.25, 0.5)}};
}

}  // namespace fdattr
