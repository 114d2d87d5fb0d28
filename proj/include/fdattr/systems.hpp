#pragma once

#include <Eigen/Dense>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fdattr/covering.hpp"
#include "fdattr/norms.hpp"

namespace fdattr {

struct DynamicalSystem {
  int state_dim = 0;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> vector_field;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> jacobian;
  std::string name;
  std::map<std::string, double> parameters;
  std::vector<std::string> warnings;
};

struct Trajectory {
  std::vector<double> times;
  Eigen::MatrixXd states;  // one state per column
};

/// Classical fourth-order Runge-Kutta with fixed step. Records every
/// `record_every` steps and the final state.
Trajectory simulate(const DynamicalSystem& sys, const Eigen::VectorXd& x0, double T, double dt,
                    int record_every = 1);

/// Final state only.
Eigen::VectorXd flow(const DynamicalSystem& sys, const Eigen::VectorXd& x0, double T, double dt);

/// D(S(T))(x) from the variational equation Y' = Df(x(t)) Y, Y(0) = I,
/// integrated with the same scheme as the state.
Eigen::MatrixXd time_T_derivative(const DynamicalSystem& sys, const Eigen::VectorXd& x, double T, double dt);

/// Largest relative deviation between the Jacobian and central differences
/// of the vector field at x.
double jacobian_fd_error(const DynamicalSystem& sys, const Eigen::VectorXd& x, double h = 1e-6);

/// Nonlinearity f : R^k -> R^k of the damped system with its derivative.
struct Forcing {
  std::string name;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> f;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> df;
};

/// f(x)_i = x_i - x_i^3.
Forcing cubic_forcing();
/// f(x) = -c x.
Forcing linear_forcing(double c);

/// Smallest radius R (from a scan over 0.5, 1, ..., 100) beyond which
/// f(x) . x < 0 on every sampled point with |x| >= R. Negative when the
/// scan finds none.
double dissipativity_radius(const Forcing& forcing, int k);

/// d/dt (x, y) = (y, -beta y + f(x)) on R^k x R^k.
DynamicalSystem damped_coupled_system(int k, double beta, const Forcing& forcing);

/// Rank of the Jacobian of the nonlinear part (0, f(x)) of the damped
/// system at the state (x, y).
int damped_nonlinear_rank(const Forcing& forcing, int k, const Eigen::VectorXd& state);

/// u_t = u_xx + mu u - u^3 on (0, 1) with Dirichlet data, in the sine basis
/// sqrt(2) sin(n pi x), n = 1..modes, written as u_t + A_s u = f_s(u) with
/// A_s = diag(n^2 pi^2 - s) and f_s(u) = (mu - s) u - u^3.
struct GalerkinParabolic {
  int modes = 0;
  double mu = 0.0;
  double shift = 0.0;
  double alpha = 0.5;   // fractional power of the phase space X^alpha
  double theta = 0.9;   // fraction of the tail eigenvalue used as decay rate
  Eigen::VectorXd eigenvalues;  // n^2 pi^2
  int quadrature = 0;

  Eigen::VectorXd shifted() const;  // eigenvalues - shift

  /// Norm of X^alpha: ||A_s^alpha u||_2 on coefficients.
  NormDescriptor phase_norm() const;

  /// Constant M with ||e^{-A_s t} Q_n||_{L(X^g, X^b)} <= M t^{-(b-g)} e^{-rate_n t}
  /// for 0 <= g <= b <= alpha, rate_n = theta (lambda_{n+1} - s).
  double admissibility_constant() const;

  /// rate_n for n = 0..modes-1 (Q_n removes the first n modes).
  std::vector<double> tail_rates() const;

  /// Left side of the admissibility inequality, evaluated exactly on the
  /// diagonal truncation.
  double semigroup_tail_norm(int n, double beta, double gamma, double t) const;

  Eigen::VectorXd nonlinearity(const Eigen::VectorXd& a) const;
  Eigen::MatrixXd nonlinearity_jacobian(const Eigen::VectorXd& a) const;

  /// ||f_s'(u)||_{L(X^alpha, X)} at the coefficient vector a.
  double derivative_norm(const Eigen::VectorXd& a) const;

  /// Function values at the quadrature nodes.
  Eigen::VectorXd evaluate(const Eigen::VectorXd& a) const;

  DynamicalSystem system() const;

 private:
  friend GalerkinParabolic chafee_infante_galerkin(int, double, double, double, double);
  Eigen::MatrixXd basis_;  // quadrature nodes x modes, sqrt(2) sin(n pi x_j)
  double weight_ = 0.0;
};

GalerkinParabolic chafee_infante_galerkin(int modes, double mu, double shift = 0.0, double alpha = 0.5,
                                          double theta = 0.9);

/// Equilibrium near the first mode for mu > pi^2, by Newton's method from
/// the one-mode amplitude.
Eigen::VectorXd chafee_infante_first_equilibrium(const GalerkinParabolic& g);

struct SamplingOptions {
  int n_initial = 16;
  double initial_radius = 1.0;
  double t_transient = 200.0;
  double t_sample = 800.0;
  double dt = 1e-3;
  int stride = 10;
  double escape_radius = 1e6;
};

/// Initial states: n_initial points of a Halton sequence mapped to the cube
/// [-initial_radius, initial_radius]^m. Each trajectory is run through the
/// transient and then recorded every `stride` steps.
PointCloud sample_attractor(const DynamicalSystem& sys, const SamplingOptions& options);

Eigen::MatrixXd initial_grid(int dim, int count, double radius);

/// Endpoints of the 2^level intervals of the middle-thirds Cantor
/// construction at the given level, as a cloud in R^1.
PointCloud cantor_cloud(int level);

/// First `count` Halton points of [0, 1)^2.
PointCloud square_cloud(int count);

/// `count` equally spaced points of the segment [0, 1] x {0} in R^2.
PointCloud segment_cloud(int count);

/// Images of the origin under all words of length `level` in the maps.
PointCloud ifs_cloud(const std::vector<AffineMap>& maps, int level);

/// The three maps x -> x / 2 + b of the Sierpinski triangle.
std::vector<AffineMap> sierpinski_maps();

}  // namespace fdattr
