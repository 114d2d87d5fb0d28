#pragma once

#include <map>
#include <string>
#include <vector>

#include "fdattr/norms.hpp"
#include "fdattr/operators.hpp"

namespace fdattr {

enum class BoundFormula { lemma1, mane, rank_limit, power_iterate, semilinear };

std::string to_string(BoundFormula formula);
BoundFormula bound_formula_from_string(const std::string& name);

struct DimBoundReport {
  BoundFormula formula = BoundFormula::mane;
  int n = 0;
  double D = 0.0;
  double lambda = 0.0;
  int field_factor = 1;
  double bound = 0.0;
  // Inputs of the lemma1 formula: ball count and contraction ratio.
  double M = 0.0;
  double contraction = 0.0;
  // rank_limit: the lambda sequence and the bound at each lambda.
  std::vector<double> lambda_sequence;
  std::vector<double> intermediate;
  // power_iterate: number of composed steps.
  int p = 0;
  std::map<std::string, std::string> provenance;
};

/// log M / (-log alpha).
double lemma1_bound(double M, double alpha);

/// alpha_field * n * log((n+1) D / lambda) / (-log(2 lambda)).
DimBoundReport mane_bound(int n, double D, double lambda, int field_factor = 1);

/// Same formula as a plain number, without validation of the report fields.
double mane_formula(int n, double D, double lambda, int field_factor);

/// Evaluates the stored inputs of a report again with the formula named in
/// it. Matches `bound` bit for bit when the report is untouched.
double recompute(const DimBoundReport& report);

/// Evaluates mane_bound(nu, D, lambda) along lambda = 10^{-1}, ..., 10^{-steps}
/// and reports the limit nu.
DimBoundReport rank_limit_bound(int nu, double D, int steps = 12);

/// Composes splits along orbits: orbits[j][i] is the split of Df at
/// f^i(x_j). The least p with alpha^p < 1/4 is chosen, every orbit must
/// provide at least p splits, and the composed maps D(f^p)(x_j) feed
/// mane_bound with lambda = alpha^p + 1/4.
DimBoundReport power_iterate_bound(const std::vector<std::vector<OperatorSplit>>& orbits, double alpha);

/// Least p with alpha^p < 1/4.
int power_for_contraction(double alpha);

/// M_bar / (1 - alpha) * exp((M N Gamma(1 - alpha))^{1/(1-alpha)} t).
double gronwall_bound(double M_bar, double M, double N, double alpha, double t);

enum class TailForm {
  // Integral term bounded by Gamma(1-alpha) / (lambda_n + kappa)^{1-alpha}.
  corrected,
  // Integral term as Gamma(1-alpha) / (lambda_n + kappa).
  displayed
};

struct SemilinearConstants {
  double M = 1.0;
  double M_bar = 1.0;
  double N = 0.0;
  double alpha = 0.5;
  // rates[n] is the decay rate of e^{-At} Q_n, for n = 0, 1, ...
  std::vector<double> rates;
  // projection_dims[n] = dim R(P_n).
  std::vector<int> projection_dims;
  double t = 1.0;
  int n0 = -1;
  double lambda = 0.0;
  TailForm form = TailForm::corrected;
  std::vector<double> tails;  // Lambda_n(t) for every n
  std::map<std::string, std::string> provenance;
};

/// Lambda_n(t) = M e^{-lambda_n t}
///   + M_bar M N / (1 - alpha) e^{kappa t} Gamma(1 - alpha) / (lambda_n + kappa)^e
/// with kappa = (M N Gamma(1 - alpha))^{1/(1-alpha)} and e = 1 - alpha
/// (corrected) or e = 1 (displayed).
double tail_estimate(const SemilinearConstants& c, int n, double t);

/// Fills tails, n0 (smallest n with Lambda_n(t) < 1/4) and lambda
/// (max(Lambda_{n0}, 1/8) * 1.05, or the midpoint of Lambda_{n0} and 1/4
/// when that reaches 1/4). Throws NumericalFailure listing the tails when no
/// n qualifies.
void choose_projection(SemilinearConstants& c);

/// nu log((nu+1) D / lambda) / log(1 / (2 lambda)) with lambda from the
/// constants; requires nu <= dim R(P_{n0}).
DimBoundReport semilinear_bound(const SemilinearConstants& c, int nu, double D);

struct BoxCountCurve {
  std::vector<double> scales;
  std::vector<long long> counts;
  std::vector<double> window_slopes;  // slope of the window starting at each scale
  int window = 4;
  double estimate = 0.0;
  std::vector<std::string> warnings;
};

/// Counts occupied boxes of the grid of side eps_k = eps0 2^{-k},
/// k = 0..k_max, in the coordinates where nd is an l^q norm, and fits
/// log N against -log eps over sliding windows. The estimate is the largest
/// window slope.
BoxCountCurve boxcount_estimate(const PointCloud& K, const NormDescriptor& nd, double eps0, int k_max,
                                int window = 4);

}  // namespace fdattr
