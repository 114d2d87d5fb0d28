#include "fdattr/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fdattr/error.hpp"

namespace fdattr {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double kappa(const SemilinearConstants& c) {
  return std::pow(c.M * c.N * std::tgamma(1.0 - c.alpha), 1.0 / (1.0 - c.alpha));
}

}  // namespace

std::string to_string(BoundFormula formula) {
  switch (formula) {
    case BoundFormula::lemma1: return "lemma1";
    case BoundFormula::mane: return "mane";
    case BoundFormula::rank_limit: return "rank_limit";
    case BoundFormula::power_iterate: return "power_iterate";
    case BoundFormula::semilinear: return "semilinear";
  }
  return "unknown";
}

BoundFormula bound_formula_from_string(const std::string& name) {
  for (auto f : {BoundFormula::lemma1, BoundFormula::mane, BoundFormula::rank_limit, BoundFormula::power_iterate,
                 BoundFormula::semilinear}) {
    if (to_string(f) == name) return f;
  }
  throw InvalidInput("unknown bound formula '" + name + "'");
}

double lemma1_bound(double M, double alpha) {
  require(std::isfinite(M) && M >= 1.0, "lemma1_bound: M must be >= 1");
  require(alpha > 0.0 && alpha < 1.0, "lemma1_bound: contraction factor must lie in (0, 1)");
  return std::log(M) / -std::log(alpha);
}

double mane_formula(int n, double D, double lambda, int field_factor) {
  if (n == 0) return 0.0;
  return field_factor * n * std::log((n + 1) * D / lambda) / -std::log(2.0 * lambda);
}

DimBoundReport mane_bound(int n, double D, double lambda, int field_factor) {
  require(n >= 0, "mane_bound: n must be nonnegative");
  require(std::isfinite(D) && D > 0.0, "mane_bound: D must be positive");
  require(field_factor == 1 || field_factor == 2, "mane_bound: field factor must be 1 (real) or 2 (complex)");
  require(lambda > 0.0, "mane_bound: lambda must be positive");
  require(2.0 * lambda < 1.0, "mane_bound: 2 lambda >= 1, the bound degenerates (-log(2 lambda) <= 0)");
  DimBoundReport r;
  r.formula = BoundFormula::mane;
  r.n = n;
  r.D = D;
  r.lambda = lambda;
  r.field_factor = field_factor;
  r.bound = mane_formula(n, D, lambda, field_factor);
  r.provenance = {{"n", "input"}, {"D", "input"}, {"lambda", "input"}, {"field_factor", "input"}};
  return r;
}

double recompute(const DimBoundReport& report) {
  switch (report.formula) {
    case BoundFormula::lemma1: return lemma1_bound(report.M, report.contraction);
    case BoundFormula::rank_limit: return static_cast<double>(report.n);
    case BoundFormula::mane:
    case BoundFormula::power_iterate:
    case BoundFormula::semilinear: return mane_formula(report.n, report.D, report.lambda, report.field_factor);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

DimBoundReport rank_limit_bound(int nu, double D, int steps) {
  require(nu >= 0, "rank_limit_bound: rank must be nonnegative");
  require(steps >= 1, "rank_limit_bound: need at least one lambda");
  DimBoundReport r;
  r.formula = BoundFormula::rank_limit;
  r.n = nu;
  r.D = D;
  r.bound = nu;
  if (nu > 0) require(std::isfinite(D) && D > 0.0, "rank_limit_bound: D must be positive");
  for (int k = 1; k <= steps; ++k) {
    const double lambda = std::pow(10.0, -k);
    r.lambda_sequence.push_back(lambda);
    r.intermediate.push_back(nu == 0 ? 0.0 : mane_formula(nu, D, lambda, 1));
  }
  r.lambda = r.lambda_sequence.back();
  r.provenance = {{"n", "input (sup of rank of the derivative)"},
                  {"D", "input"},
                  {"bound", "limit lambda -> 0 of the mane formula"}};
  return r;
}

int power_for_contraction(double alpha) {
  require(alpha >= 0.0 && alpha < 1.0, "power_iterate_bound: contraction factor must lie in [0, 1)");
  int p = 1;
  double a = alpha;
  while (!(a < 0.25)) {
    a *= alpha;
    ++p;
  }
  return p;
}

DimBoundReport power_iterate_bound(const std::vector<std::vector<OperatorSplit>>& orbits, double alpha) {
  const int p = power_for_contraction(alpha);
  require(!orbits.empty(), "power_iterate_bound: no orbits");
  const double ap = std::pow(alpha, p);
  const double lambda = ap + 0.25;
  int n = 0;
  double D = 0.0;
  for (const auto& orbit : orbits) {
    require(static_cast<int>(orbit.size()) >= p, "power_iterate_bound: orbit shorter than the required power");
    OperatorSplit composed = orbit[0];
    for (int i = 1; i < p; ++i) composed = split_compose(orbit[i], composed);
    require(composed.contraction_bound <= ap * (1.0 + 1e-12) + 1e-300,
            "power_iterate_bound: a split exceeds the stated contraction factor");
    n = std::max(n, nu_lambda(composed, lambda).nu);
    D = std::max(D, composed.nd.operator_norm(composed.T()));
  }
  if (D == 0.0) D = std::numeric_limits<double>::min();
  DimBoundReport r = mane_bound(n, D, lambda, 1);
  r.formula = BoundFormula::power_iterate;
  r.p = p;
  r.provenance = {{"n", "max nu_lambda of the composed splits"},
                  {"D", "max operator norm of the composed maps"},
                  {"lambda", "alpha^p + 1/4"},
                  {"p", "least p with alpha^p < 1/4"},
                  {"alpha", fmt(alpha)}};
  return r;
}

double gronwall_bound(double M_bar, double M, double N, double alpha, double t) {
  require(alpha >= 0.0 && alpha < 1.0, "gronwall_bound: alpha must lie in [0, 1)");
  require(M_bar > 0.0 && M > 0.0 && N >= 0.0 && t >= 0.0, "gronwall_bound: constants must be positive");
  const double k = std::pow(M * N * std::tgamma(1.0 - alpha), 1.0 / (1.0 - alpha));
  return M_bar / (1.0 - alpha) * std::exp(k * t);
}

double tail_estimate(const SemilinearConstants& c, int n, double t) {
  require(c.alpha > 0.0 && c.alpha < 1.0, "tail_estimate: alpha must lie in (0, 1)");
  require(c.M > 0.0 && c.M_bar > 0.0 && c.N >= 0.0 && t >= 0.0, "tail_estimate: invalid constants");
  require(n >= 0 && n < static_cast<int>(c.rates.size()), "tail_estimate: no decay rate for this n");
  const double rate = c.rates[n];
  const double k = kappa(c);
  const double g = std::tgamma(1.0 - c.alpha);
  const double denom = c.form == TailForm::corrected ? std::pow(rate + k, 1.0 - c.alpha) : rate + k;
  return c.M * std::exp(-rate * t) + c.M_bar * c.M * c.N / (1.0 - c.alpha) * std::exp(k * t) * g / denom;
}

void choose_projection(SemilinearConstants& c) {
  require(c.rates.size() == c.projection_dims.size(), "choose_projection: rates and dimensions differ in length");
  c.tails.clear();
  for (int n = 0; n < static_cast<int>(c.rates.size()); ++n) c.tails.push_back(tail_estimate(c, n, c.t));
  c.n0 = -1;
  for (int n = 0; n < static_cast<int>(c.tails.size()); ++n) {
    if (c.tails[n] < 0.25) {
      c.n0 = n;
      break;
    }
  }
  if (c.n0 < 0) {
    std::ostringstream os;
    os << "no projection index gives Lambda_n(" << c.t << ") < 1/4; tails:";
    for (double v : c.tails) os << ' ' << fmt(v);
    throw NumericalFailure(os.str());
  }
  const double tail = c.tails[c.n0];
  c.lambda = std::max(tail, 0.125) * 1.05;
  c.provenance["lambda"] = "max(Lambda_n0, 1/8) * 1.05";
  if (!(c.lambda < 0.25)) {
    c.lambda = 0.5 * (tail + 0.25);
    c.provenance["lambda"] = "midpoint of Lambda_n0 and 1/4";
  }
  c.provenance["n0"] = "least n with Lambda_n(t) < 1/4";
}

DimBoundReport semilinear_bound(const SemilinearConstants& c, int nu, double D) {
  require(c.n0 >= 0, "semilinear_bound: no projection chosen");
  const double tail = tail_estimate(c, c.n0, c.t);
  require(tail < c.lambda && c.lambda < 0.25, "semilinear_bound: need Lambda_n0(t) < lambda < 1/4");
  require(nu >= 0 && nu <= c.projection_dims[c.n0], "semilinear_bound: nu exceeds dim R(P_n0)");
  DimBoundReport r;
  if (nu == 0) {
    r.bound = 0.0;
  } else {
    r = mane_bound(nu, D, c.lambda, 1);
  }
  r.formula = BoundFormula::semilinear;
  r.n = nu;
  r.D = D;
  r.lambda = c.lambda;
  r.field_factor = 1;
  r.provenance = c.provenance;
  r.provenance["n"] = "nu <= dim R(P_n0)";
  r.provenance["D"] = "input";
  r.provenance["Lambda_n0"] = fmt(tail);
  r.provenance["tail_form"] = c.form == TailForm::corrected ? "corrected" : "displayed";
  return r;
}

BoxCountCurve boxcount_estimate(const PointCloud& K, const NormDescriptor& nd, double eps0, int k_max, int window) {
  require(K.ambient_dim() == nd.dimension(), "boxcount_estimate: cloud and norm dimensions differ");
  require(eps0 > 0.0 && std::isfinite(eps0), "boxcount_estimate: eps0 must be positive");
  require(k_max >= 1, "boxcount_estimate: need k_max >= 1");
  require(window >= 2 && window <= k_max + 1, "boxcount_estimate: window must lie in [2, k_max + 1]");
  BoxCountCurve curve;
  curve.window = window;
  const Eigen::MatrixXd P = nd.transform() * K.points();
  const int d = static_cast<int>(P.rows());
  const int count = static_cast<int>(P.cols());

  std::vector<std::vector<long long>> keys(count, std::vector<long long>(d));
  for (int k = 0; k <= k_max; ++k) {
    const double eps = eps0 * std::ldexp(1.0, -k);
    for (int i = 0; i < count; ++i) {
      for (int j = 0; j < d; ++j) keys[i][j] = static_cast<long long>(std::floor(P(j, i) / eps));
    }
    std::vector<std::vector<long long>> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    const auto occupied = std::unique(sorted.begin(), sorted.end()) - sorted.begin();
    curve.scales.push_back(eps);
    curve.counts.push_back(occupied);
  }
  if (count <= 1 || curve.counts.back() <= 1) {
    curve.warnings.push_back("degenerate cloud: a single occupied box at every scale");
    curve.window_slopes.assign(k_max + 2 - window, 0.0);
    curve.estimate = 0.0;
    return curve;
  }
  for (int k = 0; k <= k_max; ++k) {
    if (curve.counts[k] * 4 > count) {
      std::ostringstream os;
      os << "scale " << curve.scales[k] << " is near the sample spacing (" << curve.counts[k] << " boxes for "
         << count << " points)";
      curve.warnings.push_back(os.str());
      break;
    }
  }
  curve.estimate = -std::numeric_limits<double>::infinity();
  for (int s = 0; s + window <= k_max + 1; ++s) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int k = s; k < s + window; ++k) {
      const double x = -std::log(curve.scales[k]);
      const double y = std::log(static_cast<double>(curve.counts[k]));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double slope = (window * sxy - sx * sy) / (window * sxx - sx * sx);
    curve.window_slopes.push_back(slope);
    curve.estimate = std::max(curve.estimate, slope);
  }
  return curve;
}

}  // namespace fdattr
