#include "fdattr/lp.hpp"

#include <cmath>
#include <limits>

#include "fdattr/error.hpp"

namespace fdattr::lp {
namespace {

constexpr double kPivotTol = 1e-11;
constexpr int kMaxPivots = 50000;

// Tableau with the objective in the last row; rhs in the last column.
struct Tableau {
  Eigen::MatrixXd t;
  std::vector<int> basis;
  int rows = 0;
  int cols = 0;  // structural + slack + artificial columns

  double& rhs(int i) { return t(i, cols); }
  auto obj() { return t.row(rows); }

  void pivot(int r, int c) {
    t.row(r) /= t(r, c);
    for (int i = 0; i <= rows; ++i) {
      if (i != r && t(i, c) != 0.0) t.row(i) -= t(i, c) * t.row(r);
    }
    basis[r] = c;
  }

  // Bland's rule iterations over columns [0, limit). Returns false when
  // the objective is unbounded.
  bool optimize(int limit) {
    for (int it = 0; it < kMaxPivots; ++it) {
      int enter = -1;
      for (int j = 0; j < limit; ++j) {
        if (t(rows, j) < -kPivotTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows; ++i) {
        if (t(i, enter) > kPivotTol) {
          const double ratio = t(i, cols) / t(i, enter);
          if (ratio < best - 1e-14 ||
              (std::abs(ratio - best) <= 1e-14 && leave >= 0 &&
               basis[i] < basis[leave])) {
            best = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
    throw NumericalFailure("simplex: pivot limit exceeded");
  }
};

}  // namespace

Solution maximize(const Problem& problem) {
  const int m = static_cast<int>(problem.A.rows());
  const int n = static_cast<int>(problem.A.cols());
  require(problem.objective.size() == n, "lp: objective size mismatch");
  require(problem.b.size() == m, "lp: rhs size mismatch");
  require(problem.free.empty() || static_cast<int>(problem.free.size()) == n,
          "lp: free-flag size mismatch");

  // Column map: each free variable becomes a (+, -) pair.
  std::vector<int> pos_col(n), neg_col(n, -1);
  int ny = 0;
  for (int j = 0; j < n; ++j) {
    pos_col[j] = ny++;
    if (!problem.free.empty() && problem.free[j]) neg_col[j] = ny++;
  }
  int n_art = 0;
  for (int i = 0; i < m; ++i) {
    if (problem.b(i) < 0) ++n_art;
  }

  Tableau tab;
  tab.rows = m;
  tab.cols = ny + m + n_art;
  tab.t = Eigen::MatrixXd::Zero(m + 1, tab.cols + 1);
  tab.basis.assign(m, -1);

  int art = ny + m;
  for (int i = 0; i < m; ++i) {
    const double sign = problem.b(i) < 0 ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) {
      tab.t(i, pos_col[j]) = sign * problem.A(i, j);
      if (neg_col[j] >= 0) tab.t(i, neg_col[j]) = -sign * problem.A(i, j);
    }
    tab.t(i, ny + i) = sign;
    tab.rhs(i) = sign * problem.b(i);
    if (sign < 0) {
      tab.t(i, art) = 1.0;
      tab.basis[i] = art++;
    } else {
      tab.basis[i] = ny + i;
    }
  }

  if (n_art > 0) {
    // Phase 1: maximize -(sum of artificials).
    for (int c = ny + m; c < tab.cols; ++c) tab.t(m, c) = 1.0;
    for (int i = 0; i < m; ++i) {
      if (tab.basis[i] >= ny + m) tab.t.row(m) -= tab.t.row(i);
    }
    tab.optimize(tab.cols);
    const double scale = 1.0 + problem.b.cwiseAbs().maxCoeff();
    if (tab.t(m, tab.cols) < -1e-9 * scale) return Solution{Status::infeasible, 0.0, {}};
    // Drive zero-level artificials out of the basis where possible.
    for (int i = 0; i < m; ++i) {
      if (tab.basis[i] < ny + m) continue;
      for (int c = 0; c < ny + m; ++c) {
        if (std::abs(tab.t(i, c)) > kPivotTol) {
          tab.pivot(i, c);
          break;
        }
      }
    }
  }

  // Phase 2 objective over structural columns.
  tab.t.row(m).setZero();
  for (int j = 0; j < n; ++j) {
    tab.t(m, pos_col[j]) = -problem.objective(j);
    if (neg_col[j] >= 0) tab.t(m, neg_col[j]) = problem.objective(j);
  }
  for (int i = 0; i < m; ++i) {
    const int bc = tab.basis[i];
    if (tab.t(m, bc) != 0.0) tab.t.row(m) -= tab.t(m, bc) * tab.t.row(i);
  }
  if (!tab.optimize(ny + m)) return Solution{Status::unbounded, 0.0, {}};

  Eigen::VectorXd y = Eigen::VectorXd::Zero(tab.cols);
  for (int i = 0; i < m; ++i) y(tab.basis[i]) = tab.rhs(i);
  Solution sol;
  sol.status = Status::optimal;
  sol.x.resize(n);
  for (int j = 0; j < n; ++j) {
    sol.x(j) = y(pos_col[j]) - (neg_col[j] >= 0 ? y(neg_col[j]) : 0.0);
  }
  sol.value = problem.objective.dot(sol.x);
  return sol;
}

}  // namespace fdattr::lp
