#pragma once

#include <Eigen/Dense>
#include <vector>

namespace fdattr::lp {

// Dense linear programs of the form
//
//   maximize    c^T x
//   subject to  A x <= b
//               x_j >= 0  unless free[j]
//
// solved with a two-phase tableau simplex under Bland's rule. Sized for the
// small problems that come up in norm computations (tens of variables).

struct Problem {
  Eigen::VectorXd objective;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  std::vector<bool> free;  // empty means all variables nonnegative
};

enum class Status { optimal, infeasible, unbounded };

struct Solution {
  Status status = Status::infeasible;
  double value = 0.0;
  Eigen::VectorXd x;
};

Solution maximize(const Problem& problem);

}  // namespace fdattr::lp
