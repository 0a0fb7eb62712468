#pragma once

// Small dense linear programs over H-polytopes {x : A x <= b}.

#include <Eigen/Dense>

#include <optional>

namespace gsieve::lp {

// max c.x subject to A x <= b, x >= 0, with b >= 0 (origin feasible).
// Bland's rule, so degenerate problems terminate. Throws InvalidInput when
// the problem is unbounded.
Eigen::VectorXd simplex_nonnegative(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                    const Eigen::VectorXd& c);

// max c.x subject to A x <= b with x free, started from a feasible x0.
Eigen::VectorXd maximize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                         const Eigen::VectorXd& c, const Eigen::VectorXd& x0);

struct Ball {
  Eigen::VectorXd center;
  double radius = 0.0;
};

// Largest inscribed Euclidean ball. `reference` is any point (not
// necessarily feasible); a non-positive radius means the polytope has empty
// interior.
Ball chebyshev_ball(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                    const Eigen::VectorXd& reference);

}  // namespace gsieve::lp
