#include "gsieve/lp.hpp"

#include "gsieve/error.hpp"

#include <limits>

namespace gsieve::lp {

namespace {
constexpr double kPivotTol = 1e-11;
}

Eigen::VectorXd simplex_nonnegative(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                    const Eigen::VectorXd& c) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  // Tableau columns: n structural, m slack, 1 rhs. Last row is -c (reduced costs).
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
  T.topLeftCorner(m, n) = A;
  T.block(0, n, m, m).setIdentity();
  T.col(n + m).head(m) = b.cwiseMax(0.0);
  T.row(m).head(n) = -c.transpose();

  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;

  const Eigen::Index max_iter = 50 * (n + m) + 1000;
  for (Eigen::Index iter = 0; iter < max_iter; ++iter) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n + m; ++j) {
      if (T(m, j) < -kPivotTol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) {
      Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
      for (Eigen::Index i = 0; i < m; ++i) {
        if (basis[static_cast<std::size_t>(i)] < n) x[basis[static_cast<std::size_t>(i)]] = T(i, n + m);
      }
      return x;
    }
    Eigen::Index leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      if (T(i, enter) > kPivotTol) {
        double ratio = T(i, n + m) / T(i, enter);
        if (ratio < best - 1e-14 ||
            (ratio <= best + 1e-14 && leave >= 0 &&
             basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) throw InvalidInput("linear program is unbounded");
    T.row(leave) /= T(leave, enter);
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i != leave && T(i, enter) != 0.0) T.row(i) -= T(i, enter) * T.row(leave);
    }
    basis[static_cast<std::size_t>(leave)] = enter;
  }
  throw InvalidInput("simplex iteration limit reached");
}

Eigen::VectorXd maximize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                         const Eigen::VectorXd& c, const Eigen::VectorXd& x0) {
  const Eigen::Index n = A.cols();
  Eigen::VectorXd slack = b - A * x0;
  if (slack.minCoeff() < -1e-9 * (1.0 + b.cwiseAbs().maxCoeff())) {
    throw InvalidInput("lp::maximize: start point is infeasible");
  }
  Eigen::MatrixXd split(A.rows(), 2 * n);
  split << A, -A;
  Eigen::VectorXd cc(2 * n);
  cc << c, -c;
  Eigen::VectorXd pq = simplex_nonnegative(split, slack, cc);
  return x0 + pq.head(n) - pq.tail(n);
}

Ball chebyshev_ball(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                    const Eigen::VectorXd& reference) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  Eigen::VectorXd norms = A.rowwise().norm();
  Eigen::VectorXd slack = b - A * reference;
  // Shift t = s - shift so that s = 0 (and u = 0) is feasible.
  double shift = 1.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (norms[i] > 0.0) shift = std::max(shift, 1.0 - slack[i] / norms[i]);
  }
  Eigen::MatrixXd M(m, 2 * n + 1);
  M << A, -A, norms;
  Eigen::VectorXd rhs = slack + norms * shift;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(2 * n + 1);
  c[2 * n] = 1.0;
  Eigen::VectorXd sol = simplex_nonnegative(M, rhs, c);
  Ball ball;
  ball.center = reference + sol.head(n) - sol.segment(n, n);
  ball.radius = sol[2 * n] - shift;
  return ball;
}

}  // namespace gsieve::lp
