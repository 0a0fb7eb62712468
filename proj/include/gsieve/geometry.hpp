#pragma once

// H-polytopes with a certified interior point, the gauge (semi-norm) they
// induce, recentering, symmetrization, and Monte-Carlo symmetry/barycenter
// estimates.

#include "gsieve/rational.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace gsieve {

enum class SamplerMethod { rejection, hit_and_run };

// {x : A x <= b} together with a center a0 and radii r <= R such that
// a0 + r B2 is inside and the polytope lies within a0 + R B2.
class CenteredPolytope {
 public:
  CenteredPolytope(RMatrix A, RVector b, RVector center, double inner_radius,
                   double outer_radius);

  // Center and inner radius from the Chebyshev ball, outer radius from the
  // farthest corner of the LP bounding box.
  static CenteredPolytope from_inequalities(RMatrix A, RVector b);
  static CenteredPolytope box(const RVector& lo, const RVector& hi);
  // Full-dimensional simplex from n+1 affinely independent vertices.
  static CenteredPolytope simplex(const std::vector<RVector>& vertices);

  std::size_t dim() const { return A_.cols(); }
  std::size_t facets() const { return A_.rows(); }
  const RMatrix& A() const { return A_; }
  const RVector& b() const { return b_; }
  const RVector& center() const { return center_; }
  double inner_radius() const { return inner_radius_; }
  double outer_radius() const { return outer_radius_; }

  const Eigen::MatrixXd& A_double() const { return A_d_; }
  const Eigen::VectorXd& b_double() const { return b_d_; }
  Eigen::VectorXd center_double() const { return to_eigen(center_); }
  const Eigen::VectorXd& box_lo() const { return box_lo_; }
  const Eigen::VectorXd& box_hi() const { return box_hi_; }

  // Origin strictly interior, i.e. b > 0 componentwise.
  bool is_zero_centered() const { return zero_centered_; }

  bool contains(const Eigen::VectorXd& x) const;
  bool contains_exact(const RVector& x) const;
  bool strictly_contains_exact(const RVector& x) const;

  // s * P for s > 0 and -P. Both keep the center scaled accordingly.
  CenteredPolytope scaled(const Rational& s) const;
  CenteredPolytope negated() const;

  // Same body with center 0 and radii measured about the origin, making it
  // (0, r, R)-centered. Zero-centered only.
  CenteredPolytope origin_centered() const;

  // Rows a_i / b_i; gauge(x) = max(0, max_i rows_i . x). Zero-centered only.
  const Eigen::MatrixXd& gauge_rows() const;

 private:
  RMatrix A_;
  RVector b_;
  RVector center_;
  double inner_radius_;
  double outer_radius_;
  Eigen::MatrixXd A_d_;
  Eigen::VectorXd b_d_;
  Eigen::VectorXd box_lo_;
  Eigen::VectorXd box_hi_;
  Eigen::MatrixXd gauge_rows_;
  bool zero_centered_ = false;
};

// Vertices by solving every n-subset of facets; empty when that would take
// more than `max_subsets` solves.
std::vector<Eigen::VectorXd> enumerate_vertices(const CenteredPolytope& P,
                                                std::size_t max_subsets = 20000);

// Valid upper bound on max_{x in P} |x - point|_2: exact over vertices when
// enumerable, else the farthest bounding-box corner.
double outer_radius_about(const CenteredPolytope& P, const Eigen::VectorXd& point);
// Distance from `point` to the nearest facet hyperplane.
double inner_radius_about(const CenteredPolytope& P, const Eigen::VectorXd& point);

// ||x||_C = inf {s >= 0 : x in sC} = max(0, max_i a_i.x / b_i).
double gauge(const CenteredPolytope& C, const Eigen::VectorXd& x);
// Exact rational evaluation of the same formula.
Rational gauge_exact(const CenteredPolytope& C, const RVector& x);

struct GaugeValue {
  double value = 0.0;
  int sign = 1;
};

// min(||x||_C, ||x||_{-C}) and the side attaining it; ties go to +1.
GaugeValue gauge_star(const CenteredPolytope& C, const Eigen::VectorXd& x);

// K - c for c strictly inside K.
CenteredPolytope recenter(const CenteredPolytope& K, const RVector& c);
CenteredPolytope recenter(const CenteredPolytope& K, const Eigen::VectorXd& c);

// C intersected with -C.
CenteredPolytope intersect_with_negation(const CenteredPolytope& C);

struct GammaEstimate {
  double value = 0.0;      // (vol(C & -C) / vol(C))^(1/n)
  double ratio = 0.0;      // vol(C & -C) / vol(C)
  double std_error = 0.0;  // of `value`, delta method
  std::size_t samples = 0;
};

GammaEstimate estimate_gamma(const CenteredPolytope& C, std::size_t sample_count,
                             std::uint64_t seed,
                             SamplerMethod method = SamplerMethod::rejection);

struct BarycenterOptions {
  double constant = 4.0;  // N = ceil(constant * n^2 / eps^2)
  SamplerMethod method = SamplerMethod::rejection;
};

// Mean of ceil(c n^2 / eps^2) near-uniform samples from K.
Eigen::VectorXd barycenter_approx(const CenteredPolytope& K, double eps, std::uint64_t seed,
                                  const BarycenterOptions& options = {});

}  // namespace gsieve
