#pragma once

// Closest vectors by lifting to a subspace-avoiding problem one dimension up.

#include "gsieve/sieve.hpp"

namespace gsieve {

// C' = C x [-1/(2 beta), 1/beta] with gauge max{||y||_C, beta z, -2 beta z},
// L' generated by (b_i, 0) and (-x, 1), M' = {z = 0}.
struct LiftedInstance {
  CenteredPolytope body;
  LatticeBasis basis;
  Subspace subspace;
  double beta = 0.0;
};

LiftedInstance lift(const CenteredPolytope& C, const LatticeBasis& B, const RVector& x, double beta);

// The lifted gauge straight from its closed form.
double lifted_gauge(const CenteredPolytope& C, double beta, const Eigen::VectorXd& y, double z);

// vol(C' & -C') / vol(C') = (2/3) vol(C & -C) / vol(C), so a gamma-symmetric
// C gives a ((2/3) gamma^n)^(1/(n+1))-symmetric C'.
double lifted_gamma(double gamma, std::size_t n);

// Requests with eps in [1/3, 1/2] are clamped to this value.
inline constexpr double kCvpEpsClamp = 0.33;

SolveReport approx_cvp(const CenteredPolytope& C, const LatticeBasis& B, const RVector& x,
                       double eps, const SieveConfig& cfg);
SolveReport exact_cvp(const CenteredPolytope& C, const LatticeBasis& B, const RVector& x, double t,
                      const SieveConfig& cfg);

}  // namespace gsieve
