#pragma once

// Seeded near-uniform sampling from H-polytopes.
//
// Rejection from the LP bounding box is exact (eta = 0) and is the default.
// Hit-and-run is provided for higher dimensions; there eta is a contract on
// the caller's burn-in and thinning, not a certified bound.

#include "gsieve/geometry.hpp"
#include "gsieve/rng.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <utility>

namespace gsieve {

struct SamplerConfig {
  double eta = 0.0;
  std::uint64_t seed = 0;
  SamplerMethod method = SamplerMethod::rejection;
  std::size_t burn_in = 200;
  std::size_t thinning = 10;
  std::size_t max_rejections = 10'000'000;
};

// Owns its RNG; one instance per thread.
class PolytopeSampler {
 public:
  PolytopeSampler(CenteredPolytope body, const SamplerConfig& cfg, std::uint64_t stream = 0);

  // A point with A x <= b (checked exactly near the boundary).
  Eigen::VectorXd sample();

  // s * X with X uniform on beta * body and s an independent fair sign.
  std::pair<Eigen::VectorXd, int> sample_signed(double beta);

  const CenteredPolytope& body() const { return body_; }
  Rng& rng() { return rng_; }

 private:
  Eigen::VectorXd sample_rejection();
  Eigen::VectorXd sample_hit_and_run();
  void hit_and_run_step();
  bool accept(const Eigen::VectorXd& x) const;

  CenteredPolytope body_;
  SamplerConfig cfg_;
  Rng rng_;
  Eigen::VectorXd walker_;
  bool burned_in_ = false;
};

Eigen::VectorXd uniform_sample(const CenteredPolytope& K, const SamplerConfig& cfg);
std::pair<Eigen::VectorXd, int> sample_signed(const CenteredPolytope& C, double beta,
                                              const SamplerConfig& cfg);

}  // namespace gsieve
