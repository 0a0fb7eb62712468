#pragma once

// Randomized sieving for shortest vectors under an asymmetric gauge, and the
// subspace-avoiding solvers built on it.

#include "gsieve/geometry.hpp"
#include "gsieve/lattice.hpp"
#include "gsieve/oracle.hpp"
#include "gsieve/report.hpp"
#include "gsieve/sampling.hpp"

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <vector>

namespace gsieve {

// A perturbation x and its lattice-shifted partner y. The lattice offset
// y - x = B * coeff is carried exactly; x is an exact dyadic double and y is
// its floating-point image. `origin` is the index of x in the initial
// population.
struct SievePair {
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  IVector coeff;
  std::size_t origin = 0;
};

// Builds a pair from exact data; throws InvalidInput unless y - x is in L.
SievePair make_pair(const LatticeBasis& B, const RVector& x, const RVector& y,
                    std::size_t origin = 0);

struct SieveSchedule {
  double D0 = 0.0;
  double N0_exact = 0.0;  // before the budget multiplier
  std::size_t N0 = 0;
  double eta = 0.0;
  std::size_t stage_bound = 0;  // ceil(6 ln(D0 / beta))
};

// D0 = n max_i ||b_i||_C, N0 = m (4 ceil(6 ln(D0/beta)) (20/g^2)^n + 8 (36/(g^2 eps))^n),
// eta = 2^-(n+1) / N0.
SieveSchedule make_schedule(const CenteredPolytope& C, const LatticeBasis& B, double beta,
                            double eps, double gamma, double budget_multiplier);

struct SieveStep {
  std::vector<std::size_t> centers;  // indices into the input, in scan order
  std::vector<SievePair> clustered;
};

// One greedy clustering pass. Each input pair must satisfy ||x||* <= beta,
// ||y||* <= D and y = x + B coeff; a violation throws InvalidInput naming
// the index.
SieveStep basic_sieve(const std::vector<SievePair>& pairs, const CenteredPolytope& C,
                      const LatticeBasis& B, double beta, double D);

struct SieveConfig {
  SamplerConfig sampler;
  double budget_multiplier = 1.0;
  std::optional<double> gamma;  // symmetry parameter; estimated when unset
  std::size_t gamma_samples = 20000;
  std::size_t max_stages = 10000;
  std::size_t max_pairs = 20'000'000;
  OracleOptions oracle;
  // Called after every stage with the live population (tests only; slow).
  std::function<void(std::size_t stage, double D, const std::vector<SievePair>&)> observer;
};

struct ShortVectorsResult {
  std::vector<IVector> vectors;  // coefficient vectors, distinct, none in M
  SieveSchedule schedule;
  std::size_t stages = 0;
  std::size_t survivors = 0;
  std::size_t max_centers = 0;
  bool exhausted = false;
};

// Symmetry parameter used for C: the override if present, else a
// conservative Monte-Carlo estimate.
double resolve_gamma(const CenteredPolytope& C, const SieveConfig& cfg);

ShortVectorsResult short_vectors(const CenteredPolytope& C, const LatticeBasis& B,
                                 const Subspace& M, double beta, double eps,
                                 const SieveConfig& cfg, std::uint64_t stream = 0);

struct LambdaBounds {
  double nu = 0.0;
  // nu <= lambda(C, L, M) <= spread * nu
  double spread = 1.0;
  std::size_t guess_count = 1;
  bool fallback = false;
};

LambdaBounds lambda_bounds(const CenteredPolytope& C, const LatticeBasis& B, const Subspace& M,
                           const OracleOptions& opts = {});

SolveReport approx_sap(const CenteredPolytope& C, const LatticeBasis& B, const Subspace& M,
                       double eps, const SieveConfig& cfg);
SolveReport exact_sap(const CenteredPolytope& C, const LatticeBasis& B, const Subspace& M,
                      double t, const SieveConfig& cfg);

}  // namespace gsieve
