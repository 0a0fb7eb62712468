#pragma once

// Approximate integer programming: lattice points in a slightly enlarged
// polytope, and binary search on a linear objective.

#include "gsieve/cvp.hpp"

#include <optional>
#include <vector>

namespace gsieve {

enum class IPStatus {
  found_in_k,
  found_in_blowup,
  empty,
  // The inner CVP call ran out of budget or returned nothing.
  inconclusive,
};

const char* ip_status_name(IPStatus s);

struct IPResult {
  IPStatus status = IPStatus::inconclusive;
  std::optional<RVector> point;
  std::optional<IVector> coefficients;
  RVector center;                         // approximate barycenter b
  std::optional<Rational> center_gauge;  // ||y - b||_{K - b}, exact
  double eps = 0.0;
  std::uint64_t seed = 0;
  SolveReport cvp;

  bool found() const { return status == IPStatus::found_in_k || status == IPStatus::found_in_blowup; }
};

struct IPConfig {
  SieveConfig sieve;
  BarycenterOptions barycenter;
};

// b = approximate barycenter at 1/3, y = approx CVP of b in K - b at 2 eps / 5,
// accept y iff ||y - b||_{K - b} <= 1 + 3 eps / 4.
IPResult approx_ip(const CenteredPolytope& K, const LatticeBasis& B, double eps,
                   const IPConfig& cfg);

struct ObjectiveBounds {
  RVector x_lower;  // in K, minimizes <v, x> exactly
  RVector x_upper;  // in K, maximizes <v, x> exactly
};

ObjectiveBounds objective_bounds(const CenteredPolytope& K, const RVector& v, double delta);

// K & {lo <= <v, x> <= hi} with a Chebyshev center; nullopt when the slab
// misses the interior of K.
std::optional<CenteredPolytope> restrict_slab(const CenteredPolytope& K, const RVector& v,
                                              const Rational& lo, const Rational& hi);

// Membership in K + eps (K - K): a_i y <= b_i + eps (b_i - min_K a_i x) for
// every facet.
bool blowup_membership(const CenteredPolytope& K, const Rational& eps, const RVector& y);

struct OptConfig {
  IPConfig ip;
  // Repetitions per feasibility call; derived from the instance when unset.
  std::optional<std::size_t> repetitions;
};

enum class OptStatus { solved, empty };

struct OptResult {
  OptStatus status = OptStatus::empty;
  std::optional<RVector> point;
  std::optional<IVector> coefficients;
  std::optional<Rational> value;
  Rational lower, upper;  // final bracket
  Rational delta;         // after clamping to ||v||_2 r
  std::size_t iterations = 0;
  std::size_t iteration_cap = 0;
  std::size_t repetitions = 1;
  std::size_t ip_calls = 0;
  std::size_t inconclusive_calls = 0;
  std::vector<double> contraction;  // (u - l) after / before, per iteration
  std::vector<std::string> warnings;
};

OptResult approx_opt(const CenteredPolytope& K, const LatticeBasis& B, const RVector& v, double eps,
                     double delta, const OptConfig& cfg);

}  // namespace gsieve
