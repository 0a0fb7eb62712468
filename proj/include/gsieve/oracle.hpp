#pragma once

// Exact brute-force solvers by bounded coefficient enumeration. These are
// the ground truth the randomized solvers are checked against; they are
// only meant for small dimensions.

#include "gsieve/geometry.hpp"
#include "gsieve/lattice.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace gsieve {

struct OracleOptions {
  std::size_t max_dim = 5;
  std::size_t max_candidates = 50'000'000;
  // Widens every coefficient interval; only used to test completeness.
  std::int64_t extra_margin = 0;
};

// Coefficient box guaranteed to contain every lattice point y with
// ||y - center||_C <= radius_gauge, via ||z||_2 <= R ||z||_C and the row
// norms of B^{-1}.
struct EnumerationBound {
  double radius_gauge = 0.0;
  double radius_l2 = 0.0;
  std::vector<std::pair<std::int64_t, std::int64_t>> coefficient_box;

  double candidate_count() const;
};

EnumerationBound enumeration_bound(const LatticeBasis& B, const Eigen::VectorXd& center,
                                   double radius_l2, std::int64_t extra_margin = 0);

struct LatticeSolution {
  IVector coefficients;
  RVector point;
  Rational value;  // exact objective (gauge distance, gauge length, ...)

  double value_double() const { return to_double(value); }
};

// argmin_{y in L} ||y - x||_C, exactly; ties by lexicographic coefficients.
LatticeSolution cvp_brute(const CenteredPolytope& C, const LatticeBasis& B, const RVector& x,
                          const OracleOptions& opts = {});
// argmin_{y in L \ M} ||y||_C.
LatticeSolution sap_brute(const CenteredPolytope& C, const LatticeBasis& B, const Subspace& M,
                          const OracleOptions& opts = {});
// First minimum: sap_brute with M = {0}.
LatticeSolution svp_brute(const CenteredPolytope& C, const LatticeBasis& B,
                          const OracleOptions& opts = {});

// Some point of K & L (first in lexicographic coefficient order) or nullopt.
std::optional<LatticeSolution> ip_brute(const CenteredPolytope& K, const LatticeBasis& B,
                                        const OracleOptions& opts = {});
// Every point of K & L.
std::vector<LatticeSolution> ip_enumerate(const CenteredPolytope& K, const LatticeBasis& B,
                                          const OracleOptions& opts = {});

// Euclidean counterparts used to anchor guess grids. `value` holds the
// squared length.
LatticeSolution l2_sap_brute(const LatticeBasis& B, const Subspace& M,
                             const OracleOptions& opts = {});
LatticeSolution l2_cvp_brute(const LatticeBasis& B, const RVector& x,
                             const OracleOptions& opts = {});

}  // namespace gsieve
