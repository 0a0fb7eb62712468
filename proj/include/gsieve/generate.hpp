#pragma once

// Seeded random instances, including planted ones whose label is certified
// by the brute-force oracles before they are returned.

#include "gsieve/io.hpp"
#include "gsieve/rng.hpp"

namespace gsieve {

CenteredPolytope unit_cube(std::size_t n);
// [-1, 2]^n, the standard asymmetric test body.
CenteredPolytope shifted_cube(std::size_t n);
// Zero-centered H-polytope with 2n+2 random facets and estimated
// symmetry at least `min_gamma`.
CenteredPolytope random_gauge_body(std::size_t n, Rng& rng, double min_gamma = 0.5);

enum class BodyKind { cube, shifted_cube, random };
CenteredPolytope make_body(BodyKind kind, std::size_t n, Rng& rng);
const char* body_kind_name(BodyKind kind);

// Entries in {-3, -5/2, ..., 3}, |det| >= 1/2.
LatticeBasis random_basis(std::size_t n, Rng& rng);
// span{w} for a random nonzero integer vector w with entries in [-2, 2].
Subspace random_line(std::size_t n, Rng& rng);
// Uniform in the bounding box of the fundamental parallelepiped, scaled 2x
// about its center.
RVector random_target(const LatticeBasis& B, Rng& rng);

// b + s (K - b) for the barycenter b.
CenteredPolytope scale_about(const CenteredPolytope& K, const RVector& b, const Rational& s);

Instance gen_random_cvp(std::size_t n, std::uint64_t seed);
// Target with d_C(L, x) <= 2 lambda_1(C, L), checked by the oracles.
Instance gen_planted_cvp(std::size_t n, std::uint64_t seed);
Instance gen_sap(std::size_t n, std::uint64_t seed);
// Some lattice point lies in b + (K - b)/(1 + eps) (certified).
Instance gen_planted_ip(std::size_t n, std::uint64_t seed, double eps = 0.5);
// b + (1 + eps)(K - b) holds no lattice point (certified).
Instance gen_empty_ip(std::size_t n, std::uint64_t seed, double eps = 0.5);
// K & L nonempty (certified) plus a rational objective.
Instance gen_opt(std::size_t n, std::uint64_t seed, double delta = 0.1);

// Analytic barycenter recorded by the IP generators, if any.
std::optional<RVector> instance_barycenter(const Instance& inst);

}  // namespace gsieve
