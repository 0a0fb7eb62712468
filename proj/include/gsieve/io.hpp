#pragma once

// JSON instance files and reports. Rationals are written as "p/q" strings;
// plain JSON numbers are accepted on input.

#include "gsieve/ip.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace gsieve {

using json = nlohmann::json;

inline constexpr const char* kSchema = "gauge-sieve/1";

Rational rational_from_json(const json& j);
json rational_to_json(const Rational& q);
RVector vector_from_json(const json& j);
json vector_to_json(const RVector& v);
json vector_to_json(const IVector& v);
RMatrix matrix_from_json(const json& j);
json matrix_to_json(const RMatrix& m);

// {"A", "b"} with optional "a0", "r", "R"; a missing center is replaced by
// the Chebyshev center, missing radii are computed.
CenteredPolytope polytope_from_json(const json& j);
json polytope_to_json(const CenteredPolytope& P);

// {"B": rows}; the columns of B are the basis vectors.
LatticeBasis basis_from_json(const json& j);
json basis_to_json(const LatticeBasis& B);

// {"span": [vectors]}; an empty span is the zero subspace.
Subspace subspace_from_json(const json& j, std::size_t n);
json subspace_to_json(const Subspace& M);

struct Objective {
  RVector v;
  double delta = 0.1;
};

struct InstanceParams {
  std::optional<double> eps;
  std::optional<std::uint64_t> seed;
  std::optional<double> budget_multiplier;
  std::optional<double> gamma;
  std::optional<double> exact_t;
};

struct Instance {
  std::optional<CenteredPolytope> body;
  std::optional<LatticeBasis> lattice;
  std::optional<RVector> target;
  std::optional<Subspace> subspace;
  std::optional<Objective> objective;
  InstanceParams params;
  // Free-form annotations written by the generator.
  json meta = json::object();
};

// Throws InvalidInput on malformed documents or inconsistent dimensions.
Instance instance_from_json(const json& j);
Instance load_instance(const std::string& path);
json instance_to_json(const Instance& inst);

// {"rational": "p/q", "decimal": x}, the form reports use for exact values.
json value_json(const Rational& q);
json report_to_json(const SolveReport& rep);
json ip_result_to_json(const IPResult& res);
json opt_result_to_json(const OptResult& res);

}  // namespace gsieve
