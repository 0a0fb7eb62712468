#pragma once

#include "gsieve/generate.hpp"

#include <doctest.h>

#include <initializer_list>
#include <string>

namespace gsieve::test {

inline Rational q(const char* s) { return parse_rational(s); }

inline RVector rv(std::initializer_list<const char*> xs) {
  RVector out;
  for (const char* s : xs) out.push_back(parse_rational(s));
  return out;
}

inline Eigen::VectorXd dv(std::initializer_list<double> xs) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) out[i++] = x;
  return out;
}

inline IVector iv(std::initializer_list<std::int64_t> xs) {
  IVector out(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (auto x : xs) out[i++] = x;
  return out;
}

inline CenteredPolytope box(std::initializer_list<const char*> lo, std::initializer_list<const char*> hi) {
  return CenteredPolytope::box(rv(lo), rv(hi));
}

inline CenteredPolytope cube(std::size_t n, const char* lo = "-1", const char* hi = "1") {
  return CenteredPolytope::box(RVector(n, q(lo)), RVector(n, q(hi)));
}

inline LatticeBasis basis_from_rows(std::initializer_list<std::initializer_list<const char*>> rows) {
  std::vector<RVector> r;
  for (auto row : rows) r.push_back(rv(row));
  return LatticeBasis(RMatrix::from_rows(r));
}

}  // namespace gsieve::test
