#pragma once

// Exact rational scalars, vectors and small dense matrices.
//
// Polytope and lattice data are carried as rationals so that lattice
// membership, coset reduction and subspace tests are decided exactly.
// Floating point copies are derived from these for the hot loops.

#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gsieve {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;
using RVector = std::vector<Rational>;
using IVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

// Parses "p/q", "p" or a decimal literal such as "-0.125" or "1e-3".
Rational parse_rational(std::string_view text);
// "p/q", or "p" when the denominator is one.
std::string format_rational(const Rational& q);

// Exact value of a double (every finite double is a dyadic rational).
Rational to_rational(double x);
double to_double(const Rational& q);

Integer floor_integer(const Rational& q);
bool is_integral(const Rational& q);

RVector to_rvector(const Eigen::VectorXd& x);
RVector to_rvector(const IVector& x);
Eigen::VectorXd to_eigen(const RVector& x);

Rational dot(const RVector& a, const RVector& b);
RVector operator+(const RVector& a, const RVector& b);
RVector operator-(const RVector& a, const RVector& b);
RVector operator-(const RVector& a);
RVector operator*(const Rational& s, const RVector& a);

// Row-major dense rational matrix.
class RMatrix {
 public:
  RMatrix() = default;
  RMatrix(std::size_t rows, std::size_t cols);
  static RMatrix identity(std::size_t n);
  static RMatrix from_rows(const std::vector<RVector>& rows);
  static RMatrix from_columns(const std::vector<RVector>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  RVector row(std::size_t i) const;
  RVector column(std::size_t j) const;

  RMatrix transpose() const;
  RVector operator*(const RVector& x) const;
  RVector operator*(const IVector& x) const;
  RMatrix operator*(const RMatrix& other) const;
  bool operator==(const RMatrix& other) const = default;

  Eigen::MatrixXd to_eigen() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Rational determinant(const RMatrix& m);
// Throws InvalidInput if m is singular.
RMatrix inverse(const RMatrix& m);
// Solves m x = rhs for square nonsingular m.
RVector solve(const RMatrix& m, const RVector& rhs);
// Rows spanning {v : m v = 0}.
std::vector<RVector> nullspace(const RMatrix& m);
std::size_t rank(const RMatrix& m);

}  // namespace gsieve
