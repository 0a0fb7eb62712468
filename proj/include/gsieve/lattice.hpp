#pragma once

// Full-rank lattices given by a rational basis, coset reduction mod B and
// exact subspace membership.

#include "gsieve/rational.hpp"

#include <Eigen/Dense>

#include <vector>

namespace gsieve {

// Columns of `basis()` are the generators b_1..b_n.
class LatticeBasis {
 public:
  explicit LatticeBasis(RMatrix basis);
  static LatticeBasis from_columns(const std::vector<RVector>& columns);
  static LatticeBasis identity(std::size_t n);

  std::size_t dim() const { return B_.rows(); }
  const RMatrix& basis() const { return B_; }
  const RMatrix& inverse() const { return Binv_; }
  const Eigen::MatrixXd& basis_double() const { return B_d_; }
  const Eigen::MatrixXd& inverse_double() const { return Binv_d_; }
  RVector column(std::size_t i) const { return B_.column(i); }

  // B^{-1} x, exactly.
  RVector coordinates(const RVector& x) const;
  // B c.
  RVector point(const IVector& c) const { return B_ * c; }
  Eigen::VectorXd point_double(const IVector& c) const;

  LatticeBasis scaled(const Rational& s) const;

 private:
  RMatrix B_;
  RMatrix Binv_;
  Eigen::MatrixXd B_d_;
  Eigen::MatrixXd Binv_d_;
};

// x mod B = B (B^{-1} x - floor(B^{-1} x)), the representative of x + L in
// the half-open fundamental parallelepiped.
RVector mod_basis(const LatticeBasis& B, const RVector& x);
bool in_lattice(const LatticeBasis& B, const RVector& x);
// Integer coordinates of a lattice point; throws InvalidInput if x is not in L.
IVector lattice_coordinates(const LatticeBasis& B, const RVector& x);

// Linear subspace of dimension < n, stored with a rational basis of its
// orthogonal complement.
class Subspace {
 public:
  Subspace(std::size_t ambient_dim, std::vector<RVector> span);
  static Subspace zero(std::size_t ambient_dim) { return Subspace(ambient_dim, {}); }

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return ambient_dim_ - complement_.size(); }
  const std::vector<RVector>& span() const { return span_; }
  const std::vector<RVector>& complement() const { return complement_; }

  bool contains(const RVector& x) const;

 private:
  std::size_t ambient_dim_;
  std::vector<RVector> span_;
  std::vector<RVector> complement_;
};

bool in_subspace(const Subspace& M, const RVector& x);

// Exact test "B c in M" for integer coefficient vectors c, with the
// complement pulled back through B and scaled to integers.
class CoefficientSubspaceTest {
 public:
  CoefficientSubspaceTest(const LatticeBasis& B, const Subspace& M);
  bool contains(const IVector& c) const;

 private:
  std::vector<std::vector<Integer>> rows_;
  std::vector<std::vector<std::int64_t>> small_rows_;
  bool small_ = false;
};

}  // namespace gsieve
