#include "gsieve/lattice.hpp"

#include "gsieve/error.hpp"

#include <boost/integer/common_factor.hpp>

namespace gsieve {

LatticeBasis::LatticeBasis(RMatrix basis) : B_(std::move(basis)) {
  if (B_.rows() == 0 || B_.rows() != B_.cols()) {
    throw InvalidInput("lattice basis must be a non-empty square matrix");
  }
  if (determinant(B_) == 0) throw InvalidInput("lattice basis is singular (det B = 0)");
  Binv_ = gsieve::inverse(B_);
  B_d_ = B_.to_eigen();
  Binv_d_ = Binv_.to_eigen();
}

LatticeBasis LatticeBasis::from_columns(const std::vector<RVector>& columns) {
  return LatticeBasis(RMatrix::from_columns(columns));
}

LatticeBasis LatticeBasis::identity(std::size_t n) { return LatticeBasis(RMatrix::identity(n)); }

RVector LatticeBasis::coordinates(const RVector& x) const {
  if (x.size() != dim()) throw InvalidInput("lattice: dimension mismatch");
  return Binv_ * x;
}

Eigen::VectorXd LatticeBasis::point_double(const IVector& c) const {
  return B_d_ * c.cast<double>();
}

LatticeBasis LatticeBasis::scaled(const Rational& s) const {
  RMatrix out = B_;
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) *= s;
  return LatticeBasis(std::move(out));
}

RVector mod_basis(const LatticeBasis& B, const RVector& x) {
  RVector c = B.coordinates(x);
  for (auto& ci : c) ci -= Rational(floor_integer(ci));
  return B.basis() * c;
}

bool in_lattice(const LatticeBasis& B, const RVector& x) {
  RVector c = B.coordinates(x);
  for (const auto& ci : c)
    if (!is_integral(ci)) return false;
  return true;
}

IVector lattice_coordinates(const LatticeBasis& B, const RVector& x) {
  RVector c = B.coordinates(x);
  IVector out(static_cast<Eigen::Index>(c.size()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!is_integral(c[i])) throw InvalidInput("point is not in the lattice");
    Integer v = numerator(c[i]);
    if (abs(v) > Integer(std::numeric_limits<std::int64_t>::max())) {
      throw InvalidInput("lattice coordinate overflows 64 bits");
    }
    out[static_cast<Eigen::Index>(i)] = v.convert_to<std::int64_t>();
  }
  return out;
}

Subspace::Subspace(std::size_t ambient_dim, std::vector<RVector> span)
    : ambient_dim_(ambient_dim), span_(std::move(span)) {
  if (ambient_dim_ == 0) throw InvalidInput("subspace: ambient dimension must be positive");
  for (const auto& v : span_) {
    if (v.size() != ambient_dim_) throw InvalidInput("subspace: spanning vector has wrong dimension");
  }
  if (span_.empty()) {
    for (std::size_t i = 0; i < ambient_dim_; ++i) {
      RVector e(ambient_dim_, Rational(0));
      e[i] = 1;
      complement_.push_back(std::move(e));
    }
  } else {
    complement_ = nullspace(RMatrix::from_rows(span_));
  }
  if (complement_.empty()) throw InvalidInput("subspace must have dimension < n");
}

bool Subspace::contains(const RVector& x) const {
  if (x.size() != ambient_dim_) throw InvalidInput("subspace: dimension mismatch");
  for (const auto& w : complement_)
    if (dot(w, x) != 0) return false;
  return true;
}

bool in_subspace(const Subspace& M, const RVector& x) { return M.contains(x); }

CoefficientSubspaceTest::CoefficientSubspaceTest(const LatticeBasis& B, const Subspace& M) {
  if (B.dim() != M.ambient_dim()) throw InvalidInput("subspace/lattice dimension mismatch");
  const Integer limit = Integer(1) << 40;
  small_ = true;
  for (const auto& w : M.complement()) {
    // (w^T B) c = 0  <=>  w . (B c) = 0
    RVector pulled = B.basis().transpose() * w;
    Integer lcm = 1;
    for (const auto& q : pulled) lcm = boost::integer::lcm(lcm, Integer(denominator(q)));
    std::vector<Integer> row;
    for (const auto& q : pulled) {
      Rational scaled = q * Rational(lcm);
      row.push_back(numerator(scaled));
      if (abs(row.back()) >= limit) small_ = false;
    }
    rows_.push_back(std::move(row));
  }
  if (small_) {
    for (const auto& row : rows_) {
      std::vector<std::int64_t> r;
      for (const auto& v : row) r.push_back(v.convert_to<std::int64_t>());
      small_rows_.push_back(std::move(r));
    }
  }
}

bool CoefficientSubspaceTest::contains(const IVector& c) const {
  if (small_) {
    for (const auto& row : small_rows_) {
      __int128 acc = 0;
      for (std::size_t j = 0; j < row.size(); ++j) {
        acc += static_cast<__int128>(row[j]) * static_cast<__int128>(c[static_cast<Eigen::Index>(j)]);
      }
      if (acc != 0) return false;
    }
    return true;
  }
  for (const auto& row : rows_) {
    Integer acc = 0;
    for (std::size_t j = 0; j < row.size(); ++j) acc += row[j] * c[static_cast<Eigen::Index>(j)];
    if (acc != 0) return false;
  }
  return true;
}

}  // namespace gsieve
