#include "gsieve/rational.hpp"

#include "gsieve/error.hpp"

#include <cctype>
#include <cmath>

namespace gsieve {

namespace {

Integer parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) {
    throw InvalidInput("malformed rational: '" + std::string(whole) + "'");
  }
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw InvalidInput("malformed rational: '" + std::string(whole) + "'");
    }
  }
  // A leading zero would select octal.
  while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
  return Integer(std::string(digits));
}

Integer pow10(long e) {
  Integer p = 1;
  for (long i = 0; i < e; ++i) p *= 10;
  return p;
}

// Decimal literal with optional fraction and exponent.
Rational parse_decimal(std::string_view s, std::string_view whole) {
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    bool neg = false;
    if (!exp_part.empty() && (exp_part[0] == '+' || exp_part[0] == '-')) {
      neg = exp_part[0] == '-';
      exp_part.remove_prefix(1);
    }
    Integer ev = parse_integer(exp_part, whole);
    if (ev > 4096) throw InvalidInput("exponent out of range: '" + std::string(whole) + "'");
    exponent = ev.convert_to<long>();
    if (neg) exponent = -exponent;
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot_pos = s.find('.'); dot_pos != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot_pos);
    std::string_view frac_part = s.substr(dot_pos + 1);
    if (int_part.empty() && frac_part.empty()) {
      throw InvalidInput("malformed rational: '" + std::string(whole) + "'");
    }
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    digits = std::string(s);
  }
  Integer mantissa = parse_integer(digits, whole);
  if (exponent >= 0) return Rational(mantissa * pow10(exponent));
  return Rational(mantissa, pow10(-exponent));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw InvalidInput("empty rational literal");

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(s.substr(0, slash), text);
    Integer den = parse_integer(s.substr(slash + 1), text);
    if (den == 0) throw InvalidInput("zero denominator: '" + std::string(text) + "'");
    value = Rational(num, den);
  } else {
    value = parse_decimal(s, text);
  }
  return negative ? Rational(-value) : value;
}

std::string format_rational(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

Rational to_rational(double x) {
  if (!std::isfinite(x)) throw InvalidInput("non-finite value cannot be made rational");
  return Rational(x);
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

Integer floor_integer(const Rational& q) {
  Integer num = numerator(q);
  Integer den = denominator(q);
  Integer quot = num / den;
  if (num < 0 && quot * den != num) quot -= 1;
  return quot;
}

bool is_integral(const Rational& q) { return denominator(q) == 1; }

RVector to_rvector(const Eigen::VectorXd& x) {
  RVector out(static_cast<std::size_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) out[static_cast<std::size_t>(i)] = to_rational(x[i]);
  return out;
}

RVector to_rvector(const IVector& x) {
  RVector out(static_cast<std::size_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) out[static_cast<std::size_t>(i)] = Rational(x[i]);
  return out;
}

Eigen::VectorXd to_eigen(const RVector& x) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) out[static_cast<Eigen::Index>(i)] = to_double(x[i]);
  return out;
}

Rational dot(const RVector& a, const RVector& b) {
  if (a.size() != b.size()) throw InvalidInput("dot: dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RVector operator+(const RVector& a, const RVector& b) {
  if (a.size() != b.size()) throw InvalidInput("vector add: dimension mismatch");
  RVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RVector operator-(const RVector& a, const RVector& b) {
  if (a.size() != b.size()) throw InvalidInput("vector subtract: dimension mismatch");
  RVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

RVector operator-(const RVector& a) {
  RVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return out;
}

RVector operator*(const Rational& s, const RVector& a) {
  RVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return out;
}

RMatrix::RMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

RMatrix RMatrix::identity(std::size_t n) {
  RMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RMatrix RMatrix::from_rows(const std::vector<RVector>& rows) {
  if (rows.empty()) return {};
  RMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw InvalidInput("ragged matrix rows");
    for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RMatrix RMatrix::from_columns(const std::vector<RVector>& cols) {
  return from_rows(cols).transpose();
}

RVector RMatrix::row(std::size_t i) const {
  return RVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                 data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

RVector RMatrix::column(std::size_t j) const {
  RVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

RMatrix RMatrix::transpose() const {
  RMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RVector RMatrix::operator*(const RVector& x) const {
  if (x.size() != cols_) throw InvalidInput("matrix-vector product: dimension mismatch");
  RVector out(rows_, Rational(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * x[j];
  return out;
}

RVector RMatrix::operator*(const IVector& x) const {
  if (static_cast<std::size_t>(x.size()) != cols_) {
    throw InvalidInput("matrix-vector product: dimension mismatch");
  }
  RVector out(rows_, Rational(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      if (x[static_cast<Eigen::Index>(j)] != 0) {
        out[i] += (*this)(i, j) * x[static_cast<Eigen::Index>(j)];
      }
    }
  return out;
}

RMatrix RMatrix::operator*(const RMatrix& other) const {
  if (cols_ != other.rows_) throw InvalidInput("matrix product: dimension mismatch");
  RMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      if ((*this)(i, k) == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += (*this)(i, k) * other(k, j);
    }
  return out;
}

Eigen::MatrixXd RMatrix::to_eigen() const {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_double((*this)(i, j));
  return m;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
    Rational piv = m(row, col);
    for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) /= piv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      Rational f = m(i, col);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

Rational determinant(const RMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("determinant of non-square matrix");
  RMatrix a = m;
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && a(sel, col) == 0) ++sel;
    if (sel == n) return 0;
    if (sel != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(sel, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (a(i, col) == 0) continue;
      Rational f = a(i, col) / a(col, col);
      for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
    }
  }
  return det;
}

RMatrix inverse(const RMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("inverse of non-square matrix");
  const std::size_t n = m.rows();
  RMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw InvalidInput("singular matrix");
  RMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

RVector solve(const RMatrix& m, const RVector& rhs) {
  if (m.rows() != m.cols() || rhs.size() != m.rows()) throw InvalidInput("solve: bad shapes");
  const std::size_t n = m.rows();
  RMatrix aug(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n) = rhs[i];
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw InvalidInput("singular matrix");
  return aug.column(n);
}

std::vector<RVector> nullspace(const RMatrix& m) {
  RMatrix a = m;
  auto pivots = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RVector> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    RVector v(a.cols(), Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank(const RMatrix& m) {
  RMatrix a = m;
  return rref(a).size();
}

}  // namespace gsieve
