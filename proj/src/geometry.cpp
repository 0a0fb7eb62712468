#include "gsieve/geometry.hpp"

#include "gsieve/error.hpp"
#include "gsieve/lp.hpp"
#include "gsieve/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gsieve {

namespace {

// Relative slack applied to computed radii so that they stay certified
// after rounding.
constexpr double kRadiusSlack = 1e-9;

std::size_t binomial_capped(std::size_t m, std::size_t k, std::size_t cap) {
  double acc = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    acc = acc * static_cast<double>(m - k + i) / static_cast<double>(i);
    if (acc > static_cast<double>(cap)) return cap + 1;
  }
  return static_cast<std::size_t>(std::llround(acc));
}

}  // namespace

CenteredPolytope::CenteredPolytope(RMatrix A, RVector b, RVector center, double inner_radius,
                                   double outer_radius)
    : A_(std::move(A)),
      b_(std::move(b)),
      center_(std::move(center)),
      inner_radius_(inner_radius),
      outer_radius_(outer_radius) {
  const std::size_t n = A_.cols();
  const std::size_t m = A_.rows();
  if (n == 0) throw InvalidInput("polytope: dimension must be positive");
  if (m < n + 1) throw InvalidInput("polytope: need at least n+1 facets to be bounded");
  if (b_.size() != m) throw InvalidInput("polytope: |b| does not match the number of rows of A");
  if (center_.size() != n) throw InvalidInput("polytope: center has wrong dimension");
  if (!(inner_radius_ > 0.0) || !std::isfinite(inner_radius_)) {
    throw InvalidInput("polytope: inner radius must be positive");
  }
  if (!(outer_radius_ >= inner_radius_) || !std::isfinite(outer_radius_)) {
    throw InvalidInput("polytope: outer radius must be finite and >= inner radius");
  }
  for (std::size_t i = 0; i < m; ++i) {
    bool zero_row = true;
    for (std::size_t j = 0; j < n; ++j) zero_row = zero_row && A_(i, j) == 0;
    if (zero_row) throw InvalidInput("polytope: facet normal " + std::to_string(i) + " is zero");
  }
  if (!strictly_contains_exact(center_)) {
    throw InvalidInput("polytope: center is not strictly interior (need A a0 < b)");
  }

  A_d_ = A_.to_eigen();
  b_d_ = to_eigen(b_);
  Eigen::VectorXd a0 = to_eigen(center_);

  zero_centered_ = std::all_of(b_.begin(), b_.end(), [](const Rational& q) { return q > 0; });
  if (zero_centered_) {
    gauge_rows_ = A_d_;
    for (Eigen::Index i = 0; i < gauge_rows_.rows(); ++i) gauge_rows_.row(i) /= b_d_[i];
  }

  if (inner_radius_ > inner_radius_about(*this, a0) * (1.0 + kRadiusSlack)) {
    throw InvalidInput("polytope: inner ball a0 + r B2 is not contained in the polytope");
  }

  box_lo_.resize(static_cast<Eigen::Index>(n));
  box_hi_.resize(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    e[static_cast<Eigen::Index>(j)] = 1.0;
    Eigen::VectorXd hi = lp::maximize(A_d_, b_d_, e, a0);
    Eigen::VectorXd lo = lp::maximize(A_d_, b_d_, -e, a0);
    double pad = 1e-12 * (1.0 + std::abs(hi[static_cast<Eigen::Index>(j)]) +
                          std::abs(lo[static_cast<Eigen::Index>(j)]));
    box_hi_[static_cast<Eigen::Index>(j)] = hi[static_cast<Eigen::Index>(j)] + pad;
    box_lo_[static_cast<Eigen::Index>(j)] = lo[static_cast<Eigen::Index>(j)] - pad;
  }

  auto verts = enumerate_vertices(*this);
  for (const auto& v : verts) {
    if ((v - a0).norm() > outer_radius_ * (1.0 + kRadiusSlack)) {
      throw InvalidInput("polytope: a vertex lies outside a0 + R B2");
    }
  }
}

CenteredPolytope CenteredPolytope::from_inequalities(RMatrix A, RVector b) {
  const Eigen::MatrixXd Ad = A.to_eigen();
  const Eigen::VectorXd bd = to_eigen(b);
  auto ball = lp::chebyshev_ball(Ad, bd, Eigen::VectorXd::Zero(Ad.cols()));
  if (!(ball.radius > 1e-12)) throw InvalidInput("polytope has empty interior");
  RVector center = to_rvector(ball.center);
  // Trial polytope with a trivially valid radius pair, used to measure R.
  double huge = 1e300;
  CenteredPolytope trial(A, b, center, ball.radius * 0.5, huge);
  double inner = inner_radius_about(trial, ball.center) * (1.0 - kRadiusSlack);
  double outer = outer_radius_about(trial, ball.center) * (1.0 + kRadiusSlack);
  return CenteredPolytope(std::move(A), std::move(b), std::move(center), inner,
                          std::max(outer, inner));
}

CenteredPolytope CenteredPolytope::box(const RVector& lo, const RVector& hi) {
  const std::size_t n = lo.size();
  if (hi.size() != n || n == 0) throw InvalidInput("box: bounds have mismatched dimension");
  RMatrix A(2 * n, n);
  RVector b(2 * n);
  RVector center(n);
  double min_half = std::numeric_limits<double>::infinity();
  double diag2 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (!(lo[j] < hi[j])) throw InvalidInput("box: need lo < hi in every coordinate");
    A(j, j) = 1;
    b[j] = hi[j];
    A(n + j, j) = -1;
    b[n + j] = -lo[j];
    center[j] = (lo[j] + hi[j]) / 2;
    double half = to_double((hi[j] - lo[j]) / 2);
    min_half = std::min(min_half, half);
    diag2 += half * half;
  }
  return CenteredPolytope(std::move(A), std::move(b), std::move(center),
                          min_half * (1.0 - kRadiusSlack),
                          std::sqrt(diag2) * (1.0 + kRadiusSlack));
}

CenteredPolytope CenteredPolytope::simplex(const std::vector<RVector>& vertices) {
  if (vertices.empty()) throw InvalidInput("simplex: no vertices");
  const std::size_t n = vertices.front().size();
  if (vertices.size() != n + 1) throw InvalidInput("simplex: need exactly n+1 vertices");
  RVector centroid(n, Rational(0));
  for (const auto& v : vertices) {
    if (v.size() != n) throw InvalidInput("simplex: ragged vertices");
    centroid = centroid + v;
  }
  centroid = Rational(1, static_cast<long>(n + 1)) * centroid;

  std::vector<RVector> rows;
  RVector offsets;
  for (std::size_t skip = 0; skip <= n; ++skip) {
    // Facet through all vertices but `skip`: solve [v_j, -1] (a, c) = 0.
    RMatrix sys(n, n + 1);
    std::size_t r = 0;
    for (std::size_t j = 0; j <= n; ++j) {
      if (j == skip) continue;
      for (std::size_t k = 0; k < n; ++k) sys(r, k) = vertices[j][k];
      sys(r, n) = -1;
      ++r;
    }
    auto ns = nullspace(sys);
    if (ns.size() != 1) throw InvalidInput("simplex: vertices are affinely dependent");
    RVector a(ns[0].begin(), ns[0].begin() + static_cast<std::ptrdiff_t>(n));
    Rational c = ns[0][n];
    Rational at_skip = dot(a, vertices[skip]);
    if (at_skip == c) throw InvalidInput("simplex: vertices are affinely dependent");
    if (at_skip > c) {
      a = -a;
      c = -c;
    }
    rows.push_back(std::move(a));
    offsets.push_back(std::move(c));
  }
  RMatrix A = RMatrix::from_rows(rows);
  Eigen::VectorXd cd = to_eigen(centroid);
  double outer = 0.0;
  for (const auto& v : vertices) outer = std::max(outer, (to_eigen(v) - cd).norm());
  Eigen::MatrixXd Ad = A.to_eigen();
  Eigen::VectorXd bd = to_eigen(offsets);
  double inner = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < Ad.rows(); ++i) {
    inner = std::min(inner, (bd[i] - Ad.row(i).dot(cd)) / Ad.row(i).norm());
  }
  return CenteredPolytope(std::move(A), std::move(offsets), std::move(centroid),
                          inner * (1.0 - kRadiusSlack), outer * (1.0 + kRadiusSlack));
}

bool CenteredPolytope::contains(const Eigen::VectorXd& x) const {
  return ((A_d_ * x - b_d_).array() <= 0.0).all();
}

bool CenteredPolytope::contains_exact(const RVector& x) const {
  if (x.size() != dim()) throw InvalidInput("membership: dimension mismatch");
  for (std::size_t i = 0; i < facets(); ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < dim(); ++j) s += A_(i, j) * x[j];
    if (s > b_[i]) return false;
  }
  return true;
}

bool CenteredPolytope::strictly_contains_exact(const RVector& x) const {
  if (x.size() != dim()) throw InvalidInput("membership: dimension mismatch");
  for (std::size_t i = 0; i < facets(); ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < dim(); ++j) s += A_(i, j) * x[j];
    if (s >= b_[i]) return false;
  }
  return true;
}

CenteredPolytope CenteredPolytope::scaled(const Rational& s) const {
  if (!(s > 0)) throw InvalidInput("scaled: factor must be positive");
  double sd = to_double(s);
  return CenteredPolytope(A_, s * b_, s * center_, inner_radius_ * sd * (1.0 - kRadiusSlack),
                          outer_radius_ * sd * (1.0 + kRadiusSlack));
}

CenteredPolytope CenteredPolytope::negated() const {
  RMatrix negA(A_.rows(), A_.cols());
  for (std::size_t i = 0; i < A_.rows(); ++i)
    for (std::size_t j = 0; j < A_.cols(); ++j) negA(i, j) = -A_(i, j);
  return CenteredPolytope(std::move(negA), b_, -center_, inner_radius_, outer_radius_);
}

CenteredPolytope CenteredPolytope::origin_centered() const {
  if (!zero_centered_) throw InvalidInput("polytope does not contain the origin in its interior");
  Eigen::VectorXd origin = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim()));
  double inner = inner_radius_about(*this, origin) * (1.0 - kRadiusSlack);
  double outer = std::min(outer_radius_about(*this, origin),
                          outer_radius_ + to_eigen(center_).norm()) *
                 (1.0 + kRadiusSlack);
  return CenteredPolytope(A_, b_, RVector(dim(), Rational(0)), inner, std::max(outer, inner));
}

const Eigen::MatrixXd& CenteredPolytope::gauge_rows() const {
  if (!zero_centered_) throw InvalidInput("gauge: origin is not interior (some b_i <= 0)");
  return gauge_rows_;
}

std::vector<Eigen::VectorXd> enumerate_vertices(const CenteredPolytope& P,
                                                std::size_t max_subsets) {
  const std::size_t n = P.dim();
  const std::size_t m = P.facets();
  std::vector<Eigen::VectorXd> out;
  if (binomial_capped(m, n, max_subsets) > max_subsets) return out;
  const auto& A = P.A_double();
  const auto& b = P.b_double();
  const double scale = 1.0 + b.cwiseAbs().maxCoeff();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  Eigen::MatrixXd S(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(n));
  while (true) {
    for (std::size_t r = 0; r < n; ++r) {
      S.row(static_cast<Eigen::Index>(r)) = A.row(static_cast<Eigen::Index>(idx[r]));
      rhs[static_cast<Eigen::Index>(r)] = b[static_cast<Eigen::Index>(idx[r])];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(S);
    if (lu.rank() == static_cast<Eigen::Index>(n)) {
      Eigen::VectorXd v = lu.solve(rhs);
      if (((A * v - b).array() <= 1e-9 * scale).all()) out.push_back(std::move(v));
    }
    // next combination
    std::size_t k = n;
    while (k > 0 && idx[k - 1] == m - n + k - 1) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t j = k; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

double outer_radius_about(const CenteredPolytope& P, const Eigen::VectorXd& point) {
  auto verts = enumerate_vertices(P);
  double best = 0.0;
  if (!verts.empty()) {
    for (const auto& v : verts) best = std::max(best, (v - point).norm());
    return best;
  }
  Eigen::VectorXd far(point.size());
  for (Eigen::Index j = 0; j < point.size(); ++j) {
    far[j] = std::max(std::abs(P.box_hi()[j] - point[j]), std::abs(point[j] - P.box_lo()[j]));
  }
  return far.norm();
}

double inner_radius_about(const CenteredPolytope& P, const Eigen::VectorXd& point) {
  const auto& A = P.A_double();
  Eigen::VectorXd slack = P.b_double() - A * point;
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < A.rows(); ++i) best = std::min(best, slack[i] / A.row(i).norm());
  return best;
}

double gauge(const CenteredPolytope& C, const Eigen::VectorXd& x) {
  const auto& rows = C.gauge_rows();
  if (x.size() != rows.cols()) throw InvalidInput("gauge: dimension mismatch");
  return std::max(0.0, (rows * x).maxCoeff());
}

Rational gauge_exact(const CenteredPolytope& C, const RVector& x) {
  if (!C.is_zero_centered()) throw InvalidInput("gauge: origin is not interior (some b_i <= 0)");
  if (x.size() != C.dim()) throw InvalidInput("gauge: dimension mismatch");
  Rational best = 0;
  for (std::size_t i = 0; i < C.facets(); ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < C.dim(); ++j) s += C.A()(i, j) * x[j];
    s /= C.b()[i];
    if (s > best) best = s;
  }
  return best;
}

GaugeValue gauge_star(const CenteredPolytope& C, const Eigen::VectorXd& x) {
  const auto& rows = C.gauge_rows();
  if (x.size() != rows.cols()) throw InvalidInput("gauge: dimension mismatch");
  Eigen::VectorXd proj = rows * x;
  double plus = std::max(0.0, proj.maxCoeff());
  double minus = std::max(0.0, -proj.minCoeff());
  if (plus <= minus) return {plus, 1};
  return {minus, -1};
}

CenteredPolytope recenter(const CenteredPolytope& K, const RVector& c) {
  if (c.size() != K.dim()) throw InvalidInput("recenter: dimension mismatch");
  if (!K.strictly_contains_exact(c)) {
    throw InvalidInput("recenter: point is on or outside the boundary");
  }
  RVector shifted = K.b() - K.A() * c;
  Eigen::VectorXd cd = to_eigen(c);
  // Inner radius about the new origin, measured on the shifted body.
  const auto& A = K.A_double();
  Eigen::VectorXd slack = to_eigen(shifted);
  double inner = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < A.rows(); ++i) inner = std::min(inner, slack[i] / A.row(i).norm());
  double outer = K.outer_radius() + (to_eigen(K.center()) - cd).norm();
  CenteredPolytope loose(K.A(), shifted, RVector(K.dim(), Rational(0)),
                         inner * (1.0 - kRadiusSlack), outer * (1.0 + kRadiusSlack));
  return loose.origin_centered();
}

CenteredPolytope recenter(const CenteredPolytope& K, const Eigen::VectorXd& c) {
  return recenter(K, to_rvector(c));
}

CenteredPolytope intersect_with_negation(const CenteredPolytope& C) {
  if (!C.is_zero_centered()) throw InvalidInput("C & -C: origin is not interior");
  const std::size_t m = C.facets();
  const std::size_t n = C.dim();
  RMatrix A(2 * m, n);
  RVector b(2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      A(i, j) = C.A()(i, j);
      A(m + i, j) = -C.A()(i, j);
    }
    b[i] = C.b()[i];
    b[m + i] = C.b()[i];
  }
  auto base = C.origin_centered();
  CenteredPolytope loose(std::move(A), std::move(b), RVector(n, Rational(0)),
                         base.inner_radius(), base.outer_radius());
  return loose.origin_centered();
}

GammaEstimate estimate_gamma(const CenteredPolytope& C, std::size_t sample_count,
                             std::uint64_t seed, SamplerMethod method) {
  if (sample_count == 0) throw InvalidInput("estimate_gamma: sample_count must be positive");
  if (!C.is_zero_centered()) throw InvalidInput("estimate_gamma: origin is not interior");
  SamplerConfig cfg;
  cfg.seed = seed;
  cfg.method = method;
  PolytopeSampler sampler(C, cfg);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < sample_count; ++i) {
    Eigen::VectorXd x = sampler.sample();
    if (C.contains(-x)) ++hits;
  }
  const double n = static_cast<double>(C.dim());
  const double N = static_cast<double>(sample_count);
  GammaEstimate est;
  est.samples = sample_count;
  est.ratio = static_cast<double>(hits) / N;
  est.value = std::pow(est.ratio, 1.0 / n);
  double se_ratio = std::sqrt(std::max(est.ratio * (1.0 - est.ratio), 1.0 / N) / N);
  if (est.ratio > 0.0) {
    est.std_error = (1.0 / n) * std::pow(est.ratio, 1.0 / n - 1.0) * se_ratio;
  } else {
    est.std_error = std::pow(se_ratio, 1.0 / n);
  }
  return est;
}

Eigen::VectorXd barycenter_approx(const CenteredPolytope& K, double eps, std::uint64_t seed,
                                  const BarycenterOptions& options) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidInput("barycenter_approx: eps must be in (0,1)");
  if (!(options.constant > 0.0)) throw InvalidInput("barycenter_approx: constant must be > 0");
  const double n = static_cast<double>(K.dim());
  const auto count = static_cast<std::size_t>(std::ceil(options.constant * n * n / (eps * eps)));
  SamplerConfig cfg;
  cfg.seed = seed;
  cfg.method = options.method;
  cfg.eta = std::pow(4.0, -n);
  PolytopeSampler sampler(K, cfg);
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(K.dim()));
  for (std::size_t i = 0; i < count; ++i) sum += sampler.sample();
  Eigen::VectorXd mean = sum / static_cast<double>(count);
  if (!K.strictly_contains_exact(to_rvector(mean))) {
    throw ContractViolation("barycenter_approx: sample mean is not strictly interior");
  }
  return mean;
}

}  // namespace gsieve
