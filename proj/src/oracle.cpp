#include "gsieve/oracle.hpp"

#include "gsieve/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gsieve {

namespace {

using Box = std::vector<std::pair<std::int64_t, std::int64_t>>;

void check_dim(std::size_t n, const OracleOptions& opts) {
  if (n > opts.max_dim) {
    throw CapExceeded("oracle: dimension " + std::to_string(n) + " exceeds cap " +
                      std::to_string(opts.max_dim));
  }
}

double box_size(const Box& box) {
  double count = 1.0;
  for (const auto& [lo, hi] : box) count *= static_cast<double>(std::max<std::int64_t>(0, hi - lo + 1));
  return count;
}

void check_size(const Box& box, const OracleOptions& opts) {
  if (box_size(box) > static_cast<double>(opts.max_candidates)) {
    throw CapExceeded("oracle: enumeration box holds more than " +
                      std::to_string(opts.max_candidates) + " candidates");
  }
}

// Visits the box in lexicographic order (first coordinate most significant).
template <class Visit>
void for_each_in_box(const Box& box, Visit&& visit) {
  const std::size_t n = box.size();
  for (const auto& [lo, hi] : box)
    if (lo > hi) return;
  IVector c(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) c[static_cast<Eigen::Index>(i)] = box[i].first;
  while (true) {
    visit(c);
    std::size_t k = n;
    while (k > 0) {
      auto idx = static_cast<Eigen::Index>(k - 1);
      if (c[idx] < box[k - 1].second) {
        ++c[idx];
        break;
      }
      c[idx] = box[k - 1].first;
      --k;
    }
    if (k == 0) return;
  }
}

bool lex_less(const IVector& a, const IVector& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

// Keeps every candidate whose floating-point value is within rounding of the
// running minimum; the winner is then decided exactly.
class NearMinimum {
 public:
  void offer(double value, const IVector& c) {
    if (value < best_ - tolerance(best_)) {
      best_ = value;
      std::erase_if(near_, [&](const auto& e) { return e.first > best_ + tolerance(best_); });
    }
    if (value <= best_ + tolerance(best_)) near_.emplace_back(value, c);
  }
  double best() const { return best_; }
  bool empty() const { return near_.empty(); }

  template <class Exact>
  LatticeSolution resolve(Exact&& exact, const LatticeBasis& B) const {
    LatticeSolution sol;
    bool have = false;
    for (const auto& [v, c] : near_) {
      Rational value = exact(c);
      if (!have || value < sol.value || (value == sol.value && lex_less(c, sol.coefficients))) {
        sol.value = value;
        sol.coefficients = c;
        have = true;
      }
    }
    if (!have) throw ContractViolation("oracle: no candidate found inside a certified box");
    sol.point = B.point(sol.coefficients);
    return sol;
  }

 private:
  static double tolerance(double v) {
    return std::isfinite(v) ? 1e-9 * std::max(1.0, std::abs(v)) : 0.0;
  }
  double best_ = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, IVector>> near_;
};

Box coefficient_range_of_box(const LatticeBasis& B, const Eigen::VectorXd& lo,
                             const Eigen::VectorXd& hi, std::int64_t margin) {
  const auto& Binv = B.inverse_double();
  Box box;
  for (Eigen::Index k = 0; k < Binv.rows(); ++k) {
    double mn = 0.0, mx = 0.0;
    for (Eigen::Index j = 0; j < Binv.cols(); ++j) {
      double a = Binv(k, j) * lo[j];
      double b = Binv(k, j) * hi[j];
      mn += std::min(a, b);
      mx += std::max(a, b);
    }
    double pad = 1e-9 * (1.0 + std::abs(mn) + std::abs(mx));
    box.emplace_back(static_cast<std::int64_t>(std::ceil(mn - pad)) - margin,
                     static_cast<std::int64_t>(std::floor(mx + pad)) + margin);
  }
  return box;
}

Rational squared_norm(const RVector& v) { return dot(v, v); }

}  // namespace

double EnumerationBound::candidate_count() const { return box_size(coefficient_box); }

EnumerationBound enumeration_bound(const LatticeBasis& B, const Eigen::VectorXd& center,
                                   double radius_l2, std::int64_t extra_margin) {
  if (!(radius_l2 >= 0.0) || !std::isfinite(radius_l2)) {
    throw InvalidInput("enumeration bound: radius must be finite and non-negative");
  }
  EnumerationBound bound;
  bound.radius_l2 = radius_l2;
  const auto& Binv = B.inverse_double();
  Eigen::VectorXd u = Binv * center;
  for (Eigen::Index k = 0; k < Binv.rows(); ++k) {
    double w = Binv.row(k).norm() * radius_l2;
    double pad = 1e-9 * (1.0 + std::abs(u[k]) + w);
    bound.coefficient_box.emplace_back(
        static_cast<std::int64_t>(std::ceil(u[k] - w - pad)) - extra_margin,
        static_cast<std::int64_t>(std::floor(u[k] + w + pad)) + extra_margin);
  }
  return bound;
}

LatticeSolution cvp_brute(const CenteredPolytope& C, const LatticeBasis& B, const RVector& x,
                          const OracleOptions& opts) {
  const std::size_t n = B.dim();
  check_dim(n, opts);
  if (C.dim() != n || x.size() != n) throw InvalidInput("cvp_brute: dimension mismatch");
  const Eigen::VectorXd xd = to_eigen(x);
  const Eigen::VectorXd origin = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  const double R = outer_radius_about(C, origin);
  const auto& Bd = B.basis_double();

  // Seed radius from the mod-B representative and from Babai rounding.
  Eigen::VectorXd u = B.inverse_double() * xd;
  IVector c_floor = u.array().floor().cast<std::int64_t>();
  IVector c_round = u.array().round().cast<std::int64_t>();
  double rho = std::min(gauge(C, Bd * c_floor.cast<double>() - xd),
                        gauge(C, Bd * c_round.cast<double>() - xd));

  EnumerationBound bound = enumeration_bound(B, xd, R * rho * (1.0 + 1e-9) + 1e-12, opts.extra_margin);
  bound.radius_gauge = rho;
  check_size(bound.coefficient_box, opts);

  NearMinimum best;
  for_each_in_box(bound.coefficient_box, [&](const IVector& c) {
    best.offer(gauge(C, Bd * c.cast<double>() - xd), c);
  });
  return best.resolve([&](const IVector& c) { return gauge_exact(C, B.point(c) - x); }, B);
}

LatticeSolution sap_brute(const CenteredPolytope& C, const LatticeBasis& B, const Subspace& M,
                          const OracleOptions& opts) {
  const std::size_t n = B.dim();
  check_dim(n, opts);
  if (C.dim() != n || M.ambient_dim() != n) throw InvalidInput("sap_brute: dimension mismatch");
  const Eigen::VectorXd origin = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  const double R = outer_radius_about(C, origin);
  const auto& Bd = B.basis_double();
  CoefficientSubspaceTest in_m(B, M);

  double rho = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    IVector e = IVector::Zero(static_cast<Eigen::Index>(n));
    e[static_cast<Eigen::Index>(i)] = 1;
    if (in_m.contains(e)) continue;
    Eigen::VectorXd bi = Bd.col(static_cast<Eigen::Index>(i));
    rho = std::min({rho, gauge(C, bi), gauge(C, -bi)});
  }
  if (!std::isfinite(rho)) throw ContractViolation("sap_brute: every basis vector lies in M");

  EnumerationBound bound = enumeration_bound(B, origin, R * rho * (1.0 + 1e-9) + 1e-12, opts.extra_margin);
  bound.radius_gauge = rho;
  check_size(bound.coefficient_box, opts);

  NearMinimum best;
  for_each_in_box(bound.coefficient_box, [&](const IVector& c) {
    double g = gauge(C, Bd * c.cast<double>());
    if (g > best.best() + 1e-9 * std::max(1.0, best.best())) return;
    if (c.isZero() || in_m.contains(c)) return;
    best.offer(g, c);
  });
  return best.resolve([&](const IVector& c) { return gauge_exact(C, B.point(c)); }, B);
}

LatticeSolution svp_brute(const CenteredPolytope& C, const LatticeBasis& B,
                          const OracleOptions& opts) {
  return sap_brute(C, B, Subspace::zero(B.dim()), opts);
}

namespace {

template <class Visit>
void visit_points_in(const CenteredPolytope& K, const LatticeBasis& B, const OracleOptions& opts,
                     Visit&& visit) {
  const std::size_t n = B.dim();
  check_dim(n, opts);
  if (K.dim() != n) throw InvalidInput("ip_brute: dimension mismatch");
  Box box = coefficient_range_of_box(B, K.box_lo(), K.box_hi(), opts.extra_margin);
  check_size(box, opts);
  const auto& Bd = B.basis_double();
  const auto& A = K.A_double();
  const auto& b = K.b_double();
  const double tol = 1e-9 * (1.0 + b.cwiseAbs().maxCoeff());
  for_each_in_box(box, [&](const IVector& c) {
    Eigen::VectorXd y = Bd * c.cast<double>();
    if ((A * y - b).maxCoeff() > tol) return true;
    RVector exact = B.point(c);
    if (!K.contains_exact(exact)) return true;
    return visit(c, exact);
  });
}

}  // namespace

std::optional<LatticeSolution> ip_brute(const CenteredPolytope& K, const LatticeBasis& B,
                                        const OracleOptions& opts) {
  std::optional<LatticeSolution> found;
  visit_points_in(K, B, opts, [&](const IVector& c, const RVector& y) {
    if (!found) found = LatticeSolution{c, y, Rational(0)};
    return false;
  });
  return found;
}

std::vector<LatticeSolution> ip_enumerate(const CenteredPolytope& K, const LatticeBasis& B,
                                          const OracleOptions& opts) {
  std::vector<LatticeSolution> out;
  visit_points_in(K, B, opts, [&](const IVector& c, const RVector& y) {
    out.push_back(LatticeSolution{c, y, Rational(0)});
    return true;
  });
  return out;
}

LatticeSolution l2_sap_brute(const LatticeBasis& B, const Subspace& M, const OracleOptions& opts) {
  const std::size_t n = B.dim();
  check_dim(n, opts);
  const auto& Bd = B.basis_double();
  CoefficientSubspaceTest in_m(B, M);
  double rho = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    IVector e = IVector::Zero(static_cast<Eigen::Index>(n));
    e[static_cast<Eigen::Index>(i)] = 1;
    if (!in_m.contains(e)) rho = std::min(rho, Bd.col(static_cast<Eigen::Index>(i)).norm());
  }
  if (!std::isfinite(rho)) throw ContractViolation("l2_sap_brute: every basis vector lies in M");
  Eigen::VectorXd origin = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  EnumerationBound bound = enumeration_bound(B, origin, rho * (1.0 + 1e-9) + 1e-12, opts.extra_margin);
  check_size(bound.coefficient_box, opts);
  NearMinimum best;
  for_each_in_box(bound.coefficient_box, [&](const IVector& c) {
    double sq = (Bd * c.cast<double>()).squaredNorm();
    if (sq > best.best() + 1e-9 * std::max(1.0, best.best())) return;
    if (c.isZero() || in_m.contains(c)) return;
    best.offer(sq, c);
  });
  return best.resolve([&](const IVector& c) { return squared_norm(B.point(c)); }, B);
}

LatticeSolution l2_cvp_brute(const LatticeBasis& B, const RVector& x, const OracleOptions& opts) {
  const std::size_t n = B.dim();
  check_dim(n, opts);
  const auto& Bd = B.basis_double();
  const Eigen::VectorXd xd = to_eigen(x);
  Eigen::VectorXd u = B.inverse_double() * xd;
  IVector c_round = u.array().round().cast<std::int64_t>();
  double rho = (Bd * c_round.cast<double>() - xd).norm();
  EnumerationBound bound = enumeration_bound(B, xd, rho * (1.0 + 1e-9) + 1e-12, opts.extra_margin);
  check_size(bound.coefficient_box, opts);
  NearMinimum best;
  for_each_in_box(bound.coefficient_box, [&](const IVector& c) {
    best.offer((Bd * c.cast<double>() - xd).squaredNorm(), c);
  });
  return best.resolve([&](const IVector& c) { return squared_norm(B.point(c) - x); }, B);
}

}  // namespace gsieve
