#include "gsieve/ip.hpp"

#include "gsieve/error.hpp"
#include "gsieve/lp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

namespace gsieve {

const char* ip_status_name(IPStatus s) {
  switch (s) {
    case IPStatus::found_in_k: return "FOUND_IN_K";
    case IPStatus::found_in_blowup: return "FOUND_IN_BLOWUP";
    case IPStatus::empty: return "EMPTY";
    case IPStatus::inconclusive: return "INCONCLUSIVE";
  }
  return "UNKNOWN";
}

namespace {

// Maximizer of c.x over K as an exact rational point of K. The floating
// point LP optimum is snapped to the vertex cut out by its tight facets;
// if that fails the LP point is pulled towards the center until it is in K.
RVector exact_maximizer(const CenteredPolytope& K, const Eigen::VectorXd& c) {
  const auto& A = K.A_double();
  const auto& b = K.b_double();
  const Eigen::VectorXd a0 = K.center_double();
  Eigen::VectorXd x = lp::maximize(A, b, c, a0);
  const std::size_t n = K.dim();
  const std::size_t m = K.facets();
  const double scale = 1e-7 * (1.0 + b.cwiseAbs().maxCoeff());

  std::vector<std::size_t> tight;
  Eigen::MatrixXd rows(0, static_cast<Eigen::Index>(n));
  auto try_add = [&](std::size_t i) {
    Eigen::MatrixXd trial(rows.rows() + 1, rows.cols());
    trial << rows, A.row(static_cast<Eigen::Index>(i));
    Eigen::FullPivLU<Eigen::MatrixXd> lu(trial);
    lu.setThreshold(1e-10);
    if (static_cast<std::size_t>(lu.rank()) != tight.size() + 1) return false;
    rows = std::move(trial);
    tight.push_back(i);
    return true;
  };
  for (std::size_t i = 0; i < m && tight.size() < n; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    if ((b[ii] - A.row(ii).dot(x)) / A.row(ii).norm() <= scale) try_add(i);
  }
  // The split-variable simplex may stop inside an optimal face. Walk along
  // the face (the objective is constant on it) until n facets are tight.
  while (tight.size() < n) {
    Eigen::VectorXd d;
    if (rows.rows() == 0) {
      d = Eigen::VectorXd::Unit(static_cast<Eigen::Index>(n), 0);
    } else {
      Eigen::FullPivLU<Eigen::MatrixXd> lu(rows);
      lu.setThreshold(1e-10);
      d = lu.kernel().col(0);
    }
    if (std::abs(c.dot(d)) > 1e-9 * c.norm() * d.norm()) break;
    std::optional<std::size_t> hit;
    for (int side : {1, -1}) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        double rate = side * A.row(ii).dot(d);
        if (rate <= 1e-12) continue;
        double step = std::max(0.0, b[ii] - A.row(ii).dot(x)) / rate;
        if (step < best && std::find(tight.begin(), tight.end(), i) == tight.end()) {
          best = step;
          hit = i;
        }
      }
      if (hit) {
        x += side * best * d;
        break;
      }
    }
    if (!hit || !try_add(*hit)) break;
  }
  if (tight.size() == n) {
    RMatrix sub(n, n);
    RVector rhs(n);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) sub(k, j) = K.A()(tight[k], j);
      rhs[k] = K.b()[tight[k]];
    }
    RVector v = solve(sub, rhs);
    Eigen::VectorXd vd = to_eigen(v);
    if (K.contains_exact(v) && c.dot(vd) >= c.dot(x) - 1e-9 * (1.0 + std::abs(c.dot(x)))) return v;
  }
  for (double t = 1e-12; t < 1.0; t *= 10.0) {
    RVector p = to_rvector(Eigen::VectorXd(a0 + (1.0 - t) * (x - a0)));
    if (K.contains_exact(p)) return p;
  }
  return K.center();
}

}  // namespace

IPResult approx_ip(const CenteredPolytope& K, const LatticeBasis& B, double eps,
                   const IPConfig& cfg) {
  if (!(eps > 0.0 && eps <= 0.5)) throw InvalidInput("approx_ip: eps must be in (0, 1/2]");
  if (K.dim() != B.dim()) throw InvalidInput("approx_ip: dimension mismatch");
  IPResult res;
  res.eps = eps;
  res.seed = cfg.sieve.sampler.seed;

  Eigen::VectorXd bd = barycenter_approx(K, 1.0 / 3.0, mix_seed(res.seed, 0xba7), cfg.barycenter);
  res.center = to_rvector(bd);
  CenteredPolytope Kb = recenter(K, res.center);
  res.cvp = approx_cvp(Kb, B, res.center, 2.0 * eps / 5.0, cfg.sieve);
  if (res.cvp.status != Status::ok) {
    res.status = IPStatus::inconclusive;
    return res;
  }
  const RVector& y = *res.cvp.vector;
  Rational g = gauge_exact(Kb, y - res.center);
  res.center_gauge = g;
  const Rational q = to_rational(eps);
  if (g <= 1) {
    res.status = IPStatus::found_in_k;
  } else if (g <= 1 + Rational(3) * q / 4) {
    res.status = IPStatus::found_in_blowup;
  } else {
    res.status = IPStatus::empty;
    return res;
  }
  res.point = y;
  res.coefficients = res.cvp.coefficients;
  return res;
}

ObjectiveBounds objective_bounds(const CenteredPolytope& K, const RVector& v, double delta) {
  if (v.size() != K.dim()) throw InvalidInput("objective_bounds: dimension mismatch");
  if (!(delta > 0.0)) throw InvalidInput("objective_bounds: delta must be positive");
  const Eigen::VectorXd vd = to_eigen(v);
  ObjectiveBounds out{exact_maximizer(K, -vd), exact_maximizer(K, vd)};
  // The LP optimum is attained exactly unless snapping failed; either way
  // the slack must stay within delta/12.
  const Eigen::VectorXd up = lp::maximize(K.A_double(), K.b_double(), vd, K.center_double());
  const Eigen::VectorXd lo = lp::maximize(K.A_double(), K.b_double(), -vd, K.center_double());
  if (to_double(dot(v, out.x_upper)) < vd.dot(up) - delta / 12.0 ||
      to_double(dot(v, out.x_lower)) > vd.dot(lo) + delta / 12.0) {
    throw ContractViolation("objective_bounds: exact optimum drifted more than delta/12");
  }
  return out;
}

std::optional<CenteredPolytope> restrict_slab(const CenteredPolytope& K, const RVector& v,
                                              const Rational& lo, const Rational& hi) {
  const std::size_t n = K.dim();
  if (v.size() != n) throw InvalidInput("restrict: dimension mismatch");
  if (!(lo < hi)) return std::nullopt;
  RMatrix A(K.facets() + 2, n);
  RVector b(K.facets() + 2);
  for (std::size_t i = 0; i < K.facets(); ++i) {
    for (std::size_t j = 0; j < n; ++j) A(i, j) = K.A()(i, j);
    b[i] = K.b()[i];
  }
  for (std::size_t j = 0; j < n; ++j) {
    A(K.facets(), j) = v[j];
    A(K.facets() + 1, j) = -v[j];
  }
  b[K.facets()] = hi;
  b[K.facets() + 1] = -lo;

  const Eigen::MatrixXd Ad = A.to_eigen();
  const Eigen::VectorXd bd = to_eigen(b);
  lp::Ball ball = lp::chebyshev_ball(Ad, bd, K.center_double());
  if (!(ball.radius > 1e-12)) return std::nullopt;
  RVector center = to_rvector(ball.center);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    if (!(dot(A.row(i), center) < b[i])) return std::nullopt;
  }
  double r = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < Ad.rows(); ++i) {
    r = std::min(r, (bd[i] - Ad.row(i).dot(ball.center)) / Ad.row(i).norm());
  }
  r *= 1.0 - 1e-9;
  if (!(r > 0.0)) return std::nullopt;
  double R = K.outer_radius() + (ball.center - K.center_double()).norm();
  R = std::max(R * (1.0 + 1e-9), r);
  return CenteredPolytope(std::move(A), std::move(b), std::move(center), r, R);
}

bool blowup_membership(const CenteredPolytope& K, const Rational& eps, const RVector& y) {
  if (y.size() != K.dim()) throw InvalidInput("blowup_membership: dimension mismatch");
  if (eps < 0) throw InvalidInput("blowup_membership: eps must be non-negative");
  for (std::size_t i = 0; i < K.facets(); ++i) {
    const RVector a = K.A().row(i);
    Rational lhs = dot(a, y);
    if (lhs <= K.b()[i]) continue;
    // A point of K, so its value is >= the true minimum: never too lenient.
    RVector argmin = exact_maximizer(K, -to_eigen(a));
    Rational variation = K.b()[i] - dot(a, argmin);
    if (lhs > K.b()[i] + eps * variation) return false;
  }
  return true;
}

OptResult approx_opt(const CenteredPolytope& K, const LatticeBasis& B, const RVector& v, double eps,
                     double delta, const OptConfig& cfg) {
  if (!(eps > 0.0 && eps <= 0.5)) throw InvalidInput("approx_opt: eps must be in (0, 1/2]");
  if (!(delta > 0.0)) throw InvalidInput("approx_opt: delta must be positive");
  if (v.size() != K.dim() || B.dim() != K.dim()) throw InvalidInput("approx_opt: dimension mismatch");
  const Eigen::VectorXd vd = to_eigen(v);
  const double vnorm = vd.norm();
  if (!(vnorm > 0.0)) throw InvalidInput("approx_opt: objective must be nonzero");

  OptResult res;
  const double n = static_cast<double>(K.dim());
  const double R = K.outer_radius();
  const double r = K.inner_radius();
  double d = delta;
  if (d > vnorm * r) {
    d = vnorm * r;
    res.warnings.push_back("delta clamped to ||v||_2 r = " + std::to_string(d));
  }
  res.delta = to_rational(d);
  const double ratio = R * vnorm / d;
  if (cfg.repetitions) {
    res.repetitions = std::max<std::size_t>(1, *cfg.repetitions);
  } else {
    double k = ratio > std::exp(1.0) ? std::ceil(1.0 + std::log(std::log(ratio)) / n) : 1.0;
    res.repetitions = static_cast<std::size_t>(std::max(1.0, k));
  }
  res.iteration_cap = static_cast<std::size_t>(std::ceil(std::log(4.0 * ratio) / std::log(4.0 / 3.0)));

  std::uint64_t call_index = 0;
  auto feasible = [&](const CenteredPolytope& body) -> std::optional<IPResult> {
    ++call_index;
    for (std::size_t rep = 0; rep < res.repetitions; ++rep) {
      IPConfig icfg = cfg.ip;
      icfg.sieve.sampler.seed = mix_seed(cfg.ip.sieve.sampler.seed, call_index * 1000 + rep);
      IPResult out = approx_ip(body, B, eps, icfg);
      ++res.ip_calls;
      if (out.found()) return out;
      if (out.status == IPStatus::inconclusive) ++res.inconclusive_calls;
    }
    return std::nullopt;
  };
  auto on_slab = [&](const Rational& lo, const Rational& hi) -> std::optional<IPResult> {
    auto body = restrict_slab(K, v, lo, hi);
    if (!body) return std::nullopt;
    return feasible(*body);
  };

  std::optional<IPResult> z = feasible(K);
  if (!z) {
    res.status = OptStatus::empty;
    return res;
  }
  ObjectiveBounds bounds = objective_bounds(K, v, d);
  Rational l = dot(v, *z->point);
  Rational u = dot(v, bounds.x_upper) + res.delta / 12;
  while (u - l > res.delta) {
    if (res.iterations >= res.iteration_cap) {
      throw CapExceeded("approx_opt: iteration cap " + std::to_string(res.iteration_cap) +
                        " reached with bracket width " + std::to_string(to_double(u - l)));
    }
    const Rational before = u - l;
    const Rational m = (u + l) / 2;
    std::optional<IPResult> y = on_slab(m, u);
    if (!y) {
      u = m;
      y = on_slab(l, m);
      if (!y) {
        u = l;
        y = z;
      }
    }
    if (dot(v, *z->point) < dot(v, *y->point)) {
      z = y;
      l = dot(v, *z->point);
    }
    const Rational after = u - l;
    if (after * 4 > before * 3) {
      throw ContractViolation("approx_opt: bracket shrank by less than 3/4");
    }
    res.contraction.push_back(to_double(after / before));
    ++res.iterations;
  }
  res.status = OptStatus::solved;
  res.point = z->point;
  res.coefficients = z->coefficients;
  res.value = dot(v, *z->point);
  res.lower = l;
  res.upper = u;
  return res;
}

}  // namespace gsieve
