#include "gsieve/cvp.hpp"

#include "gsieve/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gsieve {

LiftedInstance lift(const CenteredPolytope& C, const LatticeBasis& B, const RVector& x, double beta) {
  if (!C.is_zero_centered()) throw InvalidInput("lift: body must contain the origin in its interior");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw InvalidInput("lift: beta must be positive");
  const std::size_t n = C.dim();
  if (B.dim() != n || x.size() != n) throw InvalidInput("lift: dimension mismatch");

  const Rational qb = to_rational(beta);
  RMatrix A(C.facets() + 2, n + 1);
  RVector b(C.facets() + 2, Rational(1));
  for (std::size_t i = 0; i < C.facets(); ++i) {
    for (std::size_t j = 0; j < n; ++j) A(i, j) = C.A()(i, j);
    b[i] = C.b()[i];
  }
  A(C.facets(), n) = qb;                  // z <= 1/beta
  A(C.facets() + 1, n) = Rational(-2) * qb;  // z >= -1/(2 beta)

  const Eigen::VectorXd origin = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  const double r = std::min(inner_radius_about(C, origin), 0.5 / beta) * (1.0 - 1e-12);
  const double Rc = outer_radius_about(C, origin);
  const double R = std::sqrt(Rc * Rc + 1.0 / (beta * beta)) * (1.0 + 1e-12);
  CenteredPolytope body(std::move(A), std::move(b), RVector(n + 1, Rational(0)), r, R);

  std::vector<RVector> cols;
  for (std::size_t i = 0; i < n; ++i) {
    RVector col = B.column(i);
    col.push_back(Rational(0));
    cols.push_back(std::move(col));
  }
  RVector last = -x;
  last.push_back(Rational(1));
  cols.push_back(std::move(last));

  std::vector<RVector> span;
  for (std::size_t i = 0; i < n; ++i) {
    RVector e(n + 1, Rational(0));
    e[i] = 1;
    span.push_back(std::move(e));
  }
  return LiftedInstance{std::move(body), LatticeBasis::from_columns(cols), Subspace(n + 1, span), beta};
}

double lifted_gauge(const CenteredPolytope& C, double beta, const Eigen::VectorXd& y, double z) {
  return std::max({gauge(C, y), beta * z, -2.0 * beta * z});
}

double lifted_gamma(double gamma, std::size_t n) {
  const double dn = static_cast<double>(n);
  return std::pow((2.0 / 3.0) * std::pow(gamma, dn), 1.0 / (dn + 1.0));
}

namespace {

bool lex_less(const IVector& a, const IVector& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

SolveReport solve_cvp(const CenteredPolytope& C, const LatticeBasis& B, const RVector& x,
                      double eps, const SieveConfig& cfg, SolveReport rep) {
  const std::size_t n = B.dim();
  const auto ni = static_cast<Eigen::Index>(n);
  rep.eps = eps;
  rep.seed = cfg.sampler.seed;
  rep.budget_multiplier = cfg.budget_multiplier;

  // Work with the coset representative and translate back at the end.
  const RVector xr = mod_basis(B, x);
  const RVector shift = x - xr;
  const IVector shift_coeff = lattice_coordinates(B, shift);
  if (std::all_of(xr.begin(), xr.end(), [](const Rational& q) { return q == 0; })) {
    rep.status = Status::ok;
    rep.vector = x;
    rep.coefficients = shift_coeff;
    rep.value = Rational(0);
    return rep;
  }

  const double gamma = resolve_gamma(C, cfg);
  SieveConfig run = cfg;
  run.gamma = lifted_gamma(gamma, n);
  rep.gamma = *run.gamma;

  const Eigen::VectorXd xd = to_eigen(xr);
  const Eigen::VectorXd origin = Eigen::VectorXd::Zero(ni);
  const double R = outer_radius_about(C, origin);
  const double r = inner_radius_about(C, origin);
  double spread = R / r;
  try {
    LatticeSolution s = l2_cvp_brute(B, xr, cfg.oracle);
    rep.nu = std::sqrt(to_double(s.value)) * (1.0 - 1e-12) / R;
  } catch (const CapExceeded&) {
    Eigen::VectorXd u = B.inverse_double() * xd;
    IVector c = u.array().round().cast<std::int64_t>();
    double upper = (B.basis_double() * c.cast<double>() - xd).norm();
    const double pow2 = std::pow(2.0, static_cast<double>(n));
    rep.nu = upper / (R * pow2);
    spread *= pow2;
    rep.warnings.push_back("cvp: oracle cap exceeded, guess grid widened by 2^n");
  }
  const auto guesses = static_cast<std::size_t>(std::ceil(std::log(spread) / std::log(1.5))) + 1;

  std::vector<std::pair<double, IVector>> near;
  double best = std::numeric_limits<double>::infinity();
  auto tol = [](double v) { return 1e-9 * std::max(1.0, std::abs(v)); };
  bool all_exhausted = true;
  for (std::size_t i = 0; i < guesses; ++i) {
    const double beta = rep.nu * std::pow(1.5, static_cast<double>(i));
    LiftedInstance li = lift(C, B, xr, beta);
    ShortVectorsResult sv = short_vectors(li.body, li.basis, li.subspace, beta, eps, run, i + 1);
    GuessStats gs;
    gs.beta = beta;
    gs.initial_pairs = sv.schedule.N0;
    gs.stages = sv.stages;
    gs.survivors = sv.survivors;
    gs.max_centers = sv.max_centers;
    gs.candidates = sv.vectors.size();
    gs.exhausted = sv.exhausted;
    rep.total_pairs += sv.schedule.N0;
    if (!sv.exhausted) all_exhausted = false;

    const Eigen::MatrixXd& Bl = li.basis.basis_double();
    for (const auto& c : sv.vectors) {
      const std::int64_t z = c[ni];
      double g = gauge(li.body, Bl * c.cast<double>());
      // Any vector outside M shorter than 2 beta must have z = 1.
      if (g < 2.0 * beta * (1.0 - 1e-9) && z != 1) {
        throw ContractViolation("cvp: lifted vector of gauge " + std::to_string(g) +
                                " < 2 beta has last coordinate " + std::to_string(z));
      }
      if (z != 1) continue;
      IVector w = c.head(ni);
      double d = gauge(C, B.basis_double() * w.cast<double>() - xd);
      if (!gs.best_value || d < *gs.best_value) gs.best_value = d;
      if (d < best - tol(best)) {
        best = d;
        std::erase_if(near, [&](const auto& e) { return e.first > best + tol(best); });
      }
      if (d <= best + tol(best)) near.emplace_back(d, w);
    }
    rep.guesses.push_back(gs);
  }

  if (near.empty()) {
    rep.status = all_exhausted ? Status::budget_exhausted : Status::not_found;
    return rep;
  }
  std::optional<IVector> winner;
  Rational winner_value;
  for (const auto& [d, w] : near) {
    Rational v = gauge_exact(C, B.point(w) - xr);
    if (!winner || v < winner_value || (v == winner_value && lex_less(w, *winner))) {
      winner = w;
      winner_value = v;
    }
  }
  rep.status = Status::ok;
  rep.coefficients = IVector(*winner + shift_coeff);
  rep.vector = B.point(*rep.coefficients);
  rep.value = winner_value;
  return rep;
}

void check_inputs(const CenteredPolytope& C, const LatticeBasis& B, const RVector& x) {
  if (!C.is_zero_centered()) throw InvalidInput("cvp: body must contain the origin in its interior");
  if (C.dim() != B.dim() || x.size() != B.dim()) throw InvalidInput("cvp: dimension mismatch");
}

}  // namespace

SolveReport approx_cvp(const CenteredPolytope& C, const LatticeBasis& B, const RVector& x,
                       double eps, const SieveConfig& cfg) {
  check_inputs(C, B, x);
  if (!(eps > 0.0 && eps <= 0.5)) throw InvalidInput("approx_cvp: eps must be in (0, 1/2]");
  SolveReport rep;
  if (eps >= 1.0 / 3.0) {
    rep.warnings.push_back("approx_cvp: eps " + std::to_string(eps) + " clamped to " +
                           std::to_string(kCvpEpsClamp));
    eps = kCvpEpsClamp;
  }
  return solve_cvp(C, B, x, eps, cfg, std::move(rep));
}

SolveReport exact_cvp(const CenteredPolytope& C, const LatticeBasis& B, const RVector& x, double t,
                      const SieveConfig& cfg) {
  check_inputs(C, B, x);
  if (!(t >= 2.0)) throw InvalidInput("exact_cvp: t must be at least 2");
  return solve_cvp(C, B, x, 1.0 / t, cfg, SolveReport{});
}

}  // namespace gsieve
