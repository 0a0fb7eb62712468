#include "gsieve/sieve.hpp"

#include "gsieve/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace gsieve {

namespace {

constexpr double kRelTol = 1e-9;

bool within(double value, double bound) { return value <= bound * (1.0 + kRelTol) + 1e-12; }

// Struct-of-arrays pair storage for the hot loop. y is not stored: it is
// always x + B c, which keeps it free of accumulated rounding.
struct Population {
  Eigen::Index n = 0;
  std::vector<double> x;
  std::vector<std::int64_t> c;
  std::vector<std::size_t> origin;

  explicit Population(Eigen::Index dim) : n(dim) {}
  std::size_t size() const { return origin.size(); }
  void reserve(std::size_t k) {
    x.reserve(k * n);
    c.reserve(k * n);
    origin.reserve(k);
  }
  Eigen::Map<const Eigen::VectorXd> xs(std::size_t i) const { return {x.data() + i * n, n}; }
  Eigen::Map<const IVector> cs(std::size_t i) const { return {c.data() + i * n, n}; }

  void push(const Eigen::Ref<const Eigen::VectorXd>& xv, const Eigen::Ref<const IVector>& cv,
            std::size_t o) {
    x.insert(x.end(), xv.data(), xv.data() + n);
    c.insert(c.end(), cv.data(), cv.data() + n);
    origin.push_back(o);
  }

  std::vector<SievePair> to_pairs(const Eigen::MatrixXd& B) const {
    std::vector<SievePair> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) {
      out.push_back({xs(i), xs(i) + B * cs(i).cast<double>(), cs(i), origin[i]});
    }
    return out;
  }
};

int star_sign(const Eigen::MatrixXd& G, const Eigen::VectorXd& x) {
  Eigen::VectorXd g = G * x;
  double plus = std::max(0.0, g.maxCoeff());
  double minus = std::max(0.0, -g.minCoeff());
  return plus <= minus ? 1 : -1;
}

// Greedy scan: attach pair i to the first center j with
// ||y_i - y_j||_{s(x_j) C} <= D/2, otherwise make i a center. The output
// pair (x_i, y_i - y_j + x_j) has lattice offset c_i - c_j.
void cluster(const Population& in, const Eigen::MatrixXd& G, const Eigen::MatrixXd& GB, double D,
             std::vector<std::size_t>& centers, Population& out) {
  const Eigen::Index m = G.rows();
  const double half = D / 2.0;
  std::vector<double> center_proj;  // G y_j for each center, flattened
  std::vector<int> center_sign;
  Eigen::VectorXd gy(m);
  IVector diff(in.n);
  out.reserve(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    gy.noalias() = G * in.xs(i);
    gy.noalias() += GB * in.cs(i).cast<double>();
    std::size_t attach = centers.size();
    for (std::size_t k = 0; k < centers.size(); ++k) {
      const double* gj = center_proj.data() + k * m;
      const double s = center_sign[k];
      bool ok = true;
      for (Eigen::Index r = 0; r < m; ++r) {
        if (s * (gy[r] - gj[r]) > half) {
          ok = false;
          break;
        }
      }
      if (ok) {
        attach = k;
        break;
      }
    }
    if (attach == centers.size()) {
      centers.push_back(i);
      center_proj.insert(center_proj.end(), gy.data(), gy.data() + m);
      center_sign.push_back(star_sign(G, in.xs(i)));
      continue;
    }
    diff = in.cs(i) - in.cs(centers[attach]);
    out.push(in.xs(i), diff, in.origin[i]);
  }
}

IVector reduce_coefficients(const LatticeBasis& B, const Eigen::VectorXd& x) {
  Eigen::VectorXd u = B.inverse_double() * x;
  bool near_integer = false;
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    if (std::abs(u[k] - std::round(u[k])) < 1e-9 * (1.0 + std::abs(u[k]))) near_integer = true;
  }
  IVector c(u.size());
  if (!near_integer) {
    for (Eigen::Index k = 0; k < u.size(); ++k) c[k] = -static_cast<std::int64_t>(std::floor(u[k]));
    return c;
  }
  RVector exact = B.coordinates(to_rvector(x));
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    c[k] = -floor_integer(exact[static_cast<std::size_t>(k)]).convert_to<std::int64_t>();
  }
  return c;
}

bool lex_less(const IVector& a, const IVector& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

struct LexLess {
  bool operator()(const IVector& a, const IVector& b) const { return lex_less(a, b); }
};

}  // namespace

SievePair make_pair(const LatticeBasis& B, const RVector& x, const RVector& y, std::size_t origin) {
  if (x.size() != B.dim() || y.size() != B.dim()) throw InvalidInput("sieve pair: dimension mismatch");
  IVector c = lattice_coordinates(B, y - x);
  return SievePair{to_eigen(x), to_eigen(y), c, origin};
}

SieveSchedule make_schedule(const CenteredPolytope& C, const LatticeBasis& B, double beta,
                            double eps, double gamma, double budget_multiplier) {
  if (!(beta > 0.0)) throw InvalidInput("sieve: beta must be positive");
  if (!(eps > 0.0)) throw InvalidInput("sieve: eps must be positive");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw InvalidInput("sieve: gamma must be in (0,1]");
  if (!(budget_multiplier > 0.0)) throw InvalidInput("sieve: budget multiplier must be positive");
  const double n = static_cast<double>(B.dim());
  SieveSchedule s;
  double widest = 0.0;
  for (Eigen::Index i = 0; i < B.basis_double().cols(); ++i) {
    widest = std::max(widest, gauge(C, B.basis_double().col(i)));
  }
  s.D0 = n * widest;
  double log_ratio = std::log(s.D0 / beta);
  double T = std::max(0.0, std::ceil(6.0 * log_ratio));
  s.stage_bound = static_cast<std::size_t>(T);
  const double g2 = gamma * gamma;
  s.N0_exact = 4.0 * T * std::pow(20.0 / g2, n) + 8.0 * std::pow(36.0 / (g2 * eps), n);
  double scaled = std::ceil(budget_multiplier * s.N0_exact);
  s.N0 = scaled >= 1e18 ? std::numeric_limits<std::size_t>::max()
                        : std::max<std::size_t>(2, static_cast<std::size_t>(scaled));
  s.eta = std::pow(2.0, -(n + 1.0)) / static_cast<double>(s.N0);
  return s;
}

SieveStep basic_sieve(const std::vector<SievePair>& pairs, const CenteredPolytope& C,
                      const LatticeBasis& B, double beta, double D) {
  if (!C.is_zero_centered()) throw InvalidInput("basic_sieve: body must contain the origin in its interior");
  if (C.dim() != B.dim()) throw InvalidInput("basic_sieve: dimension mismatch");
  const auto n = static_cast<Eigen::Index>(C.dim());
  const Eigen::MatrixXd& Bd = B.basis_double();
  Population in(n);
  in.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& p = pairs[i];
    if (p.x.size() != n || p.y.size() != n || p.coeff.size() != n) {
      throw InvalidInput("basic_sieve: pair " + std::to_string(i) + " has the wrong dimension");
    }
    if (!within(gauge_star(C, p.x).value, beta)) {
      throw InvalidInput("basic_sieve: pair " + std::to_string(i) + " has ||x||* > beta");
    }
    if (!within(gauge_star(C, p.y).value, D)) {
      throw InvalidInput("basic_sieve: pair " + std::to_string(i) + " has ||y||* > D");
    }
    Eigen::VectorXd offset = p.x + Bd * p.coeff.cast<double>() - p.y;
    if (offset.norm() > 1e-9 * (1.0 + p.y.norm())) {
      throw InvalidInput("basic_sieve: pair " + std::to_string(i) + " has y - x != B coeff");
    }
    in.push(p.x, p.coeff, p.origin);
  }
  SieveStep step;
  Population out(n);
  const Eigen::MatrixXd& G = C.gauge_rows();
  cluster(in, G, G * Bd, D, step.centers, out);
  step.clustered = out.to_pairs(Bd);
  return step;
}

double resolve_gamma(const CenteredPolytope& C, const SieveConfig& cfg) {
  if (cfg.gamma) {
    if (!(*cfg.gamma > 0.0 && *cfg.gamma <= 1.0)) throw InvalidInput("gamma override must be in (0,1]");
    return *cfg.gamma;
  }
  GammaEstimate est = estimate_gamma(C, cfg.gamma_samples, mix_seed(cfg.sampler.seed, 0x9a77a),
                                     cfg.sampler.method);
  return std::clamp(est.value - 3.0 * est.std_error, 0.05, 1.0);
}

ShortVectorsResult short_vectors(const CenteredPolytope& C, const LatticeBasis& B,
                                 const Subspace& M, double beta, double eps,
                                 const SieveConfig& cfg, std::uint64_t stream) {
  if (!C.is_zero_centered()) throw InvalidInput("short_vectors: body must contain the origin in its interior");
  if (C.dim() != B.dim() || M.ambient_dim() != B.dim()) throw InvalidInput("short_vectors: dimension mismatch");
  if (!(eps > 0.0 && eps <= 0.5)) throw InvalidInput("short_vectors: eps must be in (0, 1/2]");

  const double gamma = resolve_gamma(C, cfg);
  ShortVectorsResult res;
  res.schedule = make_schedule(C, B, beta, eps, gamma, cfg.budget_multiplier);
  if (res.schedule.N0 > cfg.max_pairs) {
    throw CapExceeded("short_vectors: " + std::to_string(res.schedule.N0_exact * cfg.budget_multiplier) +
                      " pairs requested, cap is " + std::to_string(cfg.max_pairs) +
                      "; lower the budget multiplier");
  }

  const auto n = static_cast<Eigen::Index>(B.dim());
  const Eigen::MatrixXd& G = C.gauge_rows();
  const Eigen::MatrixXd& Bd = B.basis_double();
  const Eigen::MatrixXd GB = G * Bd;
  SamplerConfig scfg = cfg.sampler;
  scfg.eta = std::min(cfg.sampler.eta, 0.5);
  PolytopeSampler sampler(C, scfg, stream);

  Population pop(n);
  pop.reserve(res.schedule.N0);
  for (std::size_t i = 0; i < res.schedule.N0; ++i) {
    Eigen::VectorXd x = sampler.sample_signed(beta).first;
    IVector c = reduce_coefficients(B, x);
    pop.push(x, c, i);
  }

  double D = res.schedule.D0;
  if (cfg.observer) cfg.observer(0, D, pop.to_pairs(Bd));
  while (D >= 3.0 * beta) {
    if (pop.size() == 0) {
      res.exhausted = true;
      break;
    }
    if (res.stages >= cfg.max_stages) {
      throw CapExceeded("short_vectors: stage cap " + std::to_string(cfg.max_stages) + " reached");
    }
    std::vector<std::size_t> centers;
    Population next(n);
    cluster(pop, G, GB, D, centers, next);
    res.max_centers = std::max(res.max_centers, centers.size());
    pop = std::move(next);
    D = D / 2.0 + beta;
    ++res.stages;
    if (cfg.observer) cfg.observer(res.stages, D, pop.to_pairs(Bd));
  }
  res.survivors = pop.size();
  if (res.exhausted) return res;

  std::vector<IVector> distinct;
  distinct.reserve(pop.size());
  for (std::size_t i = 0; i < pop.size(); ++i) distinct.emplace_back(pop.cs(i));
  std::sort(distinct.begin(), distinct.end(), lex_less);
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  CoefficientSubspaceTest in_m(B, M);
  std::set<IVector, LexLess> diffs;
  for (const auto& a : distinct) {
    for (const auto& b : distinct) {
      if (&a == &b) continue;
      IVector d = a - b;
      if (!in_m.contains(d)) diffs.insert(std::move(d));
    }
  }
  res.vectors.assign(diffs.begin(), diffs.end());
  return res;
}

LambdaBounds lambda_bounds(const CenteredPolytope& C, const LatticeBasis& B, const Subspace& M,
                           const OracleOptions& opts) {
  const auto n = static_cast<Eigen::Index>(B.dim());
  const Eigen::VectorXd origin = Eigen::VectorXd::Zero(n);
  const double R = outer_radius_about(C, origin);
  const double r = inner_radius_about(C, origin);
  if (!(r > 0.0)) throw InvalidInput("lambda_bounds: origin must be interior to C");
  LambdaBounds lb;
  try {
    LatticeSolution s = l2_sap_brute(B, M, opts);
    lb.nu = std::sqrt(to_double(s.value)) * (1.0 - 1e-12) / R;
    // Undo the safety margin on nu so that lambda <= spread * nu still holds.
    lb.spread = R / r * (1.0 + 4e-12);
  } catch (const CapExceeded&) {
    CoefficientSubspaceTest in_m(B, M);
    double shortest = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
      IVector e = IVector::Zero(n);
      e[i] = 1;
      if (!in_m.contains(e)) shortest = std::min(shortest, B.basis_double().col(i).norm());
    }
    const double pow2 = std::pow(2.0, static_cast<double>(n));
    lb.nu = shortest / (R * pow2);
    lb.spread = pow2 * R / r;
    lb.fallback = true;
  }
  lb.guess_count = static_cast<std::size_t>(std::ceil(std::log(lb.spread) / std::log(1.5))) + 1;
  return lb;
}

SolveReport approx_sap(const CenteredPolytope& C, const LatticeBasis& B, const Subspace& M,
                       double eps, const SieveConfig& cfg) {
  if (!(eps > 0.0 && eps <= 0.5)) throw InvalidInput("approx_sap: eps must be in (0, 1/2]");
  SolveReport rep;
  rep.eps = eps;
  rep.seed = cfg.sampler.seed;
  rep.budget_multiplier = cfg.budget_multiplier;
  SieveConfig run = cfg;
  run.gamma = resolve_gamma(C, cfg);
  rep.gamma = *run.gamma;
  LambdaBounds lb = lambda_bounds(C, B, M, cfg.oracle);
  rep.nu = lb.nu;
  if (lb.fallback) rep.warnings.push_back("lambda_bounds: oracle cap exceeded, using basis-vector bound");

  std::vector<std::pair<double, IVector>> best;  // near-minimal candidates
  double best_value = std::numeric_limits<double>::infinity();
  bool all_exhausted = true;
  const Eigen::MatrixXd& Bd = B.basis_double();
  for (std::size_t i = 0; i < lb.guess_count; ++i) {
    const double beta = lb.nu * std::pow(1.5, static_cast<double>(i));
    ShortVectorsResult sv = short_vectors(C, B, M, beta, eps, run, i + 1);
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
    for (const auto& c : sv.vectors) {
      double g = gauge(C, Bd * c.cast<double>());
      if (!gs.best_value || g < *gs.best_value) gs.best_value = g;
      if (g < best_value) {
        best_value = g;
        std::erase_if(best, [&](const auto& e) { return !within(e.first, best_value); });
      }
      if (within(g, best_value)) best.emplace_back(g, c);
    }
    rep.guesses.push_back(gs);
  }

  if (best.empty()) {
    rep.status = all_exhausted ? Status::budget_exhausted : Status::not_found;
    return rep;
  }
  std::optional<IVector> winner;
  Rational winner_value;
  for (const auto& [g, c] : best) {
    Rational v = gauge_exact(C, B.point(c));
    if (!winner || v < winner_value || (v == winner_value && lex_less(c, *winner))) {
      winner = c;
      winner_value = v;
    }
  }
  rep.status = Status::ok;
  rep.coefficients = *winner;
  rep.vector = B.point(*winner);
  rep.value = winner_value;
  return rep;
}

SolveReport exact_sap(const CenteredPolytope& C, const LatticeBasis& B, const Subspace& M,
                      double t, const SieveConfig& cfg) {
  if (!(t >= 2.0)) throw InvalidInput("exact_sap: t must be at least 2");
  return approx_sap(C, B, M, 1.0 / t, cfg);
}

const char* status_name(Status s) {
  switch (s) {
    case Status::ok: return "OK";
    case Status::empty: return "EMPTY";
    case Status::budget_exhausted: return "BUDGET_EXHAUSTED";
    case Status::not_found: return "NOT_FOUND";
  }
  return "UNKNOWN";
}

}  // namespace gsieve
