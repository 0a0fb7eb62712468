// Acceptance run: every criterion prints one PASS/FAIL line. The exit code
// is nonzero if any criterion fails.
//
// The randomized solvers run at reduced pair budgets by default (see
// README); --full-budget uses the unscaled schedule everywhere.

#include "gsieve/error.hpp"
#include "gsieve/generate.hpp"
#include "gsieve/sampling.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>

using namespace gsieve;

namespace {

struct Budgets {
  double cvp = 1e-3;
  double exact_cvp = 1e-3;
  double sap = 1.0;
  double ip2 = 1e-3;
  double ip3 = 3e-6;
  double opt = 1e-4;
};

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

RVector rvec(std::initializer_list<const char*> xs) {
  RVector out;
  for (const char* s : xs) out.push_back(parse_rational(s));
  return out;
}

// ||y - c||_{K - c}, computed straight from the facets.
Rational recentered_gauge(const CenteredPolytope& K, const RVector& c, const RVector& y) {
  Rational g = 0;
  for (std::size_t i = 0; i < K.facets(); ++i) {
    RVector a = K.A().row(i);
    Rational room = K.b()[i] - dot(a, c);
    Rational t = dot(a, y - c) / room;
    if (t > g) g = t;
  }
  return g;
}

Rational star_exact(const CenteredPolytope& C, const RVector& x) {
  return std::min(gauge_exact(C, x), gauge_exact(C, -x));
}

// Every FOUND answer seen by any feasibility call, checked by criterion 5.
struct FoundRecord {
  CenteredPolytope body;
  LatticeBasis basis;
  IPResult result;
};
std::vector<FoundRecord> g_found;

void record(const CenteredPolytope& K, const LatticeBasis& B, const IPResult& r) {
  if (r.found()) g_found.push_back({K, B, r});
}

// ---------------------------------------------------------------------------

Verdict sieve_invariants() {
  std::size_t calls = 0, violations = 0, pairs_checked = 0;
  for (std::uint64_t inst = 0; inst < 50; ++inst) {
    const std::size_t n = 1 + inst % 3;
    Rng rng(inst, 0x51e7e);
    auto kind = static_cast<BodyKind>((inst / 3) % 3);
    CenteredPolytope C = make_body(kind, n, rng).origin_centered();
    double gamma = 1.0;
    if (kind == BodyKind::shifted_cube) {
      gamma = 2.0 / 3.0;
    } else if (kind == BodyKind::random) {
      GammaEstimate est = estimate_gamma(C, 100000, inst);
      gamma = est.value - 3 * est.std_error;
    }
    LatticeBasis B = random_basis(n, rng);
    double D = make_schedule(C, B, 1.0, 0.5, 1.0, 1.0).D0;
    const double beta = D / rng.uniform(10.0, 30.0);

    SamplerConfig scfg;
    scfg.seed = inst;
    PolytopeSampler sampler(C, scfg);
    std::vector<SievePair> pairs;
    const std::size_t N = 3000;
    for (std::size_t i = 0; i < N; ++i) {
      RVector x = to_rvector(sampler.sample_signed(beta).first);
      pairs.push_back(make_pair(B, x, mod_basis(B, x), i));
    }
    const double bound = 2.0 * std::pow(5.0 / gamma, static_cast<double>(n));
    for (int stage = 0; stage < 4 && !pairs.empty() && D >= 3 * beta; ++stage) {
      SieveStep step = basic_sieve(pairs, C, B, beta, D);
      ++calls;
      if (static_cast<double>(step.centers.size()) > bound) ++violations;
      if (step.clustered.size() + step.centers.size() != pairs.size()) ++violations;
      std::map<std::size_t, const SievePair*> by_origin;
      for (const auto& p : pairs) by_origin[p.origin] = &p;
      const Rational limit = to_rational(D / 2 + beta) * (1 + Rational(1, 1000000000));
      for (const auto& p : step.clustered) {
        ++pairs_checked;
        const SievePair& before = *by_origin.at(p.origin);
        RVector x = to_rvector(p.x);
        if (p.x != before.x) ++violations;
        // Exact lattice offset: the new y - x is B times an integer vector.
        RVector y = x + B.point(p.coeff);
        if (!in_lattice(B, y - x)) ++violations;
        if (star_exact(C, y) > limit) ++violations;
        if ((to_eigen(y) - p.y).norm() > 1e-9 * (1 + p.y.norm())) ++violations;
      }
      pairs = std::move(step.clustered);
      D = D / 2 + beta;
    }
  }
  return {calls >= 200 && violations == 0,
          fmt("%zu calls, %zu output pairs checked, %zu violations", calls, pairs_checked, violations)};
}

Verdict approx_cvp_vs_oracle(double budget) {
  int within = 0, in_l = 0, total = 100, exhausted = 0;
  for (int s = 0; s < total; ++s) {
    Instance inst = gen_random_cvp(2, static_cast<std::uint64_t>(s));
    SieveConfig cfg;
    cfg.sampler.seed = static_cast<std::uint64_t>(s);
    cfg.budget_multiplier = budget;
    Rational d = cvp_brute(*inst.body, *inst.lattice, *inst.target).value;
    try {
      SolveReport rep = approx_cvp(*inst.body, *inst.lattice, *inst.target, 0.25, cfg);
      if (rep.status != Status::ok) {
        ++exhausted;
        continue;
      }
      bool lattice_ok = in_lattice(*inst.lattice, *rep.vector);
      in_l += lattice_ok;
      Rational got = gauge_exact(*inst.body, *rep.vector - *inst.target);
      if (lattice_ok && got == *rep.value && got >= d && got <= Rational(5, 4) * d) ++within;
    } catch (const CapExceeded&) {
      ++exhausted;
    }
  }
  const int returned = total - exhausted;
  return {within >= 95 && in_l == returned,
          fmt("%d/%d within [d, 1.25 d], %d/%d returned vectors in L, %d without answer", within, total, in_l,
              returned, exhausted)};
}

Verdict exact_cvp_vs_oracle(double budget) {
  int exact = 0, total = 50;
  for (int s = 0; s < total; ++s) {
    Instance inst = gen_planted_cvp(2, static_cast<std::uint64_t>(s));
    SieveConfig cfg;
    cfg.sampler.seed = static_cast<std::uint64_t>(s);
    cfg.budget_multiplier = budget;
    Rational d = cvp_brute(*inst.body, *inst.lattice, *inst.target).value;
    try {
      SolveReport rep = exact_cvp(*inst.body, *inst.lattice, *inst.target, 2.0, cfg);
      if (rep.status == Status::ok && in_lattice(*inst.lattice, *rep.vector) &&
          gauge_exact(*inst.body, *rep.vector - *inst.target) == d) {
        ++exact;
      }
    } catch (const CapExceeded&) {
    }
  }
  return {exact >= 47, fmt("%d/%d exactly optimal", exact, total)};
}

Verdict approx_sap_vs_oracle(double budget) {
  int within = 0, valid = 0, returned = 0, total = 100;
  for (int s = 0; s < total; ++s) {
    Instance inst = gen_sap(2, static_cast<std::uint64_t>(s));
    SieveConfig cfg;
    cfg.sampler.seed = static_cast<std::uint64_t>(s);
    cfg.budget_multiplier = budget;
    Rational lam = sap_brute(*inst.body, *inst.lattice, *inst.subspace).value;
    try {
      SolveReport rep = approx_sap(*inst.body, *inst.lattice, *inst.subspace, 0.5, cfg);
      if (rep.status != Status::ok) continue;
      ++returned;
      bool ok = in_lattice(*inst.lattice, *rep.vector) && !inst.subspace->contains(*rep.vector);
      valid += ok;
      Rational g = gauge_exact(*inst.body, *rep.vector);
      if (ok && g >= lam && g <= Rational(3, 2) * lam) ++within;
    } catch (const CapExceeded&) {
    }
  }
  return {within >= 95 && valid == returned,
          fmt("%d/%d within [lambda, 1.5 lambda], %d/%d returned vectors in L \\ M", within, total, valid,
              returned)};
}

Verdict ip_completeness(const Budgets& b) {
  int found_k = 0, empty_ok = 0, per_n = 25;
  std::string misses;
  for (std::size_t n : {2u, 3u}) {
    for (int s = 0; s < per_n; ++s) {
      Instance inst = gen_planted_ip(n, static_cast<std::uint64_t>(s), 0.5);
      IPConfig cfg;
      cfg.sieve.sampler.seed = static_cast<std::uint64_t>(s);
      cfg.sieve.budget_multiplier = n == 2 ? b.ip2 : b.ip3;
      try {
        IPResult r = approx_ip(*inst.body, *inst.lattice, 0.5, cfg);
        record(*inst.body, *inst.lattice, r);
        if (r.status == IPStatus::found_in_k) ++found_k;
        else misses += fmt(" n%zu/s%d:%s", n, s, ip_status_name(r.status));
      } catch (const CapExceeded&) {
        misses += fmt(" n%zu/s%d:cap", n, s);
      }
    }
  }
  for (std::size_t n : {2u, 3u}) {
    for (int s = 0; s < per_n; ++s) {
      Instance inst = gen_empty_ip(n, static_cast<std::uint64_t>(s), 0.5);
      IPConfig cfg;
      cfg.sieve.sampler.seed = static_cast<std::uint64_t>(s);
      cfg.sieve.budget_multiplier = n == 2 ? b.ip2 : b.ip3;
      try {
        IPResult r = approx_ip(*inst.body, *inst.lattice, 0.5, cfg);
        record(*inst.body, *inst.lattice, r);
        if (r.status == IPStatus::empty) ++empty_ok;
      } catch (const CapExceeded&) {
      }
    }
  }
  std::string d = fmt("planted: %d/50 FOUND_IN_K, certified-empty: %d/50 EMPTY", found_k, empty_ok);
  if (!misses.empty()) d += " (misses:" + misses + ")";
  return {found_k >= 47 && empty_ok == 50, d};
}

Verdict opt_vs_oracle(double budget) {
  int good = 0, total = 25;
  std::size_t iterations = 0, bad_contraction = 0, ip_calls = 0;
  std::string misses;
  for (int s = 0; s < total; ++s) {
    Instance inst = gen_opt(2, static_cast<std::uint64_t>(s), 0.1);
    const RVector& v = inst.objective->v;
    auto points = ip_enumerate(*inst.body, *inst.lattice);
    Rational best = dot(v, points.front().point);
    for (const auto& p : points) best = std::max(best, dot(v, p.point));
    OptConfig cfg;
    cfg.ip.sieve.sampler.seed = static_cast<std::uint64_t>(s);
    cfg.ip.sieve.budget_multiplier = budget;
    try {
      OptResult r = approx_opt(*inst.body, *inst.lattice, v, 0.5, 0.1, cfg);
      iterations += r.iterations;
      ip_calls += r.ip_calls;
      for (double c : r.contraction) bad_contraction += c > 0.75;
      if (r.status == OptStatus::solved && *r.value >= best - Rational(1, 10) &&
          blowup_membership(*inst.body, Rational(1, 2), *r.point) && in_lattice(*inst.lattice, *r.point)) {
        ++good;
      } else {
        misses += fmt(" s%d", s);
      }
    } catch (const ContractViolation& e) {
      ++bad_contraction;
      misses += fmt(" s%d:contraction", s);
    } catch (const CapExceeded&) {
      misses += fmt(" s%d:cap", s);
    }
  }
  std::string d = fmt("%d/%d within delta and in K + eps(K-K); %zu iterations, %zu feasibility calls, %zu "
                      "contraction violations",
                      good, total, iterations, ip_calls, bad_contraction);
  if (!misses.empty()) d += " (misses:" + misses + ")";
  return {good >= 23 && bad_contraction == 0, d};
}

Verdict ip_soundness(const Budgets& b) {
  // Extra feasibility runs on bodies near lattice points, where answers in
  // the blowup (not in K) are common.
  for (std::uint64_t s = 0; s < 100; ++s) {
    const std::size_t n = 2 + s % 2;
    Rng rng(s, 0x50d);
    LatticeBasis B = random_basis(n, rng);
    RVector lo(n), hi(n);
    RVector c = random_target(B, rng);
    for (std::size_t j = 0; j < n; ++j) {
      Rational half(rng.integer(3, 12), 10);
      lo[j] = c[j] - half;
      hi[j] = c[j] + half;
    }
    CenteredPolytope K = CenteredPolytope::box(lo, hi);
    IPConfig cfg;
    cfg.sieve.sampler.seed = s;
    cfg.sieve.budget_multiplier = n == 2 ? b.ip2 : b.ip3;
    try {
      record(K, B, approx_ip(K, B, 0.5, cfg));
    } catch (const CapExceeded&) {
    }
  }
  std::size_t bad = 0, blowup = 0;
  for (const auto& f : g_found) {
    const IPResult& r = f.result;
    const Rational limit = 1 + Rational(3) * to_rational(r.eps) / 4;
    Rational g = recentered_gauge(f.body, r.center, *r.point);
    bool ok = g <= limit && in_lattice(f.basis, *r.point) && g == *r.center_gauge;
    if (r.status == IPStatus::found_in_k) ok = ok && f.body.contains_exact(*r.point) && g <= 1;
    if (r.status == IPStatus::found_in_blowup) ++blowup;
    bad += !ok;
  }
  return {bad == 0 && !g_found.empty(),
          fmt("%zu FOUND answers rechecked (%zu in the blowup only), %zu failures", g_found.size(), blowup, bad)};
}

Verdict geometry_properties() {
  std::vector<std::string> parts;
  bool pass = true;

  // Recentering inequalities.
  std::size_t triples = 0, bad = 0;
  Rng rng(8, 0x1e5);
  while (triples < 1000) {
    const std::size_t n = 2 + triples % 2;
    CenteredPolytope K = random_gauge_body(n, rng);
    PolytopeSampler sampler(K, SamplerConfig{.seed = triples});
    for (int k = 0; k < 20; ++k) {
      Eigen::VectorXd y = sampler.sample();
      Eigen::VectorXd x = sampler.sample();
      CenteredPolytope Ky = recenter(K, y);
      double alpha = std::max(gauge(Ky, x - y), gauge(Ky, y - x));
      const double target = rng.uniform(0.05, 0.9);
      x = y + (target / alpha) * (x - y);
      alpha = std::max(gauge(Ky, x - y), gauge(Ky, y - x));
      if (!(alpha < 1) || !K.strictly_contains_exact(to_rvector(x))) continue;
      CenteredPolytope Kx = recenter(K, x);
      Eigen::VectorXd z(static_cast<Eigen::Index>(n));
      for (Eigen::Index i = 0; i < z.size(); ++i) {
        double w = K.box_hi()[i] - K.box_lo()[i];
        z[i] = rng.uniform(K.box_lo()[i] - w, K.box_hi()[i] + w);
      }
      double zx = gauge(Kx, z - x), zy = gauge(Ky, z - y);
      bad += zy > zx + alpha * std::abs(1 - zx) + 1e-9 * std::max(1.0, zx);
      bad += zx > zy + alpha / (1 - alpha) * std::abs(1 - zy) + 1e-9 * std::max(1.0, zy);
      ++triples;
    }
  }
  parts.push_back(fmt("recentering: %zu violations / %zu triples", bad, triples));
  pass = pass && bad == 0;

  // Symmetry of bodies recentered away from the barycenter.
  const std::size_t samples = 100000;
  std::vector<CenteredPolytope> centered{
      CenteredPolytope::box(rvec({"-1", "-1"}), rvec({"1", "1"})),
      CenteredPolytope::box(rvec({"-1", "-2", "-1/2"}), rvec({"1", "2", "1/2"})),
      CenteredPolytope::simplex({rvec({"-1", "-1"}), rvec({"2", "-1"}), rvec({"-1", "2"})}),
      CenteredPolytope::simplex(
          {rvec({"-1", "-1", "-1"}), rvec({"3", "-1", "-1"}), rvec({"-1", "3", "-1"}), rvec({"-1", "-1", "3"})})};
  std::size_t sym_checks = 0, sym_bad = 0;
  for (std::size_t k = 0; k < centered.size(); ++k) {
    const auto& K = centered[k];
    PolytopeSampler sampler(K, SamplerConfig{.seed = 100 + k});
    for (int t = 0; t < 5; ++t) {
      Eigen::VectorXd x = sampler.sample();
      double gx = gauge(K, x);
      GammaEstimate est = estimate_gamma(recenter(K, x), samples, 1000 * k + t);
      ++sym_checks;
      sym_bad += est.value < 0.5 * (1 - gx) - 3 * est.std_error;
    }
    GammaEstimate at_center = estimate_gamma(K, samples, 77 + k);
    ++sym_checks;
    sym_bad += at_center.value < 0.5 - 3 * at_center.std_error;
  }
  parts.push_back(fmt("symmetry bounds: %zu/%zu hold", sym_checks - sym_bad, sym_checks));
  pass = pass && sym_bad == 0;

  // Intersection volumes of C & (v - C) and its reflection.
  std::size_t inter_checks = 0, inter_bad = 0, both = 0;
  for (std::uint64_t s = 0; s < 6; ++s) {
    const std::size_t n = 2 + s % 2;
    Rng r2(s, 0x1e8);
    CenteredPolytope C = s < 2 ? CenteredPolytope::box(RVector(n, -1), RVector(n, 2)).origin_centered()
                               : random_gauge_body(n, r2);
    GammaEstimate g = estimate_gamma(C, samples, s);
    const double gamma = g.value - 3 * g.std_error;
    const double beta = 1.0;
    Eigen::VectorXd dir(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < dir.size(); ++i) dir[i] = r2.normal();
    Eigen::VectorXd v = dir * (r2.uniform(1.0, 1.5) * beta / gauge(C, dir));
    PolytopeSampler sampler(C, SamplerConfig{.seed = 500 + s});
    auto in_plus = [&](const Eigen::VectorXd& x) { return gauge(C, x) < beta && gauge(C, v - x) < beta; };
    auto in_minus = [&](const Eigen::VectorXd& x) { return gauge(C, x + v) < beta && gauge(C, -x) < beta; };
    std::size_t plus = 0, minus = 0;
    for (std::size_t i = 0; i < samples; ++i) {
      // x is uniform in beta C and -x uniform in -beta C, which has the same volume.
      Eigen::VectorXd x = beta * sampler.sample();
      Eigen::VectorXd w = -x;
      plus += in_plus(x);
      minus += in_minus(w);
      both += (in_plus(x) && in_minus(x)) + (in_plus(w) && in_minus(w));
    }
    const double N = static_cast<double>(samples);
    double pp = plus / N, pm = minus / N;
    double se = std::sqrt(std::max(pp * (1 - pp), pm * (1 - pm)) / N);
    double floor_bound = std::pow(gamma / 4, static_cast<double>(n));
    inter_checks += 3;
    inter_bad += std::abs(pp - pm) > 3 * std::sqrt(2.0) * se;
    inter_bad += pp < floor_bound - 3 * se;
    inter_bad += pm < floor_bound - 3 * se;
  }
  parts.push_back(fmt("intersection volumes: %zu/%zu hold, %zu points in both", inter_checks - inter_bad,
                      inter_checks, both));
  pass = pass && inter_bad == 0 && both == 0;

  GammaEstimate g = estimate_gamma(CenteredPolytope::box(rvec({"-1", "-1"}), rvec({"1", "4"})), samples, 2024);
  parts.push_back(fmt("gamma([-1,1]x[-1,4]) = %.4f", g.value));
  pass = pass && std::abs(g.value - 0.632) <= 0.03;

  std::string d;
  for (const auto& p : parts) d += (d.empty() ? "" : "; ") + p;
  return {pass, d};
}

Verdict barycenter_accuracy() {
  struct Shape {
    const char* name;
    CenteredPolytope K;
    RVector b;
  };
  std::vector<Shape> shapes{
      {"box2", CenteredPolytope::box(rvec({"0", "0"}), rvec({"1", "1"})), rvec({"1/2", "1/2"})},
      {"box3", CenteredPolytope::box(rvec({"0", "-1", "2"}), rvec({"1", "3", "5/2"})), rvec({"1/2", "1", "9/4"})},
      {"simplex2", CenteredPolytope::simplex({rvec({"0", "0"}), rvec({"1", "0"}), rvec({"0", "1"})}),
       rvec({"1/3", "1/3"})},
      {"simplex3",
       CenteredPolytope::simplex({rvec({"0", "0", "0"}), rvec({"1", "0", "0"}), rvec({"0", "1", "0"}),
                                  rvec({"0", "0", "1"})}),
       rvec({"1/4", "1/4", "1/4"})}};
  bool pass = true;
  std::string d;
  for (const auto& s : shapes) {
    int ok = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      RVector b = to_rvector(barycenter_approx(s.K, 1.0 / 3.0, seed));
      Rational e = std::max(recentered_gauge(s.K, s.b, b), recentered_gauge(s.K, s.b, s.b + (s.b - b)));
      ok += e <= Rational(1, 3);
    }
    pass = pass && ok >= 99;
    d += fmt("%s%s %d/100", d.empty() ? "" : ", ", s.name, ok);
  }
  return {pass, d};
}

Verdict lift_identities() {
  int checked = 0, bad = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    Instance inst = gen_random_cvp(2, 1000 + s);
    const auto& C = *inst.body;
    const auto& B = *inst.lattice;
    const RVector& x = *inst.target;
    Rational d = cvp_brute(C, B, x).value;
    Rational l1 = svp_brute(C, B).value;
    Rng rng(s, 0x11f7);
    double beta = to_double(d) / rng.uniform(1.0, 1.5);
    while (to_rational(beta) > d) beta = std::nextafter(beta, 0.0);
    LiftedInstance li = lift(C, B, x, beta);
    Rational lifted = svp_brute(li.body, li.basis).value;
    ++checked;
    bad += lifted != std::min(d, l1);
  }
  return {bad == 0, fmt("%d instances, %d violations", checked, bad)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  Budgets b;
  bool full = false;
  std::vector<int> only;
  app.add_flag("--full-budget", full, "Run every randomized solver at the unscaled pair budget");
  app.add_option("--only", only, "Run only these criteria");
  app.add_option("--cvp-budget", b.cvp, "Budget multiplier for approximate CVP");
  app.add_option("--exact-cvp-budget", b.exact_cvp, "Budget multiplier for exact CVP");
  app.add_option("--sap-budget", b.sap, "Budget multiplier for SAP");
  app.add_option("--ip2-budget", b.ip2, "Budget multiplier for feasibility, n = 2");
  app.add_option("--ip3-budget", b.ip3, "Budget multiplier for feasibility, n = 3");
  app.add_option("--opt-budget", b.opt, "Budget multiplier for optimization");
  CLI11_PARSE(app, argc, argv);
  if (full) b = Budgets{1, 1, 1, 1, 1, 1};

  struct Criterion {
    int id;
    const char* name;
    double time_limit;  // seconds, 0 for none
    std::function<Verdict()> run;
  };
  std::vector<Criterion> criteria{
      {1, "sieve invariants", 60, sieve_invariants},
      {2, "approx CVP vs oracle", 600, [&] { return approx_cvp_vs_oracle(b.cvp); }},
      {3, "exact CVP vs oracle", 600, [&] { return exact_cvp_vs_oracle(b.exact_cvp); }},
      {4, "approx SAP vs oracle", 600, [&] { return approx_sap_vs_oracle(b.sap); }},
      {6, "feasibility completeness", 0, [&] { return ip_completeness(b); }},
      {7, "optimization vs oracle", 0, [&] { return opt_vs_oracle(b.opt); }},
      {5, "feasibility soundness", 0, [&] { return ip_soundness(b); }},
      {8, "geometry properties", 0, geometry_properties},
      {9, "barycenter accuracy", 0, barycenter_accuracy},
      {10, "lift identities", 0, lift_identities},
  };
  std::printf("budget multipliers: cvp %g, exact-cvp %g, sap %g, ip(n=2) %g, ip(n=3) %g, opt %g%s\n", b.cvp,
              b.exact_cvp, b.sap, b.ip2, b.ip3, b.opt, full ? " (full budget)" : "");
  std::map<int, std::string> lines;
  bool all = true;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit > 0 && secs > c.time_limit) {
      v.pass = false;
      v.detail += fmt("; over the %.0fs limit", c.time_limit);
    }
    all = all && v.pass;
    lines[c.id] = fmt("%s [%d] %s: ", v.pass ? "PASS" : "FAIL", c.id, c.name) + v.detail + fmt(" (%.1fs)", secs);
    std::fprintf(stderr, "%s\n", lines[c.id].c_str());
  }
  for (const auto& [id, line] : lines) std::printf("%s\n", line.c_str());
  return all ? 0 : 1;
}
