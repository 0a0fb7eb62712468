#include "support.hpp"

#include "gsieve/error.hpp"
#include "gsieve/sieve.hpp"

#include <algorithm>
#include <cmath>

using namespace gsieve;
using namespace gsieve::test;

TEST_CASE("basic sieve: one pair is one center") {
  auto I = LatticeBasis::identity(1);
  std::vector<SievePair> pairs{make_pair(I, rv({"1/10"}), rv({"21/10"}))};
  auto step = basic_sieve(pairs, cube(1), I, 0.25, 4.0);
  CHECK(step.centers == std::vector<std::size_t>{0});
  CHECK(step.clustered.empty());
}

TEST_CASE("basic sieve: hand-traced greedy scan") {
  auto I = LatticeBasis::identity(1);
  auto C = cube(1);
  std::vector<SievePair> pairs{make_pair(I, rv({"0"}), rv({"3"}), 0),
                               make_pair(I, rv({"-1/10"}), rv({"29/10"}), 1),
                               make_pair(I, rv({"1/10"}), rv({"-29/10"}), 2)};
  auto step = basic_sieve(pairs, C, I, 0.25, 4.0);
  CHECK(step.centers == std::vector<std::size_t>{0, 2});
  REQUIRE(step.clustered.size() == 1);
  const auto& p = step.clustered[0];
  CHECK(p.origin == 1);
  CHECK(p.x[0] == -0.1);
  CHECK(p.y[0] == doctest::Approx(-0.1));
  CHECK(p.coeff[0] == 0);
  CHECK(gauge_star(C, p.y).value <= 4.0 / 2 + 0.25);
}

TEST_CASE("basic sieve: invariant violations are reported with the index") {
  auto I = LatticeBasis::identity(1);
  // y - x must be a lattice vector.
  CHECK_THROWS_AS(make_pair(I, rv({"1/10"}), rv({"3"})), InvalidInput);
  std::vector<SievePair> pairs{make_pair(I, rv({"0"}), rv({"1"})), make_pair(I, rv({"1/2"}), rv({"3/2"}))};
  try {
    basic_sieve(pairs, cube(1), I, 0.25, 4.0);
    FAIL("expected a violation");
  } catch (const InvalidInput& e) {
    CHECK(std::string(e.what()).find("pair 1") != std::string::npos);
  }
  pairs = {make_pair(I, rv({"0"}), rv({"5"}))};
  CHECK_THROWS_AS(basic_sieve(pairs, cube(1), I, 0.25, 4.0), InvalidInput);
  SievePair bad = make_pair(I, rv({"0"}), rv({"1"}));
  bad.coeff[0] = 2;
  CHECK_THROWS_AS(basic_sieve({bad}, cube(1), I, 0.25, 4.0), InvalidInput);
}

TEST_CASE("schedule formula") {
  auto I = LatticeBasis::identity(2);
  auto s = make_schedule(cube(2), I, 0.5, 0.5, 1.0, 1.0);
  CHECK(s.D0 == 2.0);
  CHECK(s.stage_bound == static_cast<std::size_t>(std::ceil(6 * std::log(4.0))));
  double expect = 4.0 * s.stage_bound * 400.0 + 8.0 * 72.0 * 72.0;
  CHECK(s.N0_exact == doctest::Approx(expect));
  CHECK(s.N0 == static_cast<std::size_t>(std::ceil(expect)));
  CHECK(s.eta == doctest::Approx(0.125 / s.N0));
  auto m = make_schedule(cube(2), I, 0.5, 0.5, 1.0, 1e-3);
  CHECK(m.N0 == static_cast<std::size_t>(std::ceil(1e-3 * expect)));
  CHECK(make_schedule(cube(2), I, 0.5, 0.5, 1.0, 1e-12).N0 == 2);
}

TEST_CASE("short vectors: per-stage invariants") {
  Rng rng(7);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t n = 1 + trial % 3;
    Rng body_rng(50 + trial);
    auto kind = static_cast<BodyKind>(trial % 2);
    auto C = make_body(kind, n, body_rng).origin_centered();
    const double gamma = kind == BodyKind::cube ? 1.0 : 2.0 / 3.0;
    auto B = random_basis(n, rng);
    const double beta = 0.3;
    SieveConfig cfg;
    cfg.sampler.seed = static_cast<std::uint64_t>(trial);
    cfg.gamma = gamma;
    cfg.budget_multiplier = n == 3 ? 1e-6 : 1e-3;
    std::vector<Eigen::VectorXd> initial_x;
    double prev_D = 0;
    std::size_t violations = 0;
    cfg.observer = [&](std::size_t stage, double D, const std::vector<SievePair>& pop) {
      if (stage == 0) {
        for (const auto& p : pop) initial_x.push_back(p.x);
      } else {
        CHECK(D == doctest::Approx(prev_D / 2 + beta));
      }
      for (const auto& p : pop) {
        if (gauge_star(C, p.x).value > beta * (1 + 1e-9)) ++violations;
        if (gauge_star(C, p.y).value > D * (1 + 1e-9)) ++violations;
        if (lattice_coordinates(B, B.point(p.coeff)) != p.coeff) ++violations;
        if (p.x != initial_x[p.origin]) ++violations;
        if ((p.x + B.basis_double() * p.coeff.cast<double>() - p.y).norm() > 1e-9) ++violations;
      }
      prev_D = D;
    };
    auto res = short_vectors(C, B, Subspace::zero(n), beta, 0.5, cfg, 1);
    CHECK(violations == 0);
    CHECK(res.stages <= res.schedule.stage_bound);
    CHECK(static_cast<double>(res.max_centers) <= 2 * std::pow(5 / gamma, double(n)));
    for (const auto& c : res.vectors) CHECK_FALSE(c.isZero());
  }
}

TEST_CASE("short vectors avoid the subspace") {
  auto I = LatticeBasis::identity(2);
  Subspace e1(2, {rv({"1", "0"})});
  SieveConfig cfg;
  cfg.gamma = 1.0;
  int hits = 0;
  const int runs = 50;
  for (int seed = 0; seed < runs; ++seed) {
    cfg.sampler.seed = static_cast<std::uint64_t>(seed);
    auto res = short_vectors(cube(2), I, e1, 0.8, 0.5, cfg, 1);
    CHECK_FALSE(res.exhausted);
    bool hit = false;
    for (const auto& c : res.vectors) {
      RVector v = I.point(c);
      CHECK(in_lattice(I, v));
      CHECK_FALSE(e1.contains(v));
      if (gauge_exact(cube(2), v) <= q("3/2")) hit = true;
    }
    hits += hit;
  }
  CHECK(hits >= 48);
}

TEST_CASE("short vectors: population can run dry") {
  SieveConfig cfg;
  cfg.gamma = 1.0;
  cfg.budget_multiplier = 1e-12;  // two pairs
  auto res = short_vectors(cube(2), LatticeBasis::identity(2).scaled(40), Subspace::zero(2), 0.1, 0.5, cfg);
  CHECK(res.schedule.N0 == 2);
  CHECK(res.exhausted);
  CHECK(res.vectors.empty());
}

TEST_CASE("short vectors: pair cap") {
  SieveConfig cfg;
  cfg.gamma = 0.2;
  cfg.max_pairs = 1000;
  CHECK_THROWS_AS(short_vectors(cube(2), LatticeBasis::identity(2), Subspace::zero(2), 0.5, 0.1, cfg),
                  CapExceeded);
}

TEST_CASE("lambda bounds") {
  auto I = LatticeBasis::identity(2);
  Subspace e1(2, {rv({"1", "0"})});
  auto lb = lambda_bounds(cube(2), I, e1);
  CHECK(lb.nu == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(lb.nu <= 1.0);
  CHECK(lb.spread * lb.nu >= 1.0 - 1e-9);
  CHECK_FALSE(lb.fallback);
  CHECK(lb.guess_count == static_cast<std::size_t>(std::ceil(std::log(lb.spread) / std::log(1.5))) + 1);
  CHECK(lambda_bounds(cube(2), I.scaled(2), e1).nu == doctest::Approx(2 * lb.nu));

  OracleOptions capped;
  capped.max_dim = 1;
  auto fb = lambda_bounds(cube(2), I, e1, capped);
  CHECK(fb.fallback);
  CHECK(fb.nu == doctest::Approx(1 / (std::sqrt(2.0) * 4)));
  CHECK(fb.nu > 0);

  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    auto C = random_gauge_body(2, rng).origin_centered();
    auto B = random_basis(2, rng);
    auto M = random_line(2, rng);
    auto b = lambda_bounds(C, B, M);
    double lam = sap_brute(C, B, M).value_double();
    CHECK(b.nu > 0);
    CHECK(b.nu <= lam);
    CHECK(lam <= b.spread * b.nu * (1 + 1e-12));
  }
}

TEST_CASE("approximate subspace avoiding vectors") {
  auto I = LatticeBasis::identity(2);
  Subspace e1(2, {rv({"1", "0"})});
  SieveConfig cfg;
  cfg.sampler.seed = 3;
  auto rep = approx_sap(cube(2), I, e1, 0.5, cfg);
  REQUIRE(rep.status == Status::ok);
  CHECK(*rep.value >= 1);
  CHECK(*rep.value <= q("3/2"));
  CHECK(in_lattice(I, *rep.vector));
  CHECK_FALSE(e1.contains(*rep.vector));
  CHECK(rep.guesses.size() == lambda_bounds(cube(2), I, e1).guess_count);

  auto A = cube(2, "-1", "2");
  rep = approx_sap(A, I, e1, 0.5, cfg);
  REQUIRE(rep.status == Status::ok);
  CHECK(*rep.value >= q("1/2"));
  CHECK(*rep.value <= q("3/4"));
  CHECK_THROWS_AS(approx_sap(A, I, e1, 0.75, cfg), InvalidInput);
}

TEST_CASE("exact subspace avoiding vectors") {
  auto I = LatticeBasis::identity(2);
  Subspace e1(2, {rv({"1", "0"})});
  const Rational lam = sap_brute(cube(2), I, e1).value;
  CHECK(lam == svp_brute(cube(2), I).value);
  int exact = 0;
  for (int seed = 0; seed < 50; ++seed) {
    SieveConfig cfg;
    cfg.sampler.seed = static_cast<std::uint64_t>(seed);
    auto rep = exact_sap(cube(2), I, e1, 2.0, cfg);
    CHECK(rep.eps == 0.5);
    if (rep.status != Status::ok) continue;
    CHECK_FALSE(e1.contains(*rep.vector));
    exact += *rep.value == lam;
  }
  CHECK(exact >= 48);
  SieveConfig cfg;
  CHECK_THROWS_AS(exact_sap(cube(2), I, e1, 1.5, cfg), InvalidInput);
}

TEST_CASE("sieve runs are reproducible") {
  auto B = basis_from_rows({{"2", "1"}, {"-1", "3/2"}});
  SieveConfig cfg;
  cfg.sampler.seed = 99;
  cfg.budget_multiplier = 0.05;
  auto a = approx_sap(cube(2, "-1", "2"), B, Subspace::zero(2), 0.5, cfg);
  auto b = approx_sap(cube(2, "-1", "2"), B, Subspace::zero(2), 0.5, cfg);
  CHECK(a.coefficients == b.coefficients);
  CHECK(a.gamma == b.gamma);
  CHECK(a.total_pairs == b.total_pairs);
}
