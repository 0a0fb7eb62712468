#include "support.hpp"

#include "gsieve/error.hpp"

#include <fstream>

using namespace gsieve;
using namespace gsieve::test;

namespace {

std::string data(const char* name) { return std::string(GSIEVE_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("instance files load") {
  Instance inst = load_instance(data("cvp_cube.json"));
  REQUIRE(inst.body.has_value());
  CHECK(inst.body->dim() == 2);
  CHECK(inst.body->center() == rv({"0", "0"}));
  CHECK(inst.lattice->basis() == RMatrix::identity(2));
  CHECK(*inst.target == rv({"2/5", "3/10"}));
  CHECK(inst.params.eps == 0.25);
  CHECK(inst.params.seed == 7u);

  Instance s = load_instance(data("sap_shifted.json"));
  CHECK(s.subspace->dim() == 1);
  CHECK(s.body->center() == rv({"1/2", "1/2"}));
  Instance o = load_instance(data("opt_box.json"));
  CHECK(o.objective->v == rv({"1", "0"}));
  CHECK(o.objective->delta == doctest::Approx(0.1));
}

TEST_CASE("malformed instances") {
  try {
    load_instance(data("malformed.json"));
    FAIL("expected a parse error");
  } catch (const InvalidInput& e) {
    CHECK(std::string(e.what()).find("byte") != std::string::npos);
  }
  CHECK_THROWS_AS(load_instance(data("bad_rational.json")), InvalidInput);
  CHECK_THROWS_AS(load_instance(data("missing.json")), InvalidInput);
  json j = json::parse(R"({"body": {"A": [["1"], ["-1"]], "b": ["1", "1"]}, "lattice": {"B": [["1", "0"], ["0", "1"]]}})");
  CHECK_THROWS_AS(instance_from_json(j), InvalidInput);
  j = json::parse(R"({"lattice": {"B": [["1", "2"], ["2", "4"]]}})");
  CHECK_THROWS_AS(instance_from_json(j), InvalidInput);
}

TEST_CASE("instances round-trip exactly") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    for (const Instance& inst : {gen_random_cvp(3, seed), gen_sap(2, seed), gen_opt(2, seed)}) {
      json j = instance_to_json(inst);
      Instance back = instance_from_json(json::parse(j.dump()));
      CHECK(back.body->A() == inst.body->A());
      CHECK(back.body->b() == inst.body->b());
      CHECK(back.body->center() == inst.body->center());
      CHECK(back.body->inner_radius() == inst.body->inner_radius());
      CHECK(back.body->outer_radius() == inst.body->outer_radius());
      CHECK(back.lattice->basis() == inst.lattice->basis());
      CHECK(instance_to_json(back) == j);
    }
  }
}

TEST_CASE("rationals in json") {
  CHECK(rational_from_json(json("3/4")) == q("3/4"));
  CHECK(rational_from_json(json(0.5)) == q("1/2"));
  CHECK(rational_from_json(json(0.1)) == q("1/10"));
  CHECK(rational_from_json(json(3)) == 3);
  CHECK(rational_to_json(q("-2/6")) == json("-1/3"));
  CHECK_THROWS_AS(rational_from_json(json(true)), InvalidInput);
}

TEST_CASE("generators are deterministic") {
  CHECK(instance_to_json(gen_random_cvp(2, 4)) == instance_to_json(gen_random_cvp(2, 4)));
  CHECK(instance_to_json(gen_planted_ip(2, 4)) == instance_to_json(gen_planted_ip(2, 4)));
  CHECK(instance_to_json(gen_empty_ip(3, 4)) == instance_to_json(gen_empty_ip(3, 4)));
  CHECK(instance_to_json(gen_random_cvp(2, 4)) != instance_to_json(gen_random_cvp(2, 5)));
}

TEST_CASE("random bases and bodies") {
  Rng rng(8);
  for (int k = 0; k < 30; ++k) {
    auto B = random_basis(3, rng);
    CHECK(abs(determinant(B.basis())) >= q("1/2"));
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        CHECK(abs(B.basis()(i, j)) <= 3);
        CHECK(is_integral(2 * B.basis()(i, j)));
      }
    }
    auto C = random_gauge_body(2, rng);
    CHECK(C.is_zero_centered());
    CHECK(estimate_gamma(C, 20000, 1).value >= 0.45);
  }
}

TEST_CASE("planted instances certify their labels") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    for (std::size_t n : {2u, 3u}) {
      Instance p = gen_planted_ip(n, seed);
      auto bK = instance_barycenter(p);
      REQUIRE(bK.has_value());
      auto deep = scale_about(*p.body, *bK, Rational(2, 3));
      auto hit = ip_brute(deep, *p.lattice);
      REQUIRE(hit.has_value());
      CHECK(gauge_exact(recenter(*p.body, *bK), hit->point - *bK) <= q("2/3"));

      Instance e = gen_empty_ip(n, seed);
      auto bE = instance_barycenter(e);
      REQUIRE(bE.has_value());
      CHECK_FALSE(ip_brute(scale_about(*e.body, *bE, q("3/2")), *e.lattice).has_value());
    }
    Instance c = gen_planted_cvp(2, seed);
    Rational d = cvp_brute(*c.body, *c.lattice, *c.target).value;
    Rational l1 = svp_brute(*c.body, *c.lattice).value;
    CHECK(d <= 2 * l1);
    CHECK(c.params.exact_t == 2.0);
  }
}

TEST_CASE("reports serialize") {
  SolveReport rep;
  rep.status = Status::ok;
  rep.vector = rv({"1", "-1/2"});
  rep.coefficients = iv({1, 0});
  rep.value = q("3/7");
  json j = report_to_json(rep);
  CHECK(j["status"] == "OK");
  CHECK(j["vector"] == json({"1", "-1/2"}));
  CHECK(j["value"]["rational"] == "3/7");
}
