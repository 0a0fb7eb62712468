#include "support.hpp"

#include "gsieve/error.hpp"
#include "gsieve/lp.hpp"

using namespace gsieve;
using namespace gsieve::test;

TEST_CASE("rational literals") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-6/8") == Rational(-3, 4));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational("-0.125") == Rational(-1, 8));
  CHECK(parse_rational("0.999999999") == Rational(999999999, 1000000000));
  CHECK(parse_rational("1e-3") == Rational(1, 1000));
  CHECK(parse_rational("2.5E2") == Rational(250));
  CHECK(parse_rational(" 08 ") == Rational(8));
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidInput);
  CHECK_THROWS_AS(parse_rational("abc"), InvalidInput);
  CHECK_THROWS_AS(parse_rational(""), InvalidInput);
  CHECK_THROWS_AS(parse_rational("."), InvalidInput);
}

TEST_CASE("rational formatting round-trips") {
  for (const char* s : {"3/4", "-5/7", "12", "0", "-1"}) {
    CHECK(format_rational(parse_rational(s)) == s);
  }
  CHECK(to_rational(0.1) != Rational(1, 10));
  CHECK(to_double(to_rational(0.1)) == 0.1);
}

TEST_CASE("floor of negative fractions") {
  CHECK(floor_integer(q("-1/2")) == -1);
  CHECK(floor_integer(q("-2")) == -2);
  CHECK(floor_integer(q("5/3")) == 1);
  CHECK(is_integral(q("4/2")));
}

TEST_CASE("rational matrix algebra") {
  RMatrix m = RMatrix::from_rows({rv({"2", "1"}), rv({"0", "1"})});
  CHECK(determinant(m) == 2);
  RMatrix inv = inverse(m);
  CHECK(m * inv == RMatrix::identity(2));
  CHECK(solve(m, rv({"3", "1"})) == rv({"1", "1"}));
  RMatrix singular = RMatrix::from_rows({rv({"1", "2"}), rv({"2", "4"})});
  CHECK_THROWS_AS(inverse(singular), InvalidInput);
  CHECK(rank(singular) == 1);
  auto ns = nullspace(singular);
  REQUIRE(ns.size() == 1);
  CHECK(singular * ns[0] == rv({"0", "0"}));
}

TEST_CASE("linear programming") {
  // max x + y over the unit square written as x <= 1, y <= 1, -x <= 0, -y <= 0
  Eigen::MatrixXd A(4, 2);
  A << 1, 0, 0, 1, -1, 0, 0, -1;
  Eigen::VectorXd b(4);
  b << 1, 1, 0, 0;
  Eigen::VectorXd x = lp::maximize(A, b, dv({1, 1}), dv({0.5, 0.5}));
  CHECK(x[0] == doctest::Approx(1.0));
  CHECK(x[1] == doctest::Approx(1.0));
  x = lp::maximize(A, b, dv({1, -1}), dv({0.5, 0.5}));
  CHECK(x[0] == doctest::Approx(1.0));
  CHECK(x[1] == doctest::Approx(0.0));

  lp::Ball ball = lp::chebyshev_ball(A, b, dv({5, 5}));
  CHECK(ball.radius == doctest::Approx(0.5));
  CHECK(ball.center[0] == doctest::Approx(0.5));

  // Unbounded direction.
  Eigen::MatrixXd H(1, 2);
  H << 1, 0;
  CHECK_THROWS_AS(lp::maximize(H, dv({1}), dv({0, 1}), dv({0, 0})), InvalidInput);
}
