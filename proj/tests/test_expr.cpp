#include <doctest.h>

#include "kobalab/expr.hpp"

using namespace kobalab;

TEST_CASE("expression grammar: polynomials, exp, min/max") {
    Expr disk = Expr::parse("x1^2 + y1^2 - 1", 1);
    CHECK(disk.eval({cplx(0.0, 0.0)}) == doctest::Approx(-1.0));
    CHECK(disk.eval({cplx(0.6, 0.8)}) == doctest::Approx(0.0));
    CHECK(disk.eval({cplx(1.1, 0.0)}) > 0.0);

    Expr flat = Expr::parse("exp(-1/(x1^2+y1^2)) - y2", 2);
    CHECK(flat.eval({cplx(0.5, 0.0), cplx(0.0, 0.1)}) ==
          doctest::Approx(std::exp(-4.0) - 0.1));

    Expr two_balls = Expr::parse(
        "min((x1-0.5)^2 + y1^2 - 0.16, (x1+0.5)^2 + y1^2 - 0.16)", 1);
    CHECK(two_balls.eval({cplx(0.5, 0.0)}) < 0.0);
    CHECK(two_balls.eval({cplx(-0.5, 0.0)}) < 0.0);
    CHECK(two_balls.eval({cplx(0.0, 0.0)}) > 0.0);  // waist is outside

    Expr prec = Expr::parse("2*x1^2", 1);
    CHECK(prec.eval({cplx(3.0, 0.0)}) == doctest::Approx(18.0));
    CHECK(Expr::parse("-x1^2", 1).eval({cplx(2.0, 0.0)}) == doctest::Approx(-4.0));
}

TEST_CASE("expression errors") {
    CHECK_THROWS_AS(Expr::parse("x3 + 1", 2), ExprError);
    CHECK_THROWS_AS(Expr::parse("foo(x1)", 1), ExprError);
    CHECK_THROWS_AS(Expr::parse("x1 +", 1), ExprError);
    CHECK_THROWS_AS(Expr::parse("min(x1)", 1), ExprError);
    CHECK_THROWS_AS(Expr::parse("x1 1", 1), ExprError);
}
