#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "am/expr.hpp"

#include <cmath>
#include <numbers>

using namespace am;

namespace {

Jet eval_at(const std::string& src, const std::vector<double>& coords) {
    Expr e = Expr::parse(src, static_cast<int>(coords.size()));
    Eigen::VectorXd v(coords.size());
    for (size_t i = 0; i < coords.size(); ++i) v[i] = coords[i];
    return e.eval(seed_jets(v));
}

}  // namespace

TEST_CASE("arithmetic and precedence") {
    CHECK(eval_at("1 + 2 * 3", {0.0}).value() == doctest::Approx(7.0));
    CHECK(eval_at("(1 + 2) * 3", {0.0}).value() == doctest::Approx(9.0));
    CHECK(eval_at("2 ^ 3 * 2", {0.0}).value() == doctest::Approx(16.0));
    CHECK(eval_at("-x^2", {3.0}).value() == doctest::Approx(-9.0));
    CHECK(eval_at("1 / (1 + x)", {1.0}).value() == doctest::Approx(0.5));
    CHECK(eval_at("pi", {0.0}).value() == doctest::Approx(std::numbers::pi));
    CHECK(eval_at("1.5e2", {0.0}).value() == doctest::Approx(150.0));
}

TEST_CASE("variables and aliases") {
    CHECK(eval_at("x0 + 2*x1", {1.0, 10.0}).value() == doctest::Approx(21.0));
    CHECK(eval_at("x + y", {1.0, 2.0}).value() == doctest::Approx(3.0));
    CHECK(eval_at("sin(theta)^2", {0.5, 0.0}).value() ==
          doctest::Approx(std::sin(0.5) * std::sin(0.5)));
    CHECK(eval_at("cos(phi)", {0.0, 1.2}).value() == doctest::Approx(std::cos(1.2)));
}

TEST_CASE("jet derivatives flow through parsed expressions") {
    Jet f = eval_at("x * sin(y) + x^3", {0.4, 0.9});
    CHECK(f.d1(0) == doctest::Approx(std::sin(0.9) + 3.0 * 0.16));
    CHECK(f.d2(0, 1) == doctest::Approx(std::cos(0.9)));
    CHECK(f.d3(1, 1, 1) == doctest::Approx(-0.4 * std::cos(0.9)));
}

TEST_CASE("parse errors carry position and cause") {
    CHECK_THROWS_AS(Expr::parse("1 +", 1), ExprError);
    CHECK_THROWS_AS(Expr::parse("bogus(x)", 1), ExprError);
    CHECK_THROWS_AS(Expr::parse("x ^ y", 2), ExprError);
    CHECK_THROWS_AS(Expr::parse("x1", 1), ExprError);      // out of range
    CHECK_THROWS_AS(Expr::parse("x) + 1", 1), ExprError);  // trailing input
    CHECK_THROWS_AS(Expr::parse("x ^ -2", 1), ExprError);
}
