#include "arithlg/multipoly.hpp"

#include "doctest.h"

using namespace arithlg;

namespace {

MPoly v(unsigned i) { return MPoly::variable(3, i); }
MPoly c(long x) { return MPoly::constant(3, x); }

}  // namespace

TEST_CASE("polynomial arithmetic and derivatives") {
    const MPoly t = v(0), x = v(1), y = v(2);
    const MPoly p = t * t * x + c(3) * y - c(1);
    CHECK(p.derivative(0) == c(2) * t * x);
    CHECK(p.derivative(2) == c(3));
    CHECK(p.degree(0) == 2);
    CHECK(p.valuation(0) == 0);
    CHECK((t * t * x).valuation(0) == 2);
    CHECK(p.at_zero(0) == c(3) * y - c(1));
    CHECK(p.negated_var(0) == p);
    CHECK((t * x).negated_var(0) == -(t * x));
    CHECK((p * p).to_string(default_var_names(3)) == "t^4*x1^2 + 6*t^2*x1*x2 - 2*t^2*x1 + 9*x2^2 - 6*x2 + 1");
}

TEST_CASE("exact division") {
    const MPoly a = v(1) + v(2), b = v(1) - v(2) + c(2);
    const auto q = MPoly::divide_exact(a * b, b);
    REQUIRE(q.has_value());
    CHECK(*q == a);
    CHECK_FALSE(MPoly::divide_exact(a * b + c(1), b).has_value());
}

TEST_CASE("rational functions cancel what they can and compare exactly") {
    const MPoly t = v(0), x = v(1);
    const RatFunc f(t * x + t, t * t);
    CHECK(f.num() == x + c(1));
    CHECK(f.den() == t);
    CHECK(f.valuation(0) == -1);
    CHECK_FALSE(f.regular_at_zero(0));

    const RatFunc g((x + c(1)) * (x - c(1)), x + c(1));
    CHECK(g == RatFunc(x - c(1)));
    CHECK(g.den() == c(1));

    // Same function, different representatives.
    const RatFunc a(x, x + t), b(x * (x - t), (x + t) * (x - t));
    CHECK(a == b);
    CHECK(a - b == RatFunc(3));

    const RatFunc h(t * x + c(2), x + c(1) + t);
    CHECK(h.at_zero(0) == RatFunc(c(2), x + c(1)));
    CHECK_THROWS_AS(f.at_zero(0), Error);

    CHECK((f * f).valuation(0) == -2);
    CHECK((f / f) == RatFunc::constant(3, 1));
    CHECK(f.derivative(1) == RatFunc(c(1), t));
    CHECK(f.derivative(0) == RatFunc(-(x + c(1)), t * t));
    CHECK_THROWS_AS(RatFunc(x, MPoly(3)), Error);
}

TEST_CASE("chart change t -> 1/t is an involution") {
    const MPoly t = v(0), x = v(1);
    const RatFunc f(t * t * x + c(1), t + x);
    const RatFunc g = f.inverted_var(0);
    CHECK(g == RatFunc(x + t * t, t * (c(1) + t * x)));
    CHECK(g.inverted_var(0) == f);
    CHECK(RatFunc(t).inverted_var(0) == RatFunc(c(1), t));
}
